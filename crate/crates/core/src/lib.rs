//! q-special functions and a numerical model of the quantum group SU(2).
//!
//! - [`qcore`]: q-shifted factorials, basic hypergeometric series, `₈W₇`.
//! - [`qpolys`]: Askey-Wilson polynomials and their subfamilies.
//! - [`qkernels`]: Poisson kernels and generating functions.
//! - [`qsu2`]: truncated operators for the algebra and its representation.
//! - [`identities`]: verification reports and the acceptance battery.

#![allow(clippy::too_many_arguments, clippy::neg_cmp_op_on_partial_ord, clippy::should_implement_trait)]

pub mod error;
pub mod identities;
pub mod qcore;
pub mod qkernels;
pub mod qpolys;
pub mod qsu2;

pub use error::{Error, Result};
pub use identities::{SuiteConfig, TrialSpec, VerificationReport};
pub use qcore::{QParam, SeriesValue, TruncationPolicy, C64};
pub use qkernels::KernelParams;
pub use qpolys::{AWParams, JacobiParams, PolyCoeffs};
pub use qsu2::{AlgebraElement, BasisVector, Branch, ExtReal, Generator, SpectralPoint, TruncatedOperator};
