//! Shared fixtures for the criterion benches.

use qspecial::qsu2::{minimal_element, MinimalVariant};
use qspecial::{AlgebraElement, QParam, TruncationPolicy, C64};

pub fn q(v: f64) -> QParam {
    QParam::new(v).expect("valid q")
}

pub fn policy() -> TruncationPolicy {
    TruncationPolicy::default()
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `c^n` for the row-plus variant at a fixed parameter point.
pub fn minimal(n: usize, qv: f64) -> AlgebraElement {
    minimal_element(n, MinimalVariant::RowPlus, 0.2, -0.1, q(qv)).expect("valid parameters")
}

/// Truncation sizes used by the operator benches.
pub const DIMS: [usize; 3] = [150, 200, 400];
