//! Scalar q-machinery: shifted factorials, q-binomials, ᵣφₛ and ₈W₇.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// The base `q`, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(QParam(q))
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `q^x` for real `x`.
    #[inline]
    pub fn pow(self, x: f64) -> f64 {
        self.0.powf(x)
    }

    #[inline]
    pub fn powi(self, k: i32) -> f64 {
        self.0.powi(k)
    }

    /// The base `q^k`, e.g. `q²` or `q⁴`.
    pub fn base_power(self, k: u32) -> QParam {
        QParam(self.0.powi(k as i32))
    }
}

/// Stopping rule for every truncated sum and product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub tail_eps: f64,
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { tail_eps: 1e-14, max_terms: 10_000 }
    }
}

impl TruncationPolicy {
    pub fn new(tail_eps: f64, max_terms: usize) -> Result<Self> {
        if !(tail_eps.is_finite() && tail_eps > 0.0) {
            return Err(Error::InvalidPolicy(format!("tail_eps must be positive, got {tail_eps}")));
        }
        if max_terms == 0 {
            return Err(Error::InvalidPolicy("max_terms must be at least 1".into()));
        }
        Ok(TruncationPolicy { tail_eps, max_terms })
    }
}

/// A truncated value together with its error bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: C64,
    pub abs_err_est: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesValue {
    pub fn exact(value: C64, terms_used: usize) -> Self {
        SeriesValue { value, abs_err_est: 0.0, terms_used, converged: true }
    }

    /// Converts a non-converged value into an error.
    pub fn require(self) -> Result<C64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NonConvergence { terms: self.terms_used, tail: self.abs_err_est })
        }
    }

    /// Product of two values with first-order error propagation.
    pub fn mul(self, other: SeriesValue) -> SeriesValue {
        SeriesValue {
            value: self.value * other.value,
            abs_err_est: self.abs_err_est * other.value.norm()
                + other.abs_err_est * self.value.norm()
                + self.abs_err_est * other.abs_err_est,
            terms_used: self.terms_used.max(other.terms_used),
            converged: self.converged && other.converged,
        }
    }
}

/// `(a; q)_n`.
pub fn qpoch_finite(a: C64, q: QParam, n: usize) -> C64 {
    let mut r = C64::new(1.0, 0.0);
    let mut qk = 1.0;
    for _ in 0..n {
        r *= C64::new(1.0, 0.0) - a * qk;
        qk *= q.0;
    }
    r
}

/// `(a₁, ..., a_j; q)_n`.
pub fn qpoch_finite_multi(a: &[C64], q: QParam, n: usize) -> C64 {
    a.iter().map(|&x| qpoch_finite(x, q, n)).product()
}

/// `(a; q)_∞`, truncated once `|P_K|·(exp(|a|q^K/(1-q)) - 1)` drops below `tail_eps`.
pub fn qpoch_infinite(a: C64, q: QParam, policy: &TruncationPolicy) -> SeriesValue {
    let one = C64::new(1.0, 0.0);
    let abs_a = a.norm();
    let mut prod = one;
    let mut qk = 1.0;
    let mut k = 0usize;
    loop {
        let s = abs_a * qk / (1.0 - q.0);
        let bound = if s < 700.0 { prod.norm() * s.exp_m1() } else { f64::INFINITY };
        if bound <= policy.tail_eps {
            return SeriesValue { value: prod, abs_err_est: bound, terms_used: k, converged: true };
        }
        if k >= policy.max_terms {
            return SeriesValue { value: prod, abs_err_est: bound, terms_used: k, converged: false };
        }
        prod *= one - a * qk;
        qk *= q.0;
        k += 1;
    }
}

/// Product of several infinite q-shifted factorials.
pub fn qpoch_infinite_multi(a: &[C64], q: QParam, policy: &TruncationPolicy) -> SeriesValue {
    a.iter().map(|&x| qpoch_infinite(x, q, policy)).fold(SeriesValue::exact(C64::new(1.0, 0.0), 0), SeriesValue::mul)
}

/// Gaussian binomial `[n, k]_q`.
pub fn qbinomial(n: usize, k: i64, q: QParam) -> Result<f64> {
    if k < 0 || k as usize > n {
        return Err(Error::IndexOutOfRange(format!("q-binomial needs 0 <= k <= n, got n={n}, k={k}")));
    }
    let k = k as usize;
    let k = k.min(n - k);
    let mut r = 1.0;
    for j in 0..k {
        r *= (1.0 - q.0.powi((n - j) as i32)) / (1.0 - q.0.powi((j + 1) as i32));
    }
    Ok(r)
}

/// If `x` equals `q^{-m}` to relative accuracy `1e-12`, returns `m`.
pub fn terminating_index(x: C64, q: QParam, max_terms: usize) -> Option<usize> {
    if x.re <= 0.0 || !x.re.is_finite() {
        return None;
    }
    let m = (x.re.ln() / -q.0.ln()).round();
    if m < 0.0 || m > max_terms as f64 {
        return None;
    }
    let target = q.0.powf(-m);
    if !target.is_finite() {
        return None;
    }
    if (x - target).norm() <= 1e-12 * target {
        Some(m as usize)
    } else {
        None
    }
}

/// Smallest termination index over a parameter list.
pub fn min_terminating_index(params: &[C64], q: QParam, max_terms: usize) -> Option<usize> {
    params.iter().filter_map(|&x| terminating_index(x, q, max_terms)).min()
}

/// Sums `Σ t_k` from `t_0 = 1` and the term ratio `t_{k+1}/t_k`.
///
/// With `terminate_at = Some(m)` exactly `m + 1` terms are summed. Otherwise the
/// sum stops once the geometric tail `2|t_k|ρ/(1-ρ)` falls below `tail_eps`,
/// where `ρ` is the modulus of the latest term ratio.
pub(crate) fn sum_by_ratio(
    mut ratio: impl FnMut(usize) -> Result<C64>,
    terminate_at: Option<usize>,
    policy: &TruncationPolicy,
) -> Result<SeriesValue> {
    let mut term = C64::new(1.0, 0.0);
    let mut total = term;
    if let Some(m) = terminate_at {
        for k in 0..m {
            term *= ratio(k)?;
            total += term;
        }
        return Ok(SeriesValue::exact(total, m + 1));
    }
    let mut k = 0usize;
    loop {
        if k + 1 >= policy.max_terms {
            return Ok(SeriesValue { value: total, abs_err_est: f64::INFINITY, terms_used: k + 1, converged: false });
        }
        let r = ratio(k)?;
        term *= r;
        total += term;
        k += 1;
        if term == C64::new(0.0, 0.0) {
            return Ok(SeriesValue::exact(total, k + 1));
        }
        if !total.is_finite() {
            return Ok(SeriesValue { value: total, abs_err_est: f64::INFINITY, terms_used: k + 1, converged: false });
        }
        let rho = r.norm();
        if rho < 1.0 {
            let tail = 2.0 * term.norm() * rho / (1.0 - rho);
            if tail <= policy.tail_eps {
                return Ok(SeriesValue { value: total, abs_err_est: tail, terms_used: k + 1, converged: true });
            }
        }
    }
}

fn check_denominator(f: C64, what: &str) -> Result<C64> {
    if f.norm() < 1e-14 {
        Err(Error::domain(format!("{what} vanishes")))
    } else {
        Ok(f)
    }
}

/// Basic hypergeometric series `ᵣφₛ(num; den; q, z)` in Gasper–Rahman normalization.
pub fn phi_rs(num: &[C64], den: &[C64], q: QParam, z: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let one = C64::new(1.0, 0.0);
    if z == C64::new(0.0, 0.0) {
        return Ok(SeriesValue::exact(one, 1));
    }
    let expo = 1 + den.len() as i32 - num.len() as i32;
    let stop = min_terminating_index(num, q, policy.max_terms);
    let ratio = |k: usize| -> Result<C64> {
        let qk = q.0.powi(k as i32);
        let mut r = z;
        for &a in num {
            r *= one - a * qk;
        }
        for &b in den {
            r /= check_denominator(one - b * qk, "denominator factor")?;
        }
        r /= 1.0 - qk * q.0;
        if expo != 0 {
            r *= (-qk).powi(expo);
        }
        Ok(r)
    };
    sum_by_ratio(ratio, stop, policy)
}

/// Very-well-poised `₈W₇(a; b, c, d, e, f; q, z)`.
pub fn w87(a: C64, bcdef: [C64; 5], q: QParam, z: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let one = C64::new(1.0, 0.0);
    if z == C64::new(0.0, 0.0) {
        return Ok(SeriesValue::exact(one, 1));
    }
    let mut tparams = bcdef.to_vec();
    tparams.push(a);
    let stop = min_terminating_index(&tparams, q, policy.max_terms);
    if stop.is_none() && z.norm() >= 1.0 {
        return Err(Error::domain(format!("nonterminating 8W7 needs |z| < 1, got |z| = {}", z.norm())));
    }
    for &p in &bcdef {
        if p == C64::new(0.0, 0.0) {
            return Err(Error::domain("8W7 parameter must be nonzero"));
        }
    }
    let ratio = |k: usize| -> Result<C64> {
        let qk = q.0.powi(k as i32);
        let mut r = (one - a * qk * qk * q.0 * q.0) / check_denominator(one - a * qk * qk, "1 - a q^(2k)")?;
        r *= one - a * qk;
        for &p in &bcdef {
            r *= (one - p * qk) / check_denominator(one - a * q.0 * qk / p, "1 - a q^(k+1)/p")?;
        }
        Ok(r * z / (1.0 - qk * q.0))
    };
    sum_by_ratio(ratio, stop, policy)
}
