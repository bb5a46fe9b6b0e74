//! The non-symmetric Poisson kernel for Al-Salam–Chihara polynomials, its
//! ₈W₇ closed form, the q-Hermite product formula and an Al-Salam–Chihara
//! generating function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{phi_rs, qpoch_infinite_multi, terminating_index, w87, QParam, SeriesValue, TruncationPolicy, C64};
use crate::qpolys::{asc_h_coeffs, unit_from_cos};

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub t: C64,
    pub tau: f64,
    pub sigma: f64,
    pub mu: f64,
    pub q: QParam,
}

impl KernelParams {
    pub fn new(t: C64, tau: f64, sigma: f64, mu: f64, q: QParam) -> Result<Self> {
        if !(t.norm() < 1.0) {
            return Err(Error::domain(format!("kernel needs |t| < 1, got |t| = {}", t.norm())));
        }
        Ok(KernelParams { t, tau, sigma, mu, q })
    }

    /// `t = q e^{iφ}`.
    pub fn at_phase(phi: f64, tau: f64, sigma: f64, mu: f64, q: QParam) -> Self {
        KernelParams { t: C64::from_polar(q.value(), phi), tau, sigma, mu, q }
    }
}

/// Sums `Σ_m t^m g_m` where `g_m` settles into bounded oscillation.
///
/// `next(m)` returns `(g_m, settled)`. Once settled, the tail is bounded by
/// twice `env·|t|^{m+1}/(1-|t|)`, with `env` the largest `|g_j|` over the last four terms.
fn sum_settling(t: C64, policy: &TruncationPolicy, mut next: impl FnMut(usize) -> (C64, bool)) -> SeriesValue {
    let at = t.norm();
    let mut total = ZERO;
    let mut tm = ONE;
    let mut recent = [0.0f64; 4];
    for m in 0..policy.max_terms {
        let (g, settled) = next(m);
        total += tm * g;
        recent[m % 4] = g.norm();
        if at == 0.0 {
            return SeriesValue::exact(total, 1);
        }
        let env = recent.iter().cloned().fold(0.0, f64::max);
        if settled && m >= 4 {
            let tail = 2.0 * env * at.powi(m as i32 + 1) / (1.0 - at);
            if tail <= policy.tail_eps {
                return SeriesValue { value: total, abs_err_est: tail, terms_used: m + 1, converged: true };
            }
        }
        if !total.is_finite() {
            break;
        }
        tm *= t;
    }
    SeriesValue { value: total, abs_err_est: f64::INFINITY, terms_used: policy.max_terms, converged: false }
}

/// Incremental `h_m(x; s, t | q)`.
struct AscStepper {
    x: C64,
    s: f64,
    t: f64,
    q: QParam,
    prev: C64,
    cur: C64,
    m: usize,
}

impl AscStepper {
    fn new(x: C64, s: f64, t: f64, q: QParam) -> Self {
        AscStepper { x, s, t, q, prev: ZERO, cur: ONE, m: 0 }
    }

    /// Current value and whether the recurrence has reached its constant-coefficient regime.
    fn value(&self) -> (C64, bool) {
        let (b, c) = asc_h_coeffs(self.m, self.s, self.t, self.q);
        (self.cur, b.abs() < 1e-3 && (c - 1.0).abs() < 1e-3)
    }

    fn advance(&mut self) {
        let (b, c) = asc_h_coeffs(self.m, self.s, self.t, self.q);
        let next = (2.0 * self.x - b) * self.cur - c * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.m += 1;
    }
}

/// `P(t; x, y; τ; σ, μ) = Σ_m t^m h_m(y; q^τ, q^μ | q²) h_m(x; q^τ, q^σ | q²) / (q², -q^{2-2τ}; q²)_m`,
/// with `x = cos ψ`, `y = cos θ` for real angles.
pub fn poisson_series(kp: &KernelParams, x: C64, y: C64, policy: &TruncationPolicy) -> SeriesValue {
    let q = kp.q.value();
    let qq = kp.q.base_power(2);
    let s = q.powf(kp.tau);
    let mut hx = AscStepper::new(x, s, q.powf(kp.sigma), qq);
    let mut hy = AscStepper::new(y, s, q.powf(kp.mu), qq);
    let c2 = -q.powf(2.0 - 2.0 * kp.tau);
    let mut den = 1.0;
    sum_settling(kp.t, policy, |m| {
        if m > 0 {
            hx.advance();
            hy.advance();
            let qm = qq.powi(m as i32 - 1);
            den *= (1.0 - qm * qq.value()) * (1.0 - c2 * qm);
        }
        let (vx, sx) = hx.value();
        let (vy, sy) = hy.value();
        (vx * vy / den, sx && sy)
    })
}

/// The closed form as ten infinite q²-products times `₈W₇` with argument `-q^{-σ-μ} t`.
pub fn poisson_closed(kp: &KernelParams, x: C64, y: C64, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let q = kp.q.value();
    let qq = kp.q.base_power(2);
    let (tau, sig, mu, t) = (kp.tau, kp.sigma, kp.mu, kp.t);
    let z = -q.powf(-sig - mu) * t;
    if z.norm() >= 1.0 {
        return Err(Error::domain(format!("closed form needs |q^(-sigma-mu) t| < 1, got {}", z.norm())));
    }
    let ep = unit_from_cos(x);
    let et = unit_from_cos(y);
    let num = [
        z,
        q.powf(1.0 + sig - tau) * t * et,
        q.powf(1.0 + sig - tau) * t / et,
        q.powf(1.0 + mu - tau) * t * ep,
        q.powf(1.0 + mu - tau) * t / ep,
    ];
    let den = [q.powf(2.0 + mu + sig - 2.0 * tau) * t, t * et * ep, t * et / ep, t * ep / et, t / (et * ep)];
    let pn = qpoch_infinite_multi(&num, qq, policy);
    let pd = qpoch_infinite_multi(&den, qq, policy);
    let w = w87(
        q.powf(mu + sig - 2.0 * tau) * t,
        [
            -q.powf(sig + mu) * t,
            q.powf(1.0 + mu - tau) * et,
            q.powf(1.0 + mu - tau) / et,
            q.powf(1.0 + sig - tau) * ep,
            q.powf(1.0 + sig - tau) / ep,
        ],
        qq,
        z,
        policy,
    )?;
    let pre = pn.value / pd.value;
    let pre_err = (pn.abs_err_est + pre.norm() * pd.abs_err_est) / pd.value.norm();
    Ok(SeriesValue {
        value: pre * w.value,
        abs_err_est: pre_err * w.value.norm() + pre.norm() * w.abs_err_est,
        terms_used: pn.terms_used.max(pd.terms_used).max(w.terms_used),
        converged: pn.converged && pd.converged && w.converged,
    })
}

/// `(t²; q⁴)_∞ / (t e^{±iψ±iθ}; q⁴)_∞`, the kernel at `τ = σ = μ = 0`.
pub fn qhermite_kernel(t: C64, psi: f64, theta: f64, q: QParam, policy: &TruncationPolicy) -> Result<SeriesValue> {
    if !(t.norm() < 1.0) {
        return Err(Error::domain(format!("kernel needs |t| < 1, got |t| = {}", t.norm())));
    }
    let q4 = q.base_power(4);
    let e = |a: f64| C64::from_polar(1.0, a);
    let num = qpoch_infinite_multi(&[t * t], q4, policy);
    let den =
        qpoch_infinite_multi(&[t * e(psi + theta), t * e(psi - theta), t * e(theta - psi), t * e(-psi - theta)], q4, policy);
    let v = num.value / den.value;
    Ok(SeriesValue {
        value: v,
        abs_err_est: (num.abs_err_est + v.norm() * den.abs_err_est) / den.value.norm(),
        terms_used: num.terms_used.max(den.terms_used),
        converged: num.converged && den.converged,
    })
}

/// Which closed side of the generating function to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum GenFunVariant {
    /// `₃φ₂(u, ae^{-iψ}, be^{-iψ}; ab, ute^{-iψ}; q, te^{iψ})`.
    #[default]
    Standard,
    /// `₃φ₂(u, ae^{iψ}, ae^{-iψ}; ab, ute^{-iψ}; q, te^{iψ})`.
    RepeatedA,
}

/// Both sides of
/// `Σ_m (u;q)_m t^m s_m(cos ψ; a, b | q) / (q, ab; q)_m
///  = (ute^{-iψ}; q)_∞ / (te^{-iψ}; q)_∞ · ₃φ₂(...; q, te^{iψ})`.
pub fn asc_genfun(
    u: C64,
    t: C64,
    a: C64,
    b: C64,
    psi: f64,
    q: QParam,
    policy: &TruncationPolicy,
    variant: GenFunVariant,
) -> Result<(SeriesValue, SeriesValue)> {
    if !(t.norm() < 1.0) {
        return Err(Error::domain(format!("generating function needs |t| < 1, got |t| = {}", t.norm())));
    }
    let qv = q.value();
    let x = C64::new(psi.cos(), 0.0);
    let stop = terminating_index(u, q, policy.max_terms);
    // s_{m+1} = (2x - (a+b) q^m) s_m - (1 - q^m)(1 - ab q^{m-1}) s_{m-1}
    let (mut sp, mut sc) = (ZERO, ONE);
    let mut coef = ONE;
    let lhs = match stop {
        Some(mmax) => {
            let mut total = ZERO;
            let mut tm = ONE;
            for m in 0..=mmax {
                if m > 0 {
                    let qm = qv.powi(m as i32 - 1);
                    let next = (2.0 * x - (a + b) * qm) * sc - (1.0 - qm) * (ONE - a * b * qm / qv) * sp;
                    sp = sc;
                    sc = next;
                    coef *= (ONE - u * qm) / ((1.0 - qm * qv) * (ONE - a * b * qm));
                    tm *= t;
                }
                total += coef * tm * sc;
            }
            SeriesValue::exact(total, mmax + 1)
        }
        None => sum_settling(t, policy, |m| {
            if m > 0 {
                let qm = qv.powi(m as i32 - 1);
                let next = (2.0 * x - (a + b) * qm) * sc - (1.0 - qm) * (ONE - a * b * qm / qv) * sp;
                sp = sc;
                sc = next;
                coef *= (ONE - u * qm) / ((1.0 - qm * qv) * (ONE - a * b * qm));
            }
            let qm = qv.powi(m as i32);
            (coef * sc, qm * (1.0 + (a + b).norm() + u.norm() + (a * b).norm()) < 1e-3)
        }),
    };
    let em = C64::from_polar(1.0, -psi);
    let ep = C64::from_polar(1.0, psi);
    let pre_num = qpoch_infinite_multi(&[u * t * em], q, policy);
    let pre_den = qpoch_infinite_multi(&[t * em], q, policy);
    let num = match variant {
        GenFunVariant::Standard => [u, a * em, b * em],
        GenFunVariant::RepeatedA => [u, a * ep, a * em],
    };
    let phi = phi_rs(&num, &[a * b, u * t * em], q, t * ep, policy)?;
    let pre = pre_num.value / pre_den.value;
    let rhs = SeriesValue {
        value: pre * phi.value,
        abs_err_est: pre.norm() * phi.abs_err_est
            + (pre_num.abs_err_est + pre.norm() * pre_den.abs_err_est) / pre_den.value.norm() * phi.value.norm(),
        terms_used: phi.terms_used.max(pre_num.terms_used).max(pre_den.terms_used),
        converged: phi.converged && pre_num.converged && pre_den.converged,
    };
    Ok((lhs, rhs))
}
