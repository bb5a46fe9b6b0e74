//! Askey-Wilson polynomials and their Al-Salam–Chihara, q-Jacobi,
//! q-ultraspherical and q-Hermite specialisations.

use serde::{Deserialize, Serialize};

use crate::qcore::{qpoch_finite, qpoch_finite_multi, QParam, C64};

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// `e^{iθ}` for `x = cos θ`.
///
/// On `[-1, 1]` this is `x + i√(1-x²)`; elsewhere the principal `x + √(x²-1)`.
pub fn unit_from_cos(x: C64) -> C64 {
    if x.im == 0.0 && x.re.abs() <= 1.0 {
        C64::new(x.re, (1.0 - x.re * x.re).sqrt())
    } else {
        x + (x * x - 1.0).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AWParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub q: QParam,
}

impl AWParams {
    pub fn new(a: C64, b: C64, c: C64, d: C64, q: QParam) -> Self {
        AWParams { a, b, c, d, q }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64, q: QParam) -> Self {
        AWParams::new(a.into(), b.into(), c.into(), d.into(), q)
    }

    /// The parameters reordered so the one of largest modulus comes first.
    fn sorted(&self) -> [C64; 4] {
        let mut p = [self.a, self.b, self.c, self.d];
        // stable, so ties keep their original order
        p.sort_by(|x, y| y.norm().partial_cmp(&x.norm()).unwrap_or(std::cmp::Ordering::Equal));
        p
    }
}

/// Monomial coefficients `c_0 + c_1 x + ... + c_n x^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyCoeffs {
    pub coeffs: Vec<C64>,
}

impl PolyCoeffs {
    pub fn constant(c: C64) -> Self {
        PolyCoeffs { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> C64 {
        *self.coeffs.last().unwrap_or(&ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: C64) -> Self {
        PolyCoeffs { coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    fn add_assign(&mut self, other: &PolyCoeffs) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), ZERO);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Multiplies by `(c0 + c1 x + c2 x²)`.
    fn mul_quadratic(&self, c0: C64, c1: C64, c2: C64) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + 2];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c * c0;
            out[i + 1] += c * c1;
            out[i + 2] += c * c2;
        }
        PolyCoeffs { coeffs: out }
    }
}

/// Coefficients of the monic three-term recurrence
/// `P_{k+1} = (x - diag_k) P_k - offdiag_k P_{k-1}` for `p_n(x; a, b, c, d | q)`.
#[derive(Debug, Clone, Copy)]
pub struct AwRecurrence {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
    q: f64,
    s: C64,
}

impl AwRecurrence {
    pub fn new(p: &AWParams) -> Self {
        let [a, b, c, d] = p.sorted();
        AwRecurrence { a, b, c, d, q: p.q.value(), s: a * b * c * d }
    }

    /// `(diag_k, offdiag_k)`; `offdiag_0 = 0`.
    pub fn coeffs(&self, k: usize) -> (C64, C64) {
        let (a, b, c, d, s) = (self.a, self.b, self.c, self.d, self.s);
        let qp = |e: i64| self.q.powi(e as i32);
        let k = k as i64;
        let e1 = b + c + d;
        let e2 = b * c + b * d + c * d;
        let bcd = b * c * d;
        let ck = if k > 0 {
            a * (1.0 - qp(k)) * (ONE - b * c * qp(k - 1)) * (ONE - b * d * qp(k - 1)) * (ONE - c * d * qp(k - 1))
                / ((ONE - s * qp(2 * k - 2)) * (ONE - s * qp(2 * k - 1)))
        } else {
            ZERO
        };
        let na = bcd * (-qp(k - 1) + qp(2 * k - 1) + qp(2 * k)) - s * bcd * qp(4 * k - 1) - e1 * qp(k) * (ONE - s * qp(k - 1))
            + a * qp(2 * k) * (e2 - s * qp(k)) * (ONE - s * qp(k - 1));
        let den = (ONE - s * qp(2 * k - 1)) * (ONE - s * qp(2 * k));
        // at k = 0 the factor 1 - abcd/q cancels; use the reduced form
        let diag = if k == 0 { 0.5 * (a + e1 - a * e2 - bcd) / (ONE - s) } else { 0.5 * (a - na / den - ck) };
        let off = if k > 0 {
            let m = k;
            let num = (ONE - a * b * qp(m - 1))
                * (ONE - a * c * qp(m - 1))
                * (ONE - a * d * qp(m - 1))
                * (if m == 1 { ONE } else { ONE - s * qp(m - 2) })
                * (1.0 - qp(m))
                * (ONE - b * c * qp(m - 1))
                * (ONE - b * d * qp(m - 1))
                * (ONE - c * d * qp(m - 1));
            let den = (if m == 1 { ONE } else { ONE - s * qp(2 * m - 3) })
                * (ONE - s * qp(2 * m - 2))
                * (ONE - s * qp(2 * m - 2))
                * (ONE - s * qp(2 * m - 1));
            0.25 * num / den
        } else {
            ZERO
        };
        (diag, off)
    }

    /// Factor turning the monic `P_n` into `p_n`: `2^n (abcd q^{n-1}; q)_n`.
    pub fn normalisation(&self, n: usize) -> C64 {
        let q = QParam::new(self.q).expect("validated base");
        qpoch_finite(self.s * self.q.powi(n as i32 - 1), q, n) * 2f64.powi(n as i32)
    }
}

/// `p_0(x), ..., p_nmax(x)` by the recurrence.
pub fn aw_eval_all(nmax: usize, x: C64, p: &AWParams) -> Vec<C64> {
    let rec = AwRecurrence::new(p);
    let mut monic = Vec::with_capacity(nmax + 1);
    let (mut prev, mut cur) = (ZERO, ONE);
    monic.push(cur);
    for k in 0..nmax {
        let (dk, ok) = rec.coeffs(k);
        let next = (x - dk) * cur - ok * prev;
        prev = cur;
        cur = next;
        monic.push(cur);
    }
    monic.iter().enumerate().map(|(n, &m)| m * rec.normalisation(n)).collect()
}

/// Askey-Wilson polynomial `p_n(x; a, b, c, d | q)`.
pub fn aw_eval(n: usize, x: C64, p: &AWParams) -> C64 {
    aw_eval_all(n, x, p)[n]
}

/// The terminating ₄φ₃ representation, with the largest parameter as `a`.
///
/// Falls back to [`aw_eval`] when all four parameters vanish.
pub fn aw_series(n: usize, x: C64, p: &AWParams) -> C64 {
    let [a, b, c, d] = p.sorted();
    if a == ZERO {
        return aw_eval(n, x, p);
    }
    let e = unit_from_cos(x);
    let q = p.q;
    let qv = q.value();
    let s = a * b * c * d;
    let mut total = ZERO;
    for k in 0..=n {
        let mut t = qpoch_finite_multi(&[C64::from(qv.powi(-(n as i32))), s * qv.powi(n as i32 - 1), a * e, a / e], q, k)
            / qpoch_finite(C64::from(qv), q, k)
            * qv.powi(k as i32);
        let qk = qv.powi(k as i32);
        t *= qpoch_finite_multi(&[a * b * qk, a * c * qk, a * d * qk], q, n - k);
        total += t;
    }
    total / a.powi(n as i32)
}

/// Monomial coefficients of `p_n`, from the recurrence carried out on polynomials.
pub fn aw_coeffs(n: usize, p: &AWParams) -> PolyCoeffs {
    let rec = AwRecurrence::new(p);
    let mut prev = PolyCoeffs { coeffs: vec![] };
    let mut cur = PolyCoeffs::constant(ONE);
    for k in 0..n {
        let (dk, ok) = rec.coeffs(k);
        let mut next = cur.mul_quadratic(-dk, ONE, ZERO);
        next.coeffs.pop();
        next.add_assign(&prev.scale(-ok));
        prev = cur;
        cur = next;
    }
    cur.scale(rec.normalisation(n))
}

/// Monomial coefficients of `p_n` by expanding the ₄φ₃ terms, using
/// `(ae^{iθ}, ae^{-iθ}; q)_k = Π_{j<k} (1 - 2a q^j x + a² q^{2j})`.
///
/// Needs a nonzero parameter; returns `None` when all four vanish.
pub fn aw_coeffs_series(n: usize, p: &AWParams) -> Option<PolyCoeffs> {
    let [a, b, c, d] = p.sorted();
    if a == ZERO {
        return None;
    }
    let q = p.q;
    let qv = q.value();
    let s = a * b * c * d;
    let mut total = PolyCoeffs::constant(ZERO);
    let mut factor = PolyCoeffs::constant(ONE);
    for k in 0..=n {
        let qk = qv.powi(k as i32);
        let scalar = qpoch_finite_multi(&[C64::from(qv.powi(-(n as i32))), s * qv.powi(n as i32 - 1)], q, k)
            / qpoch_finite(C64::from(qv), q, k)
            * qk
            * qpoch_finite_multi(&[a * b * qk, a * c * qk, a * d * qk], q, n - k);
        total.add_assign(&factor.scale(scalar));
        factor = factor.mul_quadratic(ONE + a * a * qk * qk, -2.0 * a * qk, ZERO);
        factor.coeffs.truncate(k + 2);
    }
    total.coeffs.truncate(n + 1);
    Some(total.scale(ONE / a.powi(n as i32)))
}

/// Parameters of `p_n^{(α,β)}(x; s, t | q)`; infinite `α` or `β` zero the
/// corresponding Askey-Wilson parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub t: f64,
    pub q: QParam,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64, s: f64, t: f64, q: QParam) -> crate::Result<Self> {
        if !(s > 0.0 && t > 0.0) {
            return Err(crate::Error::domain(format!("s and t must be positive, got s={s}, t={t}")));
        }
        Ok(JacobiParams { alpha, beta, s, t, q })
    }

    pub fn aw_params(&self) -> AWParams {
        let q = self.q.value();
        let (s, t) = (self.s, self.t);
        let h = q.sqrt();
        let b = if self.alpha == f64::INFINITY { 0.0 } else { q.powf(0.5 + self.alpha) * s / t };
        let d = if self.beta == f64::INFINITY { 0.0 } else { -s * t * q.powf(0.5 + self.beta) };
        AWParams::real(h * t / s, b, -h / (s * t), d, self.q)
    }
}

pub fn qjacobi_eval(n: usize, x: C64, jp: &JacobiParams) -> C64 {
    aw_eval(n, x, &jp.aw_params())
}

pub fn qjacobi_coeffs(n: usize, jp: &JacobiParams) -> PolyCoeffs {
    aw_coeffs(n, &jp.aw_params())
}

/// Recurrence coefficients `(b_n, c_n)` of `2x h_n = h_{n+1} + b_n h_n + c_n h_{n-1}`.
pub fn asc_h_coeffs(n: usize, s: f64, t: f64, q: QParam) -> (f64, f64) {
    let qn = q.powi(n as i32);
    ((t - 1.0 / t) * qn * q.value().sqrt() / s, (1.0 - qn) * (1.0 + qn / (s * s)))
}

/// `h_0(x), ..., h_nmax(x)` for the Al-Salam–Chihara polynomials `h_n(x; s, t | q)`.
pub fn asc_h_all(nmax: usize, x: C64, s: f64, t: f64, q: QParam) -> Vec<C64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let (mut prev, mut cur) = (ZERO, ONE);
    out.push(cur);
    for k in 0..nmax {
        let (bk, ck) = asc_h_coeffs(k, s, t, q);
        let next = (2.0 * x - bk) * cur - ck * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

pub fn asc_h(n: usize, x: C64, s: f64, t: f64, q: QParam) -> C64 {
    asc_h_all(n, x, s, t, q)[n]
}

/// Al-Salam–Chihara `s_m(x; a, b | q)`, i.e. `p_m(x; a, b, 0, 0 | q)`, by the recurrence.
pub fn asc_s(m: usize, x: C64, a: C64, b: C64, q: QParam) -> C64 {
    aw_eval(m, x, &AWParams::new(a, b, ZERO, ZERO, q))
}

/// `s_m(x; a, b | q) = a^{-m} (ab; q)_m ₃φ₂(q^{-m}, ae^{iψ}, ae^{-iψ}; ab, 0; q, q)`,
/// with the larger of `a`, `b` in front.
pub fn asc_s_series(m: usize, x: C64, a: C64, b: C64, q: QParam) -> C64 {
    let (a, b) = if b.norm() > a.norm() { (b, a) } else { (a, b) };
    if a == ZERO {
        return cq_hermite(m, x, q);
    }
    let qv = q.value();
    let e = unit_from_cos(x);
    let mut total = ZERO;
    for k in 0..=m {
        let qk = qv.powi(k as i32);
        total += qpoch_finite_multi(&[C64::from(qv.powi(-(m as i32))), a * e, a / e], q, k) / qpoch_finite(C64::from(qv), q, k)
            * qk
            * qpoch_finite(a * b * qk, q, m - k);
    }
    total / a.powi(m as i32)
}

/// Continuous q-ultraspherical `C_n(cos ψ; β | q)`.
pub fn cq_ultra(n: usize, x: C64, beta: f64, q: QParam) -> C64 {
    let e = unit_from_cos(x);
    let beta = C64::from(beta);
    let qc = C64::from(q.value());
    (0..=n)
        .map(|k| {
            qpoch_finite(beta, q, k) * qpoch_finite(beta, q, n - k) / (qpoch_finite(qc, q, k) * qpoch_finite(qc, q, n - k))
                * e.powi(n as i32 - 2 * k as i32)
        })
        .sum()
}

/// Continuous q-Hermite `H_n(x | q)`.
pub fn cq_hermite(n: usize, x: C64, q: QParam) -> C64 {
    let (mut prev, mut cur) = (ZERO, ONE);
    for k in 0..n {
        let next = 2.0 * x * cur - (1.0 - q.powi(k as i32)) * prev;
        prev = cur;
        cur = next;
    }
    cur
}
