//! Truncated operator model of the quantised function algebra on SU(2).
//!
//! Elements are formal linear combinations of words in α, β, γ, δ. The
//! infinite-dimensional ∗-representation on ℓ²(ℤ₊) is realised on the first
//! `N` basis vectors, with every matrix and vector carrying a trust window of
//! indices on which it agrees exactly with the infinite object.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{qbinomial, qpoch_finite, qpoch_infinite, QParam, TruncationPolicy, C64};
use crate::qpolys::{asc_h_all, asc_h_coeffs, PolyCoeffs};

const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Alpha, Generator::Beta, Generator::Gamma, Generator::Delta];

    /// Scale factor of the automorphism `D`.
    fn d_factor(self, q: f64) -> f64 {
        match self {
            Generator::Alpha | Generator::Gamma => q.powf(-0.5),
            Generator::Beta | Generator::Delta => q.sqrt(),
        }
    }

    /// Action on `e_n`: the image index and coefficient, or `None` for zero.
    fn act(self, n: usize, q: f64, phase: C64) -> Option<(usize, C64)> {
        match self {
            Generator::Alpha => (n > 0).then(|| (n - 1, phase * (1.0 - q.powi(2 * n as i32)).sqrt())),
            Generator::Beta => Some((n, -q.powi(n as i32 + 1) / phase)),
            Generator::Gamma => Some((n, phase * q.powi(n as i32))),
            Generator::Delta => Some((n + 1, (1.0 - q.powi(2 * n as i32 + 2)).sqrt() / phase)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::Alpha => "α",
            Generator::Beta => "β",
            Generator::Gamma => "γ",
            Generator::Delta => "δ",
        };
        f.write_str(s)
    }
}

/// Formal linear combination of generator words; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AlgebraElement {
    terms: BTreeMap<Vec<Generator>, C64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn scalar(c: C64) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(vec![], c);
        e
    }

    pub fn one() -> Self {
        AlgebraElement::scalar(ONE)
    }

    pub fn generator(g: Generator) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(vec![g], ONE);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<Generator>, C64)>) -> Self {
        let mut e = AlgebraElement::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    fn add_term(&mut self, word: Vec<Generator>, c: C64) {
        if c == ZERO {
            return;
        }
        let entry = self.terms.entry(word).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            let key: Vec<Generator> = self.terms.iter().find(|(_, v)| **v == ZERO).map(|(k, _)| k.clone()).unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Generator>, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[Generator]) -> C64 {
        self.terms.get(word).copied().unwrap_or(ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut r = self.clone();
        for (w, &c) in &other.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: C64) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(w, &c)| (w.clone(), c * s)))
    }

    /// Product `self · other` (words concatenate left to right).
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut r = AlgebraElement::zero();
        for (w1, &c1) in &self.terms {
            for (w2, &c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, c1 * c2);
            }
        }
        r
    }

    /// Ordered product `f_0 f_1 ... f_k`.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a AlgebraElement>) -> AlgebraElement {
        factors.into_iter().fold(AlgebraElement::one(), |acc, f| acc.mul(f))
    }

    /// The automorphism `D`: α, γ scale by `q^{-1/2}`, β, δ by `q^{1/2}`.
    pub fn apply_d(&self, q: QParam) -> AlgebraElement {
        self.map_words(|w, c| c * w.iter().map(|g| g.d_factor(q.value())).product::<f64>())
    }

    /// The inverse of [`AlgebraElement::apply_d`].
    pub fn apply_d_inverse(&self, q: QParam) -> AlgebraElement {
        self.map_words(|w, c| c / w.iter().map(|g| g.d_factor(q.value())).product::<f64>())
    }

    fn map_words(&self, f: impl Fn(&[Generator], C64) -> C64) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(w, &c)| (w.clone(), f(w, c))))
    }
}

/// A real parameter or the formal value `∞`, where `q^∞ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    /// `q^{self + offset}`.
    pub fn qpow(self, q: QParam, offset: f64) -> f64 {
        match self {
            ExtReal::Finite(x) => q.pow(x + offset),
            ExtReal::Infinity => 0.0,
        }
    }

    pub fn shift(self, by: f64) -> ExtReal {
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(x + by),
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        if x == f64::INFINITY {
            ExtReal::Infinity
        } else {
            ExtReal::Finite(x)
        }
    }
}

fn qsum(a: ExtReal, b: ExtReal, q: QParam, offset: f64) -> f64 {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => q.pow(x + y + offset),
        _ => 0.0,
    }
}

/// The dressed generators `α_{τ,σ}`, `β_{τ,σ}`, `γ_{τ,σ}`, `δ_{τ,σ}`.
pub fn dressed_element(kind: Generator, tau: ExtReal, sigma: ExtReal, q: QParam) -> AlgebraElement {
    use Generator::*;
    let h = q.value().sqrt();
    let (t, s) = (tau, sigma);
    let coeffs: [C64; 4] = match kind {
        Alpha => [h.into(), -I * s.qpow(q, -0.5), I * t.qpow(q, 0.5), qsum(s, t, q, -0.5).into()],
        Beta => [(-s.qpow(q, 0.5)).into(), -I / h, -I * qsum(s, t, q, 0.5), t.qpow(q, -0.5).into()],
        Gamma => [(-t.qpow(q, 0.5)).into(), I * qsum(t, s, q, -0.5), I * h, s.qpow(q, -0.5).into()],
        Delta => [qsum(t, s, q, 0.5).into(), I * t.qpow(q, -0.5), -I * s.qpow(q, 0.5), (1.0 / h).into()],
    };
    AlgebraElement::from_terms(Generator::ALL.iter().zip(coeffs).map(|(&g, c)| (vec![g], c)))
}

fn dressed(kind: Generator, tau: f64, sigma: f64, q: QParam) -> AlgebraElement {
    dressed_element(kind, ExtReal::Finite(tau), ExtReal::Finite(sigma), q)
}

/// `ρ_{τ,σ} = ½(q^{-τ-σ-1} α_{τ+1,σ+1} δ_{τ,σ} - q^{-τ-σ-1} - q^{τ+σ+1})`,
/// and `ρ_{τ,∞} = q^{-1} β_{τ+1,∞} γ_{τ,∞} + q^{2τ}`.
pub fn rho_element(tau: f64, sigma: ExtReal, q: QParam) -> AlgebraElement {
    match sigma {
        ExtReal::Finite(s) => {
            let c = q.pow(-tau - s - 1.0);
            dressed(Generator::Alpha, tau + 1.0, s + 1.0, q)
                .mul(&dressed(Generator::Delta, tau, s, q))
                .scale((0.5 * c).into())
                .add(&AlgebraElement::scalar((-0.5 * (c + q.pow(tau + s + 1.0))).into()))
        }
        ExtReal::Infinity => dressed_element(Generator::Beta, ExtReal::Finite(tau + 1.0), ExtReal::Infinity, q)
            .mul(&dressed_element(Generator::Gamma, ExtReal::Finite(tau), ExtReal::Infinity, q))
            .scale((1.0 / q.value()).into())
            .add(&AlgebraElement::scalar(q.pow(2.0 * tau).into())),
    }
}

/// `ρ_{τ,σ} = ½(q^{-τ-σ} β_{τ+1,σ-1} γ_{τ,σ} + q^{σ-τ-1} + q^{τ-σ+1})`.
pub fn rho_element_alt(tau: f64, sigma: f64, q: QParam) -> AlgebraElement {
    dressed(Generator::Beta, tau + 1.0, sigma - 1.0, q)
        .mul(&dressed(Generator::Gamma, tau, sigma, q))
        .scale((0.5 * q.pow(-tau - sigma)).into())
        .add(&AlgebraElement::scalar((0.5 * (q.pow(sigma - tau - 1.0) + q.pow(tau - sigma + 1.0))).into()))
}

/// The four kinds of minimal element `c^n_{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimalVariant {
    /// `c^n_{n,0}`
    RowPlus,
    /// `c^n_{-n,0}`
    RowMinus,
    /// `c^n_{0,n}`
    ColPlus,
    /// `c^n_{0,-n}`
    ColMinus,
}

/// Minimal element `c^n(τ, σ)` as an ordered product of `2n` dressed generators.
pub fn minimal_element(n: usize, variant: MinimalVariant, tau: f64, sigma: f64, q: QParam) -> Result<AlgebraElement> {
    use Generator::*;
    if n == 0 {
        return Err(Error::IndexOutOfRange("minimal elements need n >= 1".into()));
    }
    let nf = n as f64;
    let mut factors = Vec::with_capacity(2 * n);
    for j in 0..n {
        let jf = j as f64;
        let pair = match variant {
            MinimalVariant::RowPlus => [
                dressed(Delta, tau + 2.0 * nf - 1.0 - 2.0 * jf, sigma - 1.0, q),
                dressed(Gamma, tau + 2.0 * nf - 2.0 - 2.0 * jf, sigma, q),
            ],
            MinimalVariant::ColPlus => [
                dressed(Delta, tau - 1.0, sigma + 2.0 * nf - 1.0 - 2.0 * jf, q),
                dressed(Beta, tau, sigma + 2.0 * nf - 2.0 - 2.0 * jf, q),
            ],
            MinimalVariant::RowMinus => [
                dressed(Beta, tau - 2.0 * nf + 1.0 + 2.0 * jf, sigma - 1.0, q),
                dressed(Alpha, tau - 2.0 * nf + 2.0 + 2.0 * jf, sigma, q),
            ],
            MinimalVariant::ColMinus => [
                dressed(Gamma, tau - 1.0, sigma + 1.0 - 2.0 * nf + 2.0 * jf, q),
                dressed(Alpha, tau, sigma + 2.0 - 2.0 * nf + 2.0 * jf, q),
            ],
        };
        factors.extend(pair);
    }
    let pre = match variant {
        MinimalVariant::RowPlus => q.pow(nf * (1.0 - sigma)),
        MinimalVariant::ColPlus => q.pow(nf * (1.0 - tau)),
        MinimalVariant::RowMinus => q.pow(-nf * (sigma + 2.0 * tau - 2.0 * nf)),
        MinimalVariant::ColMinus => q.pow(-nf * (2.0 * sigma + tau - 2.0 * nf)),
    };
    Ok(AlgebraElement::product(&factors).scale(pre.into()))
}

/// `C^{l,j}(σ)`.
pub fn coeff_c(l: usize, j: i64, sigma: f64, q: QParam) -> Result<f64> {
    let li = l as i64;
    if j.abs() > li {
        return Err(Error::IndexOutOfRange(format!("C^(l,j) needs |j| <= l, got l={l}, j={j}")));
    }
    let q2 = q.base_power(2);
    let bin = qbinomial(2 * l, li - j, q2)?;
    let lm = (li - j) as usize;
    let lp = (li + j) as usize;
    let inner = (1.0 + q.pow(-4.0 * j as f64 - 2.0 * sigma))
        / ((1.0 + q.pow(-2.0 * sigma))
            * qpoch_finite((-q.pow(2.0 - 2.0 * sigma)).into(), q2, lm).re
            * qpoch_finite((-q.pow(2.0 + 2.0 * sigma)).into(), q2, lp).re);
    Ok(q.powi((li + j) as i32) * bin.sqrt() * inner.sqrt())
}

/// `d^{l,n}_{τ,σ} = C^{l,0}(σ) C^{l,n}(τ) q^{-l} / (q^{2l+2n+2}; q²)_{l-n}`.
pub fn coeff_d(l: usize, n: usize, tau: f64, sigma: f64, q: QParam) -> Result<f64> {
    if n > l {
        return Err(Error::IndexOutOfRange(format!("d^(l,n) needs 0 <= n <= l, got l={l}, n={n}")));
    }
    let q2 = q.base_power(2);
    let den = qpoch_finite(q.powi(2 * (l + n) as i32 + 2).into(), q2, l - n).re;
    Ok(coeff_c(l, 0, sigma, q)? * coeff_c(l, n as i64, tau, q)? * q.powi(-(l as i32)) / den)
}

/// Dense `N×N` matrix with bandwidth `K` and trust window `W`: entries with
/// both indices below `W` are exact entries of the infinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    dim: usize,
    data: Vec<C64>,
    bandwidth: usize,
    trust: usize,
}

impl TruncatedOperator {
    pub fn zeros(dim: usize, bandwidth: usize, trust: usize) -> Self {
        TruncatedOperator { dim, data: vec![ZERO; dim * dim], bandwidth, trust }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = TruncatedOperator::zeros(dim, 0, dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn trust(&self) -> usize {
        self.trust
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    fn at(&mut self, i: usize, j: usize) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }

    fn band(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.bandwidth)..(i + self.bandwidth + 1).min(self.dim)
    }

    pub fn scale(&self, s: C64) -> Self {
        TruncatedOperator { data: self.data.iter().map(|&x| x * s).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &TruncatedOperator) -> Self {
        self.combine(other, ONE)
    }

    pub fn sub(&self, other: &TruncatedOperator) -> Self {
        self.combine(other, -ONE)
    }

    fn combine(&self, other: &TruncatedOperator, s: C64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        TruncatedOperator {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + s * b).collect(),
            bandwidth: self.bandwidth.max(other.bandwidth),
            trust: self.trust.min(other.trust),
        }
    }

    /// `self + c·I`.
    pub fn add_identity(&self, c: C64) -> Self {
        let mut r = self.clone();
        for i in 0..self.dim {
            *r.at(i, i) += c;
        }
        r
    }

    /// Band-aware product; the trust window shrinks by the smaller bandwidth.
    pub fn mul(&self, other: &TruncatedOperator) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let bw = (self.bandwidth + other.bandwidth).min(n.saturating_sub(1));
        let trust = self.trust.min(other.trust).saturating_sub(self.bandwidth.min(other.bandwidth));
        let mut r = TruncatedOperator::zeros(n, bw, trust);
        for i in 0..n {
            for k in self.band(i) {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in other.band(k) {
                    r.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        r
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut r = TruncatedOperator::zeros(n, self.bandwidth, self.trust);
        for i in 0..n {
            for j in 0..n {
                r.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        r
    }

    /// `p(self)` by Horner's scheme.
    pub fn polynomial(&self, p: &PolyCoeffs) -> Self {
        let mut r = TruncatedOperator::identity(self.dim).scale(p.leading());
        for &c in p.coeffs.iter().rev().skip(1) {
            r = r.mul(self).add_identity(c);
        }
        r
    }

    /// Largest entry modulus on the leading `w×w` block.
    pub fn window_max_abs(&self, w: usize) -> f64 {
        let w = w.min(self.dim);
        (0..w).flat_map(|i| (0..w).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the leading `w×w` block.
    pub fn window_frobenius(&self, w: usize) -> f64 {
        let w = w.min(self.dim);
        (0..w).flat_map(|i| (0..w).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply(&self, v: &BasisVector) -> BasisVector {
        assert_eq!(self.dim, v.coeffs.len(), "dimension mismatch");
        let coeffs = (0..self.dim).map(|i| self.band(i).map(|j| self.get(i, j) * v.coeffs[j]).sum()).collect();
        BasisVector { coeffs, trust: self.trust.min(v.trust).saturating_sub(self.bandwidth) }
    }
}

/// `π(g)` on the first `N` basis vectors, optionally phase-twisted:
/// α, γ gain `e^{iφ/2}`, β, δ gain `e^{-iφ/2}`.
pub fn pi_generator(g: Generator, dim: usize, q: QParam, phase: Option<f64>) -> Result<TruncatedOperator> {
    pi_element(&AlgebraElement::generator(g), dim, q, phase)
}

/// `π(e)` as the exact compression of the infinite operator to span{e_0..e_{N-1}}.
pub fn pi_element(e: &AlgebraElement, dim: usize, q: QParam, phase: Option<f64>) -> Result<TruncatedOperator> {
    let bw = e.max_word_len();
    if dim < 2 || bw >= dim {
        return Err(Error::InsufficientTruncation(format!("dimension {dim} too small for word length {bw}")));
    }
    let ph = C64::from_polar(1.0, phase.unwrap_or(0.0) / 2.0);
    let qv = q.value();
    let mut m = TruncatedOperator::zeros(dim, bw, dim);
    for (word, &c) in e.terms() {
        'col: for n in 0..dim {
            let (mut idx, mut coef) = (n, c);
            for g in word.iter().rev() {
                match g.act(idx, qv, ph) {
                    Some((i, f)) => {
                        idx = i;
                        coef *= f;
                    }
                    None => continue 'col,
                }
            }
            if idx < dim {
                *m.at(idx, n) += coef;
            }
        }
    }
    Ok(m)
}

/// Vector in the `e_n` basis, exact on indices below `trust`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    pub coeffs: Vec<C64>,
    pub trust: usize,
}

impl BasisVector {
    pub fn new(coeffs: Vec<C64>) -> Self {
        let trust = coeffs.len();
        BasisVector { coeffs, trust }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm(&self) -> f64 {
        self.norm_window(self.coeffs.len())
    }

    pub fn norm_window(&self, w: usize) -> f64 {
        self.coeffs[..w.min(self.coeffs.len())].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ_i self_i · conj(other_i)`.
    pub fn inner(&self, other: &BasisVector) -> C64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        BasisVector { coeffs: self.coeffs.iter().map(|&c| c * s).collect(), trust: self.trust }
    }

    pub fn add(&self, other: &BasisVector) -> Self {
        BasisVector {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            trust: self.trust.min(other.trust),
        }
    }

    pub fn sub(&self, other: &BasisVector) -> Self {
        self.add(&other.scale(-ONE))
    }

    /// `‖(self - other)|_W‖ / ‖self|_W‖` on the common trust window.
    pub fn rel_diff(&self, other: &BasisVector) -> f64 {
        let w = self.trust.min(other.trust);
        let d = self.sub(other).norm_window(w);
        d / self.norm_window(w).max(other.norm_window(w)).max(f64::MIN_POSITIVE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `λ = -q^{2n}`
    Neg,
    /// `λ = q^{2τ+2n}`
    Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub branch: Branch,
    pub index: usize,
    pub value: f64,
}

impl SpectralPoint {
    pub fn new(branch: Branch, index: usize, tau: f64, q: QParam) -> Self {
        let value = match branch {
            Branch::Neg => -q.powi(2 * index as i32),
            Branch::Pos => q.pow(2.0 * tau + 2.0 * index as f64),
        };
        SpectralPoint { branch, index, value }
    }

    /// `⟨v_λ, v_λ⟩` for the normalisation `⟨v_λ, e_0⟩ = 1`.
    pub fn norm_sqr(&self, tau: f64, q: QParam, policy: &TruncationPolicy) -> f64 {
        let q2 = q.base_power(2);
        let n = self.index;
        let (c1, c2) = match self.branch {
            Branch::Neg => (-q.pow(2.0 - 2.0 * tau), -q.pow(2.0 * tau)),
            Branch::Pos => (-q.pow(2.0 + 2.0 * tau), -q.pow(-2.0 * tau)),
        };
        q.powi(-2 * n as i32)
            * qpoch_finite(q2.value().into(), q2, n).re
            * qpoch_finite(c1.into(), q2, n).re
            * qpoch_infinite(c2.into(), q2, policy).value.re
    }
}

/// Tridiagonal entries of `π(ρ_{τ,∞})`: diagonal `d_n`, and `T[n+1,n] = i b_n = -T[n,n+1]`.
pub fn rho_inf_entries(n: usize, tau: f64, q: QParam) -> (f64, f64) {
    let q2n = q.powi(2 * n as i32);
    (-q2n + q.pow(2.0 * tau) * q2n, q.pow(tau + n as f64) * (1.0 - q2n * q.value() * q.value()).sqrt())
}

/// Eigenvector of `π(ρ_{τ,∞})` with `⟨v, e_0⟩ = 1` for an arbitrary trial `λ`.
///
/// The components solve the three-term recurrence, computed backwards as a
/// continued fraction for the ratios. Rejects `λ` when the first row leaves a
/// residual, and errors when the components have not decayed by index `N`.
pub fn eigvec_v_at(lambda: f64, tau: f64, dim: usize, q: QParam, policy: &TruncationPolicy) -> Result<BasisVector> {
    let depth = dim + 40;
    let mut r = vec![ZERO; depth + 1];
    for n in (1..depth).rev() {
        let (dn, _) = rho_inf_entries(n, tau, q);
        let (_, bprev) = rho_inf_entries(n - 1, tau, q);
        let (_, bn) = rho_inf_entries(n, tau, q);
        r[n] = I * bprev / ((lambda - dn) + I * bn * r[n + 1]);
    }
    let mut v = vec![ZERO; dim];
    v[0] = ONE;
    for n in 1..dim {
        v[n] = v[n - 1] * r[n];
    }
    let (d0, b0) = rho_inf_entries(0, tau, q);
    let row0 = (d0 - lambda) * v[0] - I * b0 * v[1];
    if row0.norm() > 1e-8 * (1.0 + lambda.abs() + b0 * v[1].norm()) {
        return Err(Error::domain(format!("{lambda} is not an eigenvalue (first-row residual {:e})", row0.norm())));
    }
    let vmax = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if v[dim - 1].norm() > policy.tail_eps * vmax {
        return Err(Error::InsufficientTruncation(format!("eigenvector not decayed by index {dim}")));
    }
    Ok(BasisVector::new(v))
}

pub fn eigvec_v(
    branch: Branch,
    n: usize,
    tau: f64,
    dim: usize,
    q: QParam,
    policy: &TruncationPolicy,
) -> Result<(BasisVector, SpectralPoint)> {
    let sp = SpectralPoint::new(branch, n, tau, q);
    Ok((eigvec_v_at(sp.value, tau, dim, q, policy)?, sp))
}

/// The `V₁` basis `v_0(q^τ), ..., v_{k-1}(q^τ)`, stopping early when truncation runs out.
pub fn v_basis(count: usize, tau: f64, dim: usize, q: QParam, policy: &TruncationPolicy) -> Vec<BasisVector> {
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        match eigvec_v(Branch::Neg, n, tau, dim, q, policy) {
            Ok((v, _)) => out.push(v),
            Err(_) => break,
        }
    }
    out
}

/// `u_y(q^τ, q^σ) = Σ_n q^{2n} h_n(y; q^τ, q^σ | q²) / (q², -q^{2-2τ}; q²)_n · v_n(q^τ)`.
pub fn eigvec_u(y: f64, tau: f64, sigma: f64, dim: usize, q: QParam, policy: &TruncationPolicy) -> Result<BasisVector> {
    let q2 = q.base_power(2);
    let (s, t) = (q.pow(tau), q.pow(sigma));
    let c2 = -q.pow(2.0 - 2.0 * tau);
    let mut acc = vec![ZERO; dim];
    let mut recent = [0.0f64; 4];
    let mut den = 1.0;
    let nmax = policy.max_terms.min(dim);
    let hs = asc_h_all(nmax, y.into(), s, t, q2);
    for n in 0..nmax {
        if n > 0 {
            let qm = q2.powi(n as i32 - 1);
            den *= (1.0 - qm * q2.value()) * (1.0 - c2 * qm);
        }
        let c = q.powi(2 * n as i32) * hs[n] / den;
        let (v, sp) = match eigvec_v(Branch::Neg, n, tau, dim, q, policy) {
            Ok(x) => x,
            Err(Error::InsufficientTruncation(_)) => {
                return Err(Error::NonConvergence { terms: n, tail: recent.iter().cloned().fold(0.0, f64::max) })
            }
            Err(e) => return Err(e),
        };
        for (a, b) in acc.iter_mut().zip(&v.coeffs) {
            *a += c * b;
        }
        recent[n % 4] = c.norm() * sp.norm_sqr(tau, q, policy).sqrt();
        let (b, cc) = asc_h_coeffs(n, s, t, q2);
        let settled = b.abs() < 1e-3 && (cc - 1.0).abs() < 1e-3;
        if settled && n >= 4 {
            let env = recent.iter().cloned().fold(0.0, f64::max);
            let tail = 2.0 * env * q.value() / (1.0 - q.value());
            if tail <= policy.tail_eps {
                return Ok(BasisVector::new(acc));
            }
        }
    }
    Err(Error::NonConvergence { terms: nmax, tail: recent.iter().cloned().fold(0.0, f64::max) })
}

/// Coefficients `a_n` of `w = Σ a_n v_n(q^τ)`, by projection on the trust window.
pub fn project_v(w: &BasisVector, basis: &[BasisVector]) -> Vec<C64> {
    let win = w.trust;
    basis
        .iter()
        .map(|v| {
            let num: C64 = w.coeffs[..win].iter().zip(&v.coeffs[..win]).map(|(a, b)| a * b.conj()).sum();
            num / v.norm_sqr_window(win)
        })
        .collect()
}

impl BasisVector {
    fn norm_sqr_window(&self, w: usize) -> f64 {
        self.coeffs[..w.min(self.coeffs.len())].iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `(Λw)(x) = Σ_n a_n q^{-n} e^{inφ} h_n(x; q^τ, q^σ | q²)` for `w = Σ a_n v_n(q^τ)`.
pub fn lambda_map(w: &BasisVector, basis: &[BasisVector], x: f64, tau: f64, sigma: f64, phi: f64, q: QParam) -> C64 {
    let a = project_v(w, basis);
    let hs = asc_h_all(a.len(), x.into(), q.pow(tau), q.pow(sigma), q.base_power(2));
    a.iter().enumerate().map(|(n, &an)| an * q.powi(-(n as i32)) * C64::from_polar(1.0, n as f64 * phi) * hs[n]).sum()
}

/// Which generalised matrix element `b^l_{i,j}` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `b^l_{n,0}`
    Row,
    /// `b^l_{0,n}`
    Column,
}

/// `π(b^l_{n,0}(τ,σ))` or `π(b^l_{0,n}(τ,σ))` for `|n| ≤ l`.
pub fn matrix_element_b(l: usize, n: i64, side: Side, tau: f64, sigma: f64, dim: usize, q: QParam) -> Result<TruncatedOperator> {
    use crate::qpolys::{qjacobi_coeffs, JacobiParams};
    let k = n.unsigned_abs() as usize;
    if k > l {
        return Err(Error::IndexOutOfRange(format!("b^l needs |n| <= l, got l={l}, n={n}")));
    }
    let q2 = q.base_power(2);
    let (d, s_par, t_par, variant) = match (side, n >= 0) {
        (Side::Row, true) => (coeff_d(l, k, tau, sigma, q)?, tau, sigma, MinimalVariant::RowPlus),
        (Side::Column, true) => (coeff_d(l, k, sigma, tau, q)?, sigma, tau, MinimalVariant::ColPlus),
        (Side::Row, false) => (coeff_d(l, k, -tau, -sigma, q)?, -tau, -sigma, MinimalVariant::RowMinus),
        (Side::Column, false) => (coeff_d(l, k, -sigma, -tau, q)?, -sigma, -tau, MinimalVariant::ColMinus),
    };
    let kf = k as f64;
    let jp = JacobiParams::new(kf, kf, q.pow(s_par), q.pow(t_par), q2)?;
    let poly = qjacobi_coeffs(l - k, &jp);
    let rho = pi_element(&rho_element(tau, ExtReal::Finite(sigma), q), dim, q, None)?;
    let prho = rho.polynomial(&poly);
    let m = if k == 0 { prho } else { pi_element(&minimal_element(k, variant, tau, sigma, q)?, dim, q, None)?.mul(&prho) };
    if m.trust() == 0 {
        return Err(Error::InsufficientTruncation(format!("dimension {dim} leaves no trusted window")));
    }
    Ok(m.scale(d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpolys::{aw_eval, JacobiParams};
    use proptest::prelude::*;
    use std::f64::consts::TAU;
    use Generator::*;

    fn q(x: f64) -> QParam {
        QParam::new(x).unwrap()
    }

    fn gen(g: Generator) -> AlgebraElement {
        AlgebraElement::generator(g)
    }

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn generator_entries() {
        let a = pi_generator(Alpha, 10, q(0.5), None).unwrap();
        assert!((a.get(0, 1).re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((a.get(0, 1).re - 0.8660254).abs() < 1e-7);
        let g = pi_generator(Gamma, 10, q(0.5), None).unwrap();
        assert!((g.get(2, 2).re - 0.25).abs() < 1e-16);
        let d = pi_generator(Delta, 10, q(0.5), None).unwrap();
        assert_eq!(a.adjoint().data, d.data);
        let b = pi_generator(Beta, 10, q(0.5), None).unwrap();
        assert_eq!(b.adjoint().data, g.scale((-0.5).into()).data);
    }

    #[test]
    fn unit_and_alpha_delta() {
        let qq = q(0.4);
        let one = pi_element(&AlgebraElement::one(), 8, qq, None).unwrap();
        assert_eq!(one.data, TruncatedOperator::identity(8).data);
        let ad = pi_element(&gen(Alpha).mul(&gen(Delta)), 12, qq, None).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let want = if i == j { 1.0 - 0.4f64.powi(2 * i as i32 + 2) } else { 0.0 };
                assert!((ad.get(i, j) - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn relations_vanish() {
        let qq = q(0.5);
        let qv = 0.5;
        let rels = [
            gen(Alpha).mul(&gen(Beta)).sub(&gen(Beta).mul(&gen(Alpha)).scale(qv.into())),
            gen(Alpha).mul(&gen(Gamma)).sub(&gen(Gamma).mul(&gen(Alpha)).scale(qv.into())),
            gen(Beta).mul(&gen(Delta)).sub(&gen(Delta).mul(&gen(Beta)).scale(qv.into())),
            gen(Gamma).mul(&gen(Delta)).sub(&gen(Delta).mul(&gen(Gamma)).scale(qv.into())),
            gen(Beta).mul(&gen(Gamma)).sub(&gen(Gamma).mul(&gen(Beta))),
            gen(Alpha).mul(&gen(Delta)).sub(&gen(Beta).mul(&gen(Gamma)).scale(qv.into())).sub(&AlgebraElement::one()),
            gen(Delta).mul(&gen(Alpha)).sub(&gen(Beta).mul(&gen(Gamma)).scale((1.0 / qv).into())).sub(&AlgebraElement::one()),
        ];
        for r in &rels {
            let m = pi_element(r, 40, qq, Some(0.7)).unwrap();
            assert!(m.window_max_abs(m.trust()) < 1e-15);
        }
    }

    #[test]
    fn twice_truncated_product_loses_trust() {
        let qq = q(0.5);
        let a = pi_generator(Alpha, 20, qq, None).unwrap();
        let d = pi_generator(Delta, 20, qq, None).unwrap();
        let ad = a.mul(&d);
        assert_eq!(ad.trust(), 19);
        let exact = pi_element(&gen(Alpha).mul(&gen(Delta)), 20, qq, None).unwrap();
        assert!(ad.sub(&exact).window_max_abs(19) < 1e-16);
        assert!(ad.sub(&exact).window_max_abs(20) > 0.5);
    }

    #[test]
    fn apply_d_examples() {
        let qq = q(0.3);
        let da = gen(Alpha).apply_d(qq);
        assert!((da.coefficient(&[Alpha]).re - 0.3f64.powf(-0.5)).abs() < 1e-15);
        let w = gen(Alpha).mul(&gen(Beta)).scale(C64::new(0.2, 0.7));
        let dw = w.apply_d(qq);
        assert!((dw.coefficient(&[Alpha, Beta]) - C64::new(0.2, 0.7)).norm() < 1e-15);
        let e = rho_element(0.2, ExtReal::Finite(-0.4), qq);
        let back = e.apply_d(qq).apply_d_inverse(qq);
        for (w, c) in e.terms() {
            assert!((back.coefficient(w) - c).norm() < 1e-14 * c.norm());
        }
    }

    #[test]
    fn dressed_limits() {
        let qq = q(0.5);
        let inf = ExtReal::Infinity;
        let a = dressed_element(Alpha, inf, inf, qq);
        assert_eq!(a.len(), 1);
        assert!((a.coefficient(&[Alpha]).re - 0.5f64.sqrt()).abs() < 1e-16);
        let (t, s) = (0.3, -0.2);
        let lhs = dressed(Alpha, t, s, qq);
        let rhs =
            dressed_element(Alpha, t.into(), inf, qq).add(&dressed_element(Beta, t.into(), inf, qq).scale(qq.pow(s).into()));
        let diff = lhs.sub(&rhs);
        assert!(diff.terms().all(|(_, c)| c.norm() < 1e-15));
        for (k, sign, other) in [(Beta, -1.0, Alpha), (Gamma, 1.0, Delta), (Delta, -1.0, Gamma)] {
            let lhs = dressed(k, t, s, qq);
            let rhs = dressed_element(k, t.into(), inf, qq)
                .add(&dressed_element(other, t.into(), inf, qq).scale((sign * qq.pow(s)).into()));
            assert!(lhs.sub(&rhs).terms().all(|(_, c)| c.norm() < 1e-15));
        }
        let g = dressed_element(Gamma, ExtReal::Finite(t), inf, qq);
        assert!((g.coefficient(&[Alpha]).re + qq.pow(t + 0.5)).abs() < 1e-16);
        assert!((g.coefficient(&[Gamma]) - I * 0.5f64.sqrt()).norm() < 1e-16);
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn rho_selfadjoint_and_forms_agree() {
        let qq = q(0.5);
        let (t, s) = (0.3, -0.2);
        let r1 = pi_element(&rho_element(t, ExtReal::Finite(s), qq), 60, qq, None).unwrap();
        let r2 = pi_element(&rho_element_alt(t, s, qq), 60, qq, None).unwrap();
        let w = r1.trust();
        let scale = r1.window_max_abs(w);
        assert!(r1.sub(&r1.adjoint()).window_max_abs(w) <= 1e-14 * scale.max(1.0));
        assert!(r1.sub(&r2).window_max_abs(w) <= 1e-13 * scale.max(1.0));
    }

    #[test]
    fn rho_infinity_is_tridiagonal() {
        let qq = q(0.5);
        let tau = 0.3;
        let r = pi_element(&rho_element(tau, ExtReal::Infinity, qq), 50, qq, None).unwrap();
        for i in 0..50 {
            for j in 0..50 {
                let (d, b) = rho_inf_entries(i.min(j), tau, qq);
                let want = if i == j {
                    C64::from(d)
                } else if i == j + 1 {
                    I * b
                } else if j == i + 1 {
                    -I * b
                } else {
                    ZERO
                };
                assert!((r.get(i, j) - want).norm() < 1e-15, "{i} {j}");
            }
        }
    }

    #[test]
    fn rho_infinity_is_limit() {
        let qq = q(0.5);
        let tau = 0.3;
        let lim = pi_element(&rho_element(tau, ExtReal::Infinity, qq), 40, qq, None).unwrap();
        let sig = 40.0;
        let approx =
            pi_element(&rho_element_alt(tau, sig, qq), 40, qq, None).unwrap().scale((2.0 * qq.pow(sig + tau - 1.0)).into());
        assert!(lim.sub(&approx).window_max_abs(40) < 1e-10);
    }

    #[test]
    fn minimal_element_single_factor() {
        let qq = q(0.5);
        let (t, s) = (0.2, -0.3);
        let c = minimal_element(1, MinimalVariant::ColPlus, t, s, qq).unwrap();
        let want = dressed(Delta, t - 1.0, s + 1.0, qq).mul(&dressed(Beta, t, s, qq)).scale(qq.pow(1.0 - t).into());
        assert!(c.sub(&want).terms().all(|(_, x)| x.norm() < 1e-14));
        let c = minimal_element(1, MinimalVariant::ColMinus, t, s, qq).unwrap();
        let want = dressed(Gamma, t - 1.0, s - 1.0, qq).mul(&dressed(Alpha, t, s, qq)).scale(qq.pow(-(2.0 * s + t - 2.0)).into());
        assert!(c.sub(&want).terms().all(|(_, x)| x.norm() < 1e-12));
        for n in 1..=3 {
            let c = minimal_element(n, MinimalVariant::RowPlus, t, s, qq).unwrap();
            assert_eq!(c.max_word_len(), 2 * n);
            assert!(c.len() <= 4usize.pow(2 * n as u32));
        }
        assert!(minimal_element(0, MinimalVariant::RowPlus, t, s, qq).is_err());
    }

    #[test]
    fn constants() {
        let qq = q(0.5);
        assert!((coeff_c(0, 0, 0.37, qq).unwrap() - 1.0).abs() < 1e-15);
        let a = coeff_c(3, 2, 0.4, qq).unwrap();
        let b = coeff_c(3, -2, -0.4, qq).unwrap();
        assert!((a - b).abs() <= 1e-14 * a);
        let a = coeff_d(2, 1, 0.3, 0.2, qq).unwrap();
        let b = coeff_d(2, 1, 0.3, -0.2, qq).unwrap();
        assert!((a - b).abs() <= 1e-14 * a);
        assert!(coeff_c(2, 3, 0.0, qq).is_err());
        assert!(coeff_d(2, 3, 0.0, 0.0, qq).is_err());
        assert!((coeff_d(0, 0, 0.4, -0.1, qq).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn b_element_examples() {
        let qq = q(0.5);
        let b0 = matrix_element_b(0, 0, Side::Row, 0.2, -0.1, 30, qq).unwrap();
        assert!(b0.sub(&TruncatedOperator::identity(30)).window_max_abs(30) < 1e-15);
        let b = matrix_element_b(2, 0, Side::Row, 0.2, -0.1, 60, qq).unwrap();
        let w = b.trust();
        assert!(w > 40);
        assert!(b.sub(&b.adjoint()).window_max_abs(w) <= 1e-11 * b.window_max_abs(w));
        let bc = matrix_element_b(2, 0, Side::Column, 0.2, -0.1, 60, qq).unwrap();
        assert!(b.sub(&bc).window_max_abs(w) <= 1e-11 * b.window_max_abs(w));
        for n in [-2i64, -1, 1, 2] {
            let m = matrix_element_b(2, n, Side::Row, 0.2, -0.1, 60, qq).unwrap();
            let k = n.unsigned_abs() as usize;
            assert!(m.bandwidth() <= 2 * k + 2 * (2 - k) * 2);
        }
        assert!(matrix_element_b(2, 3, Side::Row, 0.2, -0.1, 60, qq).is_err());
    }

    #[test]
    fn p00_symmetric_in_s_t() {
        let q2 = q(0.25);
        for n in 0..5 {
            let a = aw_eval(n, 0.3.into(), &JacobiParams::new(0.0, 0.0, 0.7, 1.3, q2).unwrap().aw_params());
            let b = aw_eval(n, 0.3.into(), &JacobiParams::new(0.0, 0.0, 1.3, 0.7, q2).unwrap().aw_params());
            assert!((a - b).norm() < 1e-13 * a.norm().max(1.0));
        }
    }

    fn rho_inf_op(tau: f64, dim: usize, qq: QParam) -> TruncatedOperator {
        pi_element(&rho_element(tau, ExtReal::Infinity, qq), dim, qq, None).unwrap()
    }

    #[test]
    fn v_eigen_residual_and_norm() {
        let qq = q(0.5);
        let tau = 0.3;
        let r = rho_inf_op(tau, 120, qq);
        let (v, sp) = eigvec_v(Branch::Neg, 2, tau, 120, qq, &pol()).unwrap();
        let res = r.apply(&v).sub(&v.scale(sp.value.into()));
        assert!(res.norm_window(r.apply(&v).trust) / v.norm() <= 1e-10);
        let want = 0.5f64.powi(-4)
            * qpoch_finite(0.25.into(), q(0.25), 2).re
            * qpoch_finite((-qq.pow(2.0 - 2.0 * tau)).into(), q(0.25), 2).re
            * qpoch_infinite((-qq.pow(2.0 * tau)).into(), q(0.25), &pol()).value.re;
        assert!((v.norm().powi(2) - want).abs() <= 1e-8 * want);
        assert!((sp.norm_sqr(tau, qq, &pol()) - want).abs() <= 1e-14 * want);
    }

    #[test]
    fn v_rejects_wrong_lambda() {
        assert!(matches!(eigvec_v_at(0.123, 0.3, 120, q(0.5), &pol()), Err(Error::Domain(_))));
    }

    #[test]
    fn v_gamma_shift() {
        let qq = q(0.5);
        let tau = 0.3;
        for branch in [Branch::Neg, Branch::Pos] {
            for n in 0..4 {
                let (v, sp) = eigvec_v(branch, n, tau, 120, qq, &pol()).unwrap();
                let g = pi_element(&dressed_element(Gamma, tau.into(), ExtReal::Infinity, qq), 120, qq, None).unwrap();
                let lhs = g.apply(&v);
                if branch == Branch::Pos && n == 0 {
                    assert!(lhs.norm_window(lhs.trust) <= 1e-12 * v.norm());
                    continue;
                }
                let v1 = eigvec_v_at(sp.value, tau + 1.0, 120, qq, &pol()).unwrap();
                let rhs = v1.scale(I * qq.value().sqrt() * (qq.pow(2.0 * tau) - sp.value));
                assert!(lhs.rel_diff(&rhs) <= 1e-9, "{branch:?} {n}");
            }
        }
    }

    #[test]
    fn u_eigen_residual_and_gamma_action() {
        let qq = q(0.5);
        let (tau, sig, th): (f64, f64, f64) = (0.2, -0.1, 1.0);
        let y = th.cos();
        let n = 150;
        let u = eigvec_u(y, tau, sig, n, qq, &pol()).unwrap();
        let dr = pi_element(&rho_element(tau, ExtReal::Finite(sig), qq).apply_d(qq), n, qq, None).unwrap();
        let ru = dr.apply(&u);
        assert!(ru.rel_diff(&u.scale(y.into())) <= 1e-8);
        let dg = pi_element(&dressed(Gamma, tau, sig, qq).apply_d(qq), n, qq, None).unwrap();
        let target = eigvec_u(y, tau + 1.0, sig - 1.0, n, qq, &pol()).unwrap().scale(I * (1.0 + qq.pow(2.0 * tau)));
        assert!(dg.apply(&u).rel_diff(&target) <= 1e-8);
    }

    #[test]
    fn u_first_term_is_v0() {
        // with every higher coefficient suppressed by a one-term policy, only v_0 remains
        let qq = q(0.5);
        let p = TruncationPolicy::new(1e-14, 1).unwrap();
        let r = eigvec_u(0.3, 0.2, 0.1, 60, qq, &p);
        assert!(matches!(r, Err(Error::NonConvergence { terms: 1, .. })));
        let (v0, _) = eigvec_v(Branch::Neg, 0, 0.2, 60, qq, &pol()).unwrap();
        assert_eq!(v0.coeffs[0], ONE);
    }

    #[test]
    fn trust_window_shrinks_under_application() {
        let qq = q(0.5);
        let m = pi_element(&gen(Alpha).mul(&gen(Alpha)), 30, qq, None).unwrap();
        let v = BasisVector::new(vec![ONE; 30]);
        let w = m.apply(&v);
        assert_eq!(w.trust, 28);
        let w2 = m.apply(&w);
        assert_eq!(w2.trust, 26);
    }

    proptest! {
        #[test]
        fn prop_relations_any_phase(qq in 0.1f64..0.9, ph in 0.0f64..TAU) {
            let qp = q(qq);
            let r = gen(Alpha).mul(&gen(Delta)).sub(&gen(Beta).mul(&gen(Gamma)).scale(qq.into())).sub(&AlgebraElement::one());
            let m = pi_element(&r, 30, qp, Some(ph)).unwrap();
            prop_assert!(m.window_max_abs(30) < 1e-14);
            let r = gen(Beta).mul(&gen(Gamma)).sub(&gen(Gamma).mul(&gen(Beta)));
            prop_assert!(pi_element(&r, 30, qp, Some(ph)).unwrap().window_max_abs(30) < 1e-15);
        }

        #[test]
        fn prop_rho_selfadjoint(qq in 0.2f64..0.7, tau in -0.7f64..0.7, sig in -0.7f64..0.7, ph in 0.0f64..TAU) {
            let qp = q(qq);
            let r = pi_element(&rho_element(tau, ExtReal::Finite(sig), qp), 40, qp, Some(ph)).unwrap();
            let s = r.window_max_abs(40);
            prop_assert!(r.sub(&r.adjoint()).window_max_abs(40) <= 1e-14 * s.max(1.0));
        }
    }
}
