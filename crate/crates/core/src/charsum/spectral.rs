//! From L-polynomials or initial sum values to the numbers `ω_j` with
//! `sum_s = -Σ_j ω_j^s`, and back to predicted sums.

use num_complex::Complex64;

use super::LPolynomial;
use crate::cyclotomic::{CyclotomicField, CyclotomicSum, RationalCyclotomic};
use crate::error::{Error, Result};
use crate::ring::{Complexes, Ring};
use crate::roots::{polynomial_roots, MAX_ITERATIONS};
use crate::symmetric::{elementary_from_power_sums, two_var_dickson};

/// Relative slack for the bound `|ω| <= √q`.
pub const BOUND_SLACK: f64 = 1e-6;
const RESIDUAL_GATE: f64 = 1e-9;
const ROOT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralSource {
    LPolynomial,
    InitialSums,
    InitialComplex,
}

/// The `ω_j` together with their elementary symmetric functions.
#[derive(Clone, Debug)]
pub struct SpectralSet {
    pub omegas: Vec<Complex64>,
    /// `e_1 .. e_t` exactly, when the source was exact.
    pub exact_e: Option<Vec<RationalCyclotomic>>,
    /// `e_1 .. e_t` as complex numbers.
    pub complex_e: Vec<Complex64>,
    /// Number of trailing zero coefficients trimmed before root finding.
    pub degree_drop: usize,
    pub source: SpectralSource,
    /// Largest `|L(1/ω)|` over the roots.
    pub max_residual: f64,
}

impl SpectralSet {
    pub fn power_sum(&self, s: u32) -> Complex64 {
        self.omegas.iter().map(|w| w.powu(s)).sum()
    }

    /// `-Σ_j ω_j^s`.
    pub fn predicted_complex(&self, s: u32) -> Complex64 {
        -self.power_sum(s)
    }

    /// The exact `e_j` in `Z[ζ_n]`, when they are integral.
    pub fn exact_e_integral(&self) -> Option<Vec<CyclotomicSum>> {
        self.exact_e
            .as_ref()?
            .iter()
            .map(|e| e.to_integral())
            .collect()
    }
}

fn sign(j: usize) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Roots `ω` of `Σ_k A_k w^{t-k}` (the reciprocal of `L`), gated on `|L(1/ω)|`.
fn omegas_from_coeffs(a: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let t = a.len() - 1;
    if t == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let reversed: Vec<Complex64> = a.iter().rev().copied().collect();
    let omegas = polynomial_roots(&reversed, ROOT_SEED)?;
    let scale = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for w in &omegas {
        let inv = w.inv();
        let r = a
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * inv + c)
            .norm();
        worst = worst.max(r);
    }
    if !(worst <= RESIDUAL_GATE * scale) {
        return Err(Error::RootFindingDiverged {
            iterations: MAX_ITERATIONS,
        });
    }
    Ok((omegas, worst))
}

/// Spectral set of an exact L-polynomial. Trailing zero coefficients are
/// trimmed and counted in `degree_drop`.
pub fn spectral_from_lpoly(l: &LPolynomial) -> Result<SpectralSet> {
    let mut coeffs = l.coeffs.clone();
    let mut drop = 0;
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
        drop += 1;
    }
    let a: Vec<Complex64> = coeffs.iter().map(|c| c.to_complex()).collect();
    let (omegas, residual) = omegas_from_coeffs(&a)?;
    let exact_e: Vec<RationalCyclotomic> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| RationalCyclotomic::from(&c.int_scale(sign(j))))
        .collect();
    Ok(SpectralSet {
        complex_e: exact_e.iter().map(|e| e.to_complex()).collect(),
        exact_e: Some(exact_e),
        omegas,
        degree_drop: drop,
        source: SpectralSource::LPolynomial,
        max_residual: residual,
    })
}

/// Spectral set from exact values `sum_1 .. sum_t`: `p_s = -sum_s`, then
/// `e_j` by Newton's identities over `Q(ζ_n)`.
pub fn spectral_from_initial_sums(values: &[CyclotomicSum]) -> Result<SpectralSet> {
    let Some(first) = values.first() else {
        return Ok(SpectralSet {
            omegas: Vec::new(),
            exact_e: Some(Vec::new()),
            complex_e: Vec::new(),
            degree_drop: 0,
            source: SpectralSource::InitialSums,
            max_residual: 0.0,
        });
    };
    let order = first.order();
    if let Some(v) = values.iter().find(|v| v.order() != order) {
        return Err(Error::OrderMismatch {
            left: order,
            right: v.order(),
        });
    }
    let ring = CyclotomicField { order };
    let p: Vec<RationalCyclotomic> = values
        .iter()
        .map(|v| RationalCyclotomic::from(&v.neg()))
        .collect();
    let mut e = elementary_from_power_sums(&ring, &p, values.len())?;
    let mut drop = 0;
    while e.last().is_some_and(|x| x.is_zero()) {
        e.pop();
        drop += 1;
    }
    let mut a = vec![Complex64::new(1.0, 0.0)];
    a.extend(
        e.iter()
            .enumerate()
            .map(|(i, x)| x.to_complex() * sign(i + 1) as f64),
    );
    let (omegas, residual) = omegas_from_coeffs(&a)?;
    Ok(SpectralSet {
        complex_e: e.iter().map(|x| x.to_complex()).collect(),
        exact_e: Some(e),
        omegas,
        degree_drop: drop,
        source: SpectralSource::InitialSums,
        max_residual: residual,
    })
}

/// Complex counterpart of [`spectral_from_initial_sums`], for sums that
/// were only available approximately.
pub fn spectral_from_initial_complex(values: &[Complex64]) -> Result<SpectralSet> {
    let p: Vec<Complex64> = values.iter().map(|v| -v).collect();
    let e = elementary_from_power_sums(&Complexes, &p, values.len())?;
    let mut a = vec![Complex64::new(1.0, 0.0)];
    a.extend(e.iter().enumerate().map(|(i, x)| x * sign(i + 1) as f64));
    let (omegas, residual) = omegas_from_coeffs(&a)?;
    Ok(SpectralSet {
        omegas,
        exact_e: None,
        complex_e: e,
        degree_drop: 0,
        source: SpectralSource::InitialComplex,
        max_residual: residual,
    })
}

/// Sums `1..=s_max` from exact `e_j` by
/// `sum_s = Σ_{j<s} (-1)^{j-1} e_j sum_{s-j} + (-1)^s s e_s`, `e_j = 0` beyond `t`.
pub fn predict_from_elementary(e: &[RationalCyclotomic], order: u32, s_max: usize) -> Vec<RationalCyclotomic> {
    let ring = CyclotomicField { order };
    let ej = |j: usize| e.get(j - 1).cloned().unwrap_or_else(|| ring.zero());
    let mut out: Vec<RationalCyclotomic> = Vec::with_capacity(s_max);
    for s in 1..=s_max {
        let mut acc = ring.int_scale(&ej(s), sign(s) * s as i64);
        for j in 1..s {
            let t = ring.mul(&ej(j), &out[s - j - 1]);
            acc = ring.add(&acc, &ring.int_scale(&t, sign(j - 1)));
        }
        out.push(acc);
    }
    out
}

/// The exact sum at extension degree `s` predicted from a spectral set.
pub fn predict_sum(spectral: &SpectralSet, order: u32, s: usize) -> Result<CyclotomicSum> {
    let e = spectral
        .exact_e
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("spectral set has no exact data".into()))?;
    if let Some(x) = e.iter().find(|x| x.order() != order) {
        return Err(Error::OrderMismatch {
            left: order,
            right: x.order(),
        });
    }
    let v = predict_from_elementary(e, order, s).pop().ok_or_else(|| {
        Error::InvalidInput("extension degree must be positive".into())
    })?;
    v.to_integral()
        .ok_or_else(|| Error::InvalidInput("prediction is not an algebraic integer".into()))
}

/// `k^{(s)}` from `k = k^{(1)}` by `k^{(s)} = -k k^{(s-1)} - q k^{(s-2)}`, `k^{(0)} = -2`.
pub fn kloosterman_recursive<R: Ring>(ring: &R, k: &R::El, q: i64, s: usize) -> R::El {
    let mut prev = ring.from_int(-2);
    if s == 0 {
        return prev;
    }
    let mut cur = k.clone();
    for _ in 1..s {
        let next = ring.sub(&ring.neg(&ring.mul(k, &cur)), &ring.int_scale(&prev, q));
        prev = cur;
        cur = next;
    }
    cur
}

/// The recursion without the factor `q`, `k^{(s)} = -k k^{(s-1)} - k^{(s-2)}`;
/// kept to show where it departs from the true values.
pub fn kloosterman_printed_recursion<R: Ring>(ring: &R, k: &R::El, s: usize) -> R::El {
    kloosterman_recursive(ring, k, 1, s)
}

/// `k^{(s)} = -D_s(-k, q)`.
pub fn kloosterman_dickson<R: Ring>(ring: &R, k: &R::El, q: i64, s: usize) -> R::El {
    let d = two_var_dickson(ring, &ring.neg(k), &ring.from_int(q), s);
    ring.neg(&d)
}

/// Magnitudes of the `ω_j` relative to `√q`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub hypotheses_ok: bool,
    /// Whether the bound is asserted (only under the hypotheses).
    pub asserted: bool,
    pub violation: bool,
}

/// Reports `min/max |ω_j| / √q`; a violation is only flagged when the
/// hypotheses hold and the ratio exceeds `1 + BOUND_SLACK`.
pub fn verify_weil_bound(spectral: &SpectralSet, q: u64, hypotheses_ok: bool) -> WeilReport {
    let root_q = (q as f64).sqrt();
    let ratios: Vec<f64> = spectral.omegas.iter().map(|w| w.norm() / root_q).collect();
    let (min_ratio, max_ratio) = if ratios.is_empty() {
        (0.0, 0.0)
    } else {
        (
            ratios.iter().copied().fold(f64::INFINITY, f64::min),
            ratios.iter().copied().fold(0.0, f64::max),
        )
    };
    WeilReport {
        min_ratio,
        max_ratio,
        hypotheses_ok,
        asserted: hypotheses_ok,
        violation: hypotheses_ok && max_ratio > 1.0 + BOUND_SLACK,
    }
}
