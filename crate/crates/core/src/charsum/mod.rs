//! Brute-force character sums over `F_{q^s}`, the λ-function on monic
//! polynomials, and the L-polynomial of the sums
//! `G_u^{(s)}(a, b) = Σ_{c ≠ 0} χ^{(s)}(a c^u + b c^{-1})`.
//!
//! Every additive sum is accumulated exactly in `Z[ζ_p]`. The inner loop
//! never adds field elements: for `γ = G^l` the lifted index of
//! `Σ_i f_i γ^{e_i}` is `Σ_i Tr(G^{log f_i + e_i l})`, read from the
//! per-field table of traces of generator powers.

mod closed_form;
mod probe;
mod report;
mod spectral;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::{MultiplicativeCharacter, EXACT_ORDER_LIMIT};
use crate::cyclotomic::{CyclotomicSum, SumValue};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, PolyOverFq};

pub use closed_form::{
    closed_form_lpoly_u2, closed_form_lpoly_u2_variant, ClosedFormCheck, ClosedFormVariant,
};
pub use probe::{probe_csv, probe_open_question, ProbeGrid, ProbeRow, PROBE_HEADER};
pub use report::{lpoly_report, LpolyReport};
pub use spectral::{
    kloosterman_dickson, kloosterman_printed_recursion, kloosterman_recursive,
    predict_from_elementary, predict_sum, spectral_from_initial_complex,
    spectral_from_initial_sums, spectral_from_lpoly, verify_weil_bound, SpectralSet,
    SpectralSource, WeilReport, BOUND_SLACK,
};

const CHUNK: u64 = 1 << 14;

/// `F_{q^s}` as an extension of `field` (the field itself when `s = 1`).
pub fn extension_of(field: &Field, s: u32) -> Result<Field> {
    if s == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    if s == 1 {
        Ok(field.clone())
    } else {
        field.extension(s)
    }
}

/// Exact `Σ_{γ ≠ 0} ζ_p^{Tr(Σ_i f_i γ^{e_i}) + offset}` over `big`.
fn laurent_sum(big: &Field, terms: &[(Elem, i64)], offset: u32) -> CyclotomicSum {
    let p = big.characteristic();
    let n = big.order() - 1;
    let terms: Vec<(u64, u64)> = terms
        .iter()
        .filter(|(c, _)| *c != Elem::ZERO)
        .map(|&(c, e)| (big.log(c).unwrap(), e.rem_euclid(n as i64) as u64))
        .collect();
    let chunks = n.div_ceil(CHUNK);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(n);
            let mut counts = vec![0i64; p as usize];
            let mut pos: Vec<u64> = terms
                .iter()
                .map(|&(lc, e)| ((lc as u128 + e as u128 * start as u128) % n as u128) as u64)
                .collect();
            match big.power_trace_table() {
                Some(table) => {
                    for _ in start..end {
                        let mut idx = offset;
                        for (k, &(_, e)) in terms.iter().enumerate() {
                            idx += table[pos[k] as usize];
                            pos[k] += e;
                            if pos[k] >= n {
                                pos[k] -= n;
                            }
                        }
                        counts[(idx % p) as usize] += 1;
                    }
                }
                None => {
                    for _ in start..end {
                        let mut idx = offset;
                        for (k, &(_, e)) in terms.iter().enumerate() {
                            idx += big.trace_of_power(pos[k]);
                            pos[k] = (pos[k] + e) % n;
                        }
                        counts[(idx % p) as usize] += 1;
                    }
                }
            }
            counts
        })
        .reduce(
            || vec![0i64; p as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    CyclotomicSum::from_counts(p, hist).expect("length matches order")
}

fn embedded_terms(big: &Field, field: &Field, f: &PolyOverFq, sign: i64) -> Result<Vec<(Elem, i64)>> {
    if !f.field().same_as(field) {
        return Err(Error::FieldMismatch);
    }
    let sub = big.subfield(field)?;
    Ok(f.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (sub.embed(c), sign * i as i64))
        .collect())
}

/// `S_s(f) = Σ_{γ ∈ F_{q^s}} χ^{(s)}(f(γ))` for the canonical character.
pub fn weil_sum_brute(f: &PolyOverFq, s: u32) -> Result<CyclotomicSum> {
    let field = f.field();
    let big = extension_of(field, s)?;
    let sub = big.subfield(field)?;
    let offset = big.abs_trace(sub.embed(f.coeff(0)));
    let terms = embedded_terms(&big, field, f, 1)?;
    let nonzero = laurent_sum(&big, &terms, offset);
    let zero = CyclotomicSum::root(field.characteristic(), offset as i64);
    nonzero.add(&zero)
}

/// `G^{(s)}(f, g) = Σ_{c ∈ F_{q^s}^*} χ^{(s)}(f(c) + g(c^{-1}))`. The term
/// `c = 0` is left out since `g(c^{-1})` is undefined there.
pub fn gfg_sum_brute(f: &PolyOverFq, g: &PolyOverFq, s: u32) -> Result<CyclotomicSum> {
    let field = f.field();
    if f.degree().unwrap_or(0) < 1 || g.degree().unwrap_or(0) < 1 {
        return Err(Error::InvalidInput("f and g need positive degree".into()));
    }
    let big = extension_of(field, s)?;
    let sub = big.subfield(field)?;
    let offset = big.abs_trace(sub.embed(field.add(f.coeff(0), g.coeff(0))));
    let mut terms = embedded_terms(&big, field, f, 1)?;
    terms.extend(embedded_terms(&big, field, g, -1)?);
    Ok(laurent_sum(&big, &terms, offset))
}

/// Parameters of `G_u(a, b) = Σ_{c ≠ 0} χ(a c^u + b c^{-1})`.
#[derive(Clone, Debug)]
pub struct GSumSpec {
    pub field: Field,
    pub u: u32,
    pub a: Elem,
    pub b: Elem,
}

impl GSumSpec {
    pub fn new(field: &Field, u: u32, a: Elem, b: Elem) -> Result<Self> {
        if a == Elem::ZERO {
            return Err(Error::ZeroParameter("a"));
        }
        if u == 0 {
            return Err(Error::InvalidInput("u must be positive".into()));
        }
        field.elem(a.0 as u64)?;
        field.elem(b.0 as u64)?;
        Ok(GSumSpec {
            field: field.clone(),
            u,
            a,
            b,
        })
    }

    /// `gcd(u, q) = 1` or `b != 0`: the L-polynomial then has degree at most `u + 1`.
    pub fn vanishing_hypothesis(&self) -> bool {
        self.u % self.field.characteristic() != 0 || self.b != Elem::ZERO
    }

    /// `gcd(u, q) = gcd(u + 1, q) = 1` and `ab != 0`: the hypotheses of the bound.
    pub fn bound_hypothesis(&self) -> bool {
        let p = self.field.characteristic();
        self.u % p != 0 && (self.u + 1) % p != 0 && self.b != Elem::ZERO
    }
}

/// `G_u^{(s)}(a, b)`, exact.
pub fn g_sum_brute(spec: &GSumSpec, s: u32) -> Result<CyclotomicSum> {
    let big = extension_of(&spec.field, s)?;
    let sub = big.subfield(&spec.field)?;
    let terms = [(sub.embed(spec.a), spec.u as i64), (sub.embed(spec.b), -1)];
    Ok(laurent_sum(&big, &terms, 0))
}

/// `T_s(f) = Σ_{γ ∈ F_{q^s}} ψ^{(s)}(f(γ))` with `ψ(0) = 0`. Exact over
/// `ζ_{q-1}` when `q - 1 <= 2^16`, otherwise a complex approximation.
pub fn mult_sum_brute(
    f: &PolyOverFq,
    psi: &MultiplicativeCharacter,
    s: u32,
) -> Result<SumValue> {
    let field = psi.field();
    if !f.field().same_as(field) {
        return Err(Error::FieldMismatch);
    }
    let big = extension_of(field, s)?;
    let sub = big.subfield(field)?;
    let table = psi.lifted_index_table(&big)?;
    let n = psi.modulus();
    let coeffs: Vec<Elem> = f.coeffs().iter().map(|&c| sub.embed(c)).collect();
    let horner = |x: Elem| {
        coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, x), c))
    };
    let total = big.order();
    let chunks = total.div_ceil(CHUNK);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut counts = vec![0i64; n as usize];
            for code in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let v = horner(Elem(code as u32));
                if let Some(l) = big.log(v) {
                    counts[table[(l % n) as usize] as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0i64; n as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    if n <= EXACT_ORDER_LIMIT {
        Ok(SumValue::Exact(CyclotomicSum::from_counts(n as u32, hist)?))
    } else {
        let z = hist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
            })
            .sum();
        Ok(SumValue::Approx(z))
    }
}

/// Value of λ: a root-of-unity index or the absorbing zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaValue {
    Zero,
    Index(u32),
}

/// `p_u(α)` of the roots of `x^k - c_1 x^{k-1} + ... + (-1)^k c_k` from
/// `c = [c_1, ..., c_k]` by Newton's identities, `e_j = 0` beyond `k`.
pub fn root_power_sum(field: &Field, c: &[Elem], u: usize) -> Elem {
    let e = |j: usize| c.get(j - 1).copied().unwrap_or(Elem::ZERO);
    let mut p: Vec<Elem> = Vec::with_capacity(u);
    for m in 1..=u {
        let mut acc = field.mul(field.from_int(m as i64), e(m));
        if m % 2 == 0 {
            acc = field.neg(acc);
        }
        for j in 1..m {
            let t = field.mul(e(j), p[m - j - 1]);
            acc = if j % 2 == 1 {
                field.add(acc, t)
            } else {
                field.sub(acc, t)
            };
        }
        p.push(acc);
    }
    p[u - 1]
}

/// λ on the polynomial with `c = [c_1, ..., c_k]`, `k >= 1`.
fn lambda_from_c(spec: &GSumSpec, c: &[Elem]) -> LambdaValue {
    let f = &spec.field;
    let k = c.len();
    let ck = c[k - 1];
    if ck == Elem::ZERO {
        return LambdaValue::Zero;
    }
    let ck1 = if k == 1 { Elem::ONE } else { c[k - 2] };
    let inv_sum = f.div(ck1, ck).expect("c_k is nonzero");
    let pu = root_power_sum(f, c, spec.u as usize);
    let arg = f.add(f.mul(spec.a, pu), f.mul(spec.b, inv_sum));
    LambdaValue::Index(f.abs_trace(arg))
}

/// `λ(g)` for monic `g = Σ (-1)^j c_j x^{k-j}`: zero when `c_k = 0`,
/// otherwise `χ(a p_u + b c_{k-1}/c_k)` with `p_u` from Newton's identities.
pub fn lambda_eval(g: &PolyOverFq, spec: &GSumSpec) -> Result<LambdaValue> {
    if !g.field().same_as(&spec.field) {
        return Err(Error::FieldMismatch);
    }
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let f = &spec.field;
    let k = g.degree().unwrap();
    if k == 0 {
        return Ok(LambdaValue::Index(0));
    }
    let c: Vec<Elem> = (1..=k)
        .map(|j| {
            let coeff = g.coeff(k - j);
            if j % 2 == 1 {
                f.neg(coeff)
            } else {
                coeff
            }
        })
        .collect();
    Ok(lambda_from_c(spec, &c))
}

/// `A_k = Σ_{g ∈ Φ_k} λ(g)`, enumerating only the `c_k != 0` stratum.
pub fn phi_k_lambda_sum(k: usize, spec: &GSumSpec) -> Result<CyclotomicSum> {
    let f = &spec.field;
    let p = f.characteristic();
    if k == 0 {
        return Ok(CyclotomicSum::one(p));
    }
    let q = f.order();
    let count = (q as u128).saturating_pow(k as u32 - 1) * (q as u128 - 1);
    f.check_budget(count)?;
    let count = count as u64;
    let chunks = count.div_ceil(CHUNK);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut counts = vec![0i64; p as usize];
            let mut c = vec![Elem::ZERO; k];
            for idx in chunk * CHUNK..((chunk + 1) * CHUNK).min(count) {
                let mut r = idx;
                c[k - 1] = Elem((r % (q - 1)) as u32 + 1);
                r /= q - 1;
                for slot in c.iter_mut().take(k - 1) {
                    *slot = Elem((r % q) as u32);
                    r /= q;
                }
                if let LambdaValue::Index(i) = lambda_from_c(spec, &c) {
                    counts[i as usize] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0i64; p as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    CyclotomicSum::from_counts(p, hist)
}

/// Where an L-polynomial's coefficients came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Enumerated,
    ClosedForm,
}

/// `L(z) = Σ_k A_k z^k` with exact coefficients, `A_0 = 1`.
#[derive(Clone, Debug)]
pub struct LPolynomial {
    pub coeffs: Vec<CyclotomicSum>,
    pub provenance: Provenance,
    /// `A_{t+1}` when the vanishing check was requested.
    pub next_coefficient: Option<CyclotomicSum>,
}

impl LPolynomial {
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Some(true)` when the checked coefficient beyond the bound is zero.
    pub fn vanishes_beyond(&self) -> Option<bool> {
        self.next_coefficient.as_ref().map(|a| a.is_zero())
    }

    /// `e_j = (-1)^j A_j`.
    pub fn elementary(&self) -> Vec<CyclotomicSum> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, a)| if j % 2 == 0 { a.clone() } else { a.neg() })
            .collect()
    }
}

/// `A_0 .. A_{u+1}` by enumeration; with `vanish_check`, also `A_{u+2}`.
pub fn l_polynomial(spec: &GSumSpec, vanish_check: bool) -> Result<LPolynomial> {
    if !spec.vanishing_hypothesis() {
        return Err(Error::HypothesisViolated(format!(
            "p = {} divides u = {} and b = 0",
            spec.field.characteristic(),
            spec.u
        )));
    }
    let t = spec.u as usize + 1;
    let coeffs = (0..=t)
        .map(|k| phi_k_lambda_sum(k, spec))
        .collect::<Result<Vec<_>>>()?;
    let next_coefficient = if vanish_check {
        Some(phi_k_lambda_sum(t + 1, spec)?)
    } else {
        None
    };
    Ok(LPolynomial {
        coeffs,
        provenance: Provenance::Enumerated,
        next_coefficient,
    })
}

#[cfg(test)]
mod tests;
