//! Exact arithmetic in `Z[ζ_n]` and `Q(ζ_n)`.
//!
//! Values are count vectors over the powers `ζ_n^0 .. ζ_n^{n-1}`. The
//! canonical form is the remainder modulo the cyclotomic polynomial `Φ_n`,
//! so two canonical vectors are equal iff the algebraic numbers are. For a
//! prime order this is the familiar rule of subtracting `counts[n-1]` from
//! every entry.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Nonzero coefficients `(degree, coefficient)` of `Φ_n` below the leading term.
struct CycloPoly {
    degree: usize,
    lower: Vec<(usize, i64)>,
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn build_cyclo_poly(n: usize) -> CycloPoly {
    // Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}
    let mut num = vec![1i64];
    let mut dens = Vec::new();
    for d in (1..=n).filter(|d| n % d == 0) {
        match mobius((n / d) as u64) {
            1 => {
                let mut next = vec![0i64; num.len() + d];
                for (i, &c) in num.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        // exact division by x^d - 1: num_i = quot_{i-d} - quot_i
        let m = num.len() - d;
        let mut quot = vec![0i64; m];
        for i in 0..m {
            let prev = if i >= d { quot[i - d] } else { 0 };
            quot[i] = prev - num[i];
        }
        num = quot;
    }
    let degree = num.len() - 1;
    let lower = num[..degree]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    CycloPoly { degree, lower }
}

fn cyclo_poly(n: u32) -> Arc<CycloPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let c = Arc::new(build_cyclo_poly(n as usize));
    cache.lock().unwrap().insert(n, c.clone());
    c
}

/// Coefficients of `Φ_n`, low-degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let c = cyclo_poly(n);
    let mut v = vec![0; c.degree + 1];
    v[c.degree] = 1;
    for &(i, a) in &c.lower {
        v[i] = a;
    }
    v
}

/// An element of `Z[ζ_n]` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicSum {
    #[serde(rename = "p")]
    order: u32,
    counts: Vec<i64>,
}

impl fmt::Debug for CyclotomicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (k, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{sign}{m}")?,
                (k, 1) => write!(f, "{sign}z{}^{k}", self.order)?,
                (k, m) => write!(f, "{sign}{m}*z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

fn reduce_i64(order: u32, counts: &mut [i64]) {
    let phi = cyclo_poly(order);
    let d = phi.degree;
    for i in (d..counts.len()).rev() {
        let c = counts[i];
        if c == 0 {
            continue;
        }
        counts[i] = 0;
        let shift = i - d;
        for &(j, a) in &phi.lower {
            counts[shift + j] -= c * a;
        }
    }
}

impl CyclotomicSum {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "root-of-unity order must be positive");
        CyclotomicSum {
            order,
            counts: vec![0; order as usize],
        }
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        let mut s = CyclotomicSum::zero(order);
        s.counts[0] = n;
        s.canonicalize();
        s
    }

    pub fn one(order: u32) -> Self {
        CyclotomicSum::from_int(order, 1)
    }

    /// `ζ_n^k`.
    pub fn root(order: u32, k: i64) -> Self {
        let mut s = CyclotomicSum::zero(order);
        s.counts[k.rem_euclid(order as i64) as usize] = 1;
        s.canonicalize();
        s
    }

    /// Canonical form of an arbitrary count vector of length `order`.
    pub fn from_counts(order: u32, counts: Vec<i64>) -> Result<Self> {
        if counts.len() != order as usize || order == 0 {
            return Err(Error::InvalidInput(format!(
                "count vector of length {} for order {order}",
                counts.len()
            )));
        }
        let mut s = CyclotomicSum { order, counts };
        s.canonicalize();
        Ok(s)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// Idempotent reduction modulo `Φ_n`.
    pub fn canonicalize(&mut self) {
        reduce_i64(self.order, &mut self.counts);
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.counts[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.counts[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicSum {
            order: self.order,
            counts,
        })
    }

    pub fn neg(&self) -> Self {
        CyclotomicSum {
            order: self.order,
            counts: self.counts.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn int_scale(&self, m: i64) -> Self {
        CyclotomicSum {
            order: self.order,
            counts: self.counts.iter().map(|c| c * m).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order as usize;
        let mut acc = vec![0i128; n];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    acc[(i + j) % n] += a as i128 * b as i128;
                }
            }
        }
        let counts = acc
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
            .collect();
        let mut s = CyclotomicSum {
            order: self.order,
            counts,
        };
        s.canonicalize();
        Ok(s)
    }

    /// Complex conjugate, `ζ^k -> ζ^{-k}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut counts = vec![0; n];
        for (k, &c) in self.counts.iter().enumerate() {
            counts[(n - k) % n] += c;
        }
        let mut s = CyclotomicSum {
            order: self.order,
            counts,
        };
        s.canonicalize();
        s
    }

    /// Re-expresses the value over `ζ_m` for a multiple `m` of the order.
    pub fn lift(&self, order: u32) -> Result<Self> {
        if order % self.order != 0 {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: order,
            });
        }
        let step = (order / self.order) as usize;
        let mut counts = vec![0; order as usize];
        for (k, &c) in self.counts.iter().enumerate() {
            counts[k * step] = c;
        }
        let mut s = CyclotomicSum { order, counts };
        s.canonicalize();
        Ok(s)
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * PI * k as f64 / n))
            .sum()
    }
}

/// An element of `Q(ζ_n)` in canonical form (remainder modulo `Φ_n`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalCyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for RationalCyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*z{}^{k}", self.order))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl RationalCyclotomic {
    pub fn zero(order: u32) -> Self {
        RationalCyclotomic {
            order,
            coeffs: vec![BigRational::zero(); order as usize],
        }
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        let mut s = RationalCyclotomic::zero(order);
        s.coeffs[0] = BigRational::from_integer(n.into());
        s.canonicalize();
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn canonicalize(&mut self) {
        let phi = cyclo_poly(self.order);
        let d = phi.degree;
        for i in (d..self.coeffs.len()).rev() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut self.coeffs[i]);
            let shift = i - d;
            for &(j, a) in &phi.lower {
                self.coeffs[shift + j] -= &c * BigInt::from(a);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "root-of-unity orders differ");
        RationalCyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        RationalCyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "root-of-unity orders differ");
        let n = self.order as usize;
        let mut acc = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % n] += a * b;
                }
            }
        }
        let mut s = RationalCyclotomic {
            order: self.order,
            coeffs: acc,
        };
        s.canonicalize();
        s
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        RationalCyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// The value in `Z[ζ_n]` when every coordinate is integral.
    pub fn to_integral(&self) -> Option<CyclotomicSum> {
        let counts = self
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten())
            .collect::<Option<Vec<_>>>()?;
        Some(CyclotomicSum {
            order: self.order,
            counts,
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let v = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n) * v
            })
            .sum()
    }

    /// Largest absolute coordinate, as a float; used for scale estimates.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl From<&CyclotomicSum> for RationalCyclotomic {
    fn from(s: &CyclotomicSum) -> Self {
        RationalCyclotomic {
            order: s.order,
            coeffs: s
                .counts
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }
}

/// `Q(ζ_n)` as a coefficient ring; divides by nonzero integers.
#[derive(Debug, Clone, Copy)]
pub struct CyclotomicField {
    pub order: u32,
}

impl Ring for CyclotomicField {
    type El = RationalCyclotomic;

    fn zero(&self) -> RationalCyclotomic {
        RationalCyclotomic::zero(self.order)
    }
    fn one(&self) -> RationalCyclotomic {
        RationalCyclotomic::from_int(self.order, 1)
    }
    fn from_int(&self, n: i64) -> RationalCyclotomic {
        RationalCyclotomic::from_int(self.order, n)
    }
    fn add(&self, a: &RationalCyclotomic, b: &RationalCyclotomic) -> RationalCyclotomic {
        a.add(b)
    }
    fn neg(&self, a: &RationalCyclotomic) -> RationalCyclotomic {
        a.neg()
    }
    fn mul(&self, a: &RationalCyclotomic, b: &RationalCyclotomic) -> RationalCyclotomic {
        a.mul(b)
    }
    fn is_zero(&self, a: &RationalCyclotomic) -> bool {
        a.is_zero()
    }
    fn int_scale(&self, a: &RationalCyclotomic, m: i64) -> RationalCyclotomic {
        a.scale(&BigRational::from_integer(m.into()))
    }
    fn div_int(&self, a: &RationalCyclotomic, m: i64) -> Result<RationalCyclotomic> {
        if m == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(a.scale(&BigRational::new(BigInt::one(), m.into())))
    }
}

/// `Z[ζ_n]` as a coefficient ring; no division.
#[derive(Debug, Clone, Copy)]
pub struct CyclotomicIntegers {
    pub order: u32,
}

impl Ring for CyclotomicIntegers {
    type El = CyclotomicSum;

    fn zero(&self) -> CyclotomicSum {
        CyclotomicSum::zero(self.order)
    }
    fn one(&self) -> CyclotomicSum {
        CyclotomicSum::one(self.order)
    }
    fn from_int(&self, n: i64) -> CyclotomicSum {
        CyclotomicSum::from_int(self.order, n)
    }
    fn add(&self, a: &CyclotomicSum, b: &CyclotomicSum) -> CyclotomicSum {
        a.add(b).expect("element order matches ring")
    }
    fn neg(&self, a: &CyclotomicSum) -> CyclotomicSum {
        a.neg()
    }
    fn mul(&self, a: &CyclotomicSum, b: &CyclotomicSum) -> CyclotomicSum {
        a.mul(b).expect("element order matches ring")
    }
    fn is_zero(&self, a: &CyclotomicSum) -> bool {
        a.is_zero()
    }
    fn int_scale(&self, a: &CyclotomicSum, m: i64) -> CyclotomicSum {
        a.int_scale(m)
    }
}

/// A sum value: exact when the root-of-unity order is small enough,
/// otherwise a complex approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum SumValue {
    Exact(CyclotomicSum),
    Approx(Complex64),
}

impl SumValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            SumValue::Exact(s) => s.to_complex(),
            SumValue::Approx(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<&CyclotomicSum> {
        match self {
            SumValue::Exact(s) => Some(s),
            SumValue::Approx(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first order with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn cyclotomic_polynomial_degree_is_totient() {
        for n in 1..200u32 {
            let phi = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
            assert_eq!(cyclotomic_polynomial(n).len() - 1, phi, "n = {n}");
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        assert!(CyclotomicSum::from_counts(2, vec![1, 1]).unwrap().is_zero());
        assert!(CyclotomicSum::from_counts(3, vec![1, 1, 1]).unwrap().is_zero());
        assert!(CyclotomicSum::from_counts(12, vec![1; 12]).unwrap().is_zero());
    }

    #[test]
    fn to_complex_of_two_zeta3() {
        let z = CyclotomicSum::root(3, 1).int_scale(2).to_complex();
        assert!((z.re + 1.0).abs() < 1e-15);
        assert!((z.im - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn order_mismatch_is_reported() {
        let a = CyclotomicSum::one(3);
        let b = CyclotomicSum::one(5);
        assert_eq!(
            a.add(&b).err(),
            Some(Error::OrderMismatch { left: 3, right: 5 })
        );
    }

    #[test]
    fn multiplication_matches_complex() {
        let a = CyclotomicSum::from_counts(12, (0..12).map(|i| i * 3 - 7).collect()).unwrap();
        let b = CyclotomicSum::from_counts(12, (0..12).map(|i| (i * i) % 5 - 2).collect()).unwrap();
        let exact = a.mul(&b).unwrap().to_complex();
        let approx = a.to_complex() * b.to_complex();
        assert!((exact - approx).norm() < 1e-9);
    }

    #[test]
    fn lift_preserves_value() {
        let a = CyclotomicSum::from_counts(3, vec![2, -1, 5]).unwrap();
        let b = a.lift(24).unwrap();
        assert!((a.to_complex() - b.to_complex()).norm() < 1e-12);
        assert!(a.lift(10).is_err());
    }

    #[test]
    fn gauss_sum_q3_squared_norm() {
        // ζ_3 - ζ_3^2 times its conjugate is 3
        let g = CyclotomicSum::from_counts(3, vec![0, 1, -1]).unwrap();
        assert_eq!(g.mul(&g.conj()).unwrap().as_integer(), Some(3));
    }

    #[test]
    fn rational_roundtrip() {
        let a = CyclotomicSum::from_counts(5, vec![3, 0, -2, 1, 4]).unwrap();
        let r = RationalCyclotomic::from(&a);
        let k = CyclotomicField { order: 5 };
        let half = k.div_int(&r, 2).unwrap();
        let back = k.int_scale(&half, 2);
        assert_eq!(back.to_integral().unwrap(), a);
        assert!(half.to_integral().is_none());
    }

    #[test]
    fn json_shape() {
        let a = CyclotomicSum::from_counts(3, vec![1, 2, 0]).unwrap();
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v, serde_json::json!({"p": 3, "counts": [1, 2, 0]}));
    }
}
