//! Polynomials over `F_q`, with desk-scale factorization by trial division.

use std::fmt;

use super::{Elem, Field};
use crate::error::{Error, Result};

/// A polynomial over `F_q`, coefficients low-degree first, no trailing zeros.
#[derive(Clone)]
pub struct PolyOverFq {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for PolyOverFq {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for PolyOverFq {}

impl fmt::Debug for PolyOverFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

impl fmt::Display for PolyOverFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, v) => write!(f, "{v}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl PolyOverFq {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        PolyOverFq {
            field: field.clone(),
            coeffs,
        }
    }

    /// From element codes, low-degree first.
    pub fn from_codes(field: &Field, codes: &[u64]) -> Result<Self> {
        let coeffs = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyOverFq::new(field, coeffs))
    }

    pub fn zero(field: &Field) -> Self {
        PolyOverFq::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        PolyOverFq::new(field, vec![c])
    }

    /// `c x^d`.
    pub fn monomial(field: &Field, c: Elem, d: usize) -> Self {
        let mut v = vec![Elem::ZERO; d + 1];
        v[d] = c;
        PolyOverFq::new(field, v)
    }

    pub fn x(field: &Field) -> Self {
        PolyOverFq::monomial(field, Elem::ONE, 1)
    }

    /// Parses `"[c0,c1,...]"` (codes, low-degree first) or a sum of terms
    /// such as `"x^3+2x+1"` or `"4*x^2-x"`, where coefficients are element codes.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidInput(format!("cannot parse polynomial {s:?}"));
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if inner.is_empty() {
                return Ok(PolyOverFq::zero(field));
            }
            let codes = inner
                .split(',')
                .map(|c| c.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return PolyOverFq::from_codes(field, &codes);
        }
        if s.is_empty() {
            return Err(bad());
        }
        let mut acc = PolyOverFq::zero(field);
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('+') || rest.starts_with('-') {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, deg) = match term.find('x') {
                None => (term, 0usize),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    let d = match &term[pos + 1..] {
                        "" => 1,
                        e => e
                            .strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?,
                    };
                    (c, d)
                }
            };
            let c = if coef.is_empty() {
                Elem::ONE
            } else {
                field.elem(coef.parse::<u64>().map_err(|_| bad())?)?
            };
            let c = if negative { field.neg(c) } else { c };
            acc = acc.add(&PolyOverFq::monomial(field, c, deg));
        }
        Ok(acc)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        PolyOverFq::new(f, v)
    }

    pub fn neg(&self) -> Self {
        let v = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        PolyOverFq::new(&self.field, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Self {
        let v = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        PolyOverFq::new(&self.field, v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return PolyOverFq::zero(f);
        }
        let mut v = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Elem::ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        PolyOverFq::new(f, v)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = PolyOverFq::constant(&self.field, Elem::ONE);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyOverFq::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], inv_lead);
            quot[i] = c;
            if c == Elem::ZERO {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((PolyOverFq::new(f, quot), PolyOverFq::new(f, rem)))
    }

    pub fn make_monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.scale(self.field.inv(self.leading())?))
    }

    /// Monic gcd; `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        PolyOverFq::new(f, v)
    }

    /// Monic irreducible factors with multiplicities, by trial division
    /// against every monic polynomial of increasing degree.
    pub fn factor(&self) -> Result<Vec<(PolyOverFq, usize)>> {
        let mut rest = self.make_monic()?;
        let f = self.field.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap() >= 2 * d {
            f.check_budget((f.order() as u128).saturating_pow(d as u32))?;
            for g in enumerate_monic_polys(&f, d, false)? {
                let mut mult = 0;
                loop {
                    let (qt, r) = rest.div_rem(&g)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = qt;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((g, mult));
                }
                if rest.degree().unwrap() < 2 * d {
                    break;
                }
            }
            d += 1;
        }
        if rest.degree().unwrap() > 0 {
            match out.iter_mut().find(|(g, _)| *g == rest) {
                Some(entry) => entry.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort_by(|a, b| {
            (a.0.degree(), a.0.codes()).cmp(&(b.0.degree(), b.0.codes()))
        });
        Ok(out)
    }

    fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().rev().map(|c| c.0).collect()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Result<Self> {
        let one = PolyOverFq::constant(&self.field, Elem::ONE);
        Ok(self
            .factor()?
            .into_iter()
            .fold(one, |acc, (g, _)| acc.mul(&g)))
    }

    /// Number of distinct roots in a splitting field.
    pub fn distinct_root_count(&self) -> Result<usize> {
        Ok(self
            .factor()?
            .iter()
            .map(|(g, _)| g.degree().unwrap())
            .sum())
    }

    /// Whether `self` is a scalar times an `m`-th power.
    pub fn is_mth_power(&self, m: usize) -> Result<bool> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        Ok(self.factor()?.iter().all(|(_, e)| e % m == 0))
    }
}

/// Iterator over monic polynomials of a fixed degree in a fixed order:
/// the index, written in base `q`, lists `c_0, c_1, ...` (with `c_0` drawn
/// from `1..q` in the nonzero-constant stratum).
pub struct MonicPolys {
    field: Field,
    degree: usize,
    nonzero_constant: bool,
    next: u64,
    count: u64,
}

impl MonicPolys {
    pub fn count_total(&self) -> u64 {
        self.count
    }
}

/// All monic polynomials of degree `k`, or only those with `c_0 != 0`.
pub fn enumerate_monic_polys(field: &Field, k: usize, nonzero_constant: bool) -> Result<MonicPolys> {
    let q = field.order() as u128;
    let count = if nonzero_constant && k > 0 {
        q.saturating_pow(k as u32 - 1) * (q - 1)
    } else {
        q.saturating_pow(k as u32)
    };
    field.check_budget(count)?;
    Ok(MonicPolys {
        field: field.clone(),
        degree: k,
        nonzero_constant: nonzero_constant && k > 0,
        next: 0,
        count: count as u64,
    })
}

impl Iterator for MonicPolys {
    type Item = PolyOverFq;

    fn next(&mut self) -> Option<PolyOverFq> {
        if self.next >= self.count {
            return None;
        }
        let q = self.field.order();
        let mut idx = self.next;
        self.next += 1;
        let mut v = Vec::with_capacity(self.degree + 1);
        for i in 0..self.degree {
            if i == 0 && self.nonzero_constant {
                v.push(Elem((idx % (q - 1)) as u32 + 1));
                idx /= q - 1;
            } else {
                v.push(Elem((idx % q) as u32));
                idx /= q;
            }
        }
        v.push(Elem::ONE);
        Some(PolyOverFq::new(&self.field, v))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.count - self.next) as usize;
        (n, Some(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use std::collections::HashSet;

    fn p(field: &Field, s: &str) -> PolyOverFq {
        PolyOverFq::parse(field, s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(p(&f, "x^2+2x+1").to_string(), "x^2+2x+1");
        assert_eq!(p(&f, "[1,2,1]"), p(&f, "x^2+2x+1"));
        assert_eq!(p(&f, "x-1"), p(&f, "x+2"));
        assert_eq!(p(&f, "2*x^3 + x"), p(&f, "[0,1,0,2]"));
        assert!(PolyOverFq::parse(&f, "x^").is_err());
        assert!(PolyOverFq::parse(&f, "3x").is_err());
    }

    #[test]
    fn division_identity() {
        let f = make_field(5, 1).unwrap();
        let a = p(&f, "x^5+3x^2+4");
        let b = p(&f, "2x^2+1");
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_and_derivative() {
        let f = make_field(2, 1).unwrap();
        let a = p(&f, "x^2+x"); // x(x+1)
        let b = p(&f, "x^2+1"); // (x+1)^2
        assert_eq!(a.gcd(&b).unwrap(), p(&f, "x+1"));
        assert!(p(&f, "x^2+1").derivative().is_zero());
        assert_eq!(p(&f, "x^3").derivative(), p(&f, "x^2"));
    }

    #[test]
    fn root_counts_and_powers() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(p(&f, "x^3+x^2").distinct_root_count().unwrap(), 2);
        let sq = p(&f, "x^2+x+1").pow(2);
        assert!(sq.is_mth_power(2).unwrap());
        assert_eq!(sq.distinct_root_count().unwrap(), 2);
        assert_eq!(sq.squarefree_part().unwrap(), p(&f, "x^2+x+1"));
        assert!(!p(&f, "x^3+x^2").is_mth_power(2).unwrap());
        let k = make_field(7, 1).unwrap();
        let split = p(&k, "x-1").mul(&p(&k, "x-2")).mul(&p(&k, "x-3"));
        assert_eq!(split.distinct_root_count().unwrap(), 3);
        assert_eq!(PolyOverFq::zero(&k).factor().err(), Some(Error::ZeroPolynomial));
    }

    #[test]
    fn factorization_reassembles() {
        let f = make_field(3, 1).unwrap();
        let g = p(&f, "x^2+1").pow(2).mul(&p(&f, "x+2")).mul(&p(&f, "x^3+2x+1"));
        let fac = g.factor().unwrap();
        let back = fac
            .iter()
            .fold(PolyOverFq::constant(&f, Elem::ONE), |acc, (h, e)| {
                acc.mul(&h.pow(*e as u32))
            });
        assert_eq!(back, g);
        assert_eq!(fac.len(), 3);
    }

    #[test]
    fn monic_enumeration_counts() {
        let f2 = make_field(2, 1).unwrap();
        let v: Vec<_> = enumerate_monic_polys(&f2, 1, true).unwrap().collect();
        assert_eq!(v, vec![p(&f2, "x+1")]);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(enumerate_monic_polys(&f3, 2, true).unwrap().count(), 6);
        let f4 = make_field(2, 2).unwrap();
        let all: Vec<_> = enumerate_monic_polys(&f4, 3, false).unwrap().collect();
        assert_eq!(all.len(), 64);
        let distinct: HashSet<Vec<Elem>> = all.iter().map(|g| g.coeffs().to_vec()).collect();
        assert_eq!(distinct.len(), 64);
        let small = f4.with_new_budget(10);
        assert!(matches!(
            enumerate_monic_polys(&small, 3, false),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
