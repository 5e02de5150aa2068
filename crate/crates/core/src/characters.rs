//! Additive and multiplicative characters of `F_q`, their lifts to
//! extensions, and Gauss sums.
//!
//! Characters are evaluated to root-of-unity indices: an additive character
//! value is `ζ_p^index`, a multiplicative one `ζ_{q-1}^index` (or zero).

use num_complex::Complex64;
use num_integer::Integer;
use std::f64::consts::PI;

use crate::cyclotomic::{CyclotomicSum, SumValue};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElement};

/// Orders up to this size are accumulated exactly.
pub const EXACT_ORDER_LIMIT: u64 = 1 << 16;

/// `χ_a(x) = ζ_p^{Tr(ax)}`.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    field: Field,
    a: Elem,
}

impl AdditiveCharacter {
    pub fn new(field: &Field, a: Elem) -> Self {
        AdditiveCharacter {
            field: field.clone(),
            a,
        }
    }

    /// The character with `a = 1`.
    pub fn canonical(field: &Field) -> Self {
        AdditiveCharacter::new(field, Elem::ONE)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn parameter(&self) -> Elem {
        self.a
    }

    pub fn is_trivial(&self) -> bool {
        self.a == Elem::ZERO
    }

    pub fn index(&self, x: Elem) -> u32 {
        self.field.abs_trace(self.field.mul(self.a, x))
    }

    pub fn index_of(&self, x: &FieldElement) -> Result<u32> {
        if !x.field().same_as(&self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.index(x.value()))
    }

    /// `χ_a(Tr(x))` for `x` in an extension. By transitivity of the trace
    /// this is the absolute trace of `a x` in the extension.
    pub fn lifted_index(&self, ext: &Field, x: Elem) -> Result<u32> {
        let a = ext.subfield(&self.field)?.embed(self.a);
        Ok(ext.abs_trace(ext.mul(a, x)))
    }

    /// The parameter `a` embedded in `ext`, so that lifted indices are
    /// `ext.abs_trace(a * x)`.
    pub fn lifted_parameter(&self, ext: &Field) -> Result<Elem> {
        Ok(ext.subfield(&self.field)?.embed(self.a))
    }
}

/// A multiplicative character value: a root-of-unity index or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultValue {
    Zero,
    Root(u64),
}

/// `ψ_j(g^k) = ζ_{q-1}^{jk}`, `ψ_j(0) = 0`.
#[derive(Clone, Debug)]
pub struct MultiplicativeCharacter {
    field: Field,
    j: u64,
}

impl MultiplicativeCharacter {
    pub fn new(field: &Field, j: u64) -> Self {
        let n = field.order() - 1;
        MultiplicativeCharacter {
            field: field.clone(),
            j: j % n,
        }
    }

    /// The quadratic character `η` of an odd field.
    pub fn quadratic(field: &Field) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::WrongCharacteristic {
                found: 2,
                expected: 3,
            });
        }
        Ok(MultiplicativeCharacter::new(field, (field.order() - 1) / 2))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn exponent(&self) -> u64 {
        self.j
    }

    /// Root-of-unity order `q - 1`, the denominator of every index.
    pub fn modulus(&self) -> u64 {
        self.field.order() - 1
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        let n = self.modulus();
        n / self.j.gcd(&n)
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    pub fn eval(&self, x: Elem) -> MultValue {
        match self.field.log(x) {
            None => MultValue::Zero,
            Some(k) => MultValue::Root((self.j * k) % self.modulus()),
        }
    }

    /// `ψ(Norm(x))` for `x` in an extension.
    pub fn lifted_eval(&self, ext: &Field, x: Elem) -> Result<MultValue> {
        let norm = ext.subfield(&self.field)?.norm(x)?;
        Ok(self.eval(norm))
    }

    /// For an extension `F` with generator `G`, the table
    /// `r -> index of ψ(Norm(G^r))` for `r` in `0..q-1`; the lifted value at
    /// `G^l` is the entry at `l mod (q-1)`.
    pub fn lifted_index_table(&self, ext: &Field) -> Result<Vec<u64>> {
        let sub = ext.subfield(&self.field)?;
        let n = self.modulus();
        let step = (ext.order() - 1) / n;
        (0..n)
            .map(|r| {
                let y = sub.restrict(ext.exp(r * step)).ok_or(Error::NotASubfield)?;
                let k = self.field.log(y).expect("norm of a unit is a unit");
                Ok((self.j * k) % n)
            })
            .collect()
    }
}

/// Exact `Σ ζ_p^i` over a stream of additive indices.
pub fn additive_index_sum(p: u32, indices: impl IntoIterator<Item = u32>) -> CyclotomicSum {
    let mut counts = vec![0i64; p as usize];
    for i in indices {
        counts[i as usize] += 1;
    }
    CyclotomicSum::from_counts(p, counts).expect("length matches order")
}

/// `g(ψ, χ) = Σ_{c ≠ 0} ψ(c) χ(c)`, exact over `ζ_{lcm(p, q-1)}` when that
/// order is at most [`EXACT_ORDER_LIMIT`].
pub fn gauss_sum(psi: &MultiplicativeCharacter, chi: &AdditiveCharacter) -> Result<SumValue> {
    let field = psi.field();
    if !field.same_as(chi.field()) {
        return Err(Error::FieldMismatch);
    }
    let p = field.characteristic() as u64;
    let n = psi.modulus();
    let order = p.lcm(&n);
    let terms = field.elements(true).map(|c| {
        let MultValue::Root(m) = psi.eval(c) else {
            unreachable!("nonzero argument")
        };
        (m, chi.index(c) as u64)
    });
    if order <= EXACT_ORDER_LIMIT {
        let mut counts = vec![0i64; order as usize];
        for (m, a) in terms {
            counts[((m * (order / n) + a * (order / p)) % order) as usize] += 1;
        }
        Ok(SumValue::Exact(CyclotomicSum::from_counts(order as u32, counts)?))
    } else {
        let z: Complex64 = terms
            .map(|(m, a)| {
                let angle = 2.0 * PI * (m as f64 / n as f64 + a as f64 / p as f64);
                Complex64::from_polar(1.0, angle)
            })
            .sum();
        Ok(SumValue::Approx(z))
    }
}

/// `g(η, χ)` for the quadratic character `η`, exact in `Z[ζ_p]` since
/// `η` only takes the values `±1`.
pub fn quadratic_gauss_sum(chi: &AdditiveCharacter) -> Result<CyclotomicSum> {
    let field = chi.field();
    let eta = MultiplicativeCharacter::quadratic(field)?;
    let p = field.characteristic();
    let mut counts = vec![0i64; p as usize];
    for c in field.elements(true) {
        let sign = match eta.eval(c) {
            MultValue::Root(0) => 1,
            _ => -1,
        };
        counts[chi.index(c) as usize] += sign;
    }
    CyclotomicSum::from_counts(p, counts)
}

/// `η(x)` as `1`, `-1` or `0`.
pub fn quadratic_sign(field: &Field, x: Elem) -> Result<i64> {
    let eta = MultiplicativeCharacter::quadratic(field)?;
    Ok(match eta.eval(x) {
        MultValue::Zero => 0,
        MultValue::Root(0) => 1,
        MultValue::Root(_) => -1,
    })
}
