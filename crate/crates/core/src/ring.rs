//! Coefficient rings used by the symmetric-function machinery.
//!
//! A ring is a context object; its elements are plain values of the
//! associated type `El`. This keeps element types cheap (finite-field
//! elements are `u32` codes) while the context carries the parameters
//! (characteristic, root-of-unity order) that the elements need.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

use crate::error::{Error, Result};

pub trait Ring {
    type El: Clone + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_int(&self, n: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }

    fn eq(&self, a: &Self::El, b: &Self::El) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn int_scale(&self, a: &Self::El, m: i64) -> Self::El {
        self.mul(a, &self.from_int(m))
    }

    fn pow(&self, a: &Self::El, mut n: u32) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Exact division by a small nonzero integer. Rings without it refuse
    /// anything but units.
    fn div_int(&self, a: &Self::El, m: i64) -> Result<Self::El> {
        match m {
            1 => Ok(a.clone()),
            -1 => Ok(self.neg(a)),
            _ => Err(Error::RingLacksDivision { divisor: m }),
        }
    }
}

/// The integers, as arbitrary-precision values.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Ring for Integers {
    type El = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn div_int(&self, a: &BigRational, m: i64) -> Result<BigRational> {
        if m == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(a / BigRational::from_integer(BigInt::from(m)))
    }
}

/// Double-precision complex numbers. Equality is exact; callers compare
/// with their own tolerance.
#[derive(Debug, Clone, Copy, Default)]
pub struct Complexes;

impl Ring for Complexes {
    type El = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(&self, n: i64) -> Complex64 {
        Complex64::new(n as f64, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn div_int(&self, a: &Complex64, m: i64) -> Result<Complex64> {
        if m == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(a / m as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_refuse_division() {
        let r = Integers;
        assert_eq!(
            r.div_int(&r.from_int(4), 2),
            Err(Error::RingLacksDivision { divisor: 2 })
        );
    }

    #[test]
    fn rational_pow_and_division() {
        let r = Rationals;
        let x = r.div_int(&r.from_int(3), 2).unwrap();
        let cube = r.pow(&x, 3);
        assert_eq!(cube, BigRational::new(27.into(), 8.into()));
        assert!(r.eq(&r.int_scale(&x, 2), &r.from_int(3)));
    }
}
