//! Closed forms of the L-polynomial for `u = 2`, split by characteristic.

use super::{g_sum_brute, l_polynomial, GSumSpec, LPolynomial, Provenance};
use crate::characters::{quadratic_gauss_sum, quadratic_sign, AdditiveCharacter};
use crate::cyclotomic::CyclotomicSum;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Which set of coefficients to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormVariant {
    /// As usually stated: `(1, G_2(a,b), q+1, q G_3(a, a^{-1}b))` in
    /// characteristic 2, `(1, G_2(a,b), η(a) g G_2(-b^2/a, a))` in
    /// characteristic 3 and `(1, G_2(a,b), η(a) g G_2(-b^2/(4a), -2a),
    /// q G_3(a, a^{-1}b))` above 3.
    Printed,
    /// Recounted with `p_2` of the roots in every degree. In characteristic 2
    /// the `c_1 = 0` stratum has `q - 1` members, so `A_2 = q`, and the sum
    /// over `c_2` in degree 3 never collapses, so `A_3 = 0`. In odd
    /// characteristic it collapses at `c_3 = b/(2a)`, leaving
    /// `A_3 = q Σ_{c_1} χ(a c_1^2) = q η(a) g`.
    Corrected,
}

fn g2(field: &Field, a: Elem, b: Elem) -> Result<CyclotomicSum> {
    g_sum_brute(&GSumSpec::new(field, 2, a, b)?, 1)
}

fn g3(field: &Field, a: Elem, b: Elem) -> Result<CyclotomicSum> {
    g_sum_brute(&GSumSpec::new(field, 3, a, b)?, 1)
}

/// The `u = 2` L-polynomial from its closed form. Component sums are
/// evaluated by brute force over `F_q`.
pub fn closed_form_lpoly_u2_variant(
    field: &Field,
    a: Elem,
    b: Elem,
    variant: ClosedFormVariant,
) -> Result<LPolynomial> {
    if a == Elem::ZERO {
        return Err(Error::ZeroParameter("a"));
    }
    if b == Elem::ZERO {
        return Err(Error::ZeroParameter("b"));
    }
    let p = field.characteristic();
    let q = field.order() as i64;
    let mut coeffs = vec![CyclotomicSum::one(p), g2(field, a, b)?];
    let printed = variant == ClosedFormVariant::Printed;
    match p {
        2 if printed => {
            coeffs.push(CyclotomicSum::from_int(p, q + 1));
            coeffs.push(g3(field, a, field.div(b, a)?)?.int_scale(q));
        }
        2 => {
            coeffs.push(CyclotomicSum::from_int(p, q));
            coeffs.push(CyclotomicSum::zero(p));
        }
        _ => {
            let gauss = quadratic_gauss_sum(&AdditiveCharacter::canonical(field))?;
            let eta = quadratic_sign(field, a)?;
            let b2 = field.mul(b, b);
            let four_a = field.mul(field.from_int(4), a);
            let x1 = field.neg(field.div(b2, four_a)?);
            let x2 = field.neg(field.mul(field.from_int(2), a));
            coeffs.push(gauss.int_scale(eta).mul(&g2(field, x1, x2)?)?);
            if !printed {
                coeffs.push(gauss.int_scale(eta * q));
            } else if p != 3 {
                coeffs.push(g3(field, a, field.div(b, a)?)?.int_scale(q));
            }
        }
    }
    Ok(LPolynomial {
        coeffs,
        provenance: Provenance::ClosedForm,
        next_coefficient: None,
    })
}

/// The `u = 2` L-polynomial in the form that agrees with enumeration.
pub fn closed_form_lpoly_u2(field: &Field, a: Elem, b: Elem) -> Result<LPolynomial> {
    closed_form_lpoly_u2_variant(field, a, b, ClosedFormVariant::Corrected)
}

/// A closed form side by side with the enumerated coefficients.
#[derive(Clone, Debug)]
pub struct ClosedFormCheck {
    pub variant: ClosedFormVariant,
    pub closed: LPolynomial,
    pub enumerated: LPolynomial,
    /// Per coefficient `A_0 ..`, over the longer of the two lists.
    pub matches: Vec<bool>,
}

impl ClosedFormCheck {
    pub fn run(field: &Field, a: Elem, b: Elem, variant: ClosedFormVariant) -> Result<Self> {
        let closed = closed_form_lpoly_u2_variant(field, a, b, variant)?;
        let enumerated = l_polynomial(&GSumSpec::new(field, 2, a, b)?, false)?;
        let p = field.characteristic();
        let zero = CyclotomicSum::zero(p);
        let n = closed.coeffs.len().max(enumerated.coeffs.len());
        let matches = (0..n)
            .map(|k| {
                let x = closed.coeffs.get(k).unwrap_or(&zero);
                let y = enumerated.coeffs.get(k).unwrap_or(&zero);
                x == y
            })
            .collect();
        Ok(ClosedFormCheck {
            variant,
            closed,
            enumerated,
            matches,
        })
    }

    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|&m| m)
    }
}
