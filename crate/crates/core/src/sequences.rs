//! Integer sequences `(G_u(a x))_{x ∈ F_q^*}` over fields of characteristic
//! 2, where `G_u(y) = G_u(y, 1)`, and their correlations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::charsum::{g_sum_brute, GSumSpec};
use crate::error::{Error, Result};
use crate::field::{mod_inverse_exponent, Elem, Field};

/// `G_u(0)`, i.e. `Σ_{c ≠ 0} χ(c^{-1})`; only used inside the convolution.
pub const G_AT_ZERO: i64 = -1;

/// `G_u(y)` for every code `y`, with `G_u(0) = -1`.
pub fn g_table(field: &Field, u: u32) -> Result<Vec<i64>> {
    if field.characteristic() != 2 {
        return Err(Error::WrongCharacteristic {
            found: field.characteristic(),
            expected: 2,
        });
    }
    let mut table = vec![G_AT_ZERO];
    for y in field.elements(true) {
        let sum = g_sum_brute(&GSumSpec::new(field, u, y, Elem::ONE)?, 1)?;
        table.push(sum.as_integer().expect("characteristic 2 sums are integers"));
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct SequenceProfile {
    pub field: Field,
    pub u: u32,
    pub a: Elem,
    /// `values[x - 1] = G_u(a x)` for codes `x = 1 .. q - 1`.
    pub values: Vec<i64>,
    /// `gcd(u, q - 1) = 1`; the correlation identities are only claimed then.
    pub coprime: bool,
    table: Vec<i64>,
}

#[derive(Serialize)]
struct ProfileJson {
    q: u64,
    u: u32,
    a: u32,
    values: BTreeMap<u32, i64>,
    coprime: bool,
}

impl SequenceProfile {
    pub fn value(&self, x: Elem) -> Option<i64> {
        (x != Elem::ZERO).then(|| self.values[x.0 as usize - 1])
    }

    /// `{"q", "u", "a", "values": {x: G_u(ax)}, "coprime"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as u32 + 1, v))
            .collect();
        serde_json::to_value(ProfileJson {
            q: self.field.order(),
            u: self.u,
            a: self.a.0,
            values,
            coprime: self.coprime,
        })
        .expect("plain data serializes")
    }

    fn g(&self, y: Elem) -> i64 {
        self.table[y.0 as usize]
    }
}

/// The sequence for `a`. With `allow_noncoprime`, profiles with
/// `gcd(u, q - 1) > 1` are built but marked as not theorem-backed.
pub fn build_sequence(field: &Field, u: u32, a: Elem, allow_noncoprime: bool) -> Result<SequenceProfile> {
    if a == Elem::ZERO {
        return Err(Error::ZeroParameter("a"));
    }
    let table = g_table(field, u)?;
    let modulus = field.order() - 1;
    let coprime = mod_inverse_exponent(u as u64, modulus).is_ok();
    if !coprime && !allow_noncoprime {
        return Err(Error::NotCoprime {
            value: u as u64,
            modulus,
        });
    }
    let values = field
        .elements(true)
        .map(|x| table[field.mul(a, x).0 as usize])
        .collect();
    Ok(SequenceProfile {
        field: field.clone(),
        u,
        a,
        values,
        coprime,
        table,
    })
}

/// `Σ_x G_u(a x) G_u(b x)`.
pub fn cross_correlation(pa: &SequenceProfile, pb: &SequenceProfile) -> Result<i64> {
    if !pa.field.same_as(&pb.field) || pa.u != pb.u {
        return Err(Error::ProfileMismatch);
    }
    Ok(pa.values.iter().zip(&pb.values).map(|(x, y)| x * y).sum())
}

/// `h ↦ Σ_x G_u(a x) G_u(a h x)` over `h ∈ F_q^*`.
pub fn autocorrelation_spectrum(profile: &SequenceProfile) -> Vec<(Elem, i64)> {
    let f = &profile.field;
    f.elements(true)
        .map(|h| {
            let total = f
                .elements(true)
                .map(|x| {
                    let ax = f.mul(profile.a, x);
                    profile.g(ax) * profile.g(f.mul(h, ax))
                })
                .sum();
            (h, total)
        })
        .collect()
}

/// `h,autocorrelation` rows.
pub fn autocorrelation_csv(spectrum: &[(Elem, i64)]) -> String {
    let mut out = String::from("h,autocorrelation\n");
    for (h, v) in spectrum {
        out.push_str(&format!("{},{}\n", h.0, v));
    }
    out
}

/// Both sides of `Σ_x G_u(a x) G_u(b (c - x)) = q G_u(c (a^{u'} + b^{u'})^u) + G_u(b c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionReport {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

pub fn convolution_identity_check(field: &Field, u: u32, a: Elem, b: Elem, c: Elem) -> Result<ConvolutionReport> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if v == Elem::ZERO {
            return Err(Error::ZeroParameter(name));
        }
    }
    let table = g_table(field, u)?;
    let u_inv = mod_inverse_exponent(u as u64, field.order() - 1)?;
    let g = |y: Elem| table[y.0 as usize];
    let lhs = field
        .elements(true)
        .map(|x| g(field.mul(a, x)) * g(field.mul(b, field.sub(c, x))))
        .sum();
    let s = field.add(field.pow_u(a, u_inv), field.pow_u(b, u_inv));
    let arg = field.mul(c, field.pow_u(s, u as u64));
    let rhs = field.order() as i64 * g(arg) + g(field.mul(b, c));
    Ok(ConvolutionReport {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}
