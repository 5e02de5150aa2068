use std::fmt;

use super::{Elem, Field};
use crate::error::{Error, Result};

/// An element bundled with its field, for callers that prefer a value type
/// over passing the field around. Mixing owners is a [`Error::FieldMismatch`].
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: Field, value: Elem) -> Self {
        FieldElement { field, value }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    /// Coefficient vector, low-degree first.
    pub fn rep(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    /// Discrete log to the field generator, `None` for zero.
    pub fn log(&self) -> Option<u64> {
        self.field.log(self.value)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, k: i64) -> Result<FieldElement> {
        Ok(self.wrap(self.field.pow(self.value, k)?))
    }

    pub fn is_zero(&self) -> bool {
        self.value == Elem::ZERO
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.rep(), self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn mixing_fields_is_rejected() {
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        let x = f4.element(Elem(2));
        let y = f8.element(Elem(2));
        assert_eq!(x.add(&y).err(), Some(Error::FieldMismatch));
        assert_eq!(x.mul(&x).unwrap().rep(), vec![1, 1]);
    }

    #[test]
    fn log_matches_generator_power() {
        let k = make_field(5, 2).unwrap();
        for c in k.elements(true) {
            let x = k.element(c);
            let l = x.log().unwrap();
            assert_eq!(k.pow_u(k.generator(), l), c);
        }
        assert_eq!(k.element(Elem::ZERO).log(), None);
    }
}
