use super::poly::UniPoly;
use super::ring::{Field, Int, Ring, Scalar};
use std::fmt;
use std::rc::Rc;

/// Element of C[T]/(m) for a monic modulus m.
#[derive(Clone, PartialEq)]
pub struct ModElem<C: Scalar> {
    modulus: Rc<UniPoly<C>>,
    value: UniPoly<C>,
}

impl<C: Scalar> ModElem<C> {
    pub fn new(modulus: &Rc<UniPoly<C>>, value: UniPoly<C>) -> Self {
        debug_assert!(modulus.is_monic());
        ModElem { modulus: modulus.clone(), value: value.rem_monic(modulus) }
    }

    pub fn constant(modulus: &Rc<UniPoly<C>>, c: C) -> Self {
        Self::new(modulus, UniPoly::constant(c))
    }

    pub fn generator(modulus: &Rc<UniPoly<C>>) -> Self {
        Self::new(modulus, UniPoly::x())
    }

    pub fn value(&self) -> &UniPoly<C> {
        &self.value
    }

    pub fn modulus(&self) -> &Rc<UniPoly<C>> {
        &self.modulus
    }
}

impl<C: Scalar> fmt::Debug for ModElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {:?}", self.value, self.modulus)
    }
}

impl<C: Scalar> Ring for ModElem<C> {
    fn zero_like(&self) -> Self {
        ModElem { modulus: self.modulus.clone(), value: UniPoly::zero() }
    }
    fn one_like(&self) -> Self {
        Self::new(&self.modulus, UniPoly::one())
    }
    fn add(&self, o: &Self) -> Self {
        ModElem { modulus: self.modulus.clone(), value: self.value.add(&o.value) }
    }
    fn sub(&self, o: &Self) -> Self {
        ModElem { modulus: self.modulus.clone(), value: self.value.sub(&o.value) }
    }
    fn mul(&self, o: &Self) -> Self {
        Self::new(&self.modulus, self.value.mul(&o.value))
    }
    fn neg(&self) -> Self {
        ModElem { modulus: self.modulus.clone(), value: self.value.neg() }
    }
    fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
    fn mul_int(&self, c: &Int) -> Self {
        ModElem { modulus: self.modulus.clone(), value: self.value.mul_int(c) }
    }
}

impl<C: Scalar + Field> Field for ModElem<C> {
    fn try_inv(&self) -> Option<Self> {
        self.value
            .inverse_mod(&self.modulus)
            .map(|v| ModElem { modulus: self.modulus.clone(), value: v })
    }
}
