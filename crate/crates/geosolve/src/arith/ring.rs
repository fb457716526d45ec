use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// Commutative ring with 1 whose elements can build their own neutral
/// elements. Matrices and truncated series need shape information, which is
/// why zero and one are taken from an existing element.
pub trait Ring: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn vanishes(&self) -> bool;
    /// Whether `vanishes` decides equality to zero; false for symbolic values.
    fn exact_zero_test(&self) -> bool {
        true
    }
    /// Action of an integer scalar.
    fn mul_int(&self, c: &BigInt) -> Self;

    fn int_like(&self, c: &BigInt) -> Self {
        self.one_like().mul_int(c)
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

/// Rings whose neutral elements need no template.
pub trait Scalar: Ring + PartialEq {
    fn zero_s() -> Self;
    fn one_s() -> Self;
    fn from_int(c: &BigInt) -> Self {
        Self::one_s().mul_int(c)
    }
}

/// Rings where nonzero (or unit) elements can be inverted.
pub trait Field: Ring {
    /// `None` when the element is not a unit.
    fn try_inv(&self) -> Option<Self>;
}

pub type Int = BigInt;
pub type Rat = BigRational;

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        self * c
    }
}

impl Scalar for BigInt {
    fn zero_s() -> Self {
        BigInt::zero()
    }
    fn one_s() -> Self {
        BigInt::one()
    }
    fn from_int(c: &BigInt) -> Self {
        c.clone()
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_int(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        self * BigRational::from_integer(c.clone())
    }
}

impl Scalar for BigRational {
    fn zero_s() -> Self {
        BigRational::zero()
    }
    fn one_s() -> Self {
        BigRational::one()
    }
    fn from_int(c: &BigInt) -> Self {
        BigRational::from_integer(c.clone())
    }
}

impl Field for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a BigRational>>(it: I) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for r in it {
        if !r.denom().is_one() {
            l = l.lcm(r.denom());
        }
    }
    l
}

pub fn abs_rat(r: &BigRational) -> BigRational {
    r.abs()
}
