use super::poly::UniPoly;
use super::ring::{Int, Rat};
use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

const FRAC_BITS: u32 = 32;
const WORK_BITS: u64 = 128;

/// Logarithmic height, carried as an exact rational upper bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Height(pub Rat);

impl Height {
    pub fn one() -> Self {
        Height(Rat::one())
    }
    pub fn value(&self) -> &Rat {
        &self.0
    }
    pub fn max(self, o: Height) -> Height {
        if o.0 > self.0 {
            o
        } else {
            self
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn ceil_div_pow2(a: &Int, k: u64) -> Int {
    let q = a >> k;
    if (&q << k) == *a {
        q
    } else {
        q + 1
    }
}

/// Fractional bits of log2(a / 2^k) where 2^k ≤ a < 2^{k+1}.
fn frac_bits(a: &Int, k: u64, up: bool) -> Int {
    let p = WORK_BITS;
    let scaled = if p >= k { a << (p - k) } else if up { ceil_div_pow2(a, k - p) } else { a >> (k - p) };
    let two = Int::one() << (p + 1);
    let mut y = scaled;
    let mut bits = Int::zero();
    for _ in 0..FRAC_BITS {
        let sq = &y * &y;
        y = if up { ceil_div_pow2(&sq, p) } else { sq >> p };
        bits <<= 1;
        if y >= two {
            bits += 1;
            y = if up { ceil_div_pow2(&y, 1) } else { y >> 1 };
        }
    }
    bits
}

/// Rational r with log2|a| ≤ r ≤ log2|a| + 2^-32 (exact for powers of two).
pub fn log2_upper(a: &Int) -> Rat {
    assert!(!a.is_zero(), "log2 of zero");
    let a = a.abs();
    let k = a.bits() - 1;
    if a == (Int::one() << k) {
        return Rat::from_integer(Int::from(k));
    }
    let b = frac_bits(&a, k, true) + 1;
    Rat::from_integer(Int::from(k)) + Rat::new(b, Int::one() << FRAC_BITS)
}

/// Rational r with log2|a| - 2^-32 ≤ r ≤ log2|a|.
pub fn log2_lower(a: &Int) -> Rat {
    assert!(!a.is_zero(), "log2 of zero");
    let a = a.abs();
    let k = a.bits() - 1;
    if a == (Int::one() << k) {
        return Rat::from_integer(Int::from(k));
    }
    let b = frac_bits(&a, k, false);
    Rat::from_integer(Int::from(k)) + Rat::new(b, Int::one() << FRAC_BITS)
}

pub fn log2_upper_rat(r: &Rat) -> Rat {
    log2_upper(r.numer()) - log2_lower(r.denom())
}

pub fn log2_lower_rat(r: &Rat) -> Rat {
    log2_lower(r.numer()) - log2_upper(r.denom())
}

/// max{log2|a|, 1}, with height(0) = 1.
pub fn height_int(a: &Int) -> Height {
    if a.is_zero() {
        return Height::one();
    }
    let l = log2_upper(a);
    if l < Rat::one() {
        Height::one()
    } else {
        Height(l)
    }
}

pub fn height_ints<'a, I: IntoIterator<Item = &'a Int>>(it: I) -> Height {
    // the height is monotone in |a|, so only the largest magnitude matters
    let mut best = Int::zero();
    for a in it {
        if a.magnitude() > best.magnitude() {
            best = a.abs();
        }
    }
    height_int(&best)
}

pub fn height_poly(p: &UniPoly<Int>) -> Height {
    height_ints(p.coeffs())
}

pub fn height_matrix(m: &[Vec<Int>]) -> Height {
    height_ints(m.iter().flatten())
}

/// Heights of rationals use max of numerator and denominator.
pub fn height_rat(r: &Rat) -> Height {
    height_int(r.numer()).max(height_int(r.denom()))
}

/// ceil(log2 |a|) for a ≠ 0, exact.
pub fn ceil_log2(a: &Int) -> u64 {
    let a = a.abs();
    let k = a.bits() - 1;
    if a == (Int::one() << k) {
        k
    } else {
        k + 1
    }
}

/// Smallest integer ≥ sqrt(a) for a ≥ 0.
pub fn isqrt_ceil(a: &Int) -> Int {
    let s = a.sqrt();
    if &s * &s == *a {
        s
    } else {
        s + 1
    }
}

pub fn sign_of(a: &Int) -> Sign {
    a.sign()
}

pub fn is_even(a: &Int) -> bool {
    a.is_even()
}
