use super::ring::{common_denominator, Field, Int, Rat, Ring, Scalar};
use crate::error::ArithError;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<S> {
    c: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut c: Vec<S>) -> Self {
        while c.last().map_or(false, |x| Ring::vanishes(x)) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { c: vec![S::one_s()] }
    }

    pub fn constant(a: S) -> Self {
        Self::new(vec![a])
    }

    /// The variable T.
    pub fn x() -> Self {
        UniPoly { c: vec![S::zero_s(), S::one_s()] }
    }

    pub fn monomial(a: S, k: usize) -> Self {
        if Ring::vanishes(&a) {
            return Self::zero();
        }
        let mut c = vec![S::zero_s(); k + 1];
        c[k] = a;
        UniPoly { c }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with deg(0) = -1.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, k: usize) -> S {
        self.c.get(k).cloned().unwrap_or_else(S::zero_s)
    }

    pub fn lc(&self) -> S {
        self.c.last().cloned().unwrap_or_else(S::zero_s)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().map_or(false, |x| *x == S::one_s())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> UniPoly<T> {
        UniPoly::new(self.c.iter().map(f).collect())
    }

    pub fn scale(&self, a: &S) -> Self {
        if Ring::vanishes(a) {
            return Self::zero();
        }
        Self::new(self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![S::zero_s(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    /// Keeps the coefficients of degree < k.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.c.iter().take(k).cloned().collect())
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero_s();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// Horner evaluation in any ring carrying an action of S through `embed`.
    pub fn eval_with<R: Ring>(&self, x: &R, embed: impl Fn(&S) -> R) -> R {
        let mut acc = x.zero_like();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&embed(a));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.mul_int(&Int::from(k)))
                .collect(),
        )
    }

    /// p(r(T)).
    pub fn compose(&self, r: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = Ring::mul(&acc, r).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// p(T + a).
    pub fn taylor_shift(&self, a: &S) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].mul(a);
                c[j] = c[j].add(&t);
            }
        }
        Self::new(c)
    }

    /// Remainder and quotient by a monic polynomial; works over any ring.
    pub fn divrem_monic(&self, m: &Self) -> (Self, Self) {
        let dm = m.deg().expect("division by zero polynomial");
        debug_assert!(m.is_monic());
        if self.c.len() <= dm {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut qc = vec![S::zero_s(); r.len() - dm];
        for k in (dm..r.len()).rev() {
            let t = r[k].clone();
            if Ring::vanishes(&t) {
                continue;
            }
            qc[k - dm] = t.clone();
            for j in 0..dm {
                let s = m.c[j].mul(&t);
                r[k - dm + j] = r[k - dm + j].sub(&s);
            }
            r[k] = S::zero_s();
        }
        r.truncate(dm);
        (Self::new(qc), Self::new(r))
    }

    pub fn rem_monic(&self, m: &Self) -> Self {
        self.divrem_monic(m).1
    }

    /// Reduction of x^k modulo m.
    pub fn pow_mod_monic(&self, e: u64, m: &Self) -> Self {
        let mut base = self.rem_monic(m);
        let mut acc = Self::one().rem_monic(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base).rem_monic(m);
            }
            e >>= 1;
            if e > 0 {
                base = Ring::mul(&base, &base).rem_monic(m);
            }
        }
        acc
    }
}

impl<S: Scalar> Ring for UniPoly<S> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(c)
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(c)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![S::zero_s(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if Ring::vanishes(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(c)
    }
    fn neg(&self) -> Self {
        UniPoly { c: self.c.iter().map(|x| x.neg()).collect() }
    }
    fn vanishes(&self) -> bool {
        self.c.is_empty()
    }
    fn mul_int(&self, k: &Int) -> Self {
        Self::new(self.c.iter().map(|x| x.mul_int(k)).collect())
    }
}

impl<S: Scalar> Scalar for UniPoly<S> {
    fn zero_s() -> Self {
        UniPoly::zero()
    }
    fn one_s() -> Self {
        UniPoly::one()
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if Ring::vanishes(a) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", a)?,
                1 => write!(f, "({})*T", a)?,
                _ => write!(f, "({})*T^{}", a, k)?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.c)
    }
}

// ---- polynomials over a field ----

impl<S: Scalar + Field> UniPoly<S> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().try_inv().expect("leading coefficient is a unit");
        self.scale(&inv)
    }

    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        let db = b.deg().expect("division by zero polynomial");
        let inv = b.lc().try_inv().expect("leading coefficient is a unit");
        let mut r = self.c.clone();
        if r.len() <= db {
            return (Self::zero(), self.clone());
        }
        let mut qc = vec![S::zero_s(); r.len() - db];
        for k in (db..r.len()).rev() {
            if Ring::vanishes(&r[k]) {
                continue;
            }
            let t = r[k].mul(&inv);
            for j in 0..db {
                let s = b.c[j].mul(&t);
                r[k - db + j] = r[k - db + j].sub(&s);
            }
            r[k] = S::zero_s();
            qc[k - db] = t;
        }
        r.truncate(db);
        (Self::new(qc), Self::new(r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.divrem(b).1
    }

    /// Exact quotient; panics in debug builds when the division leaves a remainder.
    pub fn exact_div(&self, b: &Self) -> Self {
        let (q, r) = self.divrem(b);
        debug_assert!(r.is_zero());
        q
    }

    /// Extended Euclid: returns (g, s, t) with s·a + t·b = g, g monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&Ring::mul(&q, &s1));
            let t = t0.sub(&Ring::mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().try_inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo m, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = Self::ext_gcd(&self.rem(m), m);
        if g.deg() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Resultant over a field by the Euclidean recurrence.
    pub fn resultant(a: &Self, b: &Self) -> S {
        if a.is_zero() || b.is_zero() {
            return S::zero_s();
        }
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = S::one_s();
        loop {
            let da = a.deg().unwrap();
            let db = b.deg().unwrap();
            if db == 0 {
                return acc.mul(&b.lc().pow(da as u64));
            }
            if da == 0 {
                return acc.mul(&a.lc().pow(db as u64));
            }
            if da < db {
                if (da * db) % 2 == 1 {
                    acc = acc.neg();
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            // res(a,b) = (-1)^{da db} res(b,a), res(b,a) = lc(b)^{da - dr} res(b, r)
            let r = a.rem(&b);
            if r.is_zero() {
                return S::zero_s();
            }
            let dr = r.deg().unwrap();
            let mut f = b.lc().pow((da - dr) as u64);
            if (da * db) % 2 == 1 {
                f = f.neg();
            }
            acc = acc.mul(&f);
            a = b;
            b = r;
        }
    }
}

impl UniPoly<Rat> {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    /// Monic gcd computed through a primitive pseudo-remainder sequence over Z.
    pub fn gcd(a: &Self, b: &Self) -> Result<Self, ArithError> {
        if a.is_zero() && b.is_zero() {
            return Err(ArithError::GcdOfZeros);
        }
        if a.is_zero() {
            return Ok(b.monic());
        }
        if b.is_zero() {
            return Ok(a.monic());
        }
        let (_, pa) = primitive_of_rational(a);
        let (_, pb) = primitive_of_rational(b);
        let g = int_gcd(&pa, &pb);
        Ok(to_rat_poly(&g).monic())
    }

    /// Squarefree part, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.deg().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative()).unwrap();
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.deg() {
            None => false,
            Some(0) => true,
            Some(_) => Self::gcd(self, &self.derivative()).unwrap().deg() == Some(0),
        }
    }

    pub fn denominators_lcm(&self) -> Int {
        common_denominator(self.c.iter())
    }
}

impl UniPoly<Int> {
    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for a in &self.c {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out every coefficient by an exact integer divisor.
    pub fn div_int_exact(&self, d: &Int) -> Self {
        Self::new(
            self.c
                .iter()
                .map(|a| {
                    debug_assert!((a % d).is_zero());
                    a / d
                })
                .collect(),
        )
    }

    /// Pseudo-remainder: lc(b)^{da-db+1} a mod b.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.deg().expect("pseudo division by zero");
        let lb = b.lc();
        let mut r = self.clone();
        while let Some(dr) = r.deg() {
            if dr < db {
                break;
            }
            let lr = r.lc();
            let t = UniPoly::monomial(lr, dr - db);
            r = r.scale(&lb).sub(&Ring::mul(&t, b));
        }
        r
    }
}

/// (content, primitive part) with positive leading coefficient.
pub fn content_primitive(p: &UniPoly<Int>) -> Result<(Int, UniPoly<Int>), ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroContent);
    }
    let c = p.content();
    let mut pp = p.div_int_exact(&c);
    if pp.lc().is_negative() {
        pp = Ring::neg(&pp);
    }
    Ok((c, pp))
}

/// Clears denominators and removes the content. Returns (s, P) with
/// p = s·P, s rational, P primitive integer with positive leading coefficient.
pub fn primitive_of_rational(p: &UniPoly<Rat>) -> (Rat, UniPoly<Int>) {
    if p.is_zero() {
        return (Rat::zero(), UniPoly::zero());
    }
    let den = p.denominators_lcm();
    let ip: UniPoly<Int> = p.map(|a| (a * Rat::from_integer(den.clone())).to_integer());
    let (c, pp) = content_primitive(&ip).unwrap();
    let sign = if ip.lc().is_negative() { -Int::one() } else { Int::one() };
    (Rat::new(c * sign, den), pp)
}

pub fn to_rat_poly(p: &UniPoly<Int>) -> UniPoly<Rat> {
    p.map(|a| Rat::from_integer(a.clone()))
}

/// Primitive gcd of integer polynomials (positive leading coefficient).
pub fn int_gcd(a: &UniPoly<Int>, b: &UniPoly<Int>) -> UniPoly<Int> {
    if a.is_zero() {
        return content_primitive(b).map(|x| x.1).unwrap_or_else(|_| UniPoly::zero());
    }
    if b.is_zero() {
        return content_primitive(a).unwrap().1;
    }
    let (mut x, mut y) = (content_primitive(a).unwrap().1, content_primitive(b).unwrap().1);
    if x.deg() < y.deg() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = x.pseudo_rem(&y);
        x = y;
        y = if r.is_zero() { r } else { content_primitive(&r).unwrap().1 };
    }
    content_primitive(&x).unwrap().1
}

/// Integer polynomial made primitive from a rational one, discarding the scale.
pub fn rat_to_primitive(p: &UniPoly<Rat>) -> UniPoly<Int> {
    primitive_of_rational(p).1
}

pub fn poly_gcd(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> Result<UniPoly<Rat>, ArithError> {
    UniPoly::gcd(a, b)
}

/// Exact discriminant-style quantity Res(q, q') over Q.
pub fn resultant_rat(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> Rat {
    UniPoly::resultant(a, b)
}

/// Signed discriminant disc(q) = (-1)^{D(D-1)/2} Res(q, q') / lc(q).
pub fn discriminant(q: &UniPoly<Int>) -> Int {
    let d = q.deg().unwrap_or(0);
    if d == 0 {
        return Int::one();
    }
    let qr = to_rat_poly(q);
    let res = UniPoly::resultant(&qr, &qr.derivative());
    let mut v = res / Rat::from_integer(q.lc());
    if (d * (d - 1) / 2) % 2 == 1 {
        v = -v;
    }
    debug_assert!(v.is_integer());
    v.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::rat;

    fn p(c: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_ints(c)
    }

    #[test]
    fn content_examples() {
        let (c, pp) = content_primitive(&UniPoly::from_i64(&[4, 2])).unwrap();
        assert_eq!((c, pp), (Int::from(2), UniPoly::from_i64(&[2, 1])));
        let (c, pp) = content_primitive(&UniPoly::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!((c, pp), (Int::from(1), UniPoly::from_i64(&[1, 1, 1])));
        let (c, pp) = content_primitive(&UniPoly::from_i64(&[0, -3])).unwrap();
        assert_eq!((c, pp), (Int::from(3), UniPoly::from_i64(&[0, 1])));
        assert!(content_primitive(&UniPoly::zero()).is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[1, 1, 1]), &p(&[1, 2])).unwrap(), p(&[1]));
        let a = UniPoly::new(vec![rat(2, 1), rat(4, 1)]);
        assert_eq!(poly_gcd(&a, &UniPoly::zero()).unwrap(), UniPoly::new(vec![rat(1, 2), rat(1, 1)]));
        assert!(poly_gcd(&UniPoly::zero(), &UniPoly::zero()).is_err());
    }

    #[test]
    fn resultant_and_discriminant() {
        // Res(T^2+T+1, 2T+1) = 4·q(-1/2) = 3
        assert_eq!(UniPoly::resultant(&p(&[1, 1, 1]), &p(&[1, 2])), rat(3, 1));
        assert_eq!(discriminant(&UniPoly::from_i64(&[1, 1, 1])), Int::from(-3));
        assert_eq!(discriminant(&UniPoly::from_i64(&[-2, 0, 1])), Int::from(8));
        assert_eq!(discriminant(&UniPoly::from_i64(&[0, -1, 1])), Int::from(1));
    }

    #[test]
    fn divrem_and_shift() {
        let (q, r) = p(&[1, 0, 0, 1]).divrem(&p(&[1, 1]));
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&rat(1, 1)), p(&[1, 2, 1]));
        let inv = p(&[0, 1]).inverse_mod(&p(&[1, 1, 1])).unwrap();
        assert_eq!(inv, p(&[-1, -1]));
    }

    #[test]
    fn squarefree() {
        assert!(!p(&[0, 0, 1]).is_squarefree());
        assert_eq!(p(&[0, 0, 1, 1]).squarefree_part(), p(&[0, 1, 1]));
    }
}
