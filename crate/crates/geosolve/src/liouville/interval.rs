//! Closed rational intervals and real root isolation by Sturm sequences.

use crate::arith::height::isqrt_ceil;
use crate::arith::{MPoly, Rat, Ring, UniPoly};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// [-r, r].
    pub fn symmetric(r: Rat) -> Self {
        Interval { lo: -r.clone(), hi: r }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// max |x| over the interval.
    pub fn mag(&self) -> Rat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_negative() {
            Interval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            Interval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Interval::point(Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Enclosure of p(x) for x in the interval (Horner form).
pub fn eval_poly(p: &UniPoly<Rat>, x: &Interval) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Interval::point(c.clone()));
    }
    acc
}

/// Enclosure of p over a box.
pub fn eval_mpoly(p: &MPoly, x: &[Interval]) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for (e, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (xi, &k) in x.iter().zip(e) {
            if k > 0 {
                t = t.mul(&xi.powi(k));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Upper bound on Σ |c| Π r_i^{e_i}, hence on |p(z)| for |z_i| ≤ r_i.
pub fn abs_bound_mpoly(p: &MPoly, r: &[Rat]) -> Rat {
    p.terms()
        .iter()
        .map(|(e, c)| {
            e.iter().zip(r).fold(c.abs(), |acc, (&k, ri)| acc * num_traits::pow(ri.clone(), k as usize))
        })
        .fold(Rat::zero(), |a, b| a + b)
}

pub fn abs_bound_poly(p: &UniPoly<Rat>, r: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * r + c.abs();
    }
    acc
}

/// Rational upper bound on √x, within 2^-bits relative slack.
pub fn sqrt_upper(x: &Rat, bits: u32) -> Rat {
    assert!(!x.is_negative());
    let scale = crate::arith::Int::one() << (2 * bits);
    // √(n/d) = √(n·d)/d
    let d = Rat::from_integer(x.denom().clone());
    let nd = (x * &d * &d * Rat::from_integer(scale)).ceil().to_integer();
    Rat::new(isqrt_ceil(&nd), x.denom() * (crate::arith::Int::one() << bits))
}

/// Every root z of p has |z| ≤ 1 + max |a_i / a_D|.
pub fn cauchy_bound(p: &UniPoly<Rat>) -> Rat {
    let lc = p.lc();
    let m = p.coeffs()[..p.len() - 1].iter().map(|a| (a / &lc).abs()).max().unwrap_or_else(Rat::zero);
    m + Rat::one()
}

pub fn sturm_sequence(p: &UniPoly<Rat>) -> Vec<UniPoly<Rat>> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(seq: &[UniPoly<Rat>], x: &Rat) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|s| {
            let v = s.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in (a, b].
pub fn count_roots(seq: &[UniPoly<Rat>], a: &Rat, b: &Rat) -> usize {
    variations(seq, a) - variations(seq, b)
}

/// Disjoint intervals, each holding exactly one real root of p and of width
/// at most 2^-bits (a degenerate interval when the root is hit exactly).
pub fn isolate_real_roots(p: &UniPoly<Rat>, bits: u32) -> Vec<Interval> {
    if p.deg().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(&p.squarefree_part());
    let r = cauchy_bound(p);
    let mut todo = vec![(-r.clone(), r)];
    let mut found = Vec::new();
    let width = Rat::new(crate::arith::Int::one(), crate::arith::Int::one() << bits);
    let half = Rat::new(1.into(), 2.into());
    while let Some((a, b)) = todo.pop() {
        let c = count_roots(&seq, &a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 && &b - &a <= width {
            found.push(Interval::new(a, b));
            continue;
        }
        let m = (&a + &b) * &half;
        if c == 1 && seq[0].eval(&m).is_zero() {
            found.push(Interval::point(m));
            continue;
        }
        todo.push((m.clone(), b));
        todo.push((a, m));
    }
    found.sort_by(|x, y| x.lo.cmp(&y.lo));
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn sqrt2_enclosure() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, 20);
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let sq = r.mul(r);
            assert!(sq.contains(&rat(2, 1)) || r.lo.is_negative());
            assert!(r.width() <= rat(1, 1 << 20));
        }
        assert!(roots[1].lo < rat(1415, 1000) && roots[1].hi > rat(1414, 1000));
    }

    #[test]
    fn exact_and_complex_roots() {
        let p = UniPoly::from_ints(&[0, -1, 1]);
        let roots = isolate_real_roots(&p, 8);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&rat(0, 1)) && roots[1].contains(&rat(1, 1)));
        assert!(isolate_real_roots(&UniPoly::from_ints(&[1, 1, 1]), 8).is_empty());
    }

    #[test]
    fn sqrt_bound() {
        let s = sqrt_upper(&rat(2, 1), 16);
        assert!(&s * &s >= rat(2, 1));
        assert!(s < rat(14143, 10000));
        assert_eq!(sqrt_upper(&rat(9, 4), 4), rat(3, 2));
    }

    #[test]
    fn interval_ops() {
        let x = Interval::new(rat(-1, 1), rat(2, 1));
        assert_eq!(x.mul(&x), Interval::new(rat(-2, 1), rat(4, 1)));
        assert_eq!(eval_poly(&UniPoly::from_ints(&[1, 0, 1]), &Interval::point(rat(2, 1))), Interval::point(rat(5, 1)));
        assert_eq!(x.mag(), rat(2, 1));
    }
}
