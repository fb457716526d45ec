use crate::arith::{rat_to_primitive, Int, Rat, UniPoly};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000_000_000;

fn divisors(a: &Int) -> Option<Vec<u64>> {
    let mut n = a.abs().to_u64()?;
    if n > TRIAL_LIMIT || n == 0 {
        return None;
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        primes.push((n, 1));
    }
    let mut out = vec![1u64];
    for (p, e) in primes {
        let cur = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(cur.iter().map(|d| d * pk));
        }
    }
    Some(out)
}

/// All roots when the polynomial is a product of distinct rational linear
/// factors, None otherwise (or when the coefficients are too large to factor).
pub fn split_rational_roots(g: &UniPoly<Rat>) -> Option<Vec<Rat>> {
    let d = g.deg()?;
    if d == 0 {
        return Some(Vec::new());
    }
    let gi = rat_to_primitive(g);
    let mut roots = Vec::new();
    let low = gi.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if low > 1 {
        return None;
    }
    if low == 1 {
        roots.push(Rat::zero());
    }
    let rest = UniPoly::new(gi.coeffs()[low..].to_vec());
    if rest.deg() == Some(0) {
        return Some(roots);
    }
    let nums = divisors(&rest.coeff(0))?;
    let dens = divisors(&rest.lc())?;
    let rq = crate::arith::to_rat_poly(&rest);
    for p in &nums {
        for q in &dens {
            if Int::from(*p).gcd(&Int::from(*q)) != Int::one() {
                continue;
            }
            for s in [1i64, -1] {
                let r = Rat::new(Int::from(*p) * s, Int::from(*q));
                if rq.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    if roots.len() == d {
        roots.sort();
        Some(roots)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn splitting() {
        assert_eq!(split_rational_roots(&UniPoly::from_ints(&[0, -1, 1])).unwrap(), vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(split_rational_roots(&UniPoly::from_ints(&[-3, 2])).unwrap(), vec![rat(3, 2)]);
        assert!(split_rational_roots(&UniPoly::from_ints(&[-2, 0, 1])).is_none());
        assert!(split_rational_roots(&UniPoly::from_ints(&[0, 0, 1])).is_none());
        assert_eq!(split_rational_roots(&UniPoly::from_ints(&[6, -5, 1])).unwrap(), vec![rat(2, 1), rat(3, 1)]);
    }
}
