use super::{GeometricResolution, LiftingFiber};
use crate::arith::modp::squarefree_certified;
use crate::arith::{discriminant, rat_int, Int, ModElem, Rat, Ring, UniPoly};
use crate::slp::Slp;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::rc::Rc;

pub const DISC_LIMIT: usize = 48;

/// Outcome of the six resolution checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// (a) gcd(q, q') = 1.
    pub squarefree: bool,
    /// (b) deg v_i < deg q.
    pub degrees: bool,
    /// (c) q and every ρ_i X_i - v_i primitive.
    pub primitive: bool,
    /// (d) per equation: f(v/ρ) ≡ 0 mod q.
    pub substitution: Vec<bool>,
    /// (e) Σ λ_i v_i/ρ_i ≡ T mod q.
    pub primitive_element: bool,
    /// (f) disc(q) ≠ 0 and ρ ≠ 0.
    pub discriminant: bool,
    /// Whether disc(q) divides ρ; reported, not required. Only computed
    /// up to degree DISC_LIMIT.
    pub rho_multiple_of_disc: Option<bool>,
    /// Variable counts agree.
    pub shape: bool,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut f = Vec::new();
        if !self.shape {
            f.push("variable count does not match the system".to_string());
        }
        if !self.squarefree {
            f.push("(a) q is not squarefree".to_string());
        }
        if !self.degrees {
            f.push("(b) some parametrization has degree >= deg q".to_string());
        }
        if !self.primitive {
            f.push("(c) primitivity".to_string());
        }
        for (j, ok) in self.substitution.iter().enumerate() {
            if !ok {
                f.push(format!("(d) equation {} does not vanish", j + 1));
            }
        }
        if !self.primitive_element {
            f.push("(e) linear form does not reduce to T".to_string());
        }
        if !self.discriminant {
            f.push("(f) zero discriminant or zero rho".to_string());
        }
        f
    }

    pub fn to_json(&self) -> Value {
        json!({
            "squarefree": self.squarefree,
            "degrees": self.degrees,
            "primitive": self.primitive,
            "substitution": self.substitution,
            "primitive_element": self.primitive_element,
            "discriminant": self.discriminant,
            "rho_multiple_of_disc": self.rho_multiple_of_disc,
            "pass": self.all_pass(),
        })
    }
}

fn intrinsic_checks(res: &GeometricResolution) -> ValidationReport {
    let q = res.q_rat();
    let d = res.degree();
    let squarefree = d >= 1 && (squarefree_certified(&q) || q.is_squarefree());
    let degrees = res.params.iter().all(|p| p.v.deg().map_or(true, |e| e < d));
    let q_prim = !res.q.is_zero() && res.q.content().is_one();
    let params_prim = res.params.iter().all(|p| !p.rho.is_zero() && p.v.coeffs().iter().fold(p.rho.clone(), |g, a| g.gcd(a)).is_one());
    let primitive_element = if d == 0 {
        false
    } else {
        let m = Rc::new(q.monic());
        let sum = res
            .coords()
            .iter()
            .zip(&res.lambda)
            .fold(UniPoly::zero(), |acc, (c, l)| acc.add(&c.scale(&rat_int(l))));
        ModElem::new(&m, sum) == ModElem::generator(&m)
    };
    let rho = res.rho();
    // disc(q) ≠ 0 exactly when q is squarefree
    let divides = if d >= 1 && d <= DISC_LIMIT && squarefree {
        let disc = discriminant(&res.q);
        Some((&rho % &disc).is_zero())
    } else {
        None
    };
    ValidationReport {
        squarefree,
        degrees,
        primitive: q_prim && params_prim,
        substitution: Vec::new(),
        primitive_element,
        discriminant: squarefree && !rho.is_zero(),
        rho_multiple_of_disc: divides,
        shape: res.lambda.len() == res.params.len(),
    }
}

/// v/d modulo an integer polynomial q, kept with integer coefficients.
#[derive(Clone, Debug)]
struct Frac {
    num: UniPoly<Int>,
    den: Int,
    q: Rc<UniPoly<Int>>,
}

impl Frac {
    fn reduced(num: UniPoly<Int>, mut den: Int, q: &Rc<UniPoly<Int>>) -> Self {
        let d = q.deg().unwrap();
        let a = q.lc();
        let mut r = num;
        while let Some(dr) = r.deg() {
            if dr < d {
                break;
            }
            let lr = r.lc();
            if !a.is_one() {
                r = r.scale(&a);
                den *= &a;
            }
            r = r.sub(&Ring::mul(&UniPoly::monomial(lr, dr - d), q.as_ref()));
        }
        let g = r.content().gcd(&den);
        if !g.is_one() && !g.is_zero() {
            r = r.div_int_exact(&g);
            den /= &g;
        }
        Frac { num: r, den, q: q.clone() }
    }
}

impl Ring for Frac {
    fn zero_like(&self) -> Self {
        Frac { num: UniPoly::zero(), den: Int::one(), q: self.q.clone() }
    }
    fn one_like(&self) -> Self {
        Frac { num: UniPoly::one(), den: Int::one(), q: self.q.clone() }
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Frac { num: self.num.add(&o.num), den: self.den.clone(), q: self.q.clone() };
        }
        let num = self.num.scale(&o.den).add(&o.num.scale(&self.den));
        Frac::reduced(num, &self.den * &o.den, &self.q)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        Frac::reduced(Ring::mul(&self.num, &o.num), &self.den * &o.den, &self.q)
    }
    fn neg(&self) -> Self {
        Frac { num: self.num.neg(), den: self.den.clone(), q: self.q.clone() }
    }
    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
    fn mul_int(&self, c: &Int) -> Self {
        Frac { num: self.num.scale(c), den: self.den.clone(), q: self.q.clone() }
    }
}

fn substitute(q: &UniPoly<Int>, coords: &[(UniPoly<Int>, Int)], system: &Slp, count: usize) -> Vec<bool> {
    if q.deg().unwrap_or(0) == 0 || coords.is_empty() {
        return vec![false; count];
    }
    let m = Rc::new(q.clone());
    let pt: Vec<Frac> = coords.iter().map(|(v, d)| Frac::reduced(v.clone(), d.clone(), &m)).collect();
    let vals = system.eval(&pt).expect("arity");
    vals.iter().take(count).map(|v| v.vanishes()).collect()
}

fn integer_coords(coords: &[UniPoly<Rat>]) -> Vec<(UniPoly<Int>, Int)> {
    coords
        .iter()
        .map(|c| {
            let den = c.denominators_lcm();
            (c.map(|a| (a * rat_int(&den)).to_integer()), den)
        })
        .collect()
}

/// Checks (a)-(f) of `res` against every output of `system`.
pub fn validate_resolution(res: &GeometricResolution, system: &Slp) -> ValidationReport {
    let mut r = intrinsic_checks(res);
    if system.nvars() != res.nvars() {
        r.shape = false;
        r.substitution = vec![false; system.noutputs()];
        return r;
    }
    let coords: Vec<(UniPoly<Int>, Int)> = res.params.iter().map(|p| (p.v.clone(), p.rho.clone())).collect();
    r.substitution = substitute(&res.q, &coords, system, system.noutputs());
    r
}

/// Same checks for a fiber: the first `level` equations are substituted at
/// X = A·(P, coordinates).
pub fn validate_fiber(fiber: &LiftingFiber, system: &Slp) -> ValidationReport {
    let mut r = intrinsic_checks(&fiber.res);
    if system.nvars() != fiber.n() || fiber.res.nvars() != fiber.level || fiber.point.len() + fiber.level != fiber.n() {
        r.shape = false;
        r.substitution = vec![false; fiber.level];
        return r;
    }
    r.substitution = substitute(&fiber.res.q, &integer_coords(&fiber.x_coords()), system, fiber.level);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::fiber::tests::chain2;
    use crate::fiber::Param;
    use crate::slp::parse_system;

    #[test]
    fn chain_passes() {
        let sys = parse_system(&["X1^2+X1+1", "X2-X1^2"], &["X1", "X2"]).unwrap();
        let r = validate_resolution(&chain2(), &sys);
        assert!(r.all_pass(), "{:?}", r.failures());
        assert_eq!(r.rho_multiple_of_disc, Some(false));
    }

    #[test]
    fn tampering_detected() {
        let sys = parse_system(&["X1^2+X1+1", "X2-X1^2"], &["X1", "X2"]).unwrap();
        let mut bad = chain2();
        bad.params[1] = Param { rho: int(1), v: UniPoly::from_i64(&[0, -1]) };
        let r = validate_resolution(&bad, &sys);
        assert_eq!(r.substitution, vec![true, false]);
        let mut sq = chain2();
        sq.q = UniPoly::from_i64(&[0, 0, 1]);
        assert!(!validate_resolution(&sq, &sys).squarefree);
    }
}
