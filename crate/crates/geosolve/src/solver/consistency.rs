//! Consistency of n + 1 equations in n unknowns.

use super::solve_system;
use crate::arith::{rat_int, to_rat_poly, Int, Rat, Ring, UniPoly};
use crate::error::SolveError;
use crate::fiber::GeometricResolution;
use crate::slp::Slp;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyVerdict {
    pub consistent: bool,
    /// Π f_{n+1}(ξ) over the zeros ξ of f_1..f_n; None when they have no zeros.
    pub det: Option<Rat>,
    /// Common zeros, when there are any.
    pub kernel: Option<GeometricResolution>,
}

/// p(t) with one final division: Σ p_k a^k b^{D-k} / b^D for t = a/b.
fn eval_at_rat(p: &UniPoly<Int>, t: &Rat) -> Rat {
    let (a, b) = (t.numer(), t.denom());
    let mut acc = Int::zero();
    let mut bpow = Int::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    // bpow = b^{D+1} and acc carries one factor b too many
    Rat::new(acc * b, bpow)
}

/// g(v/ρ) mod q for an affine g, in integer arithmetic: with R = lcm ρ_i,
/// R·g(v/ρ) = c_0 R + Σ c_i (R/ρ_i) v_i.
fn affine_value(res: &GeometricResolution, g: &Slp) -> Option<UniPoly<Rat>> {
    let e = g.expand().remove(0);
    if e.total_degree().unwrap_or(0) > 1 || e.terms().values().any(|c| !c.is_integer()) {
        return None;
    }
    let n = res.nvars();
    let r = res.params.iter().fold(Int::one(), |acc, p| acc.lcm(&p.rho));
    let mut num = UniPoly::constant(e.coeff(&vec![0; n]).to_integer() * &r);
    for (i, p) in res.params.iter().enumerate() {
        let mut ex = vec![0; n];
        ex[i] = 1;
        let c = e.coeff(&ex).to_integer();
        if !c.is_zero() {
            num = num.add(&p.v.scale(&(c * (&r / &p.rho))));
        }
    }
    Some(to_rat_poly(&num).scale(&Rat::new(Int::one(), r)))
}

/// Decision from a resolution of f_1..f_n and the extra equation g.
pub fn decide_with_resolution(res: &GeometricResolution, g: &Slp) -> ConsistencyVerdict {
    assert_eq!(g.nvars(), res.nvars());
    let d = res.degree();
    let a = if res.nvars() == 0 {
        UniPoly::constant(g.eval::<Rat>(&[]).expect("arity")[0].clone())
    } else if let Some(a) = affine_value(res, g) {
        a
    } else {
        g.eval(&res.coord_elems()).expect("arity")[0].value().clone()
    };
    let det = match a.deg() {
        None => Rat::zero(),
        Some(0) => num_traits::pow(a.coeff(0), d),
        Some(1) => {
            // Π (a1 θ + a0) = (-a1)^D q(-a0/a1) / lc(q)
            let (a0, a1) = (a.coeff(0), a.coeff(1));
            num_traits::pow(-a1.clone(), d) * eval_at_rat(&res.q, &(-a0 / a1)) / rat_int(&res.q.lc())
        }
        Some(_) => UniPoly::resultant(&res.q_monic(), &a),
    };
    let kernel = if !det.is_zero() {
        None
    } else if a.deg() == Some(1) {
        let t = -a.coeff(0) / a.coeff(1);
        let coords: Vec<UniPoly<Rat>> = res
            .params
            .iter()
            .map(|p| UniPoly::constant(eval_at_rat(&p.v, &t) / rat_int(&p.rho)))
            .collect();
        let h = UniPoly::new(vec![-t, Rat::one()]);
        Some(GeometricResolution::from_rational(res.lambda.clone(), &h, &coords))
    } else {
        let q = res.q_monic();
        let h = if a.is_zero() { q } else { UniPoly::gcd(&q, &a).expect("q is nonzero") };
        let coords: Vec<UniPoly<Rat>> = res
            .params
            .iter()
            .map(|p| to_rat_poly(&p.v).rem(&h).scale(&Rat::new(Int::one(), p.rho.clone())))
            .collect();
        Some(GeometricResolution::from_rational(res.lambda.clone(), &h, &coords))
    };
    ConsistencyVerdict { consistent: det.is_zero(), det: Some(det), kernel }
}

/// Decides whether n + 1 equations in n unknowns have a common zero. The
/// first n must form a reduced complete intersection, or have no zeros.
pub fn decide_consistency(system: &Slp, seed: u64, retries: usize) -> Result<ConsistencyVerdict, SolveError> {
    let n = system.nvars();
    if system.noutputs() != n + 1 {
        return Err(SolveError::Shape { equations: system.noutputs(), variables: n });
    }
    let first = system.select_outputs(&(0..n).collect::<Vec<_>>());
    let g = system.select_outputs(&[n]);
    if n == 0 {
        let v = g.eval::<Rat>(&[]).expect("arity")[0].clone();
        let consistent = v.is_zero();
        return Ok(ConsistencyVerdict { consistent, det: Some(v), kernel: None });
    }
    match solve_system(&first, seed, retries) {
        Ok(sol) => Ok(decide_with_resolution(&sol.resolution, &g)),
        Err(SolveError::EmptyFiber { .. }) => Ok(ConsistencyVerdict { consistent: false, det: None, kernel: None }),
        Err(e) => Err(e),
    }
}

/// One decision per extra equation, sharing a single resolution of `first`.
pub fn decide_consistency_family(
    first: &Slp,
    extras: &[Slp],
    seed: u64,
    retries: usize,
) -> Result<Vec<ConsistencyVerdict>, SolveError> {
    match solve_system(first, seed, retries) {
        Ok(sol) => Ok(extras.iter().map(|g| decide_with_resolution(&sol.resolution, g)).collect()),
        Err(SolveError::EmptyFiber { .. }) => {
            Ok(extras.iter().map(|_| ConsistencyVerdict { consistent: false, det: None, kernel: None }).collect())
        }
        Err(e) => Err(e),
    }
}
