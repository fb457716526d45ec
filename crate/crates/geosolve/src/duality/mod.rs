//! Trace formula in the quotient algebra B = Q[X]/(f_1..f_n): residues of
//! bounded degree, exact division and Bezout witnesses.

use crate::arith::{common_denominator, rat_int, Int, MPoly, ModElem, Rat, Ring, UniPoly};
use crate::error::DualityError;
use crate::fiber::{mult_table_from_resolution, GeometricResolution, MultiplicationTable};
use crate::linalg::{det, Matrix};
use crate::slp::{derive_all, divided_differences, Slp, Sym};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::rc::Rc;

/// Δ(X, Y) = det(l_jk) with f_j(Y) - f_j(X) = Σ_k l_jk (Y_k - X_k); X are
/// inputs 0..n and Y inputs n..2n.
pub fn pseudo_jacobian(system: &Slp) -> Slp {
    let n = system.nvars();
    assert_eq!(system.noutputs(), n, "square system expected");
    let dd = divided_differences(system);
    let (b, vars) = Sym::inputs(2 * n);
    let l = Sym::apply(&dd, &vars);
    let m = Matrix::from_fn(n, n, |j, k| l[j * n + k].clone());
    let d = det(&m);
    Sym::finish(b, &[d])
}

/// Element of B given by its coordinates in the basis 1, T, ..., T^{D-1}.
type Elem = ModElem<Rat>;

/// Tr(T^k) for k < D from the Newton identities of a monic q.
fn power_sums(q: &UniPoly<Rat>) -> Vec<Rat> {
    let d = q.deg().unwrap_or(0);
    let e = |i: usize| q.coeff(d - i);
    let mut p = vec![Rat::from_integer(Int::from(d))];
    for k in 1..d {
        let mut acc = e(k) * Rat::from_integer(Int::from(k));
        for i in 1..k {
            acc += e(i) * &p[k - i];
        }
        p.push(-acc);
    }
    p
}

/// Precomputed data for the trace formula. B is cyclic: the table's M is the
/// companion matrix of q, so every M_h is determined by h mod q, and
/// Tr(M_h) is a linear form in the coordinates of h.
#[derive(Clone, Debug)]
pub struct TraceData {
    pub table: MultiplicationTable,
    modulus: Rc<UniPoly<Rat>>,
    x: Vec<Elem>,
    /// J(f) in B and det J(f)(M_X) = Res(q, J).
    pub jac: UniPoly<Rat>,
    pub det_j: Rat,
    jac_inv: Elem,
    /// (exponent of Y, coefficient of Y^β in Δ evaluated at X = x).
    delta: Vec<(Vec<u32>, Elem)>,
    traces: Vec<Rat>,
    nvars: usize,
}

impl TraceData {
    pub fn new(table: &MultiplicationTable, system: &Slp) -> Result<Self, DualityError> {
        let n = system.nvars();
        if table.mx.len() != n || system.noutputs() != n {
            return Err(DualityError::Shape(format!(
                "{} equations, {} variables, table for {}",
                system.noutputs(),
                n,
                table.mx.len()
            )));
        }
        let modulus = Rc::new(table.modulus());
        let x: Vec<Elem> = table.coord_polys().into_iter().map(|c| ModElem::new(&modulus, c)).collect();
        let vals = derive_all(system).eval(&x).expect("arity");
        let blocks = Matrix::from_fn(n, n, |j, k| vals[n + j * n + k].clone());
        let jac = det(&blocks).value().clone();
        let det_j = UniPoly::resultant(&modulus, &jac);
        if det_j.is_zero() {
            return Err(DualityError::NotSmooth);
        }
        let jac_inv = ModElem::new(&modulus, jac.inverse_mod(&modulus).expect("unit"));
        let full = pseudo_jacobian(system).expand().remove(0);
        let mut split: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Rat)>> = BTreeMap::new();
        for (e, c) in full.terms() {
            split.entry(e[n..].to_vec()).or_default().push((e[..n].to_vec(), c.clone()));
        }
        let delta = split.into_iter().map(|(beta, terms)| (beta, eval_elem(&MPoly::from_terms(n, terms), &x))).collect();
        let traces = power_sums(&modulus);
        Ok(TraceData { table: table.clone(), modulus, x, jac, det_j, jac_inv, delta, traces, nvars: n })
    }

    fn trace(&self, e: &Elem) -> Rat {
        e.value().coeffs().iter().zip(&self.traces).map(|(a, b)| a * b).sum()
    }

    /// Σ_β Tr(k·Δ_β) Y^β.
    fn trace_poly(&self, k: &Elem) -> MPoly {
        MPoly::from_terms(self.nvars, self.delta.iter().map(|(beta, d)| (beta.clone(), self.trace(&k.mul(d)))))
    }

    fn value(&self, g: &Slp) -> Elem {
        g.eval(&self.x).expect("arity").remove(0)
    }

    /// g_1 = Tr(J_1^{-1} g(M_X) Δ(M_X, Y)), the residue of g with deg ≤ n(d-1).
    pub fn residue(&self, g: &Slp) -> MPoly {
        self.trace_poly(&self.value(g).mul(&self.jac_inv))
    }
}

/// p(x) in B for rational coefficients.
fn eval_elem(p: &MPoly, x: &[Elem]) -> Elem {
    let m = x[0].modulus();
    if p.terms().is_empty() {
        return ModElem::constant(m, Rat::zero());
    }
    let den = rat_int(&common_denominator(p.terms().values()));
    let v = p.scale(&den).eval(x);
    ModElem::new(m, v.value().scale(&den.recip()))
}

/// Representative of g in B of total degree at most n(d - 1).
pub fn lift_residue(g: &Slp, table: &MultiplicationTable, system: &Slp) -> Result<MPoly, DualityError> {
    Ok(TraceData::new(table, system)?.residue(g))
}

/// θ ≠ 0 and q with q·f = θ·g in B, where θ = det f(M_X) · det J(f)(M_X)
/// and q = Tr(Adj f(M_X) · Adj J_1 · g(M_X) · Δ(M_X, Y)).
pub fn division_step(
    f: &Slp,
    g: &Slp,
    table: &MultiplicationTable,
    system: &Slp,
) -> Result<(Rat, MPoly), DualityError> {
    let td = TraceData::new(table, system)?;
    division_with(&td, f, g)
}

fn division_with(td: &TraceData, f: &Slp, g: &Slp) -> Result<(Rat, MPoly), DualityError> {
    let f1 = td.value(f);
    let det_f = UniPoly::resultant(&td.modulus, f1.value());
    if det_f.is_zero() {
        return Err(DualityError::ZeroDivisor);
    }
    let f_inv = ModElem::new(&td.modulus, f1.value().inverse_mod(&td.modulus).expect("unit"));
    let g1 = td.value(g);
    let theta = &det_f * &td.det_j;
    // Adj f · Adj J_1 = θ f^{-1} J^{-1}
    let k = f_inv.mul(&td.jac_inv).mul(&g1);
    let q = td.trace_poly(&k).scale(&theta);
    let back = eval_elem(&q, &td.x).mul(&f1);
    if back.value() != &g1.value().scale(&theta) {
        return Err(DualityError::NotDivisible);
    }
    Ok((theta, q))
}

/// p(M_X) for a polynomial with rational coefficients.
pub fn eval_at_matrices(p: &MPoly, table: &MultiplicationTable) -> Matrix<Rat> {
    if p.terms().is_empty() {
        return Matrix::zeros(&Rat::zero(), table.dim, table.dim);
    }
    let den = rat_int(&common_denominator(p.terms().values()));
    p.scale(&den).eval(&table.mx).map(|x| x / &den)
}

/// a ∈ Z \ {0} and g ∈ Z[X] with a - g·f_{n+1} ∈ (f_1..f_n).
#[derive(Clone, Debug, PartialEq)]
pub struct BezoutWitness {
    pub a: Int,
    pub g: MPoly,
    /// Exponents of α = lc(q) and ρ = Π ρ_i used to clear denominators.
    pub alpha_exp: u32,
    pub rho_exp: u32,
    /// Leftover integer factor of the clearing multiplier.
    pub extra: Int,
}

impl BezoutWitness {
    pub fn to_json(&self) -> Value {
        let mut g = Map::new();
        for (e, c) in self.g.terms() {
            let key = e.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            g.insert(key, json!(c.to_integer().to_string()));
        }
        json!({"a": self.a.to_string(), "g": Value::Object(g)})
    }

    /// a·Id = g(M_X)·f(M_X) exactly.
    pub fn verify(&self, table: &MultiplicationTable, f: &Slp) -> bool {
        let fm = f.eval(&table.mx).expect("arity").remove(0);
        let gm = eval_at_matrices(&self.g, table);
        gm.matmul(&fm) == table.identity().map(|x| x * rat_int(&self.a))
    }
}

/// Number of times `base` can be split off `rest` (gcd by gcd).
fn strip(rest: &mut Int, base: &Int) -> u32 {
    let base = base.abs();
    if base <= Int::one() {
        return 0;
    }
    let mut e = 0;
    loop {
        let g = rest.gcd(&base);
        if g.is_one() {
            return e;
        }
        *rest /= &g;
        e += 1;
    }
}

/// Bezout witness for f_1..f_n (given by a resolution) and f_{n+1}.
pub fn bezout_witness(res: &GeometricResolution, system: &Slp, f: &Slp) -> Result<BezoutWitness, DualityError> {
    let table = mult_table_from_resolution(res);
    let td = TraceData::new(&table, system)?;
    let one = crate::slp::SlpBuilder::new(system.nvars());
    let unit = {
        let o = one.one();
        one.finish(vec![o])
    };
    let (theta, q) = match division_with(&td, f, &unit) {
        Ok(x) => x,
        Err(DualityError::ZeroDivisor) => return Err(DualityError::Consistent),
        Err(e) => return Err(e),
    };
    let den = common_denominator(q.terms().values().chain(std::iter::once(&theta)));
    let mut rest = den;
    let alpha_exp = strip(&mut rest, &res.q.lc());
    let rho_exp = strip(&mut rest, &res.rho());
    let scale = num_traits::pow(res.q.lc().abs(), alpha_exp as usize)
        * num_traits::pow(res.rho().abs(), rho_exp as usize)
        * &rest;
    let s = rat_int(&scale);
    let mut a = (&theta * &s).to_integer();
    let mut g = q.scale(&s);
    let content = g.terms().values().fold(a.clone(), |acc, c| acc.gcd(&c.to_integer()));
    let mut div = Rat::from_integer(content.clone());
    if a.is_negative() {
        div = -div;
    }
    a = (Rat::from_integer(a) / &div).to_integer();
    g = g.scale(&div.recip());
    let w = BezoutWitness { a, g, alpha_exp, rho_exp, extra: rest };
    assert!(w.verify(&table, f), "witness identity");
    Ok(w)
}
