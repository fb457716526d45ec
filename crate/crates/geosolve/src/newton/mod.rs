//! Newton-Hensel iteration: division-free numerator programs and curve lifting.

mod lift;

pub use lift::{curve_numerator, lift_fiber, BiPoly, LiftedCurve};

use crate::arith::{Field, Rat, Ring};
use crate::linalg::{adjoint_det, Matrix};
use crate::slp::{derive_all, homogeneous_components_in, Slp, Sym};

/// Program whose outputs g_1..g_s, h satisfy g/h = N_f^k.
#[derive(Clone, Debug)]
pub struct NewtonIterate {
    pub k: usize,
    pub unknowns: usize,
    pub slp: Slp,
}

impl NewtonIterate {
    /// g/h at a rational point, or None when h vanishes there.
    pub fn eval_rat(&self, point: &[Rat]) -> Option<Vec<Rat>> {
        let v = self.slp.eval(point).expect("arity");
        let h = v[self.unknowns].try_inv()?;
        Some(v[..self.unknowns].iter().map(|g| g * &h).collect())
    }
}

/// Maximal total degree of the outputs in the first `s` variables.
pub(crate) fn degree_in_first(slp: &Slp, s: usize) -> usize {
    slp.expand()
        .iter()
        .flat_map(|p| p.terms().keys().map(|e| e[..s].iter().sum::<u32>() as usize).collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
}

/// Numerators and denominator of the k-fold Newton operator of the system.
/// The unknowns are the first s = #outputs variables; the others are
/// parameters. One step is G_i = J·X_i - Σ_j Adj_ij f_j and H = J; both are
/// homogenized to degree ν = s·d + 1 so that composing them needs no division.
pub fn newton_numerators(system: &Slp, k: usize) -> NewtonIterate {
    let s = system.noutputs();
    let n = system.nvars();
    assert!(s >= 1 && s <= n, "need 1 <= #equations <= #variables");
    let (b, vars) = Sym::inputs(n);
    let vals = Sym::apply(&derive_all(system), &vars);
    let jac = Matrix::from_fn(s, s, |i, j| vals[s + i * n + j].clone());
    let (adj, det) = adjoint_det(&jac);
    let mut outs = Vec::with_capacity(s + 1);
    for i in 0..s {
        let mut g = det.mul(&vars[i]);
        for j in 0..s {
            g = g.sub(&adj.get(i, j).mul(&vals[j]));
        }
        outs.push(g);
    }
    outs.push(det);
    let step = Sym::finish(b, &outs);

    let d = degree_in_first(system, s);
    let nu = s * d + 1;
    let mask: Vec<bool> = (0..n).map(|j| j < s).collect();
    let comps = homogeneous_components_in(&step, nu, &mask);

    let (b, vars) = Sym::inputs(n);
    let mut g: Vec<Sym> = vars[..s].to_vec();
    let mut h = vars[0].one_like();
    for _ in 0..k {
        let mut input = g.clone();
        input.extend(vars[s..].iter().cloned());
        let c = Sym::apply(&comps, &input);
        // X_0^ν F(X/X_0) at X_0 = h
        let hom = |i: usize| {
            let base = i * (nu + 1);
            let mut acc = c[base].clone();
            for kk in 1..=nu {
                acc = acc.mul(&h).add(&c[base + kk]);
            }
            acc
        };
        let ng: Vec<Sym> = (0..s).map(hom).collect();
        h = hom(s);
        g = ng;
    }
    let mut outs = g;
    outs.push(h);
    NewtonIterate { k, unknowns: s, slp: Sym::finish(b, &outs) }
}
