use super::{Gate, Lin, Slp, SlpBuilder};

/// Outputs f_1..f_s followed by ∂f_i/∂X_j at index s + i·n + j.
pub fn derive_all(slp: &Slp) -> Slp {
    let n = slp.nvars();
    let mut b = SlpBuilder::new(n);
    let mut val: Vec<Lin> = Vec::with_capacity(slp.gates().len());
    let mut grad: Vec<Vec<Lin>> = Vec::with_capacity(slp.gates().len());
    for g in slp.gates() {
        match g {
            Gate::Input(j) => {
                val.push(b.var(*j));
                let mut d = vec![Lin::zero(); n];
                d[*j] = b.one();
                grad.push(d);
            }
            Gate::Const(c) => {
                val.push(b.constant(c));
                grad.push(vec![Lin::zero(); n]);
            }
            Gate::Mul(l, r) => {
                let a = l.map(&val);
                let c = r.map(&val);
                let mut d = Vec::with_capacity(n);
                for j in 0..n {
                    let da = map_col(l, &grad, j);
                    let dc = map_col(r, &grad, j);
                    let t1 = b.mul(&da, &c);
                    let t2 = b.mul(&a, &dc);
                    d.push(t1.add(&t2));
                }
                val.push(b.mul(&a, &c));
                grad.push(d);
            }
        }
    }
    let mut outs: Vec<Lin> = slp.outputs().iter().map(|o| o.map(&val)).collect();
    for o in slp.outputs() {
        for j in 0..n {
            outs.push(map_col(o, &grad, j));
        }
    }
    b.finish(outs)
}

fn map_col(l: &Lin, table: &[Vec<Lin>], j: usize) -> Lin {
    let mut acc = Lin::zero();
    for (g, c) in l.terms() {
        acc = acc.add(&table[*g][j].scale(c));
    }
    acc
}

/// Homogeneous components of degree 0..=d of every output; component k of
/// output i sits at index i·(d+1) + k.
pub fn homogeneous_components(slp: &Slp, d: usize) -> Slp {
    homogeneous_components_in(slp, d, &vec![true; slp.nvars()])
}

/// Same, with degree counted only in the variables flagged in `vars`.
pub fn homogeneous_components_in(slp: &Slp, d: usize, vars: &[bool]) -> Slp {
    let n = slp.nvars();
    assert_eq!(vars.len(), n);
    let mut b = SlpBuilder::new(n);
    let mut comp: Vec<Vec<Lin>> = Vec::with_capacity(slp.gates().len());
    for g in slp.gates() {
        let mut c = vec![Lin::zero(); d + 1];
        match g {
            Gate::Input(j) => {
                if vars[*j] {
                    if d >= 1 {
                        c[1] = b.var(*j);
                    }
                } else {
                    c[0] = b.var(*j);
                }
            }
            Gate::Const(v) => c[0] = b.constant(v),
            Gate::Mul(l, r) => {
                let a: Vec<Lin> = (0..=d).map(|k| map_col(l, &comp, k)).collect();
                let e: Vec<Lin> = (0..=d).map(|k| map_col(r, &comp, k)).collect();
                for k in 0..=d {
                    let mut acc = Lin::zero();
                    for i in 0..=k {
                        if a[i].is_zero() || e[k - i].is_zero() {
                            continue;
                        }
                        acc = acc.add(&b.mul(&a[i], &e[k - i]));
                    }
                    c[k] = acc;
                }
            }
        }
        comp.push(c);
    }
    let mut outs = Vec::new();
    for o in slp.outputs() {
        for k in 0..=d {
            outs.push(map_col(o, &comp, k));
        }
    }
    b.finish(outs)
}

/// Telescoping divided differences over variables X_1..X_n, Y_1..Y_n
/// (X at indices 0..n, Y at n..2n). Output j·n + k is l_jk with
/// f_j(Y) - f_j(X) = Σ_k l_jk (Y_k - X_k).
pub fn divided_differences(slp: &Slp) -> Slp {
    let n = slp.nvars();
    let mut b = SlpBuilder::new(2 * n);
    // value of every gate at Z^k = (Y_1..Y_k, X_{k+1}..X_n), k = 0..n
    let mut at: Vec<Vec<Lin>> = Vec::with_capacity(slp.gates().len());
    let mut dd: Vec<Vec<Lin>> = Vec::with_capacity(slp.gates().len());
    for g in slp.gates() {
        match g {
            Gate::Input(j) => {
                let v = (0..=n).map(|k| if *j < k { b.var(n + j) } else { b.var(*j) }).collect();
                at.push(v);
                let mut d = vec![Lin::zero(); n];
                d[*j] = b.one();
                dd.push(d);
            }
            Gate::Const(c) => {
                at.push(vec![b.constant(c); n + 1]);
                dd.push(vec![Lin::zero(); n]);
            }
            Gate::Mul(l, r) => {
                let a: Vec<Lin> = (0..=n).map(|k| map_col(l, &at, k)).collect();
                let c: Vec<Lin> = (0..=n).map(|k| map_col(r, &at, k)).collect();
                let mut d = Vec::with_capacity(n);
                for k in 1..=n {
                    // dd_k[a·c] = dd_k[a]·c(Z^k) + a(Z^{k-1})·dd_k[c]
                    let da = map_col(l, &dd, k - 1);
                    let dc = map_col(r, &dd, k - 1);
                    let t1 = b.mul(&da, &c[k]);
                    let t2 = b.mul(&a[k - 1], &dc);
                    d.push(t1.add(&t2));
                }
                let v = (0..=n).map(|k| b.mul(&a[k], &c[k])).collect();
                at.push(v);
                dd.push(d);
            }
        }
    }
    let mut outs = Vec::new();
    for o in slp.outputs() {
        for k in 0..n {
            outs.push(map_col(o, &dd, k));
        }
    }
    b.finish(outs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, MPoly, Rat, Ring};
    use crate::slp::{metrics, parse_poly, parse_system};
    use num_traits::One;

    fn var(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn derivative_examples() {
        let s = derive_all(&parse_poly("X1^2+X1+1", &["X1"]).unwrap());
        assert_eq!(s.eval(&[int(2)]).unwrap()[1], int(5));
        let s = derive_all(&parse_poly("X2-X1^2", &["X1", "X2"]).unwrap());
        let e = s.expand();
        assert_eq!(e[1], var(2, 0).mul_int(&int(-2)));
        assert_eq!(e[2], MPoly::constant(2, Rat::one()));
        let s = derive_all(&parse_poly("X1*X2", &["X1", "X2"]).unwrap());
        let e = s.expand();
        assert_eq!((e[1].clone(), e[2].clone()), (var(2, 1), var(2, 0)));
    }

    #[test]
    fn derivative_cost() {
        let f = parse_system(&["X1^3*X2 + X2^2", "X1*X2*X3"], &["X1", "X2", "X3"]).unwrap();
        let m = metrics(&f);
        let d = derive_all(&f);
        let md = metrics(&d);
        assert!(md.size <= (2 * 3 + 1) * m.size);
        assert!(md.depth <= m.depth + 1);
    }

    #[test]
    fn homogeneous_examples() {
        let s = homogeneous_components(&parse_poly("X1^2+X1+1", &["X1"]).unwrap(), 2);
        let e = s.expand();
        let x = var(1, 0);
        assert_eq!(e, vec![x.one_like(), x.clone(), x.mul(&x)]);
        let s = homogeneous_components(&parse_poly("X1*X2+3", &["X1", "X2"]).unwrap(), 2);
        let e = s.expand();
        assert_eq!(e[0], MPoly::constant(2, Rat::from_integer(int(3))));
        assert!(e[1].vanishes());
        assert_eq!(e[2], var(2, 0).mul(&var(2, 1)));
        let s = homogeneous_components(&parse_poly("(X1+1)^2", &["X1"]).unwrap(), 2);
        let e = s.expand();
        assert_eq!(e[1], var(1, 0).mul_int(&int(2)));
    }

    #[test]
    fn divided_difference_examples() {
        let s = divided_differences(&parse_poly("X^2", &["X"]).unwrap());
        assert_eq!(s.expand()[0], var(2, 0).add(&var(2, 1)));
        let s = divided_differences(&parse_poly("X^2-X", &["X"]).unwrap());
        assert_eq!(s.expand()[0], var(2, 0).add(&var(2, 1)).sub(&MPoly::constant(2, Rat::one())));
        let f = parse_poly("X1*X2", &["X1", "X2"]).unwrap();
        let s = divided_differences(&f);
        let e = s.expand();
        assert_eq!(e[0], var(4, 1));
        assert_eq!(e[1], var(4, 2));
        // f(Y) - f(X) = l11 (Y1 - X1) + l12 (Y2 - X2)
        let lhs = var(4, 2).mul(&var(4, 3)).sub(&var(4, 0).mul(&var(4, 1)));
        let rhs = e[0].mul(&var(4, 2).sub(&var(4, 0))).add(&e[1].mul(&var(4, 3).sub(&var(4, 1))));
        assert_eq!(lhs, rhs);
    }
}
