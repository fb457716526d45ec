mod common;

use common::random_slp;
use geosolve::arith::height::log2_upper;
use geosolve::arith::Int;
use geosolve::slp::{
    degree_height_value_bounds, derive_all, divided_differences, homogeneous_components, metrics, parse_poly,
    slp_from_json, slp_to_json, Gate, Lin, Slp,
};
use geosolve::arith::Height;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Dense integer polynomial, exponent vector -> coefficient.
type Dense = BTreeMap<Vec<u32>, Int>;

fn d_add(a: &Dense, b: &Dense, c: &Int) -> Dense {
    let mut out = a.clone();
    for (e, x) in b {
        *out.entry(e.clone()).or_insert_with(Int::zero) += x * c;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn d_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (e, x) in a {
        for (f, y) in b {
            let g: Vec<u32> = e.iter().zip(f).map(|(p, q)| p + q).collect();
            *out.entry(g).or_insert_with(Int::zero) += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn d_var(nvars: usize, i: usize) -> Dense {
    let mut e = vec![0; nvars];
    e[i] = 1;
    Dense::from([(e, Int::one())])
}

fn d_const(nvars: usize, c: Int) -> Dense {
    let mut d = Dense::new();
    if !c.is_zero() {
        d.insert(vec![0; nvars], c);
    }
    d
}

/// Expands an SLP gate by gate, with its inputs replaced by `inputs`.
fn oracle(slp: &Slp, inputs: &[Dense], nvars: usize) -> Vec<Dense> {
    let mut vals: Vec<Dense> = Vec::new();
    let lin = |l: &Lin, vals: &[Dense]| -> Dense {
        l.terms().iter().fold(Dense::new(), |acc, (g, c)| d_add(&acc, &vals[*g], c))
    };
    for g in slp.gates() {
        let v = match g {
            Gate::Input(j) => inputs[*j].clone(),
            Gate::Const(c) => d_const(nvars, c.clone()),
            Gate::Mul(a, b) => d_mul(&lin(a, &vals), &lin(b, &vals)),
        };
        vals.push(v);
    }
    slp.outputs().iter().map(|o| lin(o, &vals)).collect()
}

fn expand(slp: &Slp) -> Vec<Dense> {
    let n = slp.nvars();
    oracle(slp, &(0..n).map(|i| d_var(n, i)).collect::<Vec<_>>(), n)
}

fn eval_dense(d: &Dense, pt: &[Int]) -> Int {
    d.iter().fold(Int::zero(), |acc, (e, c)| {
        acc + e.iter().zip(pt).fold(c.clone(), |t, (k, x)| t * num_traits::pow(x.clone(), *k as usize))
    })
}

fn slp_strategy() -> impl Strategy<Value = Slp> {
    (any::<u64>(), 1usize..=3, 1usize..=6, 1u32..=3, 1u32..=4)
        .prop_map(|(seed, n, l, depth, h)| random_slp(&mut ChaCha8Rng::seed_from_u64(seed), n, l, depth, h))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn eval_matches_dense(slp in slp_strategy(), pt in prop::collection::vec(-6i64..=6, 3)) {
        let n = slp.nvars();
        let pt: Vec<Int> = pt[..n].iter().map(|&x| Int::from(x)).collect();
        let direct = slp.eval(&pt).unwrap();
        let dense = expand(&slp);
        prop_assert_eq!(direct[0].clone(), eval_dense(&dense[0], &pt));
        let e = &slp.expand()[0];
        let mut lib = Dense::new();
        for (k, c) in e.terms() {
            lib.insert(k.clone(), c.to_integer());
        }
        prop_assert_eq!(lib, dense[0].clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivatives_are_first_order_differences(slp in slp_strategy()) {
        let n = slp.nvars();
        let d = expand(&derive_all(&slp));
        // f(X + ε e_j) in n + 1 variables, ε last
        for j in 0..n {
            let inputs: Vec<Dense> = (0..n)
                .map(|i| if i == j { d_add(&d_var(n + 1, i), &d_var(n + 1, n), &Int::one()) } else { d_var(n + 1, i) })
                .collect();
            let shifted = &oracle(&slp, &inputs, n + 1)[0];
            let linear: Dense = shifted
                .iter()
                .filter(|(e, _)| e[n] == 1)
                .map(|(e, c)| (e[..n].to_vec(), c.clone()))
                .collect();
            prop_assert_eq!(&linear, &d[1 + j]);
        }
        prop_assert_eq!(&d[0], &expand(&slp)[0]);
    }

    #[test]
    fn divided_difference_identity(slp in slp_strategy()) {
        let n = slp.nvars();
        let dd = expand(&divided_differences(&slp));
        let f = &expand(&slp)[0];
        let shift = |off: usize| -> Dense {
            f.iter()
                .map(|(e, c)| {
                    let mut g = vec![0; 2 * n];
                    g[off..off + n].copy_from_slice(e);
                    (g, c.clone())
                })
                .collect()
        };
        let lhs = d_add(&shift(n), &shift(0), &-Int::one());
        let mut rhs = Dense::new();
        for k in 0..n {
            let diff = d_add(&d_var(2 * n, n + k), &d_var(2 * n, k), &-Int::one());
            rhs = d_add(&rhs, &d_mul(&dd[k], &diff), &Int::one());
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_components_sum_back(slp in slp_strategy()) {
        let f = &expand(&slp)[0];
        let deg = f.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0) as usize;
        let parts = expand(&homogeneous_components(&slp, deg));
        let mut sum = Dense::new();
        for (k, p) in parts.iter().enumerate() {
            prop_assert!(p.keys().all(|e| e.iter().sum::<u32>() as usize == k));
            sum = d_add(&sum, p, &Int::one());
        }
        prop_assert_eq!(&sum, f);
    }

    #[test]
    fn degree_and_height_bounds(slp in slp_strategy()) {
        let m = metrics(&slp);
        let b = degree_height_value_bounds(&slp, &Height::one()).formula;
        for p in expand(&slp) {
            for (e, c) in &p {
                prop_assert!(Int::from(e.iter().sum::<u32>()) <= b.deg);
                prop_assert!(c.abs() <= Int::one() || log2_upper(c) <= b.ht);
            }
        }
        prop_assert!(m.depth <= 3 && m.size <= 6);
    }

    #[test]
    fn json_round_trip(slp in slp_strategy(), pt in prop::collection::vec(-5i64..=5, 3)) {
        let back = slp_from_json(&slp_to_json(&slp)).unwrap();
        let pt: Vec<Int> = pt[..slp.nvars()].iter().map(|&x| Int::from(x)).collect();
        prop_assert_eq!(back.eval(&pt).unwrap(), slp.eval(&pt).unwrap());
    }
}

#[test]
fn parsed_powers_expand() {
    let p = parse_poly("(X1+2)^3-X2*X1", &["X1", "X2"]).unwrap();
    let d = &expand(&p)[0];
    let want: Dense = [(vec![3, 0], 1), (vec![2, 0], 6), (vec![1, 0], 12), (vec![0, 0], 8), (vec![1, 1], -1)]
        .into_iter()
        .map(|(e, c)| (e, Int::from(c)))
        .collect();
    assert_eq!(d, &want);
    // ^3 by binary powering needs depth 2
    assert_eq!(metrics(&p).depth, 2);
}
