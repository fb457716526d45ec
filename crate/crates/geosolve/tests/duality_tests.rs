mod common;

use common::{derivative, in_ideal_macaulay, leibniz_det, random_dense, random_solved_system, system};
use geosolve::arith::{rat, Int, MPoly, Ring};
use geosolve::duality::{bezout_witness, lift_residue, pseudo_jacobian};
use geosolve::error::DualityError;
use num_traits::Zero;
use geosolve::fiber::mult_table_from_resolution;
use geosolve::linalg::Matrix;
use geosolve::slp::{from_mpoly, parse_poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn residues_are_congruent_and_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..24 {
        let n = 1 + case % 2;
        let d = rng.gen_range(2..=3);
        let (polys, slp, sol) = random_solved_system(&mut rng, n, d);
        let table = mult_table_from_resolution(&sol.resolution);
        let deg_g = rng.gen_range(0..=2 * d);
        let g = random_dense(&mut rng, n, deg_g, 6);
        let g1 = lift_residue(&from_mpoly(&g), &table, &slp).unwrap();
        let bound = n as u32 * (d - 1);
        assert!(g1.total_degree().unwrap_or(0) <= bound, "case {case}");
        // no zeros at infinity, so membership shows up in degree max(deg g, bound)
        let diff = g1.sub(&g);
        let top = deg_g.max(bound);
        assert!(in_ideal_macaulay(&diff, &polys, top), "case {case}");
        assert!(!in_ideal_macaulay(&diff.add(&MPoly::constant(n, rat(1, 1))), &polys, top));
    }
}

#[test]
fn pseudo_jacobian_on_the_diagonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let degs: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let polys: Vec<MPoly> = degs.iter().map(|&d| random_dense(&mut rng, n, d, 5)).collect();
        let delta = pseudo_jacobian(&geosolve::slp::from_mpolys(n, &polys)).expand().remove(0);
        // Y := X
        let diag = MPoly::from_terms(
            n,
            delta.terms().iter().map(|(e, c)| ((0..n).map(|i| e[i] + e[n + i]).collect(), c.clone())),
        );
        let jac = Matrix::from_fn(n, n, |j, k| derivative(&polys[j], k));
        assert_eq!(diag, leibniz_det(&jac));
    }
}

#[test]
fn witnesses_certify_emptiness() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 12 {
        let n = 1 + checked % 2;
        let (polys, slp, sol) = random_solved_system(&mut rng, n, 2);
        let df = rng.gen_range(1..=2);
        let f = random_dense(&mut rng, n, df, 5);
        let w = match bezout_witness(&sol.resolution, &slp, &from_mpoly(&f)) {
            Ok(w) => w,
            Err(DualityError::Consistent) => continue,
            Err(e) => panic!("{e:?}"),
        };
        assert!(!w.a.is_zero());
        assert!(w.g.terms().values().all(|c| c.is_integer()));
        let identity = MPoly::constant(n, geosolve::arith::rat_int(&w.a)).sub(&w.g.mul(&f));
        let top = identity.total_degree().unwrap_or(0).max(n as u32);
        assert!(in_ideal_macaulay(&identity, &polys, top));
        checked += 1;
    }
}

#[test]
fn witness_for_two_points_and_a_line() {
    let sys = system(&["X1^2-X1".to_string()], 1);
    let sol = geosolve::solver::solve_system(&sys, 0, 3).unwrap();
    let f = parse_poly("X1-2", &["X1"]).unwrap();
    let w = bezout_witness(&sol.resolution, &sys, &f).unwrap();
    assert_eq!(w.a, Int::from(2));
    let g = MPoly::from_terms(1, [(vec![1], rat(-1, 1)), (vec![0], rat(-1, 1))]);
    assert_eq!(w.g, g);
}
