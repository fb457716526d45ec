mod common;

use common::{primitive_mpoly, random_planar_case};
use geosolve::arith::{rat, Int, Rat, Ring, TruncSeries};
use geosolve::newton::{lift_fiber, newton_numerators};
use geosolve::slp::parse_system;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn lifted_curve_matches_resultant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let case = random_planar_case(&mut rng);
        let curve = lift_fiber(&case.fiber, &case.f, case.degree as usize).unwrap();
        assert_eq!(primitive_mpoly(&curve.q_mpoly()), primitive_mpoly(&case.oracle), "f = {}", case.dense);
        // back at the lifting point the fiber reappears
        let p = Rat::from_integer(case.fiber.point[0].clone());
        assert_eq!(curve.specialize(&p).unwrap(), case.fiber.res);
        // the y-degree stays within the bound used for the lift
        assert!(curve.y_degree() <= case.degree as usize);
    }
}

/// N^k applied to X = 1 over Q[[t]] at Y = 1 + t: f vanishes to order 2^k.
#[test]
fn newton_converges_quadratically() {
    let f = parse_system(&["X1^2-X2"], &["X1", "X2"]).unwrap();
    for k in 1..=3 {
        let it = newton_numerators(&f, k);
        let cap = 1u32 << k;
        let shape = TruncSeries::shape_new(vec![Int::from(1)], cap);
        let x0 = TruncSeries::constant(&shape, rat(1, 1));
        let y = TruncSeries::variable(&shape, 0);
        let v = it.slp.eval(&[x0, y.clone()]).unwrap();
        let x = v[0].mul(&v[1].invert().unwrap());
        let r = x.mul(&x).sub(&y);
        let low: Vec<_> = r.terms().iter().filter(|(e, _)| e[0] < cap).collect();
        assert!(low.is_empty(), "k = {k}: {low:?}");
        // the error at order 2^k is still there
        assert!(!r.coeff(&[cap]).is_zero());
    }
}

#[test]
fn two_equation_newton_step() {
    // X1^2 + X2^2 = 2 + Y, X1 = X2 has the branch X1 = X2 = sqrt(1 + Y/2)
    let f = parse_system(&["X1^2+X2^2-2-X3", "X1-X2"], &["X1", "X2", "X3"]).unwrap();
    let it = newton_numerators(&f, 2);
    let shape = TruncSeries::shape_new(vec![Int::from(0)], 4);
    let one = TruncSeries::constant(&shape, rat(1, 1));
    let y = TruncSeries::variable(&shape, 0);
    let v = it.slp.eval(&[one.clone(), one, y.clone()]).unwrap();
    let hinv = v[2].invert().unwrap();
    let (x1, x2) = (v[0].mul(&hinv), v[1].mul(&hinv));
    let r = x1.mul(&x1).add(&x2.mul(&x2)).sub(&TruncSeries::constant(&shape, rat(2, 1))).sub(&y);
    assert!(r.terms().keys().all(|e| e[0] >= 4));
    assert_eq!(x1, x2);
}
