mod common;

use common::leibniz_det;
use geosolve::arith::{Int, Rat, Ring, UniPoly};
use geosolve::linalg::{adjoint_det, berkowitz_charpoly, charpoly, companion, det, Matrix};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn int_matrix(n: usize, e: &[i64]) -> Matrix<Int> {
    Matrix::from_fn(n, n, |i, j| Int::from(e[i * n + j]))
}

fn matrix() -> impl Strategy<Value = Matrix<Int>> {
    (1usize..=5).prop_flat_map(|n| prop::collection::vec(-9i64..=9, n * n).prop_map(move |e| int_matrix(n, &e)))
}

/// det(T·Id - M) over Z[T] by permutation expansion.
fn leibniz_charpoly(m: &Matrix<Int>) -> Vec<Int> {
    let n = m.n();
    let t = Matrix::from_fn(n, n, |i, j| {
        let mut c = vec![-m.get(i, j).clone()];
        if i == j {
            c.push(Int::one());
        }
        UniPoly::new(c)
    });
    let p = leibniz_det(&t);
    (0..=n).map(|k| p.coeff(k)).collect()
}

fn block_diag(a: &Matrix<Int>, b: &Matrix<Int>) -> Matrix<Int> {
    let (n, m) = (a.n(), b.n());
    Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a.get(i, j).clone(),
        (false, false) => b.get(i - n, j - n).clone(),
        _ => Int::zero(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn berkowitz_matches_leibniz(m in matrix()) {
        prop_assert_eq!(berkowitz_charpoly(&m), leibniz_charpoly(&m));
        prop_assert_eq!(det(&m), leibniz_det(&m));
    }

    #[test]
    fn charpoly_of_block_diagonal(a in matrix(), b in matrix()) {
        let pa = UniPoly::new(berkowitz_charpoly(&a));
        let pb = UniPoly::new(berkowitz_charpoly(&b));
        prop_assert_eq!(UniPoly::new(berkowitz_charpoly(&block_diag(&a, &b))), pa.mul(&pb));
    }

    #[test]
    fn adjoint_identity(m in matrix()) {
        let (adj, d) = adjoint_det(&m);
        let n = m.n();
        prop_assert_eq!(m.matmul(&adj), Matrix::scalar(&Int::zero(), n, &d));
        prop_assert_eq!(adj.matmul(&m), Matrix::scalar(&Int::zero(), n, &d));
    }

    #[test]
    fn companion_round_trip(c in prop::collection::vec(-30i64..=30, 1..=8)) {
        let mut c: Vec<Rat> = c.into_iter().map(|x| Rat::from_integer(x.into())).collect();
        c.push(Rat::one());
        let q = UniPoly::new(c);
        prop_assert_eq!(charpoly(&companion(&q).unwrap()), q);
    }
}

/// 2×2 matrices whose entries are polynomials in one commuting 2×2 matrix,
/// checked against the flattened 4×4 determinant.
#[test]
fn berkowitz_over_commuting_blocks() {
    let base = int_matrix(2, &[1, 2, -3, 4]);
    let id = Matrix::identity(&Int::zero(), 2);
    let poly = |a: i64, b: i64| id.map(|x| x * Int::from(a)).add(&base.map(|x| x * Int::from(b)));
    let cases = [[(1, 2), (0, 1), (3, -1), (2, 2)], [(5, 0), (1, 1), (-2, 3), (0, -4)], [(0, 0), (1, 0), (0, 1), (7, 7)]];
    for case in cases {
        let blocks: Vec<Matrix<Int>> = case.iter().map(|&(a, b)| poly(a, b)).collect();
        let m = Matrix::from_fn(2, 2, |i, j| blocks[2 * i + j].clone());
        let d = det(&m);
        let flat = Matrix::from_fn(4, 4, |i, j| blocks[2 * (i / 2) + j / 2].get(i % 2, j % 2).clone());
        // det of a block matrix with commuting blocks is det(AD - BC)
        assert_eq!(leibniz_det(&d), leibniz_det(&flat));
        assert_eq!(d, blocks[0].matmul(&blocks[3]).sub(&blocks[1].matmul(&blocks[2])));
    }
}

#[test]
fn companion_needs_monic() {
    assert!(companion(&UniPoly::<Rat>::from_ints(&[1, 2])).is_err());
}
