//! Gaussian elimination over Q.

use super::Matrix;
use crate::arith::Rat;
use num_traits::{One, Zero};

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix<Rat>) -> (Matrix<Rat>, Vec<usize>) {
    let (r, c) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rat>> = (0..r).map(|i| m.row(i)).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pr = a[row].clone();
        for (i, ri) in a.iter_mut().enumerate() {
            if i == row || ri[col].is_zero() {
                continue;
            }
            let f = ri[col].clone();
            for (x, y) in ri.iter_mut().zip(&pr).skip(col) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if r == 0 {
        return (m.clone(), pivots);
    }
    (Matrix::from_rows(a), pivots)
}

pub fn rank(m: &Matrix<Rat>) -> usize {
    rref(m).1.len()
}

/// Some solution of M x = b, or None if inconsistent.
pub fn solve(m: &Matrix<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    let c = m.cols();
    let aug = Matrix::from_fn(m.rows(), c + 1, |i, j| if j < c { m.get(i, j).clone() } else { b[i].clone() });
    let (e, piv) = rref(&aug);
    if piv.last() == Some(&c) {
        return None;
    }
    let mut x = vec![Rat::zero(); c];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = e.get(i, c).clone();
    }
    Some(x)
}

/// Basis of {x : M x = 0}.
pub fn nullspace(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    let c = m.cols();
    let (e, piv) = rref(m);
    let free: Vec<usize> = (0..c).filter(|j| !piv.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); c];
            v[f] = Rat::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -e.get(i, f).clone();
            }
            v
        })
        .collect()
}
