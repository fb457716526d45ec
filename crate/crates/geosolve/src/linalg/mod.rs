//! Division-free linear algebra over commutative rings.

pub mod ratmat;

use crate::arith::{Field, Int, Ring, Scalar, UniPoly};
use crate::error::LinalgError;
use std::fmt;

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Identity built from a template element of the ring.
    pub fn identity(like: &R, n: usize) -> Self {
        let z = like.zero_like();
        let o = like.one_like();
        Self::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn zeros(like: &R, rows: usize, cols: usize) -> Self {
        let z = like.zero_like();
        Self::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn scalar(like: &R, n: usize, c: &R) -> Self {
        let z = like.zero_like();
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n(&self) -> usize {
        assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let z = self.data.first().or(o.data.first()).expect("non-empty").zero_like();
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = z.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.vanishes() {
                        continue;
                    }
                    acc = acc.add(&a.mul(o.get(k, j)));
                }
                data.push(acc);
            }
        }
        Matrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.vanishes() {
                        acc = acc.add(&a.mul(&v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.vanishes())
    }

    /// Top-left k×k block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self.get(i, j).clone())
    }

    pub fn trace(&self) -> R {
        let mut acc = self.data[0].zero_like();
        for i in 0..self.n() {
            acc = acc.add(self.get(i, i));
        }
        acc
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "{:?}", self.row(i))?;
            if i + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

impl<R: Ring> Ring for Matrix<R> {
    fn zero_like(&self) -> Self {
        Matrix::zeros(&self.data[0], self.rows, self.cols)
    }
    fn one_like(&self) -> Self {
        Matrix::identity(&self.data[0], self.n())
    }
    fn add(&self, o: &Self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        self.matmul(o)
    }
    fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }
    fn vanishes(&self) -> bool {
        self.is_zero_matrix()
    }
    fn exact_zero_test(&self) -> bool {
        self.entries().first().map_or(true, Ring::exact_zero_test)
    }
    fn mul_int(&self, c: &Int) -> Self {
        self.map(|x| x.mul_int(c))
    }
}

/// det(T·Id - M), coefficients low to high, by the Samuelson-Berkowitz
/// recurrence. Only ring additions and multiplications are used.
pub fn berkowitz_charpoly<R: Ring>(m: &Matrix<R>) -> Vec<R> {
    let n = m.n();
    assert!(n > 0, "empty matrix");
    let like = m.get(0, 0);
    let one = like.one_like();
    // coefficients high to low
    let mut p: Vec<R> = vec![one.clone()];
    for r in 0..n {
        let mut t: Vec<R> = Vec::with_capacity(r + 2);
        t.push(one.clone());
        t.push(m.get(r, r).neg());
        let mut v: Vec<R> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for k in 0..r {
            let mut s = like.zero_like();
            for j in 0..r {
                s = s.add(&m.get(r, j).mul(&v[j]));
            }
            t.push(s.neg());
            if k + 1 < r {
                v = (0..r)
                    .map(|i| {
                        let mut acc = like.zero_like();
                        for j in 0..r {
                            acc = acc.add(&m.get(i, j).mul(&v[j]));
                        }
                        acc
                    })
                    .collect();
            }
        }
        let mut np = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = like.zero_like();
            for j in 0..=r.min(i) {
                if i - j < t.len() {
                    acc = acc.add(&t[i - j].mul(&p[j]));
                }
            }
            np.push(acc);
        }
        p = np;
    }
    p.reverse();
    p
}

/// Division-free determinant.
pub fn det<R: Ring>(m: &Matrix<R>) -> R {
    let c = berkowitz_charpoly(m);
    if m.n() % 2 == 1 {
        c[0].neg()
    } else {
        c[0].clone()
    }
}

pub fn charpoly<S: Scalar>(m: &Matrix<S>) -> UniPoly<S> {
    UniPoly::new(berkowitz_charpoly(m))
}

/// (Adj(M), det M) with M·Adj = Adj·M = det·Id, from the characteristic
/// polynomial by Cayley-Hamilton.
pub fn adjoint_det<R: Ring>(m: &Matrix<R>) -> (Matrix<R>, R) {
    let n = m.n();
    let c = berkowitz_charpoly(m);
    let like = m.get(0, 0);
    let mut b = Matrix::identity(like, n);
    for j in 1..n {
        b = m.matmul(&b).add(&Matrix::scalar(like, n, &c[n - j]));
    }
    let (adj, det) = if n % 2 == 1 { (b, c[0].neg()) } else { (b.neg(), c[0].clone()) };
    debug_assert!(!like.exact_zero_test() || m.matmul(&adj).sub(&Matrix::scalar(like, n, &det)).is_zero_matrix());
    (adj, det)
}

/// Companion matrix of a monic polynomial: column j holds T·T^j in the basis 1, T, ...
pub fn companion<S: Scalar>(q: &UniPoly<S>) -> Result<Matrix<S>, LinalgError> {
    let d = match q.deg() {
        Some(d) if d >= 1 && q.is_monic() => d,
        _ => return Err(LinalgError::NotMonic),
    };
    Ok(Matrix::from_fn(d, d, |i, j| {
        if j + 1 < d {
            if i == j + 1 {
                S::one_s()
            } else {
                S::zero_s()
            }
        } else {
            q.coeff(i).neg()
        }
    }))
}

/// Coefficients c with Σ c_i M^i e = w, via one division by the Krylov determinant.
pub fn cyclic_solve<R: Field>(m: &Matrix<R>, e: &[R], w: &[R]) -> Result<Vec<R>, LinalgError> {
    let d = m.n();
    let mut cols: Vec<Vec<R>> = Vec::with_capacity(d);
    let mut v = e.to_vec();
    for i in 0..d {
        cols.push(v.clone());
        if i + 1 < d {
            v = m.mul_vec(&v);
        }
    }
    let k = Matrix::from_fn(d, d, |i, j| cols[j][i].clone());
    let (adj, det) = adjoint_det(&k);
    let inv = det.try_inv().ok_or(LinalgError::NotPrimitive)?;
    Ok(adj.mul_vec(w).into_iter().map(|x| x.mul(&inv)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rat};

    fn im(rows: &[&[i64]]) -> Matrix<Int> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn charpoly_examples() {
        let id = im(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(charpoly(&id), UniPoly::from_i64(&[-1, 3, -3, 1]));
        assert_eq!(charpoly(&im(&[&[0, 1], &[1, 0]])), UniPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(charpoly(&im(&[&[2]])), UniPoly::from_i64(&[-2, 1]));
    }

    #[test]
    fn adjoint_examples() {
        let (a, d) = adjoint_det(&im(&[&[1, 0], &[0, 1]]));
        assert_eq!((a, d), (im(&[&[1, 0], &[0, 1]]), int(1)));
        let (a, d) = adjoint_det(&im(&[&[1, 2], &[3, 4]]));
        assert_eq!((a, d), (im(&[&[4, -2], &[-3, 1]]), int(-2)));
    }

    #[test]
    fn companion_examples() {
        let c = companion(&UniPoly::from_ints(&[1, 1, 1])).unwrap();
        let expect = Matrix::from_rows(vec![vec![rat(0, 1), rat(-1, 1)], vec![rat(1, 1), rat(-1, 1)]]);
        assert_eq!(c, expect);
        let c = companion(&UniPoly::from_ints(&[-3, 1])).unwrap();
        assert_eq!(c, Matrix::from_rows(vec![vec![rat(3, 1)]]));
        let q = UniPoly::from_ints(&[0, -1, 1]);
        assert_eq!(charpoly(&companion(&q).unwrap()), q);
        assert!(companion(&UniPoly::from_ints(&[1, 2])).is_err());
    }

    #[test]
    fn cyclic_examples() {
        let m = companion(&UniPoly::from_ints(&[1, 1, 1])).unwrap();
        let e = vec![rat(1, 1), rat(0, 1)];
        let me = m.mul_vec(&e);
        assert_eq!(cyclic_solve(&m, &e, &me).unwrap(), vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(cyclic_solve(&m, &e, &e).unwrap(), vec![rat(1, 1), rat(0, 1)]);
        let m2e = m.mul_vec(&me);
        assert_eq!(cyclic_solve(&m, &e, &m2e).unwrap(), vec![rat(-1, 1), rat(-1, 1)]);
        let id: Matrix<Rat> = Matrix::identity(&rat(1, 1), 2);
        assert_eq!(cyclic_solve(&id, &e, &e), Err(LinalgError::NotPrimitive));
    }
}
