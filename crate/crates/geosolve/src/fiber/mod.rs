//! Geometric resolutions, lifting fibers and multiplication tables.

mod validate;

pub use validate::{validate_fiber, validate_resolution, ValidationReport};

use crate::arith::height::{height_int, height_poly};
use crate::arith::{rat_int, to_rat_poly, Height, Int, ModElem, Rat, Ring, UniPoly};
use crate::linalg::ratmat;
use crate::linalg::{companion, Matrix};
use crate::slp::{derive_all, Lin, Slp, SlpBuilder};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::rc::Rc;

/// ρ·X_i - v(T).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param {
    pub rho: Int,
    pub v: UniPoly<Int>,
}

/// (λ, q, ρ_i X_i - v_i): the roots of q mapped through v_i/ρ_i are the
/// points of the variety, and Σ λ_i X_i takes the value T on them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricResolution {
    pub lambda: Vec<Int>,
    pub q: UniPoly<Int>,
    pub params: Vec<Param>,
}

impl GeometricResolution {
    /// Normal form from rational data: q primitive with positive leading
    /// coefficient, coordinates reduced mod q, every ρ_i X_i - v_i primitive
    /// with ρ_i > 0.
    pub fn from_rational(lambda: Vec<Int>, q: &UniPoly<Rat>, coords: &[UniPoly<Rat>]) -> Self {
        let qi = crate::arith::rat_to_primitive(q);
        let qm = Rc::new(to_rat_poly(&qi).monic());
        let params = coords.iter().map(|c| param_of(&c.rem_monic(&qm))).collect();
        GeometricResolution { lambda, q: qi, params }
    }

    pub fn nvars(&self) -> usize {
        self.params.len()
    }

    pub fn degree(&self) -> usize {
        self.q.deg().unwrap_or(0)
    }

    pub fn q_rat(&self) -> UniPoly<Rat> {
        to_rat_poly(&self.q)
    }

    pub fn q_monic(&self) -> UniPoly<Rat> {
        self.q_rat().monic()
    }

    /// v_i / ρ_i.
    pub fn coords(&self) -> Vec<UniPoly<Rat>> {
        self.params.iter().map(|p| to_rat_poly(&p.v).scale(&Rat::new(Int::one(), p.rho.clone()))).collect()
    }

    /// Π ρ_i.
    pub fn rho(&self) -> Int {
        self.params.iter().fold(Int::one(), |a, p| a * &p.rho)
    }

    /// Coordinates as elements of Q[T]/(q).
    pub fn coord_elems(&self) -> Vec<ModElem<Rat>> {
        let m = Rc::new(self.q_monic());
        self.coords().into_iter().map(|c| ModElem::new(&m, c)).collect()
    }
}

fn param_of(c: &UniPoly<Rat>) -> Param {
    let den = c.denominators_lcm();
    let v: UniPoly<Int> = c.map(|a| (a * rat_int(&den)).to_integer());
    let g = v.coeffs().iter().fold(den.clone(), |g, a| g.gcd(a));
    Param { rho: &den / &g, v: v.div_int_exact(&g) }
}

/// Makes every polynomial primitive again, rescaling the ρ_i.
pub fn clean_fiber(res: &GeometricResolution) -> GeometricResolution {
    GeometricResolution::from_rational(res.lambda.clone(), &res.q_rat(), &res.coords())
}

/// max of the heights of q and of every ρ_i X_i - v_i.
pub fn resolution_height(res: &GeometricResolution) -> Height {
    let mut h = height_poly(&res.q);
    for p in &res.params {
        h = h.max(height_int(&p.rho)).max(height_poly(&p.v));
    }
    h
}

/// Multiplication by c in Q[T]/(m) in the basis 1, T, ..., T^{D-1}.
pub fn mult_matrix(c: &UniPoly<Rat>, m: &UniPoly<Rat>) -> Matrix<Rat> {
    let d = m.deg().unwrap();
    let mut cols = Vec::with_capacity(d);
    let mut cur = c.rem_monic(m);
    for _ in 0..d {
        cols.push(cur.clone());
        cur = cur.shift(1).rem_monic(m);
    }
    Matrix::from_fn(d, d, |i, j| cols[j].coeff(i))
}

#[derive(Clone, Debug)]
pub struct MultiplicationTable {
    pub dim: usize,
    /// Companion matrix of q made monic.
    pub m: Matrix<Rat>,
    pub mx: Vec<Matrix<Rat>>,
}

impl MultiplicationTable {
    /// f_j(M_X) for every output.
    pub fn eval(&self, slp: &Slp) -> Vec<Matrix<Rat>> {
        slp.eval(&self.mx).expect("arity")
    }

    pub fn commute(&self) -> bool {
        let n = self.mx.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.mx[i].matmul(&self.mx[j]) == self.mx[j].matmul(&self.mx[i])))
    }

    /// q made monic, read off the companion matrix.
    pub fn modulus(&self) -> UniPoly<Rat> {
        let d = self.dim;
        let mut c: Vec<Rat> = (0..d).map(|i| -self.m.get(i, d - 1).clone()).collect();
        c.push(Rat::one());
        UniPoly::new(c)
    }

    /// X_i mod q, the first column of M_{X_i}.
    pub fn coord_polys(&self) -> Vec<UniPoly<Rat>> {
        self.mx.iter().map(|m| UniPoly::new((0..self.dim).map(|i| m.get(i, 0).clone()).collect())).collect()
    }

    pub fn identity(&self) -> Matrix<Rat> {
        Matrix::identity(&Rat::one(), self.dim)
    }
}

/// M_{X_i} = ρ_i^{-1} v_i(M) with M the companion matrix of q/lc(q).
pub fn mult_table_from_resolution(res: &GeometricResolution) -> MultiplicationTable {
    let qm = res.q_monic();
    let mx = res.coords().iter().map(|c| mult_matrix(c, &qm)).collect();
    MultiplicationTable { dim: res.degree(), m: companion(&qm).expect("monic"), mx }
}

fn ints_json(v: &[Int]) -> Value {
    json!(v.iter().map(|a| a.to_string()).collect::<Vec<_>>())
}

fn ints_from(v: &Value, what: &str) -> Result<Vec<Int>, String> {
    v.as_array()
        .ok_or(format!("{what} must be an array"))?
        .iter()
        .map(|x| x.as_str().and_then(|s| s.parse().ok()).ok_or(format!("{what}: expected decimal strings")))
        .collect()
}

pub fn resolution_to_json(res: &GeometricResolution) -> Value {
    let params: Vec<Value> =
        res.params.iter().map(|p| json!({"rho": p.rho.to_string(), "v": ints_json(p.v.coeffs())})).collect();
    json!({"lambda": ints_json(&res.lambda), "q": ints_json(res.q.coeffs()), "params": params})
}

pub fn resolution_from_json(v: &Value) -> Result<GeometricResolution, String> {
    let lambda = ints_from(&v["lambda"], "lambda")?;
    let q = UniPoly::new(ints_from(&v["q"], "q")?);
    let mut params = Vec::new();
    for p in v["params"].as_array().ok_or("params must be an array")? {
        let rho: Int = p["rho"].as_str().and_then(|s| s.parse().ok()).ok_or("rho: expected a decimal string")?;
        params.push(Param { rho, v: UniPoly::new(ints_from(&p["v"], "v")?) });
    }
    if params.len() != lambda.len() {
        return Err("lambda and params differ in length".into());
    }
    Ok(GeometricResolution { lambda, q, params })
}

/// Level-i lifting fiber. Coordinates are X = A·Y; Y_1..Y_{n-i} are fixed at
/// `point` and `res` describes the last i coordinates of Y.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftingFiber {
    pub level: usize,
    pub a: Vec<Vec<Int>>,
    pub point: Vec<Int>,
    pub res: GeometricResolution,
}

impl LiftingFiber {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Y coordinates in Q[T]/(q).
    pub fn y_coords(&self) -> Vec<UniPoly<Rat>> {
        let mut y: Vec<UniPoly<Rat>> = self.point.iter().map(|p| UniPoly::constant(rat_int(p))).collect();
        y.extend(self.res.coords());
        y
    }

    /// X = A·Y in Q[T]/(q).
    pub fn x_coords(&self) -> Vec<UniPoly<Rat>> {
        apply_matrix(&self.a, &self.y_coords())
    }

    /// Jacobian of f_1..f_i with respect to the last i coordinates of Y is a
    /// unit of Q[T]/(q).
    pub fn jacobian_is_unit(&self, system: &Slp) -> bool {
        let i = self.level;
        let n = self.n();
        let sys = system.select_outputs(&(0..i).collect::<Vec<_>>());
        let m = Rc::new(self.res.q_monic());
        let pt: Vec<ModElem<Rat>> = self.x_coords().into_iter().map(|c| ModElem::new(&m, c)).collect();
        let vals = derive_all(&sys).eval(&pt).expect("arity");
        let jac = Matrix::from_fn(i, i, |k, c| {
            let col = n - i + c;
            let mut acc = pt[0].zero_like();
            for j in 0..n {
                acc = acc.add(&vals[i + k * n + j].mul_int(&self.a[j][col]));
            }
            acc
        });
        let det = crate::linalg::adjoint_det(&jac).1;
        crate::arith::Field::try_inv(&det).is_some()
    }
}

/// Selected outputs of f(A·(fixed, Z)) as a program in the remaining Y coordinates Z.
pub fn restrict_system(system: &Slp, a: &[Vec<Int>], fixed: &[Int], outputs: &[usize]) -> Slp {
    let n = a.len();
    let k = fixed.len();
    let mut b = SlpBuilder::new(n - k);
    let ys: Vec<Lin> = (0..n).map(|j| if j < k { b.constant(&fixed[j]) } else { b.var(j - k) }).collect();
    let xs: Vec<Lin> =
        a.iter().map(|row| row.iter().zip(&ys).fold(Lin::zero(), |acc, (c, y)| acc.add(&y.scale(c)))).collect();
    let outs = b.append(&system.select_outputs(outputs), &xs);
    b.finish(outs)
}

pub fn apply_matrix(a: &[Vec<Int>], y: &[UniPoly<Rat>]) -> Vec<UniPoly<Rat>> {
    a.iter()
        .map(|row| {
            row.iter().zip(y).fold(UniPoly::zero(), |acc, (c, p)| {
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&p.scale(&rat_int(c)))
                }
            })
        })
        .collect()
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &[Vec<Int>]) -> Option<Vec<Vec<Int>>> {
    let n = a.len();
    let m = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            rat_int(&a[i][j])
        } else if j - n == i {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let (e, piv) = ratmat::rref(&m);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    let mut inv = vec![vec![Int::zero(); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let v = e.get(i, n + j);
            if !v.is_integer() {
                return None;
            }
            *x = v.to_integer();
        }
    }
    Some(inv)
}

/// Resolution of a level-n fiber in the original X coordinates.
pub fn to_original_coordinates(fiber: &LiftingFiber) -> GeometricResolution {
    assert_eq!(fiber.level, fiber.n());
    let inv = unimodular_inverse(&fiber.a).expect("coordinate change is unimodular");
    let n = fiber.n();
    // Σ λ_Y Y = Σ λ_Y (A^{-1} X), so λ_X = (A^{-1})^T λ_Y
    let lambda: Vec<Int> =
        (0..n).map(|j| (0..n).fold(Int::zero(), |acc, k| acc + &fiber.res.lambda[k] * &inv[k][j])).collect();
    GeometricResolution::from_rational(lambda, &fiber.res.q_rat(), &fiber.x_coords())
}
