use crate::arith::{common_denominator, rat_int, Int, MPoly, ModElem, Rat, Ring, TruncSeries, UniPoly};
use crate::error::SolveError;
use crate::fiber::{mult_table_from_resolution, restrict_system, GeometricResolution, LiftingFiber};
use crate::linalg::{adjoint_det, berkowitz_charpoly, cyclic_solve, Matrix};
use crate::slp::{derive_all, homogeneous_components_in, Slp};
use num_integer::Integer;
use num_traits::Zero;
use std::rc::Rc;

/// Polynomial in T whose coefficients are polynomials in the lifted coordinate y.
pub type BiPoly = UniPoly<UniPoly<Rat>>;

/// Curve obtained by freeing the last fixed coordinate y = Y_{n-i} of a
/// level-i fiber. The dependent coordinates are w_j / (∂q/∂T) modulo q, with
/// q monic in T.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedCurve {
    pub level: usize,
    pub a: Vec<Vec<Int>>,
    /// Y_1..Y_{n-i} at the fiber; the last entry is the lifted coordinate.
    pub point: Vec<Int>,
    pub lambda: Vec<Int>,
    pub q: BiPoly,
    pub w: Vec<BiPoly>,
}

impl LiftedCurve {
    /// The fiber times a line, for systems that do not involve y.
    pub fn cylinder(fiber: &LiftingFiber) -> Self {
        let qm = fiber.res.q_monic();
        let dq = qm.derivative();
        let lift = |p: &UniPoly<Rat>| -> BiPoly { p.map(|c| UniPoly::constant(c.clone())) };
        let w = fiber.res.coords().iter().map(|c| lift(&c.mul(&dq).rem_monic(&qm))).collect();
        LiftedCurve {
            level: fiber.level,
            a: fiber.a.clone(),
            point: fiber.point.clone(),
            lambda: fiber.res.lambda.clone(),
            q: lift(&qm),
            w,
        }
    }

    /// Index of y among the Y coordinates.
    pub fn free(&self) -> usize {
        self.point.len() - 1
    }

    pub fn q_t(&self) -> BiPoly {
        self.q.derivative()
    }

    pub fn y_degree(&self) -> usize {
        self.q.coeffs().iter().chain(self.w.iter().flat_map(|w| w.coeffs())).filter_map(|c| c.deg()).max().unwrap_or(0)
    }

    /// Fiber over y = y0, when it is unramified there.
    pub fn specialize(&self, y0: &Rat) -> Option<GeometricResolution> {
        let qs: UniPoly<Rat> = self.q.map(|c| c.eval(y0));
        let inv = qs.derivative().inverse_mod(&qs)?;
        let coords: Vec<UniPoly<Rat>> =
            self.w.iter().map(|w| w.map(|c| c.eval(y0)).mul(&inv).rem_monic(&qs)).collect();
        Some(GeometricResolution::from_rational(self.lambda.clone(), &qs, &coords))
    }

    /// q as a primitive integer polynomial in (y, T).
    pub fn q_mpoly(&self) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in self.q.coeffs().iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    terms.push((vec![j as u32, k as u32], a.clone()));
                }
            }
        }
        let den = common_denominator(terms.iter().map(|t| &t.1));
        let nums: Vec<Int> = terms.iter().map(|t| (&t.1 * rat_int(&den)).to_integer()).collect();
        let g = nums.iter().fold(Int::zero(), |g, a| g.gcd(a));
        MPoly::from_terms(2, terms.into_iter().zip(nums).map(|((e, _), a)| (e, Rat::from_integer(a / &g))))
    }
}

/// Degree of the single output in every input but the first.
fn dep_degree(g: &Slp) -> usize {
    g.expand()[0].terms().keys().map(|e| e[1..].iter().sum::<u32>() as usize).max().unwrap_or(0)
}

/// g(y, w/q_T)·q_T^e mod q, with g given on inputs (y, dep_1..dep_i) and e
/// its degree in the dependent inputs. Zero iff g vanishes on the curve.
pub fn curve_numerator(curve: &LiftedCurve, g: &Slp) -> BiPoly {
    let i = curve.w.len();
    assert_eq!(g.nvars(), i + 1);
    assert_eq!(g.noutputs(), 1);
    let e = dep_degree(g);
    let mask: Vec<bool> = (0..=i).map(|j| j > 0).collect();
    let comps = homogeneous_components_in(g, e, &mask);
    let m = Rc::new(curve.q.clone());
    let mut pt = vec![ModElem::new(&m, BiPoly::constant(UniPoly::x()))];
    pt.extend(curve.w.iter().map(|w| ModElem::new(&m, w.clone())));
    let c = comps.eval(&pt).expect("arity");
    let qt = ModElem::new(&m, curve.q_t());
    let mut acc = c[0].clone();
    for ck in &c[1..] {
        acc = acc.mul(&qt).add(ck);
    }
    acc.value().clone()
}

fn ts_poly_mul(a: &[TruncSeries], b: &[TruncSeries]) -> Vec<TruncSeries> {
    let z = a[0].zero_like();
    let mut c = vec![z; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.vanishes() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = c[i + j].add(&x.mul(y));
        }
    }
    c
}

/// Remainder modulo a monic polynomial (coefficients low to high).
fn ts_poly_rem(a: &[TruncSeries], m: &[TruncSeries]) -> Vec<TruncSeries> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    for k in (d..r.len()).rev() {
        let lead = r[k].clone();
        if lead.vanishes() {
            continue;
        }
        for j in 0..=d {
            r[k - d + j] = r[k - d + j].sub(&lead.mul(&m[j]));
        }
    }
    r.truncate(d);
    while r.len() < d {
        r.push(m[0].zero_like());
    }
    r
}

/// Lifts a level-i fiber to the curve obtained by freeing Y_{n-i}, by Newton
/// iteration on its multiplication matrices over Q[[y - p]] truncated at
/// degree δ + 1. The result is checked by substitution into f_1..f_i.
pub fn lift_fiber(fiber: &LiftingFiber, system: &Slp, delta_bound: usize) -> Result<LiftedCurve, SolveError> {
    let i = fiber.level;
    let n = fiber.n();
    assert!(i < n, "no free coordinate left to lift");
    let j0 = n - i - 1;
    let p = fiber.point[j0].clone();
    let f = restrict_system(system, &fiber.a, &fiber.point[..j0], &(0..i).collect::<Vec<_>>());
    let df = derive_all(&f);
    let d = fiber.res.degree();
    let table = mult_table_from_resolution(&fiber.res);
    let cap = delta_bound as u32 + 1;

    let shape0 = TruncSeries::shape_new(vec![p.clone()], 0);
    let mut x: Vec<Matrix<TruncSeries>> =
        table.mx.iter().map(|m| m.map(|r| TruncSeries::constant(&shape0, r.clone()))).collect();
    let mut prec = 0u32;
    while prec < cap {
        prec = (2 * prec + 1).min(cap);
        let shape = TruncSeries::shape_new(vec![p.clone()], prec);
        x = x.iter().map(|m| m.map(|s| s.recap(&shape))).collect();
        let yv = Matrix::scalar(&TruncSeries::zero(&shape), d, &TruncSeries::variable(&shape, 0));
        let mut pt = vec![yv];
        pt.extend(x.iter().cloned());
        let vals = df.eval(&pt).expect("arity");
        let jac = Matrix::from_fn(i, i, |k, m| vals[i + k * (i + 1) + m + 1].clone());
        let (adj, det) = adjoint_det(&jac);
        let (adj2, det2) = adjoint_det(&det);
        let inv = det2
            .invert()
            .map_err(|_| SolveError::BadLiftingPoint { level: i, reason: "fiber not smooth".into() })?;
        let dinv = adj2.map(|s| s.mul(&inv));
        x = (0..i)
            .map(|m| {
                let mut corr = vals[0].zero_like();
                for k in 0..i {
                    corr = corr.add(&adj.get(m, k).mul(&vals[k]));
                }
                x[m].sub(&dinv.matmul(&corr))
            })
            .collect();
    }

    let lambda = fiber.res.lambda.clone();
    let mut big = x[0].zero_like();
    for (m, l) in x.iter().zip(&lambda) {
        big = big.add(&m.mul_int(l));
    }
    let phi = berkowitz_charpoly(&big);
    let zero = phi[0].zero_like();
    let e: Vec<TruncSeries> = (0..d).map(|k| if k == 0 { zero.one_like() } else { zero.clone() }).collect();
    let dphi: Vec<TruncSeries> = (1..=d).map(|k| phi[k].mul_int(&Int::from(k))).collect();
    let mut ws = Vec::with_capacity(i);
    for xm in &x {
        let c = cyclic_solve(&big, &e, &xm.mul_vec(&e)).map_err(|_| SolveError::PrimitiveFailure { level: i })?;
        ws.push(ts_poly_rem(&ts_poly_mul(&c, &dphi), &phi));
    }

    let shift = -rat_int(&p);
    let to_y = |s: &TruncSeries| -> Result<UniPoly<Rat>, SolveError> {
        let mut c = s.univariate_coeffs();
        if !c[cap as usize].is_zero() {
            return Err(SolveError::NotNoether { level: i });
        }
        c.truncate(cap as usize);
        Ok(UniPoly::new(c).taylor_shift(&shift))
    };
    let conv = |v: &[TruncSeries]| -> Result<BiPoly, SolveError> {
        Ok(UniPoly::new(v.iter().map(&to_y).collect::<Result<Vec<_>, _>>()?))
    };
    let q = conv(&phi)?;
    debug_assert!(q.is_monic());
    let w = ws.iter().map(|v| conv(v)).collect::<Result<Vec<_>, _>>()?;
    let curve = LiftedCurve { level: i, a: fiber.a.clone(), point: fiber.point.clone(), lambda, q, w };
    for k in 0..i {
        if !curve_numerator(&curve, &f.select_outputs(&[k])).is_zero() {
            return Err(SolveError::NotNoether { level: i });
        }
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::fiber::Param;
    use crate::slp::parse_poly;

    fn fiber(q: &[i64], v: &[i64], p: i64) -> LiftingFiber {
        LiftingFiber {
            level: 1,
            a: vec![vec![int(1), int(0)], vec![int(0), int(1)]],
            point: vec![int(p)],
            res: GeometricResolution {
                lambda: vec![int(1)],
                q: UniPoly::from_i64(q),
                params: vec![Param { rho: int(1), v: UniPoly::from_i64(v) }],
            },
        }
    }

    fn expect_q(curve: &LiftedCurve, terms: &[((u32, u32), i64)]) {
        let m = MPoly::from_terms(2, terms.iter().map(|((a, b), c)| (vec![*a, *b], rat(*c, 1))));
        assert_eq!(curve.q_mpoly(), m);
    }

    #[test]
    fn parabola_sideways() {
        let f = parse_poly("X2^2-X1", &["X1", "X2"]).unwrap();
        let c = lift_fiber(&fiber(&[-1, 0, 1], &[0, 1], 1), &f, 2).unwrap();
        expect_q(&c, &[((0, 2), 1), ((1, 0), -1)]);
    }

    #[test]
    fn parabola() {
        let f = parse_poly("X2-X1^2", &["X1", "X2"]).unwrap();
        let c = lift_fiber(&fiber(&[-1, 1], &[0, 1], 1), &f, 2).unwrap();
        expect_q(&c, &[((0, 1), 1), ((2, 0), -1)]);
        let r = c.specialize(&rat(3, 1)).unwrap();
        assert_eq!(r.q, UniPoly::from_i64(&[-9, 1]));
    }

    #[test]
    fn singular_fiber() {
        let f = parse_poly("X2^2-X1", &["X1", "X2"]).unwrap();
        let bad = LiftingFiber { res: GeometricResolution { q: UniPoly::from_i64(&[0, 0, 1]), ..fiber(&[0, 1], &[0, 1], 0).res }, ..fiber(&[0, 1], &[0, 1], 0) };
        assert!(matches!(lift_fiber(&bad, &f, 2), Err(SolveError::BadLiftingPoint { .. })));
    }

    #[test]
    fn cylinder_numerator() {
        let fb = fiber(&[1, 1, 1], &[0, 1], 5);
        let c = LiftedCurve::cylinder(&fb);
        // f = X2^2 + X2 + 1 vanishes on the cylinder; X2 - X1 does not
        let g = parse_poly("Z^2+Z+1", &["Y", "Z"]).unwrap();
        assert!(curve_numerator(&c, &g).is_zero());
        let h = parse_poly("Z-Y", &["Y", "Z"]).unwrap();
        assert!(!curve_numerator(&c, &h).is_zero());
    }
}
