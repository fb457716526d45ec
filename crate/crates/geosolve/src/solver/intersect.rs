//! Intersection of a lifted curve with the next hypersurface.

use super::roots::split_rational_roots;
use crate::arith::modp::{self, coprime_certified, squarefree_certified};
use crate::arith::{common_denominator, poly_gcd, rat_int, Int, ModElem, Rat, Ring, UniPoly};
use std::rc::Rc;
use num_integer::Integer;
use crate::error::SolveError;
use crate::fiber::{restrict_system, GeometricResolution, LiftingFiber};
use crate::linalg::ratmat::{nullspace, rank, rref};
use crate::linalg::{det, Matrix};
use crate::newton::{curve_numerator, BiPoly, LiftedCurve};
use crate::slp::Slp;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How the coefficient of the lifted coordinate in the new primitive element is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffSearch {
    /// 1, -1, 2, -2, ...
    SmallFirst,
    Random(u64),
}

impl CoeffSearch {
    pub fn candidates(&self, count: usize) -> Vec<Int> {
        match *self {
            CoeffSearch::SmallFirst => (1..=count as i64)
                .map(|k| {
                    let m = (k + 1) / 2;
                    Int::from(if k % 2 == 1 { m } else { -m })
                })
                .collect(),
            CoeffSearch::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let b = (count as i64).max(17) * 4;
                (0..count)
                    .map(|_| loop {
                        let c = rng.gen_range(-b..=b);
                        if c != 0 {
                            break Int::from(c);
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Which algorithm produced a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionPath {
    Base,
    /// Curve is a cylinder and the next equation splits over Q in y alone.
    Product,
    /// Generic quotient-algebra computation.
    General,
}

fn is_squarefree(p: &UniPoly<Rat>) -> bool {
    squarefree_certified(p) || p.is_squarefree()
}

fn coprime(a: &UniPoly<Rat>, b: &UniPoly<Rat>) -> bool {
    coprime_certified(a, b) || UniPoly::gcd(a, b).map(|g| g.deg() == Some(0)).unwrap_or(false)
}

/// Coefficients of a univariate program in its first input, the others ignored.
fn univariate(g: &Slp) -> UniPoly<Rat> {
    let e = &g.expand()[0];
    let d = e.degree_in(0).unwrap_or(0) as usize;
    let mut c = vec![Rat::zero(); d + 1];
    for (exp, a) in e.terms() {
        c[exp[0] as usize] += a;
    }
    UniPoly::new(c)
}

/// Level-(i+1) fiber from a level-i fiber and the curve through it; `None`
/// stands for the cylinder over the fiber, when f_1..f_i do not involve the
/// lifted coordinate.
/// When the fiber is known to consist of the rational `points` (coordinates
/// of the resolution), the new points are returned as well if they are rational.
pub fn intersect(
    fiber: &LiftingFiber,
    curve: Option<&LiftedCurve>,
    system: &Slp,
    search: CoeffSearch,
    points: Option<&[Vec<Rat>]>,
) -> Result<(LiftingFiber, IntersectionPath, Option<Vec<Vec<Rat>>>), SolveError> {
    let i = fiber.level;
    let level = i + 1;
    let j0 = fiber.point.len() - 1;
    let g = restrict_system(system, &fiber.a, &fiber.point[..j0], &[i]);
    let point = fiber.point[..j0].to_vec();
    let cylinder = curve.is_none();
    let make = |res| LiftingFiber { level, a: fiber.a.clone(), point: point.clone(), res };
    if cylinder && (1..=i).all(|k| !g.depends_on(k)[0]) {
        let gy = univariate(&g);
        if gy.is_zero() {
            return Err(SolveError::NotRegular { level });
        }
        if gy.deg() == Some(0) {
            return Err(SolveError::EmptyFiber { level });
        }
        if !is_squarefree(&gy) {
            return Err(SolveError::NonSmooth { level });
        }
        if let Some(roots) = split_rational_roots(&gy) {
            if let Some(pts) = points {
                let (res, new) = product_from_points(&fiber.res.lambda, pts, &roots, search, level)?;
                return Ok((make(res), IntersectionPath::Product, Some(new)));
            }
            let res = product_intersection(&fiber.res, &roots, search, level)?;
            return Ok((make(res), IntersectionPath::Product, None));
        }
    }
    let res = match curve {
        Some(c) => intersect_with_hypersurface(c, &g, search, level)?,
        None => intersect_with_hypersurface(&LiftedCurve::cylinder(fiber), &g, search, level)?,
    };
    let out = make(res);
    if !out.jacobian_is_unit(system) {
        return Err(SolveError::NonSmooth { level });
    }
    Ok((out, IntersectionPath::General, None))
}

/// Fiber × {τ_1..τ_m}: the new primitive element is S = T + c·y.
pub fn product_intersection(
    res: &GeometricResolution,
    roots: &[Rat],
    search: CoeffSearch,
    level: usize,
) -> Result<GeometricResolution, SolveError> {
    let qm = res.q_monic();
    let coords = res.coords();
    let d = res.degree();
    let m = roots.len();
    for c in search.candidates(d * d * m * m + 8) {
        let cr = rat_int(&c);
        let shifts: Vec<Rat> = roots.iter().map(|t| -(&cr * t)).collect();
        let qs: Vec<UniPoly<Rat>> = shifts.iter().map(|s| qm.taylor_shift(s)).collect();
        let ok = (0..m).all(|k| (k + 1..m).all(|l| coprime(&qs[k], &qs[l])));
        if !ok {
            continue;
        }
        let chi = qs.iter().fold(UniPoly::one(), |a, b| a.mul(b));
        let idem: Vec<UniPoly<Rat>> = if m == 1 {
            vec![UniPoly::one()]
        } else {
            qs.iter()
                .map(|qk| {
                    let co = chi.exact_div(qk);
                    let inv = co.rem_monic(qk).inverse_mod(qk).expect("coprime factors");
                    co.mul(&inv).rem_monic(&chi)
                })
                .collect()
        };
        let mut y = UniPoly::zero();
        for (t, e) in roots.iter().zip(&idem) {
            y = y.add(&e.scale(t));
        }
        let mut out = vec![y];
        for cj in &coords {
            let mut acc = UniPoly::zero();
            for (s, e) in shifts.iter().zip(&idem) {
                acc = acc.add(&cj.taylor_shift(s).mul(e));
            }
            out.push(acc.rem_monic(&chi));
        }
        let mut lambda = vec![c];
        lambda.extend(res.lambda.iter().cloned());
        return Ok(GeometricResolution::from_rational(lambda, &chi, &out));
    }
    Err(SolveError::PrimitiveFailure { level })
}

/// Same as `product_intersection` for a fiber of known rational points.
pub fn product_from_points(
    lambda: &[Int],
    points: &[Vec<Rat>],
    roots: &[Rat],
    search: CoeffSearch,
    level: usize,
) -> Result<(GeometricResolution, Vec<Vec<Rat>>), SolveError> {
    let s_old: Vec<Rat> = points
        .iter()
        .map(|p| p.iter().zip(lambda).fold(Rat::zero(), |acc, (x, l)| acc + x * rat_int(l)))
        .collect();
    let d = points.len();
    let m = roots.len();
    for c in search.candidates(d * d * m * m + 8) {
        let cr = rat_int(&c);
        let mut svals = Vec::with_capacity(d * m);
        let mut pts = Vec::with_capacity(d * m);
        for t in roots {
            for (p, s) in points.iter().zip(&s_old) {
                svals.push(s + &cr * t);
                let mut np = vec![t.clone()];
                np.extend(p.iter().cloned());
                pts.push(np);
            }
        }
        let mut sorted = svals.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() < svals.len() {
            continue;
        }
        let (chi, coords) = interpolate(&svals, &pts);
        let mut lam = vec![c];
        lam.extend(lambda.iter().cloned());
        return Ok((GeometricResolution::from_rational(lam, &chi, &coords), pts));
    }
    Err(SolveError::PrimitiveFailure { level })
}

/// Π (S - s_k) and, for every coordinate j, the polynomial of degree < D
/// taking the value values[k][j] at s_k. The nodes must be distinct.
pub fn interpolate(nodes: &[Rat], values: &[Vec<Rat>]) -> (UniPoly<Rat>, Vec<UniPoly<Rat>>) {
    let d = nodes.len();
    let ncoords = values.first().map_or(0, |v| v.len());
    // integer nodes e·s_k; undo with S' = e·S at the end
    let e = common_denominator(nodes.iter());
    let s: Vec<Int> = nodes.iter().map(|x| (x * rat_int(&e)).to_integer()).collect();
    let mut chi = vec![Int::one()];
    for sk in &s {
        let mut next = vec![Int::zero(); chi.len() + 1];
        for (i, c) in chi.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * sk;
        }
        chi = next;
    }
    // χ'(s_k) = Π_{j≠k} (s_k - s_j)
    let dchi: Vec<Int> = (0..d)
        .map(|k| (0..d).filter(|&j| j != k).fold(Int::one(), |acc, j| acc * (&s[k] - &s[j])))
        .collect();
    let l = dchi.iter().fold(Int::one(), |acc, x| acc.lcm(x));
    let weights: Vec<Int> = dchi.iter().map(|x| &l / x).collect();
    // χ / (S - s_k) by synthetic division
    let quotients: Vec<Vec<Int>> = s
        .iter()
        .map(|sk| {
            let mut qv = vec![Int::zero(); d];
            let mut carry = Int::zero();
            for i in (1..=d).rev() {
                carry = &chi[i] + &carry * sk;
                qv[i - 1] = carry.clone();
            }
            qv
        })
        .collect();
    let powers: Vec<Rat> = {
        let mut p = vec![Rat::one()];
        for _ in 0..d {
            let last = p.last().unwrap().clone();
            p.push(last * rat_int(&e));
        }
        p
    };
    let coords = (0..ncoords)
        .map(|j| {
            let den = common_denominator(values.iter().map(|v| &v[j]));
            let mut acc = vec![Int::zero(); d];
            for k in 0..d {
                let y = (&values[k][j] * rat_int(&den)).to_integer();
                if y.is_zero() {
                    continue;
                }
                let w = &weights[k] * &y;
                for (a, b) in acc.iter_mut().zip(&quotients[k]) {
                    *a += &w * b;
                }
            }
            let scale = Rat::new(Int::one(), &l * &den);
            UniPoly::new(acc.into_iter().enumerate().map(|(i, a)| Rat::from_integer(a) * &scale * &powers[i]).collect())
        })
        .collect();
    let chi = UniPoly::new(chi.into_iter().enumerate().map(|(i, a)| Rat::from_integer(a) * &powers[i]).collect());
    (chi, coords)
}

/// Quotient Q[y, T]/(r, q) with r squarefree in y and q monic in T.
struct Ambient {
    r: UniPoly<Rat>,
    q: BiPoly,
    rdeg: usize,
    tdeg: usize,
}

impl Ambient {
    fn reduce(&self, x: &BiPoly) -> BiPoly {
        x.rem_monic(&self.q).map(|c| c.rem(&self.r))
    }

    fn times_y(&self, x: &BiPoly) -> BiPoly {
        x.map(|c| c.shift(1).rem(&self.r))
    }

    fn times_t(&self, x: &BiPoly) -> BiPoly {
        self.reduce(&x.shift(1))
    }

    fn dim(&self) -> usize {
        self.rdeg * self.tdeg
    }

    /// Coordinates in the basis y^a T^b, index b·rdeg + a.
    fn vector(&self, x: &BiPoly) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        for (b, c) in x.coeffs().iter().enumerate() {
            for (a, z) in c.coeffs().iter().enumerate() {
                v[b * self.rdeg + a] = z.clone();
            }
        }
        v
    }

    fn basis(&self, idx: usize) -> BiPoly {
        let (b, a) = (idx / self.rdeg, idx % self.rdeg);
        BiPoly::monomial(UniPoly::monomial(Rat::one(), a), b)
    }
}

/// Normal forms modulo the image of multiplication by a fixed element.
struct Residue {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Residue {
    fn new(image: Vec<Vec<Rat>>, dim: usize) -> Self {
        let (e, pivots) = rref(&Matrix::from_rows(image));
        let rows = (0..pivots.len()).map(|k| e.row(k)).collect();
        let free = (0..dim).filter(|j| !pivots.contains(j)).collect();
        Residue { rows, pivots, free }
    }

    fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.free.iter().map(|&j| v[j].clone()).collect()
    }
}

/// W = F_p[y, T]/(r, q), elements indexed [T-degree][y-degree].
struct ModAmbient {
    p: u64,
    r: Vec<u64>,
    q: Vec<Vec<u64>>,
    rdeg: usize,
    tdeg: usize,
}

impl ModAmbient {
    fn new(q: &BiPoly, r: &UniPoly<Rat>, p: u64) -> Option<Self> {
        let r = modp::reduce(&r.monic(), p)?;
        let rdeg = r.len().checked_sub(1)?;
        let tdeg = q.deg()?;
        let q = q.coeffs().iter().map(|c| modp::reduce(c, p).map(|v| modp::rem(&v, &r, p))).collect::<Option<_>>()?;
        Some(ModAmbient { p, r, q, rdeg, tdeg })
    }

    fn lift(&self, x: &BiPoly) -> Option<Vec<Vec<u64>>> {
        let mut out: Vec<Vec<u64>> =
            x.coeffs().iter().map(|c| modp::reduce(c, self.p).map(|v| modp::rem(&v, &self.r, self.p))).collect::<Option<_>>()?;
        self.reduce_t(&mut out);
        Some(out)
    }

    fn reduce_t(&self, x: &mut Vec<Vec<u64>>) {
        let p = self.p;
        while x.len() > self.tdeg {
            let top = x.pop().unwrap();
            let base = x.len() - self.tdeg;
            for (k, qk) in self.q.iter().take(self.tdeg).enumerate() {
                let t = modp::rem(&modp::mul(&top, qk, p), &self.r, p);
                let slot = &mut x[base + k];
                slot.resize(slot.len().max(t.len()), 0);
                for (u, v) in slot.iter_mut().zip(&t) {
                    *u = (*u + p - v) % p;
                }
            }
        }
    }

    fn times_y(&self, x: &[Vec<u64>]) -> Vec<Vec<u64>> {
        x.iter()
            .map(|c| {
                let mut s = vec![0];
                s.extend_from_slice(c);
                modp::rem(&s, &self.r, self.p)
            })
            .collect()
    }

    fn times_t(&self, x: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut s = vec![Vec::new()];
        s.extend_from_slice(x);
        self.reduce_t(&mut s);
        s
    }

    fn vector(&self, x: &[Vec<u64>]) -> Vec<u64> {
        let mut v = vec![0; self.rdeg * self.tdeg];
        for (b, c) in x.iter().enumerate() {
            for (a, z) in c.iter().enumerate() {
                v[b * self.rdeg + a] = *z;
            }
        }
        v
    }

    /// Columns of the multiplication by x.
    fn mult(&self, x: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut cols = Vec::with_capacity(self.rdeg * self.tdeg);
        let mut tb = x.to_vec();
        for _ in 0..self.tdeg {
            let mut cur = tb.clone();
            for _ in 0..self.rdeg {
                cols.push(self.vector(&cur));
                cur = self.times_y(&cur);
            }
            tb = self.times_t(&tb);
        }
        cols
    }
}

/// Columns of B·A for column lists.
fn compose_mod(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    a.iter()
        .map(|col| {
            let mut out = vec![0u64; b[0].len()];
            for (k, x) in col.iter().enumerate() {
                if *x != 0 {
                    for (o, y) in out.iter_mut().zip(&b[k]) {
                        *o = (*o + x * y) % p;
                    }
                }
            }
            out
        })
        .collect()
}

/// Dimension over F_p of the part of W/(a) where ∂q/∂T is a unit, with
/// W = F_p[y, T]/(r, q). A point over Q survives reduction modulo all but
/// finitely many primes, so 0 here rules such points out for r.
fn regular_dim_mod_p(curve: &LiftedCurve, a: &BiPoly, r: &UniPoly<Rat>) -> Option<usize> {
    for &p in modp::PRIMES.iter() {
        let Some(amb) = ModAmbient::new(&curve.q, r, p) else { continue };
        let (Some(am), Some(qt)) = (amb.lift(a), amb.lift(&curve.q_t())) else { continue };
        let image = amb.mult(&am);
        // q_T^N with N ≥ dim W
        let mut pow = amb.mult(&qt);
        let mut e = 1;
        while e < image.len() {
            pow = compose_mod(&pow, &pow, p);
            e *= 2;
        }
        let base = modp::rank(image.clone(), p);
        let mut all = image;
        all.extend(pow);
        return Some(modp::rank(all, p) - base);
    }
    None
}

/// Basis of the coordinate ring of the intersection points, with the
/// multiplications by T and y and the classes of 1, y, w_j and ∂q/∂T.
struct PointAlgebra {
    dp: usize,
    cols_t: Vec<Vec<Rat>>,
    cols_y: Vec<Vec<Rat>>,
    one: Vec<Rat>,
    rhs: Vec<Vec<Rat>>,
}

/// N(x) = det of the multiplication by x in Q(y)[T]/(q).
fn norm(q: &BiPoly, x: &BiPoly) -> UniPoly<Rat> {
    let tdeg = q.deg().expect("curve equation");
    det(&Matrix::from_fn(tdeg, tdeg, |row, col| x.shift(col).rem_monic(q).coeff(row)))
}

/// Points over the roots of r, none of them a branch point, when y
/// separates them: T = -s_10(y)/s_11(y) from the first subresultant of q
/// and a. None when that shape does not hold.
fn shape_algebra(curve: &LiftedCurve, a: &BiPoly, r: &UniPoly<Rat>) -> Option<PointAlgebra> {
    let d = r.deg()?;
    if d == 0 {
        return None;
    }
    let modulus = Rc::new(r.monic());
    let m = curve.q.deg()?;
    let ar = a.rem_monic(&curve.q);
    let k = ar.deg()?;
    if k == 0 {
        return None;
    }
    let lift = |c: &UniPoly<Rat>| ModElem::new(&modulus, c.clone());
    // k - 1 shifts of q and m - 1 shifts of a, columns T^{m+k-2}..T^0
    let rows: Vec<BiPoly> = (0..k - 1).map(|i| curve.q.shift(k - 2 - i)).chain((0..m - 1).map(|i| ar.shift(m - 2 - i))).collect();
    let size = m + k - 2;
    let top = m + k - 2;
    let sub = |last: usize| -> ModElem<Rat> {
        if size == 0 {
            return lift(&UniPoly::one());
        }
        let mat = Matrix::from_fn(size, size, |i, j| {
            let e = if j + 1 < size { top - j } else { last };
            lift(&rows[i].coeff(e))
        });
        det(&mat)
    };
    let (s11, s10) = (sub(1), sub(0));
    let inv = s11.value().inverse_mod(&modulus)?;
    let tau = s10.value().mul(&inv).neg().rem_monic(&modulus);
    let vector = |p: &UniPoly<Rat>| -> Vec<Rat> { (0..d).map(|i| p.coeff(i)).collect() };
    let class = |x: &BiPoly| -> Vec<Rat> {
        let mut acc = UniPoly::zero();
        for c in x.coeffs().iter().rev() {
            acc = acc.mul(&tau).add(c).rem_monic(&modulus);
        }
        vector(&acc)
    };
    let ys: Vec<UniPoly<Rat>> = (0..d).map(|j| UniPoly::monomial(Rat::one(), j)).collect();
    let cols_t = ys.iter().map(|y| vector(&y.mul(&tau).rem_monic(&modulus))).collect();
    let cols_y = ys.iter().map(|y| vector(&y.shift(1).rem_monic(&modulus))).collect();
    let mut rhs = vec![class(&BiPoly::constant(UniPoly::x()))];
    rhs.extend(curve.w.iter().map(&class));
    rhs.push(class(&curve.q_t()));
    Some(PointAlgebra { dp: d, cols_t, cols_y, one: vector(&UniPoly::one()), rhs })
}

/// Points over the roots of r (squarefree) in general: W/(a) with
/// W = Q[y, T]/(r, q), saturated at ∂q/∂T. None when there are none.
fn general_algebra(curve: &LiftedCurve, a: &BiPoly, r: &UniPoly<Rat>) -> Option<PointAlgebra> {
    let tdeg = curve.q.deg().expect("curve equation");
    let amb = Ambient {
        q: curve.q.map(|c| c.rem(r)),
        rdeg: r.deg().unwrap(),
        r: r.clone(),
        tdeg,
    };
    let n = amb.dim();
    let mut image = Vec::with_capacity(n);
    let mut tb = amb.reduce(&a);
    for _ in 0..tdeg {
        let mut cur = tb.clone();
        for _ in 0..amb.rdeg {
            image.push(amb.vector(&cur));
            cur = amb.times_y(&cur);
        }
        tb = amb.times_t(&tb);
    }
    let mut res = Residue::new(image.clone(), n);
    if res.free.is_empty() {
        return None;
    }
    // drop the part of W/(a) supported where ∂q/∂T vanishes: there a
    // vanishes for every g, so those points are not intersection points
    let qt = amb.reduce(&curve.q_t());
    let k = res.free.len();
    let cols: Vec<Vec<Rat>> = res.free.iter().map(|&j| res.reduce(amb.vector(&amb.reduce(&amb.basis(j).mul(&qt))))).collect();
    let mq = Matrix::from_fn(k, k, |i, j| cols[j][i].clone());
    if rank(&mq) < k {
        let mut p = mq.clone();
        let mut e = 1;
        while e < k {
            p = p.matmul(&p);
            e *= 2;
        }
        for u in nullspace(&p) {
            let mut v = vec![Rat::zero(); n];
            for (x, &j) in u.into_iter().zip(&res.free) {
                v[j] = x;
            }
            image.push(v);
        }
        res = Residue::new(image, n);
    }
    let dp = res.free.len();
    if dp == 0 {
        return None;
    }
    let class = |x: &BiPoly| res.reduce(amb.vector(&amb.reduce(x)));
    let basis: Vec<BiPoly> = res.free.iter().map(|&j| amb.basis(j)).collect();
    let cols_t: Vec<Vec<Rat>> = basis.iter().map(|b| res.reduce(amb.vector(&amb.times_t(b)))).collect();
    let cols_y: Vec<Vec<Rat>> = basis.iter().map(|b| res.reduce(amb.vector(&amb.times_y(b)))).collect();
    let one = class(&BiPoly::one());
    let mut rhs: Vec<Vec<Rat>> = vec![class(&BiPoly::constant(UniPoly::x()))];
    rhs.extend(curve.w.iter().map(&class));
    rhs.push(class(&curve.q_t()));
    Some(PointAlgebra { dp, cols_t, cols_y, one, rhs })
}

/// Points of the curve where g vanishes, as a resolution in (y, dependent
/// coordinates) with primitive element T + c·y. Only these points are kept:
/// those on the ramification locus of the curve make the final inversion fail.
pub fn intersect_with_hypersurface(
    curve: &LiftedCurve,
    g: &Slp,
    search: CoeffSearch,
    level: usize,
) -> Result<GeometricResolution, SolveError> {
    let tdeg = curve.q.deg().expect("curve equation");
    let a = curve_numerator(curve, g);
    if a.is_zero() {
        return Err(SolveError::NotRegular { level });
    }
    // r(y) = N(a), the norm from Q(y)[T]/(q)
    let ma = Matrix::from_fn(tdeg, tdeg, |row, col| a.shift(col).rem_monic(&curve.q).coeff(row));
    let r = det(&ma);
    if r.is_zero() {
        return Err(SolveError::NotRegular { level });
    }
    if r.deg() == Some(0) {
        return Err(SolveError::EmptyFiber { level });
    }
    let rs = r.squarefree_part();
    // over the branch points of the curve a vanishes for every g
    let branch = poly_gcd(&rs, &norm(&curve.q, &curve.q_t())).expect("nonzero").monic();
    let regular = rs.exact_div(&branch);
    let mut alg = None;
    if branch.deg() == Some(0) || regular_dim_mod_p(curve, &a, &branch) == Some(0) {
        alg = shape_algebra(curve, &a, &regular);
    }
    let alg = match alg {
        Some(x) => x,
        None => general_algebra(curve, &a, &rs).ok_or(SolveError::EmptyFiber { level })?,
    };
    let PointAlgebra { dp, cols_t, cols_y, one, rhs } = alg;

    for c in search.candidates(2 * dp + 8) {
        let cr = rat_int(&c);
        let ms = Matrix::from_fn(dp, dp, |i, j| &cols_t[j][i] + &cr * &cols_y[j][i]);
        let mut krylov = vec![one.clone()];
        for _ in 0..dp {
            let next = ms.mul_vec(krylov.last().unwrap());
            krylov.push(next);
        }
        let width = dp + 1 + rhs.len();
        let aug = Matrix::from_fn(dp, width, |i, j| {
            if j <= dp {
                krylov[j][i].clone()
            } else {
                rhs[j - dp - 1][i].clone()
            }
        });
        let (e, piv) = rref(&aug);
        if piv.len() < dp || piv[dp - 1] != dp - 1 {
            continue;
        }
        let sol = |col: usize| UniPoly::new((0..dp).map(|i| e.get(i, col).clone()).collect());
        let chi = UniPoly::monomial(Rat::one(), dp).sub(&sol(dp));
        // a cyclic element of a reduced algebra has a squarefree minimal polynomial
        if !is_squarefree(&chi) {
            return Err(SolveError::NonSmooth { level });
        }
        let y = sol(dp + 1);
        let k = curve.w.len();
        let qt = sol(dp + 2 + k);
        let inv = qt.inverse_mod(&chi).ok_or_else(|| SolveError::BadLiftingPoint {
            level,
            reason: "intersection meets the ramification locus of the curve".into(),
        })?;
        let mut coords = vec![y];
        for j in 0..k {
            coords.push(sol(dp + 2 + j).mul(&inv).rem_monic(&chi));
        }
        let mut lambda = vec![c];
        lambda.extend(curve.lambda.iter().cloned());
        return Ok(GeometricResolution::from_rational(lambda, &chi, &coords));
    }
    Err(SolveError::PrimitiveFailure { level })
}
