//! Systems, generators and independent oracles shared by the test targets.
#![allow(dead_code)]

use geosolve::arith::{rat, Int, MPoly, Rat, Ring};
use geosolve::linalg::Matrix;
use geosolve::linalg::ratmat::rank;
use geosolve::slp::{parse_system, Gate, Lin, Slp};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{}", i)).collect()
}

pub fn system(eqs: &[String], n: usize) -> Slp {
    let names = var_names(n);
    let v: Vec<&str> = names.iter().map(String::as_str).collect();
    parse_system(eqs, &v).unwrap()
}

/// X1^2 + X1 + 1, X2 - X1^2, ..., Xn - X_{n-1}^2.
pub fn chain(n: usize) -> Slp {
    let mut eqs = vec!["X1^2+X1+1".to_string()];
    for i in 2..=n {
        eqs.push(format!("X{}-X{}^2", i, i - 1));
    }
    system(&eqs, n)
}

pub fn boolean_cube(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}^2-X{i}")).collect()
}

/// k - Σ 2^{i-1} X_i.
pub fn binary_target(n: usize, k: u64) -> String {
    let lin: Vec<String> = (0..n).map(|i| format!("{}*X{}", 1u64 << i, i + 1)).collect();
    format!("{}-({})", k, lin.join("+"))
}

/// Boolean cube plus the binary encoding of k.
pub fn problem2(n: usize, k: u64) -> Slp {
    let mut eqs = boolean_cube(n);
    eqs.push(binary_target(n, k));
    system(&eqs, n)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

/// Determinant by the permutation expansion.
pub fn leibniz_det<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.n();
    let zero = m.get(0, 0).zero_like();
    let mut acc = zero.clone();
    for p in permutations(n) {
        let mut t = zero.one_like();
        for (i, &j) in p.iter().enumerate() {
            t = t.mul(m.get(i, j));
        }
        acc = if sign(&p) { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

pub fn random_dense(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, coef: i64) -> MPoly {
    let mut terms = Vec::new();
    for e in monomials(nvars, deg) {
        let c = rng.gen_range(-coef..=coef);
        if c != 0 {
            terms.push((e, rat(c, 1)));
        }
    }
    MPoly::from_terms(nvars, terms)
}

/// Exponent vectors of total degree ≤ deg, graded.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=deg {
        fill(nvars, d, &mut vec![], &mut out);
    }
    out
}

fn fill(nvars: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == nvars {
        cur.push(d);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return;
    }
    for k in (0..=d).rev() {
        cur.push(k);
        fill(nvars, d - k, cur, out);
        cur.pop();
    }
}

fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Whether h lies in (f_1..f_n), decided on the Macaulay matrix of degree D:
/// h is in the span of {m·f_i : deg m + deg f_i ≤ D}.
pub fn in_ideal_macaulay(h: &MPoly, fs: &[MPoly], degree: u32) -> bool {
    if h.terms().is_empty() {
        return true;
    }
    let n = h.nvars();
    let basis = monomials(n, degree);
    let index = |e: &[u32]| basis.iter().position(|b| b == e).unwrap();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for f in fs {
        let df = f.total_degree().unwrap_or(0);
        if df > degree {
            continue;
        }
        for m in monomials(n, degree - df) {
            let mut row = vec![Rat::zero(); basis.len()];
            for (e, c) in f.terms() {
                row[index(&mono_mul(e, &m))] += c;
            }
            rows.push(row);
        }
    }
    let mut hrow = vec![Rat::zero(); basis.len()];
    for (e, c) in h.terms() {
        hrow[index(e)] += c;
    }
    if rows.is_empty() {
        return false;
    }
    let m = Matrix::from_rows(rows.clone());
    let r0 = rank(&m);
    rows.push(hrow);
    rank(&Matrix::from_rows(rows)) == r0
}

/// Random SLP with at most `size` products and depth at most `depth`; scalars
/// below 2^h in absolute value.
pub fn random_slp(rng: &mut ChaCha8Rng, nvars: usize, size: usize, depth: u32, h: u32) -> Slp {
    let bound = (1i64 << h) - 1;
    let mut gates: Vec<Gate> = (0..nvars).map(Gate::Input).collect();
    gates.push(Gate::Const(Int::one()));
    let one_gate = nvars;
    let mut depths = vec![0u32; nvars + 1];
    let lin = |rng: &mut ChaCha8Rng, avail: &[usize]| -> Lin {
        let k = rng.gen_range(1..=avail.len().min(3));
        let terms = (0..k)
            .map(|_| (avail[rng.gen_range(0..avail.len())], Int::from(rng.gen_range(1..=bound.max(1)) * if rng.gen_bool(0.5) { 1 } else { -1 })))
            .collect();
        Lin::from_terms(terms)
    };
    let muls = rng.gen_range(1..=size);
    for _ in 0..muls {
        let avail: Vec<usize> = (0..gates.len()).filter(|&g| depths[g] < depth).collect();
        let a = lin(rng, &avail);
        let b = lin(rng, &avail);
        let d = a.terms().iter().chain(b.terms()).map(|(g, _)| depths[*g]).max().unwrap_or(0) + 1;
        gates.push(Gate::Mul(a, b));
        depths.push(d);
    }
    let all: Vec<usize> = (0..gates.len()).collect();
    let mut out = lin(rng, &all);
    out = out.add(&Lin::single(one_gate, Int::from(rng.gen_range(-bound..=bound))));
    Slp::from_parts(nvars, gates, vec![out]).unwrap()
}

/// Continued-fraction convergents of √2 with denominator ≤ limit.
pub fn sqrt2_convergents(limit: u64) -> Vec<(Int, Int)> {
    let (mut p0, mut q0) = (Int::one(), Int::zero());
    let (mut p1, mut q1) = (Int::one(), Int::one());
    let mut out = vec![(p1.clone(), q1.clone())];
    loop {
        let (p2, q2) = (Int::from(2) * &p1 + &p0, Int::from(2) * &q1 + &q0);
        if q2 > Int::from(limit) {
            return out;
        }
        out.push((p2.clone(), q2.clone()));
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
}

/// Monic-in-X2 curve of total degree d with a lifting fiber over X1 = p,
/// using T = c·X2, and the oracle Res_Z(f(y, Z), T - cZ) in Z[y, T].
pub struct PlanarCase {
    pub f: Slp,
    pub dense: MPoly,
    pub fiber: geosolve::fiber::LiftingFiber,
    pub oracle: MPoly,
    pub degree: u32,
}

pub fn random_planar_case(rng: &mut ChaCha8Rng) -> PlanarCase {
    use geosolve::arith::UniPoly;
    use geosolve::fiber::{GeometricResolution, LiftingFiber};
    loop {
        let d: u32 = rng.gen_range(1..=3);
        let mut terms = vec![(vec![0, d], Rat::one())];
        for e in monomials(2, d) {
            if e[1] < d {
                let c = rng.gen_range(-5i64..=5);
                if c != 0 {
                    terms.push((e, rat(c, 1)));
                }
            }
        }
        let dense = MPoly::from_terms(2, terms);
        let p: i64 = rng.gen_range(-5..=5);
        let c: i64 = [1, -1, 2, -2, 3, 5][rng.gen_range(0..6)];
        // f(p, Z) as a polynomial in Z
        let mut fz = vec![Rat::zero(); d as usize + 1];
        for (e, a) in dense.terms() {
            fz[e[1] as usize] += a * rat(p.pow(e[0]), 1);
        }
        let fz = UniPoly::new(fz);
        if !fz.is_squarefree() {
            continue;
        }
        // q(T) = c^d f(p, T/c), X2 = T/c
        let q = fz.compose(&UniPoly::new(vec![Rat::zero(), rat(1, c)])).scale(&rat(c.pow(d), 1));
        let res = GeometricResolution::from_rational(vec![Int::from(c)], &q, &[UniPoly::new(vec![Rat::zero(), rat(1, c)])]);
        let fiber = LiftingFiber {
            level: 1,
            a: vec![vec![Int::one(), Int::zero()], vec![Int::zero(), Int::one()]],
            point: vec![Int::from(p)],
            res,
        };
        let f = geosolve::slp::from_mpoly(&dense);
        let oracle = sylvester_oracle(&dense, d, c);
        return PlanarCase { f, dense, fiber, oracle, degree: d };
    }
}

/// Res_Z(f(y, Z), T - cZ) as a polynomial in (y, T), by the determinant of
/// the Sylvester matrix expanded over permutations.
fn sylvester_oracle(f: &MPoly, d: u32, c: i64) -> MPoly {
    let d = d as usize;
    // coefficients of f in Z, as polynomials in (y, T)
    let mut fc = vec![MPoly::zero(2); d + 1];
    for (e, a) in f.terms() {
        fc[e[1] as usize] = fc[e[1] as usize].add(&MPoly::from_terms(2, [(vec![e[0], 0], a.clone())]));
    }
    let t = MPoly::var(2, 1);
    let lin = [t, MPoly::constant(2, rat(-c, 1))];
    // one row for f (degree d) and d rows for the linear factor, size d + 1
    let size = d + 1;
    let m = Matrix::from_fn(size, size, |i, j| {
        if i == 0 {
            fc[d - j].clone()
        } else {
            let k = j as isize - (i as isize - 1);
            match k {
                0 => lin[1].clone(),
                1 => lin[0].clone(),
                _ => MPoly::zero(2),
            }
        }
    });
    leibniz_det(&m)
}

/// Primitive integer normal form with positive leading term (last in order).
pub fn primitive_mpoly(p: &MPoly) -> MPoly {
    use num_integer::Integer;
    let den = geosolve::arith::common_denominator(p.terms().values());
    let s = Rat::from_integer(den);
    let ints: Vec<Int> = p.terms().values().map(|c| (c * &s).to_integer()).collect();
    let g = ints.iter().fold(Int::zero(), |g, a| g.gcd(a));
    let mut scale = &s / Rat::from_integer(g);
    if let Some((_, lc)) = p.terms().iter().next_back() {
        if lc < &Rat::zero() {
            scale = -scale;
        }
    }
    p.scale(&scale)
}

/// Dense system of n equations of degree d that the solver handles.
pub fn random_solved_system(
    rng: &mut ChaCha8Rng,
    n: usize,
    d: u32,
) -> (Vec<MPoly>, Slp, geosolve::solver::Solution) {
    loop {
        let polys: Vec<MPoly> = (0..n).map(|_| random_dense(rng, n, d, 4)).collect();
        if polys.iter().any(|p| p.total_degree() != Some(d)) {
            continue;
        }
        let slp = geosolve::slp::from_mpolys(n, &polys);
        if let Ok(sol) = geosolve::solver::solve_system(&slp, rng.gen(), 4) {
            return (polys, slp, sol);
        }
    }
}

/// ∂p/∂X_i.
pub fn derivative(p: &MPoly, i: usize) -> MPoly {
    MPoly::from_terms(
        p.nvars(),
        p.terms().iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut f = e.clone();
            f[i] -= 1;
            (f, c * rat(e[i] as i64, 1))
        }),
    )
}
