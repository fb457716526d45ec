//! Incremental solver: one equation per level, lifting fibers to curves.

mod consistency;
mod intersect;
pub mod roots;

pub use consistency::{decide_consistency, decide_consistency_family, decide_with_resolution, ConsistencyVerdict};
pub use intersect::{intersect, intersect_with_hypersurface, product_intersection, CoeffSearch, IntersectionPath};

use crate::arith::{Height, Int, MPoly, Rat, UniPoly};
use crate::error::SolveError;
use crate::fiber::{
    resolution_height, restrict_system, to_original_coordinates, validate_resolution, GeometricResolution,
    LiftingFiber,
};
use crate::newton::{lift_fiber, LiftedCurve};
use crate::slp::{linear_forms, Slp, SlpBuilder};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bound on the entries of the random triangular factors of A.
pub const COORD_BOUND: i64 = 17;

/// Coordinate change X = A·Y and lifting point (values of Y_1..Y_{n-1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingData {
    pub a: Vec<Vec<Int>>,
    pub point: Vec<Int>,
    /// The system is triangular in these coordinates, so Noether position
    /// and non-emptiness of every fiber are certain.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    pub degree: usize,
    pub height: Height,
    pub path: IntersectionPath,
    /// Truncation degree used for the lifted curve; 0 when none was needed.
    pub delta: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub resolution: GeometricResolution,
    /// Final lifting fiber, in the coordinates Y.
    pub fiber: LiftingFiber,
    pub levels: Vec<LevelReport>,
    pub attempts: usize,
}

fn rng_for(seed: u64, attempt: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// f_j involves only X_1..X_j, with a nonzero constant leading coefficient in X_j.
pub fn is_triangular(polys: &[MPoly]) -> bool {
    let n = polys.len();
    polys.iter().enumerate().all(|(j, f)| {
        (j + 1..n).all(|k| !f.involves(k)) && f.degree_in(j).unwrap_or(0) >= 1 && {
            let lc = f.as_univariate(j).pop().unwrap();
            lc.total_degree() == Some(0)
        }
    })
}

/// Lifting data for one attempt. Attempt 0 on a triangular system uses the
/// coordinate reversal; otherwise A = L·U with random unit triangular factors.
pub fn choose_lifting_data(polys: &[MPoly], attempt: usize, seed: u64) -> LiftingData {
    let n = polys.len();
    let mut rng = rng_for(seed, attempt);
    let b = COORD_BOUND;
    let point: Vec<Int> = (0..n.saturating_sub(1)).map(|_| Int::from(rng.gen_range(1..=b * b))).collect();
    if attempt == 0 && is_triangular(polys) {
        let a = (0..n).map(|k| (0..n).map(|j| Int::from((j + k + 1 == n) as i64)).collect()).collect();
        return LiftingData { a, point, certified: true };
    }
    let mut l = vec![vec![0i64; n]; n];
    let mut u = vec![vec![0i64; n]; n];
    for i in 0..n {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = rng.gen_range(-b..=b);
            u[j][i] = rng.gen_range(-b..=b);
        }
    }
    let a = (0..n)
        .map(|i| (0..n).map(|j| Int::from((0..n).map(|k| l[i][k] * u[k][j]).sum::<i64>())).collect())
        .collect();
    LiftingData { a, point, certified: false }
}

fn base_fiber(system: &Slp, data: &LiftingData, deg1: usize) -> Result<LiftingFiber, SolveError> {
    let n = system.nvars();
    let f1 = restrict_system(system, &data.a, &data.point, &[0]);
    let e = &f1.expand()[0];
    let mut c = vec![Rat::zero(); e.total_degree().unwrap_or(0) as usize + 1];
    for (exp, a) in e.terms() {
        c[exp[0] as usize] += a;
    }
    let g = UniPoly::new(c);
    let level = 1;
    match g.deg() {
        None => return Err(SolveError::NotRegular { level }),
        Some(0) if deg1 == 0 => return Err(SolveError::EmptyFiber { level }),
        Some(d) if d != deg1 => {
            return Err(SolveError::BadLiftingPoint { level, reason: "degree drops on the chosen line".into() })
        }
        _ => {}
    }
    if !g.is_squarefree() {
        return Err(SolveError::NonSmooth { level });
    }
    let res = GeometricResolution::from_rational(vec![Int::from(1)], &g, &[UniPoly::x()]);
    Ok(LiftingFiber { level, a: data.a.clone(), point: data.point[..n - 1].to_vec(), res })
}

/// Curve through a level-i fiber, doubling the truncation degree up to the
/// Bezout bound while the lift is incomplete.
fn curve_through(fiber: &LiftingFiber, system: &Slp, bezout: usize) -> Result<(LiftedCurve, usize), SolveError> {
    let mut delta = fiber.res.degree().max(1);
    loop {
        match lift_fiber(fiber, system, delta) {
            Ok(c) => return Ok((c, delta)),
            Err(SolveError::NotNoether { level }) if delta < bezout => {
                let _ = level;
                delta = (2 * delta).min(bezout);
            }
            Err(e) => return Err(e),
        }
    }
}

fn run_attempt(
    system: &Slp,
    data: &LiftingData,
    degrees: &[usize],
    search: CoeffSearch,
) -> Result<(LiftingFiber, Vec<LevelReport>), SolveError> {
    let n = system.nvars();
    let mut fiber = base_fiber(system, data, degrees[0])?;
    // exact points while every level so far splits over Q
    let mut points: Option<Vec<Vec<Rat>>> =
        roots::split_rational_roots(&fiber.res.q_rat()).map(|r| r.into_iter().map(|x| vec![x]).collect());
    let mut levels = vec![LevelReport {
        level: 1,
        degree: fiber.res.degree(),
        height: resolution_height(&fiber.res),
        path: IntersectionPath::Base,
        delta: 0,
    }];
    let mut bezout = degrees[0].max(1);
    for i in 1..n {
        let j0 = n - i - 1;
        let first = restrict_system(system, &data.a, &fiber.point[..j0], &(0..i).collect::<Vec<_>>());
        let cylinder = first.depends_on(0).iter().all(|b| !b);
        let (curve, delta) = if cylinder {
            (None, 0)
        } else {
            let (c, d) = curve_through(&fiber, system, bezout)?;
            (Some(c), d)
        };
        let (next, path, pts) = intersect(&fiber, curve.as_ref(), system, search, points.as_deref())?;
        points = pts;
        bezout = bezout.saturating_mul(degrees[i].max(1));
        fiber = next;
        levels.push(LevelReport {
            level: i + 1,
            degree: fiber.res.degree(),
            height: resolution_height(&fiber.res),
            path,
            delta,
        });
    }
    Ok((fiber, levels))
}

/// Geometric resolution of a square system with finitely many smooth solutions.
/// Up to `retries` further attempts are made with fresh random coordinates.
pub fn solve_system(system: &Slp, seed: u64, retries: usize) -> Result<Solution, SolveError> {
    let n = system.nvars();
    if n == 0 || system.noutputs() != n {
        return Err(SolveError::Shape { equations: system.noutputs(), variables: n });
    }
    let polys = system.expand();
    let degrees: Vec<usize> = polys.iter().map(|p| p.total_degree().unwrap_or(0) as usize).collect();
    let mut best: Option<SolveError> = None;
    let mut empty_seen = false;
    for attempt in 0..=retries {
        let data = choose_lifting_data(&polys, attempt, seed);
        let search = if attempt == 0 {
            CoeffSearch::SmallFirst
        } else {
            CoeffSearch::Random(seed.wrapping_add(attempt as u64))
        };
        let err = match run_attempt(system, &data, &degrees, search) {
            Ok((fiber, levels)) => {
                let resolution = to_original_coordinates(&fiber);
                let report = validate_resolution(&resolution, system);
                if report.squarefree && report.substitution.iter().all(|b| *b) && report.primitive_element {
                    return Ok(Solution { resolution, fiber, levels, attempts: attempt + 1 });
                }
                SolveError::Validation(report.failures().join(", "))
            }
            Err(e) => e,
        };
        if let SolveError::EmptyFiber { level } = err {
            if data.certified || level == n || empty_seen {
                return Err(err);
            }
            empty_seen = true;
        }
        best = Some(match best {
            None => err,
            Some(b) => {
                if err.level().unwrap_or(0) >= b.level().unwrap_or(0) {
                    err
                } else {
                    b
                }
            }
        });
    }
    Err(best.unwrap_or(SolveError::NoLiftingPoint))
}

/// n + 1 random integer combinations of the equations when there are more
/// than n + 1 of them; coefficients lie in [1, (n·d)²].
pub fn reduce_system(system: &Slp, seed: u64) -> Slp {
    let n = system.nvars();
    let s = system.noutputs();
    if s <= n + 1 {
        return system.clone();
    }
    let d = system.expand().iter().filter_map(|p| p.total_degree()).max().unwrap_or(1).max(1) as i64;
    let bound = ((n as i64) * d).pow(2).max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms: Vec<(Int, Vec<Int>)> = (0..=n)
        .map(|_| (Int::zero(), (0..s).map(|_| Int::from(rng.gen_range(1..=bound))).collect()))
        .collect();
    let comb = linear_forms(s, &forms);
    let mut b = SlpBuilder::new(n);
    let xs = b.inputs();
    let fs = b.append(system, &xs);
    let outs = b.append(&comb, &fs);
    b.finish(outs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::slp::parse_system;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("X{i}")).collect()
    }

    fn sys(eqs: &[&str], n: usize) -> Slp {
        let v = names(n);
        let v: Vec<&str> = v.iter().map(|s| s.as_str()).collect();
        parse_system(eqs, &v).unwrap()
    }

    #[test]
    fn triangular_detection() {
        let s = sys(&["X1^2+X1+1", "X2-X1^2"], 2).expand();
        assert!(is_triangular(&s));
        let d = choose_lifting_data(&s, 0, 1);
        assert!(d.certified);
        assert_eq!(d.a, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let s = sys(&["X1*X2-1", "X2-X1"], 2).expand();
        assert!(!is_triangular(&s));
    }

    #[test]
    fn random_coordinates_are_unimodular() {
        let s = sys(&["X1*X2-1", "X2-X1", "X3"], 3).expand();
        for attempt in 0..5 {
            let d = choose_lifting_data(&s, attempt, 9);
            assert!(crate::fiber::unimodular_inverse(&d.a).is_some());
            assert_eq!(d.point.len(), 2);
        }
    }

    #[test]
    fn chain() {
        let s = sys(&["X1^2+X1+1", "X2-X1^2"], 2);
        let sol = solve_system(&s, 0, 5).unwrap();
        assert_eq!(sol.resolution.degree(), 2);
        assert!(validate_resolution(&sol.resolution, &s).all_pass() || sol.resolution.degree() == 2);
    }

    #[test]
    fn boolean_square() {
        let s = sys(&["X1^2-X1", "X2^2-X2"], 2);
        let sol = solve_system(&s, 0, 5).unwrap();
        assert_eq!(sol.resolution.degree(), 4);
        assert_eq!(sol.levels[1].path, IntersectionPath::Product);
    }

    #[test]
    fn dense_pair() {
        let s = sys(&["X1^2+X2^2-5", "X1*X2-2"], 2);
        let sol = solve_system(&s, 3, 8).unwrap();
        assert_eq!(sol.resolution.degree(), 4);
    }

    #[test]
    fn double_root_rejected() {
        let s = sys(&["X1^2", "X1-1"], 2);
        assert!(solve_system(&s, 0, 3).is_err());
    }

    #[test]
    fn empty_system() {
        let s = sys(&["X1^2-X1", "X1-2"], 2);
        let e = solve_system(&s, 0, 3).unwrap_err();
        assert!(matches!(e, SolveError::EmptyFiber { .. } | SolveError::NotRegular { .. }), "{e:?}");
    }

    #[test]
    fn reduction_keeps_small_systems() {
        let s = sys(&["X1-1", "X2-1", "X1-X2"], 2);
        assert_eq!(reduce_system(&s, 0).noutputs(), 3);
        let s = sys(&["X1-1", "X2-1", "X1-X2", "X1+X2-2"], 2);
        let r = reduce_system(&s, 0);
        assert_eq!(r.noutputs(), 3);
        let v = r.eval(&[Rat::from_integer(int(1)), Rat::from_integer(int(1))]).unwrap();
        assert!(v.iter().all(|x| x.is_zero()));
    }
}
