//! Lower bounds on the denominator of rational approximations to the points
//! of a zero-dimensional variety, derived from a Bezout witness for the
//! separating polynomial (qX_1 - p)(qX_1 - p̄).

pub mod interval;

use crate::arith::height::{log2_lower_rat, log2_upper, log2_upper_rat};
use crate::arith::{Height, Int, MPoly, Rat};
use crate::duality::{bezout_witness, BezoutWitness};
use crate::error::{DualityError, LiouvilleError};
use crate::fiber::{mult_table_from_resolution, resolution_height, GeometricResolution};
use crate::slp::{degree_height_value_bounds, from_mpoly, metrics, Slp, SlpBuilder};
use interval::{abs_bound_mpoly, abs_bound_poly, cauchy_bound, eval_mpoly, eval_poly, isolate_real_roots, sqrt_upper, Interval};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

/// Enclosure width for real roots of q, in bits.
const ROOT_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianInt {
    pub re: Int,
    pub im: Int,
}

impl GaussianInt {
    pub fn real(re: Int) -> Self {
        GaussianInt { re, im: Int::zero() }
    }

    pub fn norm(&self) -> Int {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// p/q approximates the first coordinate of a point of V to within ε.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproximationQuery {
    pub p: GaussianInt,
    pub q: Int,
    pub epsilon: Rat,
}

impl ApproximationQuery {
    pub fn check(&self) -> Result<(), LiouvilleError> {
        if !self.epsilon.is_positive() || self.epsilon > Rat::one() {
            return Err(LiouvilleError::BadEpsilon);
        }
        if self.q < Int::one() {
            return Err(LiouvilleError::BadDenominator);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormDenominatorBounds {
    /// |lc(q)^{δ-1} Π ρ_i|
    pub d_v: Int,
    /// Upper bound on log2(√n δ 2^{δ ht}).
    pub log2_norm: Rat,
}

pub fn norm_denominator_bounds(res: &GeometricResolution) -> NormDenominatorBounds {
    let delta = res.degree();
    let d_v = (num_traits::pow(res.q.lc(), delta.saturating_sub(1)) * res.rho()).abs();
    let n = res.nvars().max(1);
    let ht = resolution_height(res);
    let log2_norm = log2_upper(&Int::from(n)) / Rat::from_integer(2.into())
        + log2_upper(&Int::from(delta.max(1)))
        + Rat::from_integer(Int::from(delta)) * ht.value();
    NormDenominatorBounds { d_v, log2_norm }
}

/// (qX_1 - p)(qX_1 - p̄) = q²X_1² - 2q Re(p) X_1 + |p|², in `nvars` variables.
pub fn build_separating_polynomial(p: &GaussianInt, q: &Int, nvars: usize) -> Slp {
    assert!(nvars >= 1 && q >= &Int::one());
    let mut b = SlpBuilder::new(nvars);
    let x = b.var(0);
    let x2 = b.mul(&x, &x);
    let out = x2
        .scale(&(q * q))
        .sub(&x.scale(&(Int::from(2) * q * &p.re)))
        .add(&b.constant(&p.norm()));
    b.finish(vec![out])
}

/// Enclosure of one point of V (real case) or of all non-real points at once.
#[derive(Clone, Debug)]
pub enum PointEnclosure {
    Real(Vec<Interval>),
    /// Upper bounds on |α_i| valid for every non-real point.
    Complex(Vec<Rat>),
}

impl PointEnclosure {
    pub fn abs_bounds(&self) -> Vec<Rat> {
        match self {
            PointEnclosure::Real(b) => b.iter().map(Interval::mag).collect(),
            PointEnclosure::Complex(r) => r.clone(),
        }
    }

    /// Upper bound on the euclidean norm.
    pub fn norm_upper(&self) -> Rat {
        let s = self.abs_bounds().iter().fold(Rat::zero(), |a, r| a + r * r);
        sqrt_upper(&s, 32)
    }

    /// Upper bound on |p(α)|.
    pub fn value_upper(&self, p: &MPoly) -> Rat {
        match self {
            PointEnclosure::Real(b) => eval_mpoly(p, b).mag(),
            PointEnclosure::Complex(r) => abs_bound_mpoly(p, r),
        }
    }
}

/// Real points isolated to width 2^-bits in T; the non-real ones bounded
/// through the Cauchy bound on the roots of q.
pub fn point_enclosures(res: &GeometricResolution, bits: u32) -> Vec<PointEnclosure> {
    let q = res.q_rat();
    let coords = res.coords();
    let roots = isolate_real_roots(&q, bits);
    let mut out: Vec<PointEnclosure> = roots
        .iter()
        .map(|t| PointEnclosure::Real(coords.iter().map(|v| eval_poly(v, t)).collect()))
        .collect();
    if roots.len() < res.degree() {
        let r = cauchy_bound(&q);
        out.push(PointEnclosure::Complex(coords.iter().map(|v| abs_bound_poly(v, &r)).collect()));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointBound {
    /// The point is certified farther than ε from p/q.
    pub excluded: bool,
    pub log2_value: Rat,
    pub log2_norm_term: Rat,
    pub bound: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// log2 q ≥ bound for every admissible approximation.
    pub bound: Rat,
    pub log2_inv_epsilon: Rat,
    pub d_v: Int,
    pub log2_norm_formula: Rat,
    /// max over the points of the bound used for log2(2‖α‖ + 1).
    pub log2_norm_term: Rat,
    /// max over the points of the bound used for log2 |g(α)|.
    pub log2_value: Rat,
    /// SLP value bound for log2 |g(α)| with H from the norm formula.
    pub log2_value_slp: Rat,
    pub points: Vec<PointBound>,
    /// 1 ≤ |a| ≤ |g(α)| |qα_1 - p| |qα_1 - p̄| is consistent with the enclosures.
    pub identity_holds: bool,
    pub symbolic: String,
    pub witness: BezoutWitness,
    pub trace: Vec<String>,
}

/// Decimal expansion rounded toward -∞ (lower = true) or +∞.
pub fn decimal(r: &Rat, digits: u32, lower: bool) -> String {
    let s = Rat::from_integer(num_traits::pow(Int::from(10), digits as usize));
    let x = r * &s;
    let k = if lower { x.floor() } else { x.ceil() }.to_integer();
    let neg = k.is_negative();
    let a = k.abs().to_string();
    let d = digits as usize;
    let padded = format!("{:0>width$}", a, width = d + 1);
    let (i, f) = padded.split_at(padded.len() - d);
    format!("{}{}{}{}", if neg { "-" } else { "" }, i, if d > 0 { "." } else { "" }, f)
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound.to_string(),
            "bound_decimal": decimal(&self.bound, 6, true),
            "log2_inv_epsilon": self.log2_inv_epsilon.to_string(),
            "d_v": self.d_v.to_string(),
            "log2_norm_formula": self.log2_norm_formula.to_string(),
            "log2_norm_term": self.log2_norm_term.to_string(),
            "log2_value_bound": self.log2_value.to_string(),
            "log2_value_bound_decimal": decimal(&self.log2_value, 6, false),
            "log2_value_slp": self.log2_value_slp.to_string(),
            "identity_holds": self.identity_holds,
            "symbolic": self.symbolic,
            "witness": self.witness.to_json(),
            "trace": self.trace,
        })
    }
}

fn max_rat(it: impl Iterator<Item = Rat>) -> Rat {
    it.fold(None, |m: Option<Rat>, x| Some(m.map_or(x.clone(), |m| if x > m { x } else { m })))
        .unwrap_or_else(Rat::zero)
}

fn max_total_degree(system: &Slp) -> u32 {
    system.expand().iter().filter_map(MPoly::total_degree).max().unwrap_or(0)
}

/// Builds the witness for the query and evaluates the bound chain.
pub fn denominator_bound(
    res: &GeometricResolution,
    system: &Slp,
    query: &ApproximationQuery,
) -> Result<BoundReport, LiouvilleError> {
    query.check()?;
    let f = build_separating_polynomial(&query.p, &query.q, system.nvars());
    let w = match bezout_witness(res, system, &f) {
        Ok(w) => w,
        Err(DualityError::Consistent) => {
            return Err(LiouvilleError::Witness("the approximation is itself a point of V".into()))
        }
        Err(e) => return Err(LiouvilleError::Witness(e.to_string())),
    };
    certified_denominator_bound(res, system, query, &w)
}

/// log2 q ≥ ½(log2 ε^{-1} - log2 |g(α)| - log2(2‖α‖ + 1)), minimized over the
/// points α of V. Every step rounds in the safe direction.
pub fn certified_denominator_bound(
    res: &GeometricResolution,
    system: &Slp,
    query: &ApproximationQuery,
    witness: &BezoutWitness,
) -> Result<BoundReport, LiouvilleError> {
    query.check()?;
    let n = system.nvars();
    let f = build_separating_polynomial(&query.p, &query.q, n);
    if witness.a.is_zero() || !witness.verify(&mult_table_from_resolution(res), &f) {
        return Err(LiouvilleError::Witness("witness does not match the query".into()));
    }
    let mut trace = Vec::new();
    let nd = norm_denominator_bounds(res);
    trace.push(format!(
        "resolution: degree {}, d_V = {}, log2 ||V|| <= {}",
        res.degree(),
        nd.d_v,
        decimal(&nd.log2_norm, 6, false)
    ));
    let l_eps = log2_lower_rat(&query.epsilon.recip());
    trace.push(format!("log2(1/eps) >= {}", decimal(&l_eps, 6, true)));

    // value bound from the program size of g, inputs bounded by ||V||
    let g_slp = from_mpoly(&witness.g);
    let hh = if nd.log2_norm > Rat::one() { nd.log2_norm.clone() } else { Rat::one() };
    let log2_value_slp = degree_height_value_bounds(&g_slp, &Height(hh)).value_certified;
    trace.push(format!("program bound: log2 |g(alpha)| <= {}", decimal(&log2_value_slp, 6, false)));
    // 2B + 1 ≤ (5/2)B once B ≥ 2
    let norm_formula_term = &nd.log2_norm + log2_upper_rat(&Rat::new(5.into(), 2.into()));

    let fpoly = f.expand().remove(0);
    let a_abs = Rat::from_integer(witness.a.abs());
    let mut identity_holds = a_abs >= Rat::one();
    let mut points = Vec::new();
    let target = Interval::point(Rat::new(query.p.re.clone(), query.q.clone()));
    let im_dist = Rat::new(query.p.im.abs(), query.q.clone());
    for enc in point_enclosures(res, ROOT_BITS) {
        // |α_1 - p/q| ≥ max(|Re|, |Im|) for real α_1
        let excluded = match &enc {
            PointEnclosure::Real(b) => {
                let d = b[0].sub(&target);
                let re_dist = if d.lo.is_positive() { d.lo.clone() } else if d.hi.is_negative() { -d.hi.clone() } else { Rat::zero() };
                re_dist > query.epsilon || im_dist > query.epsilon
            }
            PointEnclosure::Complex(_) => false,
        };
        let gv = enc.value_upper(&witness.g);
        if &gv * enc.value_upper(&fpoly) < a_abs {
            identity_holds = false;
        }
        let log2_value = if gv.is_zero() {
            // g(α) ≠ 0 since a ≠ 0; a zero enclosure cannot happen
            log2_value_slp.clone()
        } else {
            let v = log2_upper_rat(&gv);
            if v < log2_value_slp {
                v
            } else {
                log2_value_slp.clone()
            }
        };
        let two_n1 = Rat::from_integer(2.into()) * enc.norm_upper() + Rat::one();
        let direct = log2_upper_rat(&two_n1);
        let log2_norm_term = if direct < norm_formula_term { direct } else { norm_formula_term.clone() };
        let bound = (&l_eps - &log2_value - &log2_norm_term) / Rat::from_integer(2.into());
        trace.push(format!(
            "point {}: log2|g| <= {}, log2(2||a||+1) <= {}, bound {}{}",
            points.len(),
            decimal(&log2_value, 6, false),
            decimal(&log2_norm_term, 6, false),
            decimal(&bound, 6, true),
            if excluded { " (farther than eps, skipped)" } else { "" }
        ));
        points.push(PointBound { excluded, log2_value, log2_norm_term, bound });
    }
    // with every point excluded nothing is approximated; stay conservative
    let all_excluded = points.iter().all(|p| p.excluded);
    let bound = points
        .iter()
        .filter(|p| all_excluded || !p.excluded)
        .map(|p| p.bound.clone())
        .min()
        .unwrap_or_else(Rat::zero);
    let m = metrics(system);
    let h = m.param_height.value().clone();
    let eta = resolution_height(res);
    let symbolic = format!(
        "log2 q >= {} / ({}*{}*{})^C - ({} + {})",
        decimal(&l_eps, 6, true),
        n,
        max_total_degree(system),
        res.degree(),
        decimal(&h, 6, false),
        decimal(eta.value(), 6, false)
    );
    trace.push(format!("certified: log2 q >= {}", decimal(&bound, 6, true)));
    Ok(BoundReport {
        bound,
        log2_inv_epsilon: l_eps,
        d_v: nd.d_v,
        log2_norm_formula: nd.log2_norm,
        log2_norm_term: max_rat(points.iter().map(|p| p.log2_norm_term.clone())),
        log2_value: max_rat(points.iter().map(|p| p.log2_value.clone())),
        log2_value_slp,
        points,
        identity_holds,
        symbolic,
        witness: witness.clone(),
        trace,
    })
}

/// Rational ε ≥ 2|x - α_1| for the real point α of V closest to x, from
/// enclosures of width 2^-bits. None if V has no real point.
pub fn distance_upper(res: &GeometricResolution, x: &Rat, bits: u32) -> Option<Rat> {
    point_enclosures(res, bits)
        .into_iter()
        .filter_map(|e| match e {
            PointEnclosure::Real(b) => Some(Rat::from_integer(2.into()) * Interval::point(x.clone()).sub(&b[0]).mag()),
            PointEnclosure::Complex(_) => None,
        })
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, UniPoly};
    use crate::slp::parse_system;
    use crate::solver::solve_system;

    fn sqrt2() -> (GeometricResolution, Slp) {
        let s = parse_system(&["X1^2-2"], &["X1"]).unwrap();
        (solve_system(&s, 0, 3).unwrap().resolution, s)
    }

    #[test]
    fn separating_polynomials() {
        let f = build_separating_polynomial(&GaussianInt::real(int(7)), &int(5), 1);
        assert_eq!(f.expand()[0].to_string(), parse_system(&["25*X1^2-70*X1+49"], &["X1"]).unwrap().expand()[0].to_string());
        let i = GaussianInt { re: int(0), im: int(1) };
        let f = build_separating_polynomial(&i, &int(1), 1);
        assert_eq!(f.expand()[0], parse_system(&["X1^2+1"], &["X1"]).unwrap().expand()[0]);
    }

    #[test]
    fn chain_norm_bound() {
        let q = UniPoly::from_ints(&[1, 1, 1]);
        let res = GeometricResolution::from_rational(vec![int(1), int(0)], &q, &[UniPoly::x(), UniPoly::from_ints(&[-1, -1])]);
        let b = norm_denominator_bounds(&res);
        let enc = point_enclosures(&res, 32);
        assert!(enc.iter().all(|e| e.norm_upper() >= rat(1414, 1000)));
        assert_eq!(b.d_v, int(1));
        assert!(b.log2_norm >= rat(7, 2) && b.log2_norm < rat(7, 2) + rat(1, 1000), "{}", b.log2_norm);
    }

    #[test]
    fn sqrt2_convergent() {
        let (res, s) = sqrt2();
        let query = ApproximationQuery { p: GaussianInt::real(int(7)), q: int(5), epsilon: rat(1, 64) };
        let r = denominator_bound(&res, &s, &query).unwrap();
        assert!(r.identity_holds);
        assert!(r.bound <= log2_lower_rat(&rat(5, 1)));
        assert_eq!(r.witness.a.abs(), int(1));
        let one = ApproximationQuery { epsilon: rat(1, 1), ..query.clone() };
        let r1 = denominator_bound(&res, &s, &one).unwrap();
        assert!(r1.bound < r.bound && r1.bound <= Rat::zero());
    }

    #[test]
    fn rejects_bad_queries() {
        let (res, s) = sqrt2();
        let q = ApproximationQuery { p: GaussianInt::real(int(7)), q: int(5), epsilon: rat(2, 1) };
        assert_eq!(denominator_bound(&res, &s, &q).unwrap_err(), LiouvilleError::BadEpsilon);
        let q = ApproximationQuery { epsilon: rat(1, 2), q: int(0), ..q };
        assert_eq!(denominator_bound(&res, &s, &q).unwrap_err(), LiouvilleError::BadDenominator);
    }

    #[test]
    fn exact_point_has_no_witness() {
        let s = parse_system(&["X1^2-1"], &["X1"]).unwrap();
        let res = solve_system(&s, 0, 3).unwrap().resolution;
        let q = ApproximationQuery { p: GaussianInt::real(int(1)), q: int(1), epsilon: rat(1, 2) };
        assert!(matches!(denominator_bound(&res, &s, &q), Err(LiouvilleError::Witness(_))));
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(-1, 3), 3, true), "-0.334");
        assert_eq!(decimal(&rat(7, 2), 2, false), "3.50");
    }
}
