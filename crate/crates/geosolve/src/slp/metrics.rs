use super::{max_scalar, Gate, Slp};
use crate::arith::height::{height_int, log2_upper};
use crate::arith::{Height, Int, Rat, Ring};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlpMetrics {
    /// Number of Mul gates (L).
    pub size: usize,
    /// Longest chain of Mul gates (ℓ).
    pub depth: u32,
    /// Height of the largest scalar (h).
    pub param_height: Height,
    /// Inputs, constant and Mul gates together.
    pub graph_size: usize,
}

pub fn metrics(slp: &Slp) -> SlpMetrics {
    let mut depth = vec![0u32; slp.gates().len()];
    let mut best = 0;
    for (i, g) in slp.gates().iter().enumerate() {
        if let Gate::Mul(a, b) = g {
            let d = a.terms().iter().chain(b.terms().iter()).map(|(r, _)| depth[*r]).max().unwrap_or(0);
            depth[i] = d + 1;
            best = best.max(d + 1);
        }
    }
    SlpMetrics {
        size: slp.size(),
        depth: best,
        param_height: height_int(&max_scalar(slp)),
        graph_size: slp.graph_size(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTriple {
    /// 2^ℓ
    pub deg: Int,
    /// (2^{ℓ+1} - 1)(h + log2 L)
    pub ht: Rat,
    /// (2^{ℓ+1} - 1)(max{h, H} + log2 L)
    pub value: Rat,
}

fn log2_size(l: u64) -> Rat {
    if l <= 1 {
        Rat::zero()
    } else {
        log2_upper(&Int::from(l))
    }
}

/// The three size bounds as formulas in (L, ℓ, h, H); log2 L is rounded up.
pub fn bounds_formula(l: u64, depth: u32, h: &Rat, hh: &Rat) -> BoundTriple {
    let two_l = Int::one() << depth;
    let f = Rat::from_integer((Int::one() << (depth + 1)) - 1);
    let lg = log2_size(l);
    let m = if h > hh { h.clone() } else { hh.clone() };
    BoundTriple { deg: two_l, ht: &f * (h + &lg), value: &f * (m + &lg) }
}

/// Bounds for a concrete program. `formula` evaluates the classical bounds
/// with L = graph size; `value_certified` is 2^ℓ·H + (2^{ℓ+1}-1)(h + log2 L),
/// which also holds when large scalars meet large inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedBounds {
    pub formula: BoundTriple,
    pub value_certified: Rat,
}

pub fn degree_height_value_bounds(slp: &Slp, hh: &Height) -> CertifiedBounds {
    let m = metrics(slp);
    let formula = bounds_formula(m.graph_size as u64, m.depth, m.param_height.value(), hh.value());
    let f = Rat::from_integer((Int::one() << (m.depth + 1)) - 1);
    let value_certified = Rat::from_integer(Int::one() << m.depth) * hh.value()
        + f * (m.param_height.value() + log2_size(m.graph_size as u64));
    CertifiedBounds { formula, value_certified }
}

/// (u, t) = ((2^{ℓ+1} - 2)(2^ℓ + 1)^2, 6 (ℓ L)^2).
pub fn questor_params(l: u64, depth: u32) -> (Int, Int) {
    let p = Int::one() << depth;
    let u = (&p * 2 - 2) * (&p + 1) * (&p + 1);
    let ll = Int::from(l) * Int::from(depth);
    let t = Int::from(6) * &ll * &ll;
    (u, t)
}

/// True iff every output vanished at `trials` random points of {1..range_bound}^n.
pub fn probabilistic_zero_test(slp: &Slp, trials: u64, range_bound: u64, seed: u64) -> bool {
    assert!(trials >= 1 && range_bound >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = slp.nvars();
    for _ in 0..trials {
        let pt: Vec<Int> = (0..n).map(|_| Int::from(rng.gen_range(1..=range_bound))).collect();
        let one = Int::one();
        let vals = slp.eval_with_one(&pt, &one).expect("arity matches");
        if vals.iter().any(|v| !v.vanishes()) {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTestOutcome {
    pub zero: bool,
    pub trials: u64,
    pub range_bound: u64,
    /// Set when the parameters were capped below the (u, t) values.
    pub heuristic: bool,
}

/// Zero test with (u, t) from the program's metrics, optionally capped.
pub fn zero_test_questor(slp: &Slp, seed: u64, max_trials: Option<u64>) -> ZeroTestOutcome {
    let m = metrics(slp);
    let l = m.graph_size as u64;
    let (u, t) = questor_params(l, m.depth.max(1));
    let mut heuristic = false;
    let mut range = u.to_u64().unwrap_or(u64::MAX).max(2);
    if range > (1 << 40) {
        range = 1 << 40;
        heuristic = true;
    }
    let mut trials = t.to_u64().unwrap_or(u64::MAX).max(1);
    if let Some(cap) = max_trials {
        if cap < trials {
            trials = cap.max(1);
            heuristic = true;
        }
    }
    ZeroTestOutcome { zero: probabilistic_zero_test(slp, trials, range, seed), trials, range_bound: range, heuristic }
}
