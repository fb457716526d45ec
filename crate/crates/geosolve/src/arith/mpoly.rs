use super::ring::{Int, Rat, Ring};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars);
            *p.terms.entry(e).or_insert_with(Rat::zero) += c;
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn homogeneous_component(&self, k: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval<R: Ring>(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars);
        let mut acc = point.first().map(|x| x.zero_like()).expect("at least one variable");
        let one = acc.one_like();
        // x_i^k for k up to the degree in X_i, shared by all terms
        let pows: Vec<Vec<R>> = point
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut p = vec![one.clone()];
                for _ in 0..self.degree_in(i).unwrap_or(0) {
                    let next = p.last().unwrap().mul(x);
                    p.push(next);
                }
                p
            })
            .collect();
        for (e, c) in &self.terms {
            let mut t: Option<R> = None;
            for (p, &k) in pows.iter().zip(e) {
                if k > 0 {
                    t = Some(match t {
                        None => p[k as usize].clone(),
                        Some(t) => t.mul(&p[k as usize]),
                    });
                }
            }
            let t = t.unwrap_or_else(|| one.clone());
            // rational scalars act through numerator/denominator only when integral
            assert!(c.is_integer(), "eval over a general ring needs integer coefficients");
            acc = acc.add(&t.mul_int(&c.to_integer()));
        }
        acc
    }

    pub fn eval_rat(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Renames variables: variable i goes to slot map[i] of a poly in `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        MPoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut f = vec![0; nvars];
                for (i, &k) in e.iter().enumerate() {
                    f[map[i]] += k;
                }
                (f, c.clone())
            }),
        )
    }

    /// Coefficients as a univariate polynomial in variable i (other variables kept).
    pub fn as_univariate(&self, i: usize) -> Vec<MPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i] as usize;
            f[i] = 0;
            *out[k].terms.entry(f).or_insert_with(Rat::zero) += c;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, a)| (e.clone(), a * c)))
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        MPoly::constant(self.nvars, Rat::one())
    }
    fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (e, c) in &o.terms {
            *t.entry(e.clone()).or_insert_with(Rat::zero) += c;
        }
        t.retain(|_, c| !c.is_zero());
        MPoly { nvars: self.nvars, terms: t }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut t: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *t.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        t.retain(|_, c| !c.is_zero());
        MPoly { nvars: self.nvars, terms: t }
    }
    fn neg(&self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn mul_int(&self, c: &Int) -> Self {
        self.scale(&Rat::from_integer(c.clone()))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*X{}", i + 1)?,
                    _ => write!(f, "*X{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}
