use super::ring::{Field, Int, Rat, Ring};
use crate::error::ArithError;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::rc::Rc;

/// Shape shared by all series of one computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesShape {
    pub center: Vec<Int>,
    pub cap: u32,
}

/// Multivariate power series in X - P truncated at total degree `cap`.
/// Exponent vectors refer to the shifted variables.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    shape: Rc<SeriesShape>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PartialEq for TruncSeries {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && self.shape.center.len() == o.shape.center.len()
    }
}

impl TruncSeries {
    pub fn shape_new(center: Vec<Int>, cap: u32) -> Rc<SeriesShape> {
        Rc::new(SeriesShape { center, cap })
    }

    pub fn zero(shape: &Rc<SeriesShape>) -> Self {
        TruncSeries { shape: shape.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(shape: &Rc<SeriesShape>, c: Rat) -> Self {
        let mut s = Self::zero(shape);
        if !c.is_zero() {
            s.terms.insert(vec![0; shape.center.len()], c);
        }
        s
    }

    /// The coordinate function X_j = p_j + (X_j - p_j).
    pub fn variable(shape: &Rc<SeriesShape>, j: usize) -> Self {
        let m = shape.center.len();
        let mut s = Self::constant(shape, Rat::from_integer(shape.center[j].clone()));
        if shape.cap >= 1 {
            let mut e = vec![0; m];
            e[j] = 1;
            s.terms.insert(e, Rat::one());
        }
        s
    }

    pub fn from_terms(shape: &Rc<SeriesShape>, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut s = Self::zero(shape);
        for (e, c) in terms {
            assert_eq!(e.len(), shape.center.len());
            if e.iter().sum::<u32>() <= shape.cap && !c.is_zero() {
                let slot = s.terms.entry(e).or_insert_with(Rat::zero);
                *slot += c;
            }
        }
        s.terms.retain(|_, c| !c.is_zero());
        s
    }

    pub fn shape(&self) -> &Rc<SeriesShape> {
        &self.shape
    }

    pub fn nvars(&self) -> usize {
        self.shape.center.len()
    }

    pub fn cap(&self) -> u32 {
        self.shape.cap
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Same coefficients viewed at a different cap (dropping terms above it).
    pub fn recap(&self, shape: &Rc<SeriesShape>) -> Self {
        let mut s = Self::zero(shape);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() <= shape.cap {
                s.terms.insert(e.clone(), c.clone());
            }
        }
        s
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.shape);
        }
        TruncSeries {
            shape: self.shape.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Inverse of a unit.
    pub fn invert(&self) -> Result<Self, ArithError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(ArithError::NonUnitSeries);
        }
        // s = c0 (1 - r) with r of positive order; 1/s = c0^{-1} Σ r^k
        let inv0 = c0.recip();
        let one = Self::constant(&self.shape, Rat::one());
        let r = one.sub(&self.scale(&inv0));
        let mut acc = one.clone();
        for _ in 0..self.shape.cap {
            acc = one.add(&r.mul(&acc));
        }
        Ok(acc.scale(&inv0))
    }

    /// Univariate view (m = 1): coefficients of (X - p)^k for k ≤ cap.
    pub fn univariate_coeffs(&self) -> Vec<Rat> {
        assert_eq!(self.nvars(), 1);
        let mut v = vec![Rat::zero(); self.shape.cap as usize + 1];
        for (e, c) in &self.terms {
            v[e[0] as usize] = c.clone();
        }
        v
    }
}

pub fn series_invert(s: &TruncSeries) -> Result<TruncSeries, ArithError> {
    s.invert()
}

impl Ring for TruncSeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.shape)
    }
    fn one_like(&self) -> Self {
        Self::constant(&self.shape, Rat::one())
    }
    fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (e, c) in &o.terms {
            match t.get_mut(e) {
                Some(a) => {
                    *a += c;
                    if a.is_zero() {
                        t.remove(e);
                    }
                }
                None => {
                    t.insert(e.clone(), c.clone());
                }
            }
        }
        TruncSeries { shape: self.shape.clone(), terms: t }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let cap = self.shape.cap;
        let mut t: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        if self.nvars() == 1 {
            // dense path for the common univariate case
            let a = self.univariate_coeffs();
            let b = o.univariate_coeffs();
            let n = cap as usize + 1;
            let mut c = vec![Rat::zero(); n];
            for i in 0..n {
                if a[i].is_zero() {
                    continue;
                }
                for j in 0..(n - i).min(b.len()) {
                    if !b[j].is_zero() {
                        c[i + j] += &a[i] * &b[j];
                    }
                }
            }
            for (k, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    t.insert(vec![k as u32], v);
                }
            }
            return TruncSeries { shape: self.shape.clone(), terms: t };
        }
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &o.terms {
                let d2: u32 = e2.iter().sum();
                if d1 + d2 > cap {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = t.entry(e).or_insert_with(Rat::zero);
                *slot += c1 * c2;
            }
        }
        t.retain(|_, c| !c.is_zero());
        TruncSeries { shape: self.shape.clone(), terms: t }
    }
    fn neg(&self) -> Self {
        TruncSeries {
            shape: self.shape.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn mul_int(&self, c: &Int) -> Self {
        self.scale(&Rat::from_integer(c.clone()))
    }
}

impl Field for TruncSeries {
    fn try_inv(&self) -> Option<Self> {
        self.invert().ok()
    }
}
