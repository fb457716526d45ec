//! Straight-line programs: gates are inputs, the constant 1, or a product of
//! two integer linear combinations of earlier gates. Outputs are linear
//! combinations too, so additions never cost a gate.

mod json;
mod metrics;
mod parse;
mod sym;
mod transform;

pub use json::{slp_from_json, slp_to_json};
pub use metrics::{
    bounds_formula, degree_height_value_bounds, metrics, probabilistic_zero_test, questor_params,
    zero_test_questor, BoundTriple, SlpMetrics, ZeroTestOutcome,
};
pub use parse::{parse_poly, parse_system};
pub use sym::Sym;
pub use transform::{derive_all, divided_differences, homogeneous_components, homogeneous_components_in};

use crate::arith::{Int, MPoly, Rat, Ring};
use crate::error::SlpError;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Sparse integer combination of gates, sorted by gate index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Lin {
    terms: Vec<(usize, Int)>,
}

impl Lin {
    pub fn zero() -> Self {
        Lin { terms: Vec::new() }
    }

    pub fn single(gate: usize, c: Int) -> Self {
        if c.is_zero() {
            return Lin::zero();
        }
        Lin { terms: vec![(gate, c)] }
    }

    pub fn from_terms(mut t: Vec<(usize, Int)>) -> Self {
        t.sort_by_key(|x| x.0);
        let mut out: Vec<(usize, Int)> = Vec::with_capacity(t.len());
        for (g, c) in t {
            match out.last_mut() {
                Some(last) if last.0 == g => last.1 += c,
                _ => out.push((g, c)),
            }
        }
        out.retain(|x| !x.1.is_zero());
        Lin { terms: out }
    }

    pub fn terms(&self) -> &[(usize, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Lin) -> Lin {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            if j == o.terms.len() || (i < self.terms.len() && self.terms[i].0 < o.terms[j].0) {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() || o.terms[j].0 < self.terms[i].0 {
                out.push(o.terms[j].clone());
                j += 1;
            } else {
                let c = &self.terms[i].1 + &o.terms[j].1;
                if !c.is_zero() {
                    out.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Lin { terms: out }
    }

    pub fn scale(&self, c: &Int) -> Lin {
        if c.is_zero() {
            return Lin::zero();
        }
        Lin { terms: self.terms.iter().map(|(g, a)| (*g, a * c)).collect() }
    }

    pub fn neg(&self) -> Lin {
        Lin { terms: self.terms.iter().map(|(g, a)| (*g, -a)).collect() }
    }

    pub fn sub(&self, o: &Lin) -> Lin {
        self.add(&o.neg())
    }

    /// Value when the combination only involves the constant gate.
    pub fn as_constant(&self, const_gate: usize) -> Option<Int> {
        match self.terms.as_slice() {
            [] => Some(Int::zero()),
            [(g, c)] if *g == const_gate => Some(c.clone()),
            _ => None,
        }
    }

    fn max_ref(&self) -> Option<usize> {
        self.terms.last().map(|x| x.0)
    }

    /// Substitutes gate images.
    pub fn map(&self, images: &[Lin]) -> Lin {
        let mut acc = Lin::zero();
        for (g, c) in &self.terms {
            acc = acc.add(&images[*g].scale(c));
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Input(usize),
    Const(Int),
    Mul(Lin, Lin),
}

/// Gates 0..n are the inputs, gate n is the constant 1, the rest are products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp {
    nvars: usize,
    gates: Vec<Gate>,
    outputs: Vec<Lin>,
}

impl Slp {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Lin] {
        &self.outputs
    }

    pub fn noutputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn const_gate(&self) -> usize {
        self.nvars
    }

    /// Number of Mul gates.
    pub fn size(&self) -> usize {
        self.gates.len() - self.nvars - 1
    }

    /// Number of nodes of the graph, inputs and constant included.
    pub fn graph_size(&self) -> usize {
        self.gates.len()
    }

    /// Checks the structural invariants; used on deserialized programs.
    pub fn from_parts(nvars: usize, gates: Vec<Gate>, outputs: Vec<Lin>) -> Result<Slp, SlpError> {
        if gates.len() < nvars + 1 {
            return Err(SlpError::Malformed("missing input or constant gates".into()));
        }
        for (i, g) in gates.iter().enumerate() {
            match g {
                Gate::Input(j) if i < nvars && *j == i => {}
                Gate::Const(c) if i == nvars && !c.is_zero() => {}
                Gate::Mul(a, b) if i > nvars => {
                    if a.max_ref().map_or(false, |r| r >= i) || b.max_ref().map_or(false, |r| r >= i) {
                        return Err(SlpError::Malformed(format!("gate {} refers forward", i)));
                    }
                }
                _ => return Err(SlpError::Malformed(format!("unexpected gate kind at position {}", i))),
            }
        }
        for o in &outputs {
            if o.max_ref().map_or(false, |r| r >= gates.len()) {
                return Err(SlpError::Malformed("output refers to a missing gate".into()));
            }
        }
        Ok(Slp { nvars, gates, outputs })
    }

    /// Keeps only the listed outputs.
    pub fn select_outputs(&self, idx: &[usize]) -> Slp {
        let outs = idx.iter().map(|&i| self.outputs[i].clone()).collect();
        prune(self.nvars, self.gates.clone(), outs)
    }

    /// Concatenates the outputs of several programs over the same variables.
    pub fn concat(parts: &[&Slp]) -> Slp {
        let n = parts[0].nvars;
        let mut b = SlpBuilder::new(n);
        let mut outs = Vec::new();
        for p in parts {
            assert_eq!(p.nvars, n);
            outs.extend(b.append(p, &b.inputs()));
        }
        b.finish(outs)
    }

    /// Evaluates at a point of any commutative ring.
    pub fn eval<R: Ring>(&self, point: &[R]) -> Result<Vec<R>, SlpError> {
        let one = match point.first() {
            Some(x) => x.one_like(),
            None => return Err(SlpError::Arity { expected: self.nvars, got: 0 }),
        };
        self.eval_with_one(point, &one)
    }

    pub fn eval_with_one<R: Ring>(&self, point: &[R], one: &R) -> Result<Vec<R>, SlpError> {
        if point.len() != self.nvars {
            return Err(SlpError::Arity { expected: self.nvars, got: point.len() });
        }
        let mut vals: Vec<R> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Input(j) => point[*j].clone(),
                Gate::Const(c) => one.mul_int(c),
                Gate::Mul(a, b) => {
                    let x = eval_lin(a, &vals, one);
                    let y = eval_lin(b, &vals, one);
                    x.mul(&y)
                }
            };
            vals.push(v);
        }
        Ok(self.outputs.iter().map(|o| eval_lin(o, &vals, one)).collect())
    }

    /// Dense expansion over Q.
    pub fn expand(&self) -> Vec<MPoly> {
        let n = self.nvars;
        let pt: Vec<MPoly> = (0..n).map(|i| MPoly::var(n, i)).collect();
        self.eval_with_one(&pt, &MPoly::constant(n, Rat::one())).unwrap()
    }

    /// Gates reachable from the outputs, by dependence on each input variable.
    pub fn depends_on(&self, var: usize) -> Vec<bool> {
        let mut dep = vec![false; self.gates.len()];
        for (i, g) in self.gates.iter().enumerate() {
            dep[i] = match g {
                Gate::Input(j) => *j == var,
                Gate::Const(_) => false,
                Gate::Mul(a, b) => a.terms.iter().chain(b.terms.iter()).any(|(r, _)| dep[*r]),
            };
        }
        self.outputs.iter().map(|o| o.terms.iter().any(|(r, _)| dep[*r])).collect()
    }

    /// Product of the program with fresh variables appended (ignored by the outputs).
    pub fn with_extra_vars(&self, extra: usize) -> Slp {
        let n = self.nvars + extra;
        let mut b = SlpBuilder::new(n);
        let imgs: Vec<Lin> = (0..self.nvars).map(|i| b.var(i)).collect();
        let outs = b.append(self, &imgs);
        b.finish(outs)
    }
}

fn eval_lin<R: Ring>(l: &Lin, vals: &[R], one: &R) -> R {
    let mut acc: Option<R> = None;
    for (g, c) in &l.terms {
        let v = &vals[*g];
        acc = Some(match acc {
            None => {
                if c.is_one() {
                    v.clone()
                } else if (-c).is_one() {
                    v.neg()
                } else {
                    v.mul_int(c)
                }
            }
            Some(a) => {
                if c.is_one() {
                    a.add(v)
                } else if (-c).is_one() {
                    a.sub(v)
                } else {
                    a.add(&v.mul_int(c))
                }
            }
        });
    }
    acc.unwrap_or_else(|| one.zero_like())
}

/// Incremental construction with memoized products.
#[derive(Clone, Debug)]
pub struct SlpBuilder {
    nvars: usize,
    gates: Vec<Gate>,
    memo: HashMap<(Lin, Lin), usize>,
}

impl SlpBuilder {
    pub fn new(nvars: usize) -> Self {
        let mut gates: Vec<Gate> = (0..nvars).map(Gate::Input).collect();
        gates.push(Gate::Const(Int::one()));
        SlpBuilder { nvars, gates, memo: HashMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var(&self, i: usize) -> Lin {
        assert!(i < self.nvars);
        Lin::single(i, Int::one())
    }

    pub fn inputs(&self) -> Vec<Lin> {
        (0..self.nvars).map(|i| self.var(i)).collect()
    }

    pub fn one(&self) -> Lin {
        Lin::single(self.nvars, Int::one())
    }

    pub fn constant(&self, c: &Int) -> Lin {
        Lin::single(self.nvars, c.clone())
    }

    pub fn mul(&mut self, a: &Lin, b: &Lin) -> Lin {
        if a.is_zero() || b.is_zero() {
            return Lin::zero();
        }
        if let Some(c) = a.as_constant(self.nvars) {
            return b.scale(&c);
        }
        if let Some(c) = b.as_constant(self.nvars) {
            return a.scale(&c);
        }
        let key = if a.terms <= b.terms { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(&g) = self.memo.get(&key) {
            return Lin::single(g, Int::one());
        }
        let g = self.gates.len();
        self.gates.push(Gate::Mul(key.0.clone(), key.1.clone()));
        self.memo.insert(key, g);
        Lin::single(g, Int::one())
    }

    pub fn pow(&mut self, a: &Lin, e: u64) -> Lin {
        if e == 0 {
            return self.one();
        }
        let mut base = a.clone();
        let mut acc: Option<Lin> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(x) => self.mul(&x, &base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = self.mul(&base, &base);
        }
        acc.unwrap()
    }

    /// Copies the gates of `p` with its inputs replaced by `inputs`; returns its outputs.
    pub fn append(&mut self, p: &Slp, inputs: &[Lin]) -> Vec<Lin> {
        assert_eq!(inputs.len(), p.nvars);
        let mut img: Vec<Lin> = Vec::with_capacity(p.gates.len());
        for g in &p.gates {
            let v = match g {
                Gate::Input(j) => inputs[*j].clone(),
                Gate::Const(c) => self.constant(c),
                Gate::Mul(a, b) => {
                    let x = a.map(&img);
                    let y = b.map(&img);
                    self.mul(&x, &y)
                }
            };
            img.push(v);
        }
        p.outputs.iter().map(|o| o.map(&img)).collect()
    }

    pub fn finish(self, outputs: Vec<Lin>) -> Slp {
        prune(self.nvars, self.gates, outputs)
    }
}

/// Drops Mul gates the outputs do not reach, renumbering the rest.
fn prune(nvars: usize, gates: Vec<Gate>, outputs: Vec<Lin>) -> Slp {
    let mut live = vec![false; gates.len()];
    for i in 0..=nvars {
        live[i] = true;
    }
    for o in &outputs {
        for (g, _) in &o.terms {
            live[*g] = true;
        }
    }
    for i in (nvars + 1..gates.len()).rev() {
        if !live[i] {
            continue;
        }
        if let Gate::Mul(a, b) = &gates[i] {
            for (g, _) in a.terms.iter().chain(b.terms.iter()) {
                live[*g] = true;
            }
        }
    }
    let mut newidx = vec![usize::MAX; gates.len()];
    let mut out_gates = Vec::new();
    let ren = |l: &Lin, newidx: &[usize]| Lin { terms: l.terms.iter().map(|(g, c)| (newidx[*g], c.clone())).collect() };
    for (i, g) in gates.into_iter().enumerate() {
        if !live[i] {
            continue;
        }
        newidx[i] = out_gates.len();
        out_gates.push(match g {
            Gate::Mul(a, b) => Gate::Mul(ren(&a, &newidx), ren(&b, &newidx)),
            other => other,
        });
    }
    let outputs = outputs.iter().map(|o| ren(o, &newidx)).collect();
    Slp { nvars, gates: out_gates, outputs }
}

/// Program computing c_0 + Σ c_i X_i for each listed form.
pub fn linear_forms(nvars: usize, forms: &[(Int, Vec<Int>)]) -> Slp {
    let b = SlpBuilder::new(nvars);
    let outs = forms
        .iter()
        .map(|(c0, cs)| {
            let mut l = b.constant(c0);
            for (i, c) in cs.iter().enumerate() {
                l = l.add(&b.var(i).scale(c));
            }
            l
        })
        .collect();
    b.finish(outs)
}

/// Program of a dense polynomial with integer coefficients (Horner-free, monomial powers shared).
pub fn from_mpoly(p: &MPoly) -> Slp {
    from_mpolys(p.nvars(), std::slice::from_ref(p))
}

pub fn from_mpolys(nvars: usize, ps: &[MPoly]) -> Slp {
    let mut b = SlpBuilder::new(nvars);
    let mut outs = Vec::new();
    for p in ps {
        assert_eq!(p.nvars(), nvars);
        let mut acc = Lin::zero();
        for (e, c) in p.terms() {
            assert!(c.is_integer(), "integer coefficients expected");
            let mut m = b.one();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let pw = b.pow(&b.var(i), k as u64);
                    m = b.mul(&m, &pw);
                }
            }
            acc = acc.add(&m.scale(&c.to_integer()));
        }
        outs.push(acc);
    }
    b.finish(outs)
}

/// Largest absolute scalar of the program.
pub(crate) fn max_scalar(slp: &Slp) -> Int {
    let mut best = Int::one();
    let mut see = |c: &Int| {
        if c.abs() > best {
            best = c.abs();
        }
    };
    for g in &slp.gates {
        match g {
            Gate::Const(c) => see(c),
            Gate::Mul(a, b) => {
                for (_, c) in a.terms.iter().chain(b.terms.iter()) {
                    see(c);
                }
            }
            Gate::Input(_) => {}
        }
    }
    for o in &slp.outputs {
        for (_, c) in &o.terms {
            see(c);
        }
    }
    best
}
