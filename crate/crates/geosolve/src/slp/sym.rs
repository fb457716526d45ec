use super::{Lin, Slp, SlpBuilder};
use crate::arith::{Int, Ring};
use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

/// Symbolic ring element: running a generic algorithm on `Sym` values
/// records it as a straight-line program.
#[derive(Clone)]
pub struct Sym {
    b: Rc<RefCell<SlpBuilder>>,
    lin: Lin,
}

impl Sym {
    /// Fresh builder plus its input variables.
    pub fn inputs(nvars: usize) -> (Rc<RefCell<SlpBuilder>>, Vec<Sym>) {
        let b = Rc::new(RefCell::new(SlpBuilder::new(nvars)));
        let vars = (0..nvars).map(|i| Sym { b: b.clone(), lin: b.borrow().var(i) }).collect();
        (b, vars)
    }

    pub fn wrap(b: &Rc<RefCell<SlpBuilder>>, lin: Lin) -> Sym {
        Sym { b: b.clone(), lin }
    }

    pub fn lin(&self) -> &Lin {
        &self.lin
    }

    /// Turns recorded values into a program; other handles to the builder must be dropped.
    pub fn finish(b: Rc<RefCell<SlpBuilder>>, outputs: &[Sym]) -> Slp {
        let lins: Vec<Lin> = outputs.iter().map(|s| s.lin.clone()).collect();
        let builder = b.borrow().clone();
        builder.finish(lins)
    }

    /// Runs `p` on symbolic inputs.
    pub fn apply(p: &Slp, inputs: &[Sym]) -> Vec<Sym> {
        let b = inputs[0].b.clone();
        let lins: Vec<Lin> = inputs.iter().map(|s| s.lin.clone()).collect();
        let outs = b.borrow_mut().append(p, &lins);
        outs.into_iter().map(|l| Sym { b: b.clone(), lin: l }).collect()
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym({:?})", self.lin)
    }
}

impl Ring for Sym {
    fn zero_like(&self) -> Self {
        Sym { b: self.b.clone(), lin: Lin::zero() }
    }
    fn one_like(&self) -> Self {
        let l = self.b.borrow().one();
        Sym { b: self.b.clone(), lin: l }
    }
    fn add(&self, o: &Self) -> Self {
        Sym { b: self.b.clone(), lin: self.lin.add(&o.lin) }
    }
    fn sub(&self, o: &Self) -> Self {
        Sym { b: self.b.clone(), lin: self.lin.sub(&o.lin) }
    }
    fn mul(&self, o: &Self) -> Self {
        let l = self.b.borrow_mut().mul(&self.lin, &o.lin);
        Sym { b: self.b.clone(), lin: l }
    }
    fn neg(&self) -> Self {
        Sym { b: self.b.clone(), lin: self.lin.neg() }
    }
    /// Only syntactic zero is detected.
    fn vanishes(&self) -> bool {
        self.lin.is_zero()
    }
    fn exact_zero_test(&self) -> bool {
        false
    }
    fn mul_int(&self, c: &Int) -> Self {
        Sym { b: self.b.clone(), lin: self.lin.scale(c) }
    }
}
