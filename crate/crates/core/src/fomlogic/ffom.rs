//! Reassembly of a function from the table of its bit-graph predicate on
//! padded codes.

use crate::blockvec::{decr, rep};
use crate::error::{Error, Result};
use crate::natcore::{self as nc, div_floor, Nat};

use super::codes::{code_num, lcode};
use super::compile::{HFunctionTable, TableCache};
use super::syntax::{eval_formula, FomFormula, WordModel};

/// Anything producing predicate tables `f(x, z)` in the compiled layout.
pub trait TableSource {
    /// Number of table variables; the last one is the answer position.
    fn arity(&self) -> usize;
    /// The table for `x = c(X)`, `z = 2^{|X|}`.
    fn table(&self, x: &Nat, z: &Nat) -> Result<Nat>;
}

impl TableSource for HFunctionTable {
    fn arity(&self) -> usize {
        HFunctionTable::arity(self)
    }
    fn table(&self, x: &Nat, z: &Nat) -> Result<Nat> {
        self.eval_cached(x, z, &mut TableCache::new())
    }
}

/// Tables filled cell by cell with the model checker.
#[derive(Debug, Clone)]
pub struct ModelTable {
    formula: FomFormula,
    arity: usize,
}

impl ModelTable {
    /// Tables of `formula` over `y₁..y_arity`.
    pub fn new(formula: FomFormula, arity: usize) -> Result<ModelTable> {
        if arity == 0 || formula.free_vars().iter().any(|&v| v > arity) {
            return Err(Error::domain("free variables must lie in y1..y_arity"));
        }
        Ok(ModelTable { formula, arity })
    }
}

impl TableSource for ModelTable {
    fn arity(&self) -> usize {
        self.arity
    }

    fn table(&self, x: &Nat, z: &Nat) -> Result<Nat> {
        let l = nc::log2_floor(z).small()?;
        if l == 0 {
            return Err(Error::domain("words are non-empty, so z ≥ 2"));
        }
        let word: Vec<bool> = (0..l).rev().map(|i| x.bit(i)).collect();
        let cells = l.checked_pow(self.arity as u32).ok_or_else(|| Error::domain("table too large"))?;
        nc::check_bits(cells * l)?;
        let mut out = Nat::zero();
        let mut ys = vec![1u64; self.arity];
        for c in 0..cells {
            if eval_formula(&self.formula, &WordModel::new(word.clone(), &ys)?)? {
                out.set_bit(c * l, true);
            }
            if let Some(i) = ys.iter().position(|&y| y < l) {
                ys[i] += 1;
                ys[..i].fill(1);
            }
        }
        Ok(out)
    }
}

/// A function of `n` arguments recovered from the table of its bit-graph
/// predicate `ρ(CODE^var_k(x̃), z₁..z_m, y) ≡ f(x̃)⟨y−1⟩`.
#[derive(Debug, Clone)]
pub struct FfomFunction<S> {
    source: S,
    n: usize,
    k: u32,
}

/// Wraps a table source as an `n`-ary function using `code_{n,k}` and `lcode_{n,k}`.
pub fn ffom_assemble<S: TableSource>(source: S, n: usize, k: u32) -> FfomFunction<S> {
    FfomFunction { source, n, k }
}

impl<S: TableSource> FfomFunction<S> {
    /// `decr(⌊g(code(x̃), 2^l) / rep(1, l^m, l)⌋, l, l^{m+1})` with `l = lcode(x̃)`.
    pub fn eval(&self, xs: &[Nat]) -> Result<Nat> {
        if xs.len() != self.n {
            return Err(Error::domain(format!("expected {} arguments", self.n)));
        }
        let l = lcode(xs, self.k)?;
        let m = self.source.arity() as u32 - 1;
        let g = self.source.table(&code_num(xs, self.k)?, &nc::pow2_u(l)?)?;
        let dummies = l.checked_pow(m).ok_or_else(|| Error::domain("table too large"))?;
        let r = div_floor(&g, &rep(&Nat::one(), dummies, l)?);
        decr(&r, l, dummies * l)
    }
}
