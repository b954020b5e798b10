//! Compilation of formulas into arithmetic table evaluators.
//!
//! For a word `X` of length `l`, `x = c(X)` and `z = 2^l`, the table of a
//! predicate over `y₁..y_m` is `Σ 2^{(y₁−1)l+(y₂−1)l²+…+(y_m−1)l^m}·χ(X,ȳ)`:
//! `l^m` cells of width `l`, cell `(y₁..y_m)` at bit `Σ(yᵢ−1)lⁱ`. Every step
//! is a closed formula from [`crate::blockvec`] or [`crate::natcore`].

use std::collections::HashMap;

use crate::blockvec::{self, cmp, cmpeq, incr, rep, reverse_bits, sum_blocks, swap_n};
use crate::error::{Error, Result};
use crate::natcore::{self as nc, check_bits, div_floor, monus, Nat};

use super::syntax::{FomFormula, FomTerm};

/// Word-independent subtables memoized per word length, keyed by node id.
pub type TableCache = HashMap<(usize, u64), Nat>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quant {
    Exists,
    Forall,
    Majority,
}

#[derive(Debug, Clone)]
enum Kind {
    Leq(FomTerm, FomTerm),
    Bit(FomTerm, FomTerm),
    WordBit(FomTerm),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Not(Box<Node>),
    Quant(Quant, usize, Box<Node>),
}

#[derive(Debug, Clone)]
struct Node {
    id: usize,
    reads_word: bool,
    kind: Kind,
}

/// A compiled formula: evaluates `f(x, z)` whose cells are the truth values
/// of the formula.
#[derive(Debug, Clone)]
pub struct HFunctionTable {
    arity: usize,
    root: Node,
}

/// Compiles a formula over `y₁..y_m`; every variable, free or bound, must be
/// among them.
pub fn compile_fom(phi: &FomFormula, m: usize) -> Result<HFunctionTable> {
    if m == 0 {
        return Err(Error::domain("tables need at least one variable"));
    }
    if phi.max_var() > m {
        return Err(Error::domain(format!("formula uses y{} beyond arity {m}", phi.max_var())));
    }
    let mut next = 0;
    Ok(HFunctionTable { arity: m, root: build(phi, &mut next) })
}

fn build(phi: &FomFormula, next: &mut usize) -> Node {
    let kind = match phi {
        FomFormula::Leq(a, b) => Kind::Leq(*a, *b),
        FomFormula::Bit(a, b) => Kind::Bit(*a, *b),
        FomFormula::WordBit(a) => Kind::WordBit(*a),
        FomFormula::And(a, b) => Kind::And(Box::new(build(a, next)), Box::new(build(b, next))),
        FomFormula::Or(a, b) => Kind::Or(Box::new(build(a, next)), Box::new(build(b, next))),
        FomFormula::Not(a) => Kind::Not(Box::new(build(a, next))),
        FomFormula::Exists(v, a) => Kind::Quant(Quant::Exists, *v, Box::new(build(a, next))),
        FomFormula::Forall(v, a) => Kind::Quant(Quant::Forall, *v, Box::new(build(a, next))),
        FomFormula::Majority(v, a) => Kind::Quant(Quant::Majority, *v, Box::new(build(a, next))),
    };
    *next += 1;
    Node { id: *next - 1, reads_word: phi.mentions_word(), kind }
}

/// `⌊(2^{ns}∸1)/(2^s∸1)⌋`: ones at multiples of `s`.
fn geo(count: u64, s: u64) -> Result<Nat> {
    rep(&Nat::one(), count, s)
}

fn powu(l: u64, e: usize) -> Result<u64> {
    l.checked_pow(e as u32).ok_or_else(|| Error::domain("table dimension overflows"))
}

/// Table of a term (`pow = false`) or of `2^{h_t − 1}` (`pow = true`).
pub fn term_table(t: FomTerm, l: u64, m: usize, pow: bool) -> Result<Nat> {
    let cells = powu(l, m)?;
    check_bits(cells * l)?;
    match t {
        FomTerm::One => geo(cells, l),
        FomTerm::WordLen if pow => Ok(geo(cells, l)? * nc::pow2_u(l - 1)?),
        FomTerm::WordLen => Ok(geo(cells, l)? * l),
        FomTerm::Var(i) => {
            let mut acc = Nat::one();
            for j in 1..=m {
                let s = powu(l, j)?;
                let factor = if j != i {
                    geo(l, s)?
                } else if pow {
                    geo(l, s + 1)?
                } else {
                    weighted_geo(l, s)?
                };
                acc = acc * factor;
            }
            Ok(acc)
        }
    }
}

/// `Σ_{y=1}^{l} y·2^{(y−1)s} = (l·r^{l+1} − (l+1)·r^l + 1)/(r − 1)²` with `r = 2^s`.
fn weighted_geo(l: u64, s: u64) -> Result<Nat> {
    let r = nc::pow2_u(s)?;
    let rl = nc::pow2_u(s * l)?;
    let num = monus(&(&rl * &r * l + 1u64), &(&rl * (l + 1)));
    let d = monus(&r, &Nat::one());
    Ok(div_floor(&num, &(&d * &d)))
}

impl HFunctionTable {
    /// Number of table variables.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `f(x, z)` with `l = ⌊log₂ z⌋`.
    pub fn eval(&self, x: &Nat, z: &Nat) -> Result<Nat> {
        self.eval_cached(x, z, &mut TableCache::new())
    }

    /// `f(x, z)`, reusing word-independent subtables from `cache`.
    pub fn eval_cached(&self, x: &Nat, z: &Nat, cache: &mut TableCache) -> Result<Nat> {
        let l = nc::log2_floor(z).small()?;
        if l == 0 {
            return Err(Error::domain("words are non-empty, so z ≥ 2"));
        }
        let cells = powu(l, self.arity)?;
        check_bits(cells * l)?;
        self.node(&self.root, x, l, cells, cache)
    }

    /// The table of a word.
    pub fn eval_word(&self, word: &[bool], cache: &mut TableCache) -> Result<Nat> {
        let z = nc::pow2_u(word.len() as u64)?;
        self.eval_cached(&super::word_value(word), &z, cache)
    }

    fn node(&self, node: &Node, x: &Nat, l: u64, cells: u64, cache: &mut TableCache) -> Result<Nat> {
        if !node.reads_word {
            if let Some(v) = cache.get(&(node.id, l)) {
                return Ok(v.clone());
            }
        }
        let m = self.arity;
        let ones = geo(cells, l)?;
        let width = cells * l;
        let out = match &node.kind {
            Kind::Leq(a, b) => {
                let f1 = term_table(*a, l, m, false)?;
                let f2 = term_table(*b, l, m, false)?;
                incr(&cmp(&f2, &f1, cells, l)?, cells, l)?
            }
            Kind::Bit(a, b) => {
                let f1 = term_table(*a, l, m, false)?;
                let f2 = term_table(*b, l, m, true)?;
                bit_test(&f1, &f2, &ones, cells, l)?
            }
            Kind::WordBit(a) => {
                let f1 = rep(&reverse_bits(x, l)?, cells, l)?;
                let f2 = term_table(*a, l, m, true)?;
                bit_test(&f1, &f2, &ones, cells, l)?
            }
            Kind::And(a, b) => {
                nc::band(&self.node(a, x, l, cells, cache)?, &self.node(b, x, l, cells, cache)?)
            }
            Kind::Or(a, b) => blockvec::or(
                &self.node(a, x, l, cells, cache)?,
                &self.node(b, x, l, cells, cache)?,
                width,
            )?,
            Kind::Not(a) => nc::band(&blockvec::not(&self.node(a, x, l, cells, cache)?, width)?, &ones),
            Kind::Quant(q, v, a) => {
                let body = self.node(a, x, l, cells, cache)?;
                let front = self.transpose(&body, *v, l)?;
                let threshold = match q {
                    Quant::Exists => 1,
                    Quant::Forall => l,
                    Quant::Majority => l / 2 + 1,
                };
                let rest = cells / l;
                let g = sum_blocks(&front, rest, l, l)?;
                let p = rep(&Nat::from(threshold), rest, l * l)?;
                let r = cmp(&g, &p, rest, l * l)?;
                let spread = geo(l, l)? * incr(&r, rest, l * l)?;
                self.transpose(&spread, *v, l)?
            }
        };
        if !node.reads_word {
            cache.insert((node.id, l), out.clone());
        }
        Ok(out)
    }

    /// Exchanges the roles of `y₁` and `y_v` in a predicate table.
    fn transpose(&self, f: &Nat, v: usize, l: u64) -> Result<Nat> {
        if v == 1 || l == 1 {
            return Ok(f.clone());
        }
        let k: Vec<u64> = (1..=self.arity).map(|j| powu(l, j)).collect::<Result<_>>()?;
        let mut target = k.clone();
        target.swap(0, v - 1);
        swap_n(f, l, &k, &target)
    }
}

/// Cells where bit `h₂ − 1` of `h₁` is one, given the tables of `h₁` and of
/// `2^{h₂−1}`: `rep(1) ∸ cmpeq(f₁ ∧ f₂, 0)`, widened to width `l`.
fn bit_test(f1: &Nat, f2: &Nat, ones: &Nat, cells: u64, l: u64) -> Result<Nat> {
    let hit = nc::band(f1, f2);
    let zero = incr(&cmpeq(&hit, &Nat::zero(), cells, l)?, cells, l)?;
    Ok(monus(ones, &zero))
}

/// Reads cell `(y₁..y_m)` of a table for word length `l`.
pub fn table_cell(table: &Nat, l: u64, ys: &[u64]) -> Nat {
    let mut pos = 0u64;
    let mut weight = l;
    for &y in ys {
        pos += (y - 1) * weight;
        weight *= l;
    }
    table.slice(pos, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fomlogic::{eval_formula, WordModel};

    fn all_words(max: usize) -> Vec<Vec<bool>> {
        (1..=max)
            .flat_map(|n| (0..1u32 << n).map(move |v| (0..n).map(|i| v >> (n - 1 - i) & 1 == 1).collect()))
            .collect()
    }

    fn check(text: &str, m: usize, max_len: usize) {
        let phi = FomFormula::parse(text).unwrap();
        let table = compile_fom(&phi, m).unwrap();
        let mut cache = TableCache::new();
        for w in all_words(max_len) {
            let l = w.len() as u64;
            let t = table.eval_word(&w, &mut cache).unwrap();
            assert!(t.bits() <= l.pow(m as u32 + 1));
            let mut ys = vec![1u64; m];
            loop {
                let want = eval_formula(&phi, &WordModel::new(w.clone(), &ys).unwrap()).unwrap();
                assert_eq!(table_cell(&t, l, &ys), Nat::from(want), "{text} on {w:?} at {ys:?}");
                let Some(i) = ys.iter().position(|&y| y < l) else { break };
                ys[i] += 1;
                ys[..i].fill(1);
            }
        }
    }

    #[test]
    fn term_tables() {
        for l in 1..=4u64 {
            for m in 1..=2usize {
                let t = term_table(FomTerm::Var(m), l, m, false).unwrap();
                let p = term_table(FomTerm::Var(1), l, m, true).unwrap();
                for c in 0..l.pow(m as u32) {
                    let ys: Vec<u64> = (0..m).map(|j| c / l.pow(j as u32) % l + 1).collect();
                    assert_eq!(table_cell(&t, l, &ys), ys[m - 1]);
                    assert_eq!(table_cell(&p, l, &ys), 1u64 << (ys[0] - 1));
                }
            }
        }
    }

    #[test]
    fn small_formulas_match_model_checker() {
        check("(leq 1 1)", 1, 4);
        check("(wbit y1)", 1, 4);
        check("(M y1 (wbit y1))", 1, 5);
        check("(and (bit len y1) (not (leq y1 1)))", 1, 4);
        check("(E y2 (and (leq y1 y2) (wbit y2)))", 2, 4);
    }
}
