//! Terms, formulas, word models and the model checker.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A term: the constant 1, the word length, or a variable `y_i` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FomTerm {
    One,
    WordLen,
    Var(usize),
}

/// A formula of first-order logic with the majority quantifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FomFormula {
    /// `t₁ ≤ t₂`.
    Leq(FomTerm, FomTerm),
    /// Bit `t₂ − 1` of `t₁` is one.
    Bit(FomTerm, FomTerm),
    /// The symbol at position `t` (1-based, left to right) is one.
    WordBit(FomTerm),
    And(Box<FomFormula>, Box<FomFormula>),
    Or(Box<FomFormula>, Box<FomFormula>),
    Not(Box<FomFormula>),
    Exists(usize, Box<FomFormula>),
    Forall(usize, Box<FomFormula>),
    /// More than half of the positions are witnesses.
    Majority(usize, Box<FomFormula>),
}

/// Shorthand constructors.
impl FomFormula {
    pub fn leq(a: FomTerm, b: FomTerm) -> Self {
        FomFormula::Leq(a, b)
    }
    pub fn bit(a: FomTerm, b: FomTerm) -> Self {
        FomFormula::Bit(a, b)
    }
    pub fn wbit(t: FomTerm) -> Self {
        FomFormula::WordBit(t)
    }
    pub fn and(a: FomFormula, b: FomFormula) -> Self {
        FomFormula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: FomFormula, b: FomFormula) -> Self {
        FomFormula::Or(Box::new(a), Box::new(b))
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: FomFormula) -> Self {
        FomFormula::Not(Box::new(a))
    }
    pub fn exists(v: usize, a: FomFormula) -> Self {
        FomFormula::Exists(v, Box::new(a))
    }
    pub fn forall(v: usize, a: FomFormula) -> Self {
        FomFormula::Forall(v, Box::new(a))
    }
    pub fn majority(v: usize, a: FomFormula) -> Self {
        FomFormula::Majority(v, Box::new(a))
    }

    /// Largest variable index mentioned, free or bound.
    pub fn max_var(&self) -> usize {
        fn t(x: &FomTerm) -> usize {
            match x {
                FomTerm::Var(i) => *i,
                _ => 0,
            }
        }
        match self {
            FomFormula::Leq(a, b) | FomFormula::Bit(a, b) => t(a).max(t(b)),
            FomFormula::WordBit(a) => t(a),
            FomFormula::And(a, b) | FomFormula::Or(a, b) => a.max_var().max(b.max_var()),
            FomFormula::Not(a) => a.max_var(),
            FomFormula::Exists(v, a) | FomFormula::Forall(v, a) | FomFormula::Majority(v, a) => {
                (*v).max(a.max_var())
            }
        }
    }

    /// Free variable indices.
    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<usize>, out: &mut BTreeSet<usize>) {
        let mut term = |x: &FomTerm, bound: &Vec<usize>| {
            if let FomTerm::Var(i) = x {
                if !bound.contains(i) {
                    out.insert(*i);
                }
            }
        };
        match self {
            FomFormula::Leq(a, b) | FomFormula::Bit(a, b) => {
                term(a, bound);
                term(b, bound);
            }
            FomFormula::WordBit(a) => term(a, bound),
            FomFormula::And(a, b) | FomFormula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FomFormula::Not(a) => a.collect_free(bound, out),
            FomFormula::Exists(v, a) | FomFormula::Forall(v, a) | FomFormula::Majority(v, a) => {
                bound.push(*v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Whether any `WordBit` occurs.
    pub fn mentions_word(&self) -> bool {
        match self {
            FomFormula::Leq(..) | FomFormula::Bit(..) => false,
            FomFormula::WordBit(_) => true,
            FomFormula::And(a, b) | FomFormula::Or(a, b) => a.mentions_word() || b.mentions_word(),
            FomFormula::Not(a)
            | FomFormula::Exists(_, a)
            | FomFormula::Forall(_, a)
            | FomFormula::Majority(_, a) => a.mentions_word(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            FomFormula::Leq(..) | FomFormula::Bit(..) | FomFormula::WordBit(_) => 1,
            FomFormula::And(a, b) | FomFormula::Or(a, b) => 1 + a.size() + b.size(),
            FomFormula::Not(a)
            | FomFormula::Exists(_, a)
            | FomFormula::Forall(_, a)
            | FomFormula::Majority(_, a) => 1 + a.size(),
        }
    }

    /// Parses the s-expression syntax.
    pub fn parse(text: &str) -> Result<FomFormula> {
        let mut p = SexpParser { s: text.as_bytes(), pos: 0 };
        let f = p.formula()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

impl fmt::Display for FomTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FomTerm::One => f.write_str("1"),
            FomTerm::WordLen => f.write_str("len"),
            FomTerm::Var(i) => write!(f, "y{i}"),
        }
    }
}

impl fmt::Display for FomFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FomFormula::Leq(a, b) => write!(f, "(leq {a} {b})"),
            FomFormula::Bit(a, b) => write!(f, "(bit {a} {b})"),
            FomFormula::WordBit(a) => write!(f, "(wbit {a})"),
            FomFormula::And(a, b) => write!(f, "(and {a} {b})"),
            FomFormula::Or(a, b) => write!(f, "(or {a} {b})"),
            FomFormula::Not(a) => write!(f, "(not {a})"),
            FomFormula::Exists(v, a) => write!(f, "(E y{v} {a})"),
            FomFormula::Forall(v, a) => write!(f, "(A y{v} {a})"),
            FomFormula::Majority(v, a) => write!(f, "(M y{v} {a})"),
        }
    }
}

struct SexpParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl SexpParser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.s.get(self.pos) != Some(&c) {
            return Err(self.err(&format!("expected `{}`", c as char)));
        }
        self.pos += 1;
        Ok(())
    }

    fn atom(&mut self) -> Result<(usize, &str)> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && !self.s[self.pos].is_ascii_whitespace()
            && self.s[self.pos] != b'('
            && self.s[self.pos] != b')'
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an atom"));
        }
        Ok((start, std::str::from_utf8(&self.s[start..self.pos]).expect("ascii input")))
    }

    fn variable(&mut self) -> Result<usize> {
        let (start, a) = self.atom()?;
        parse_var(a).ok_or(Error::Parse { pos: start, msg: format!("expected a variable, got `{a}`") })
    }

    fn term(&mut self) -> Result<FomTerm> {
        let (start, a) = self.atom()?;
        match a {
            "1" => Ok(FomTerm::One),
            "len" => Ok(FomTerm::WordLen),
            _ => parse_var(a)
                .map(FomTerm::Var)
                .ok_or(Error::Parse { pos: start, msg: format!("expected a term, got `{a}`") }),
        }
    }

    fn formula(&mut self) -> Result<FomFormula> {
        self.expect(b'(')?;
        let (start, head) = self.atom()?;
        let head = head.to_string();
        let f = match head.as_str() {
            "leq" => FomFormula::Leq(self.term()?, self.term()?),
            "bit" => FomFormula::Bit(self.term()?, self.term()?),
            "wbit" => FomFormula::WordBit(self.term()?),
            "and" => FomFormula::and(self.formula()?, self.formula()?),
            "or" => FomFormula::or(self.formula()?, self.formula()?),
            "not" => FomFormula::not(self.formula()?),
            "E" => FomFormula::exists(self.variable()?, self.formula()?),
            "A" => FomFormula::forall(self.variable()?, self.formula()?),
            "M" => FomFormula::majority(self.variable()?, self.formula()?),
            _ => return Err(Error::Parse { pos: start, msg: format!("unknown head `{head}`") }),
        };
        self.expect(b')')?;
        Ok(f)
    }
}

fn parse_var(a: &str) -> Option<usize> {
    let i: usize = a.strip_prefix('y')?.parse().ok()?;
    (i >= 1).then_some(i)
}

/// A binary word with a partial assignment of positions to variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordModel {
    word: Vec<bool>,
    /// `assignment[i-1]` is the value of `y_i`; 0 means unassigned.
    assignment: Vec<u64>,
}

impl WordModel {
    /// Builds a model; `assignment[i]` is the value of `y_{i+1}`, with 0
    /// leaving it unassigned.
    pub fn new(word: Vec<bool>, assignment: &[u64]) -> Result<WordModel> {
        if word.is_empty() {
            return Err(Error::domain("words are non-empty"));
        }
        let n = word.len() as u64;
        if let Some(v) = assignment.iter().find(|&&v| v > n) {
            return Err(Error::domain(format!("assigned value {v} outside [1,{n}]")));
        }
        Ok(WordModel { word, assignment: assignment.to_vec() })
    }

    /// Parses a 0/1 string.
    pub fn parse(word: &str, assignment: &[u64]) -> Result<WordModel> {
        WordModel::new(parse_word(word)?, assignment)
    }

    /// Symbols, left to right.
    pub fn word(&self) -> &[bool] {
        &self.word
    }

    /// Values of `y₁, y₂, …`.
    pub fn assignment(&self) -> &[u64] {
        &self.assignment
    }
}

/// Parses a non-empty 0/1 string.
pub fn parse_word(text: &str) -> Result<Vec<bool>> {
    if text.is_empty() {
        return Err(Error::domain("words are non-empty"));
    }
    text.bytes()
        .enumerate()
        .map(|(i, c)| match c {
            b'0' => Ok(false),
            b'1' => Ok(true),
            _ => Err(Error::Parse { pos: i, msg: "words use only 0 and 1".into() }),
        })
        .collect()
}

/// Renders a word as a 0/1 string.
pub fn show_word(word: &[bool]) -> String {
    word.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn term_value(t: FomTerm, word: &[bool], env: &[u64]) -> Result<u64> {
    match t {
        FomTerm::One => Ok(1),
        FomTerm::WordLen => Ok(word.len() as u64),
        FomTerm::Var(i) => match env.get(i - 1) {
            Some(&v) if v > 0 => Ok(v),
            _ => Err(Error::Unbound(format!("y{i}"))),
        },
    }
}

/// Value of a term in a model.
pub fn eval_term(t: FomTerm, model: &WordModel) -> Result<u64> {
    term_value(t, &model.word, &model.assignment)
}

/// Truth value of a formula in a model; every free variable must be assigned.
pub fn eval_formula(phi: &FomFormula, model: &WordModel) -> Result<bool> {
    let mut env = model.assignment.clone();
    env.resize(env.len().max(phi.max_var()), 0);
    for v in phi.free_vars() {
        if env[v - 1] == 0 {
            return Err(Error::Unbound(format!("y{v}")));
        }
    }
    eval_in(phi, &model.word, &mut env)
}

fn eval_in(phi: &FomFormula, word: &[bool], env: &mut [u64]) -> Result<bool> {
    let n = word.len() as u64;
    Ok(match phi {
        FomFormula::Leq(a, b) => term_value(*a, word, env)? <= term_value(*b, word, env)?,
        FomFormula::Bit(a, b) => {
            let (x, i) = (term_value(*a, word, env)?, term_value(*b, word, env)?);
            i <= 64 && (x >> (i - 1)) & 1 == 1
        }
        FomFormula::WordBit(a) => word[term_value(*a, word, env)? as usize - 1],
        FomFormula::And(a, b) => eval_in(a, word, env)? && eval_in(b, word, env)?,
        FomFormula::Or(a, b) => eval_in(a, word, env)? || eval_in(b, word, env)?,
        FomFormula::Not(a) => !eval_in(a, word, env)?,
        FomFormula::Exists(v, a) | FomFormula::Forall(v, a) | FomFormula::Majority(v, a) => {
            let saved = env[v - 1];
            let mut count = 0u64;
            let mut verdict = None;
            for val in 1..=n {
                env[v - 1] = val;
                let holds = eval_in(a, word, env)?;
                match phi {
                    FomFormula::Exists(..) if holds => verdict = Some(true),
                    FomFormula::Forall(..) if !holds => verdict = Some(false),
                    _ => count += holds as u64,
                }
                if verdict.is_some() {
                    break;
                }
            }
            env[v - 1] = saved;
            match phi {
                FomFormula::Exists(..) => verdict.unwrap_or(false),
                FomFormula::Forall(..) => verdict.unwrap_or(true),
                _ => 2 * count > n,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semantics_examples() {
        let m = WordModel::parse("0101", &[0, 3]).unwrap();
        assert_eq!(eval_term(FomTerm::WordLen, &m).unwrap(), 4);
        assert_eq!(eval_term(FomTerm::One, &m).unwrap(), 1);
        assert_eq!(eval_term(FomTerm::Var(2), &m).unwrap(), 3);
        let maj = FomFormula::parse("(M y1 (wbit y1))").unwrap();
        assert!(eval_formula(&maj, &WordModel::parse("110", &[]).unwrap()).unwrap());
        let ex = FomFormula::parse("(E y1 (wbit y1))").unwrap();
        assert!(!eval_formula(&ex, &WordModel::parse("000", &[]).unwrap()).unwrap());
        let b = FomFormula::parse("(bit len 1)").unwrap();
        assert!(!eval_formula(&b, &WordModel::parse("10", &[]).unwrap()).unwrap());
        let free = FomFormula::parse("(leq y1 y2)").unwrap();
        assert!(matches!(
            eval_formula(&free, &WordModel::parse("10", &[1]).unwrap()),
            Err(Error::Unbound(_))
        ));
    }

    #[test]
    fn display_round_trips() {
        let text = "(and (not (bit y1 len)) (A y2 (or (leq 1 y2) (wbit y2))))";
        let f = FomFormula::parse(text).unwrap();
        assert_eq!(f.to_string(), text);
        assert!(FomFormula::parse("(leq y0 1)").is_err());
        assert!(FomFormula::parse("(foo 1 1)").is_err());
    }
}
