//! Multivariate polynomials with natural coefficients.
//!
//! Text syntax is infix: `+`, `*`, `^` with a constant exponent, parentheses,
//! decimal constants and variables `x1, x2, …`; `x`, `y`, `z` abbreviate
//! `x1`, `x2`, `x3`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::natcore::Nat;

/// A polynomial over `x1..x_arity` with coefficients in ℕ₀.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    arity: usize,
    /// Exponent vector to coefficient; zero coefficients are never stored.
    terms: BTreeMap<Vec<u32>, Nat>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero(arity: usize) -> Poly {
        Poly { arity, terms: BTreeMap::new() }
    }

    /// A constant.
    pub fn constant(arity: usize, c: u64) -> Poly {
        let mut p = Poly::zero(arity);
        p.add_term(vec![0; arity], Nat::from(c));
        p
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(arity: usize, i: usize) -> Poly {
        assert!(i < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = Poly::zero(arity);
        p.add_term(e, Nat::one());
        p
    }

    /// Builds from `(coefficient, exponents)` pairs.
    pub fn from_terms(arity: usize, terms: &[(u64, Vec<u32>)]) -> Poly {
        let mut p = Poly::zero(arity);
        for (c, e) in terms {
            assert_eq!(e.len(), arity, "exponent vector length");
            p.add_term(e.clone(), Nat::from(*c));
        }
        p
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Monomials as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Nat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Nat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Nat::zero);
        *slot += &c;
    }

    /// Sum of two polynomials of equal arity.
    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.widened(self.arity.max(other.arity));
        for (e, c) in other.widened(p.arity).terms {
            p.add_term(e, c);
        }
        p
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Poly) -> Poly {
        let arity = self.arity.max(other.arity);
        let (a, b) = (self.widened(arity), other.widened(arity));
        let mut p = Poly::zero(arity);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    /// The same polynomial over more variables.
    pub fn widened(&self, arity: usize) -> Poly {
        assert!(arity >= self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(arity, 0);
                (e, c.clone())
            })
            .collect();
        Poly { arity, terms }
    }

    /// Re-indexes variables: variable `i` of `self` becomes `map[i]` of a
    /// polynomial of the given arity.
    pub fn remap(&self, arity: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.arity);
        let mut p = Poly::zero(arity);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; arity];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    /// Evaluates at a point.
    pub fn eval(&self, xs: &[Nat]) -> Nat {
        assert!(xs.len() >= self.arity, "too few arguments");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in xs.iter().zip(e) {
                    if k > 0 {
                        v = v * x.pow(k);
                    }
                }
                v
            })
            .sum()
    }

    /// Evaluates at a point of machine words.
    pub fn eval_u64(&self, xs: &[u64]) -> Nat {
        let v: Vec<Nat> = xs.iter().map(|&x| Nat::from(x)).collect();
        self.eval(&v)
    }

    /// Value with every variable set to `x`.
    pub fn eval_diag(&self, x: u64) -> Nat {
        self.eval_u64(&vec![x; self.arity])
    }

    /// Parses infix text; the arity is the largest variable index used,
    /// raised to `min_arity`.
    pub fn parse(text: &str, min_arity: usize) -> Result<Poly> {
        let mut p = PolyParser { s: text.as_bytes(), pos: 0, max_var: 0 };
        let raw = p.sum()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse { pos: p.pos, msg: "trailing input".into() });
        }
        let arity = p.max_var.max(min_arity);
        Ok(raw.widened(arity))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if *c != 1u64 || e.iter().all(|&k| k == 0) {
                parts.push(c.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(format!("x{}", i + 1)),
                    _ => parts.push(format!("x{}^{}", i + 1, k)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    max_var: usize,
}

impl PolyParser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "bad number".into() })
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add(&self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let e = self.number()?;
            let mut acc = Poly::constant(base.arity, 1);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(0, self.number()?)),
            Some(b'x') | Some(b'y') | Some(b'z') => {
                let c = self.s[self.pos];
                self.pos += 1;
                let idx = if c == b'x'
                    && self.pos < self.s.len()
                    && self.s[self.pos].is_ascii_digit()
                {
                    let i = self.number()? as usize;
                    if i == 0 {
                        return Err(self.err("variables are numbered from 1"));
                    }
                    i
                } else {
                    match c {
                        b'x' => 1,
                        b'y' => 2,
                        _ => 3,
                    }
                };
                self.max_var = self.max_var.max(idx);
                Ok(Poly::var(idx, idx - 1))
            }
            _ => Err(self.err("expected a variable, number or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let p = Poly::parse("x+2", 1).unwrap();
        assert_eq!(p.eval_u64(&[3]), 5);
        let q = Poly::parse("(x1+x2)^2 + 3*x3", 0).unwrap();
        assert_eq!(q.arity(), 3);
        assert_eq!(q.eval_u64(&[1, 2, 4]), 21);
        assert_eq!(Poly::parse(&q.to_string(), 0).unwrap(), q);
    }
}
