//! Formula trees over the basis catalog: parsing, printing, evaluation and
//! the syntactic exponent-height classifier.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::natcore::{self as nc, Nat};

/// A basis function symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Succ,
    Add,
    Mul,
    Monus,
    Band,
    Div,
    Rm,
    Pow2,
    Powvar,
    MinPow2,
    Log2,
    Len,
    Rot,
    ExpLogsq,
    PowLog,
    Sg,
    Sgbar,
    Bit,
}

impl Basis {
    /// Every symbol, in catalog order.
    pub const ALL: [Basis; 18] = [
        Basis::Succ,
        Basis::Add,
        Basis::Mul,
        Basis::Monus,
        Basis::Band,
        Basis::Div,
        Basis::Rm,
        Basis::Pow2,
        Basis::Powvar,
        Basis::MinPow2,
        Basis::Log2,
        Basis::Len,
        Basis::Rot,
        Basis::ExpLogsq,
        Basis::PowLog,
        Basis::Sg,
        Basis::Sgbar,
        Basis::Bit,
    ];

    /// Textual name used by the grammar.
    pub fn name(self) -> &'static str {
        match self {
            Basis::Succ => "succ",
            Basis::Add => "add",
            Basis::Mul => "mul",
            Basis::Monus => "monus",
            Basis::Band => "band",
            Basis::Div => "div",
            Basis::Rm => "rm",
            Basis::Pow2 => "pow2",
            Basis::Powvar => "powvar",
            Basis::MinPow2 => "min_pow2",
            Basis::Log2 => "log2",
            Basis::Len => "len",
            Basis::Rot => "rot",
            Basis::ExpLogsq => "exp_logsq",
            Basis::PowLog => "pow_log",
            Basis::Sg => "sg",
            Basis::Sgbar => "sgbar",
            Basis::Bit => "bit",
        }
    }

    /// Number of arguments.
    pub fn arity(self) -> usize {
        match self {
            Basis::Succ
            | Basis::Pow2
            | Basis::Log2
            | Basis::Len
            | Basis::ExpLogsq
            | Basis::Sg
            | Basis::Sgbar => 1,
            _ => 2,
        }
    }

    /// Looks a symbol up by name.
    pub fn from_name(s: &str) -> Option<Basis> {
        Basis::ALL.iter().copied().find(|b| b.name() == s)
    }

    /// Applies the symbol to already evaluated arguments.
    pub fn apply(self, a: &[Nat]) -> Result<Nat> {
        Ok(match self {
            Basis::Succ => nc::succ(&a[0]),
            Basis::Add => &a[0] + &a[1],
            Basis::Mul => {
                nc::check_bits(a[0].bits() + a[1].bits())?;
                &a[0] * &a[1]
            }
            Basis::Monus => nc::monus(&a[0], &a[1]),
            Basis::Band => nc::band(&a[0], &a[1]),
            Basis::Div => nc::div_floor(&a[0], &a[1]),
            Basis::Rm => nc::rm(&a[0], &a[1]),
            Basis::Pow2 => nc::pow2(&a[0])?,
            Basis::Powvar => nc::powvar(&a[0], &a[1])?,
            Basis::MinPow2 => nc::min_pow2(&a[0], &a[1]),
            Basis::Log2 => nc::log2_floor(&a[0]),
            Basis::Len => nc::len(&a[0]),
            Basis::Rot => nc::rot_r(&a[0], &a[1]),
            Basis::ExpLogsq => nc::exp_logsq(&a[0])?,
            Basis::PowLog => nc::pow_log(&a[0], &a[1])?,
            Basis::Sg => nc::sg(&a[0]),
            Basis::Sgbar => nc::sgbar(&a[0]),
            Basis::Bit => nc::bit_get(&a[0], &a[1]),
        })
    }
}

/// A formula tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    Const(Nat),
    Apply(Basis, Vec<Formula>),
}

/// Which exponentiation primitive the height counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tower {
    /// Towers of `2^x`; `pow2` is the counted primitive.
    Exp2,
    /// Towers of `x^y`; `powvar` (and `pow2` as `2^x`) are counted.
    PowXY,
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tower::Exp2 => "exp2",
            Tower::PowXY => "powxy",
        })
    }
}

impl std::str::FromStr for Tower {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp2" => Ok(Tower::Exp2),
            "powxy" => Ok(Tower::PowXY),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown tower `{s}`") }),
        }
    }
}

/// Exponent height of a formula in a given tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeightClass {
    pub tower: Tower,
    pub height: u32,
}

impl Formula {
    /// Variable leaf.
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    /// Constant leaf.
    pub fn num(v: u64) -> Formula {
        Formula::Const(Nat::from(v))
    }

    /// Application node; panics on an arity mismatch.
    pub fn app(b: Basis, args: Vec<Formula>) -> Formula {
        assert_eq!(args.len(), b.arity(), "arity of {}", b.name());
        Formula::Apply(b, args)
    }

    /// Evaluates under `env`.
    pub fn eval(&self, env: &BTreeMap<String, Nat>) -> Result<Nat> {
        match self {
            Formula::Var(v) => env.get(v).cloned().ok_or_else(|| Error::Unbound(v.clone())),
            Formula::Const(c) => Ok(c.clone()),
            Formula::Apply(b, args) => {
                let vals = args.iter().map(|a| a.eval(env)).collect::<Result<Vec<_>>>()?;
                b.apply(&vals)
            }
        }
    }

    /// Syntactic exponent height in `tower`.
    pub fn height(&self, tower: Tower) -> Result<HeightClass> {
        Ok(HeightClass { tower, height: self.height_raw(tower)? })
    }

    fn height_raw(&self, tower: Tower) -> Result<u32> {
        match self {
            Formula::Var(_) | Formula::Const(_) => Ok(1),
            Formula::Apply(Basis::Pow2, a) => Ok(a[0].height_raw(tower)? + 1),
            Formula::Apply(Basis::Powvar, a) => match tower {
                Tower::Exp2 => Err(Error::domain("powvar cannot be classified in the exp2 tower")),
                Tower::PowXY => Ok(a[0].height_raw(tower)?.max(a[1].height_raw(tower)? + 1)),
            },
            Formula::Apply(_, a) => {
                let mut h = 1;
                for c in a {
                    h = h.max(c.height_raw(tower)?);
                }
                Ok(h)
            }
        }
    }

    /// Free variables in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Formula::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Formula::Const(_) => {}
            Formula::Apply(_, a) => a.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> Formula {
        match self {
            Formula::Var(v) => Formula::Var(f(v)),
            Formula::Const(c) => Formula::Const(c.clone()),
            Formula::Apply(b, a) => Formula::Apply(*b, a.iter().map(|c| c.rename(f)).collect()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Const(c) => write!(f, "{c}"),
            Formula::Apply(b, a) => {
                write!(f, "{}(", b.name())?;
                for (i, c) in a.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses the named-application grammar.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let f = p.formula()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        self.ws();
        let start = self.pos;
        match self.s.get(self.pos) {
            Some(c) if c.is_ascii_digit() => {
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                Ok(Formula::Const(t.parse()?))
            }
            Some(c) if c.is_ascii_lowercase() => {
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_lowercase()
                        || self.s[self.pos].is_ascii_digit()
                        || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").to_string();
                match Basis::from_name(&name) {
                    Some(b) => {
                        if !self.eat(b'(') {
                            return Err(self.err(&format!("`{name}` needs an argument list")));
                        }
                        let mut args = vec![self.formula()?];
                        while self.eat(b',') {
                            args.push(self.formula()?);
                        }
                        if !self.eat(b')') {
                            return Err(self.err("expected `)`"));
                        }
                        if args.len() != b.arity() {
                            return Err(Error::Parse {
                                pos: start,
                                msg: format!("`{name}` takes {} arguments, got {}", b.arity(), args.len()),
                            });
                        }
                        Ok(Formula::Apply(b, args))
                    }
                    None => Ok(Formula::Var(name)),
                }
            }
            _ => Err(self.err("expected a name or a number")),
        }
    }
}

/// The closed formula for `C(x, y)`:
/// `⌊(2^{x+1}+1)^x / 2^{(x+1)y}⌋ ∸ ⌊(2^{x+1}+1)^x / 2^{(x+1)(y+1)}⌋·2^{x+1}`.
pub fn binomial_formula() -> Formula {
    use Basis::*;
    let x = || Formula::var("x");
    let y = || Formula::var("y");
    let x1 = || Formula::app(Succ, vec![x()]);
    let base = || {
        Formula::app(
            Powvar,
            vec![Formula::app(Succ, vec![Formula::app(Pow2, vec![x1()])]), x()],
        )
    };
    let hi = Formula::app(Div, vec![base(), Formula::app(Pow2, vec![Formula::app(Mul, vec![x1(), y()])])]);
    let lo = Formula::app(
        Mul,
        vec![
            Formula::app(
                Div,
                vec![
                    base(),
                    Formula::app(Pow2, vec![Formula::app(Mul, vec![x1(), Formula::app(Succ, vec![y()])])]),
                ],
            ),
            Formula::app(Pow2, vec![x1()]),
        ],
    );
    Formula::app(Monus, vec![hi, lo])
}

/// Builds an environment from `(name, value)` pairs.
pub fn env<I, S>(pairs: I) -> BTreeMap<String, Nat>
where
    I: IntoIterator<Item = (S, u64)>,
    S: Into<String>,
{
    pairs.into_iter().map(|(k, v)| (k.into(), Nat::from(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_height_examples() {
        let f = parse("add(mul(x,pow2(add(x,mul(y,z)))),pow2(t))").unwrap();
        assert_eq!(f.height(Tower::Exp2).unwrap().height, 2);
        let g = parse("pow2(pow2(x))").unwrap();
        assert_eq!(g.height(Tower::Exp2).unwrap().height, 3);
    }

    #[test]
    fn binomial_small() {
        let f = binomial_formula();
        assert_eq!(f.eval(&env([("x", 4), ("y", 2)])).unwrap(), 6);
        assert_eq!(f.eval(&env([("x", 5), ("y", 7)])).unwrap(), 0);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse("add(1,") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse("pow2(1,2)").is_err());
    }
}
