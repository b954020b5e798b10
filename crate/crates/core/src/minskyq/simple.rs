//! Simple vector functions, `(w;l)`-configuration codes and simplistic functions.

use crate::error::{Error, Result};
use crate::natcore::{self as nc, monus, Nat};

use super::machine::{Configuration, Move, ReducedMachine};

/// `F(x̃; q) = (x̃ + ã; q′)` if `x_i = 0` and `q = q″`, else `(x̃; q)`.
/// Guard tape `0` means the tape test always succeeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleVectorFn {
    pub shifts: Vec<i64>,
    pub guard_tape: usize,
    pub guard_state: usize,
    pub target_state: usize,
}

impl SimpleVectorFn {
    /// Applies the function; a head shifted below 0 is an error.
    pub fn apply(&self, c: &Configuration) -> Result<Configuration> {
        let tape_ok = self.guard_tape == 0 || c.heads[self.guard_tape - 1] == 0;
        if !tape_ok || c.state != self.guard_state {
            return Ok(c.clone());
        }
        let heads = c
            .heads
            .iter()
            .zip(&self.shifts)
            .map(|(&x, &a)| x.checked_add_signed(a).ok_or_else(|| Error::domain("head shifted below cell 0")))
            .collect::<Result<_>>()?;
        Ok(Configuration { heads, state: self.target_state })
    }
}

fn shifts(moves: &[Move]) -> Vec<i64> {
    moves.iter().map(|m| m.delta()).collect()
}

/// Simple functions `F₁..F_m` with `Con_M = F₁ ∘ … ∘ F_m`; the last one is applied first.
///
/// Primed copies `s + q` of the states keep a branch from firing twice:
/// first every one-branch (guard on the read tape) moves state `q` to the
/// primed successor, then every zero-branch (no tape guard) does the same
/// for the states still unprimed, and finally each primed state is renamed back.
pub fn decompose(m: &ReducedMachine) -> Vec<SimpleVectorFn> {
    let k = m.tapes();
    let s = m.states();
    let mut applied = Vec::new();
    let mut primed = std::collections::BTreeSet::new();
    for (i, row) in m.rows().iter().enumerate() {
        primed.insert(row.on_one.1);
        applied.push(SimpleVectorFn {
            shifts: shifts(&row.on_one.0),
            guard_tape: row.tape,
            guard_state: i + 1,
            target_state: s + row.on_one.1,
        });
    }
    for (i, row) in m.rows().iter().enumerate() {
        primed.insert(row.on_zero.1);
        applied.push(SimpleVectorFn {
            shifts: shifts(&row.on_zero.0),
            guard_tape: 0,
            guard_state: i + 1,
            target_state: s + row.on_zero.1,
        });
    }
    for q in primed {
        applied.push(SimpleVectorFn { shifts: vec![0; k], guard_tape: 0, guard_state: s + q, target_state: q });
    }
    applied.reverse();
    applied
}

/// Applies `F₁ ∘ … ∘ F_m` (right to left).
pub fn apply_all(fs: &[SimpleVectorFn], c: &Configuration) -> Result<Configuration> {
    fs.iter().rev().try_fold(c.clone(), |c, f| f.apply(&c))
}

/// Field widths of a `(w;l)`-code: `w` bits of state above `k` head fields of `l` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigCodeParams {
    pub w: u64,
    pub l: u64,
}

impl ConfigCodeParams {
    /// Smallest `w` with `2^w ≥ states`.
    pub fn state_width(states: usize) -> u64 {
        (states.max(1) as u64).next_power_of_two().trailing_zeros() as u64
    }
}

/// The canonical code `Σ x_i·2^{l(i−1)} + q·2^{lk}`.
pub fn config_code(c: &Configuration, p: ConfigCodeParams) -> Result<Nat> {
    if p.l == 0 {
        return Err(Error::domain("head fields need l ≥ 1"));
    }
    let limit = nc::pow2_u(p.l)?;
    let mut out = Nat::zero();
    for (i, &x) in c.heads.iter().enumerate() {
        if Nat::from(x) >= limit {
            return Err(Error::domain(format!("head {} at {x} does not fit {} bits", i + 1, p.l)));
        }
        out += &(Nat::from(x) * nc::pow2_u(p.l * i as u64)?);
    }
    if Nat::from(c.state as u64) >= nc::pow2_u(p.w)? {
        return Err(Error::domain(format!("state {} does not fit {} bits", c.state, p.w)));
    }
    out += &(Nat::from(c.state as u64) * nc::pow2_u(p.l * c.heads.len() as u64)?);
    Ok(out)
}

/// Reads a configuration of `k` heads from a code; bits above the state field are ignored.
pub fn config_decode(code: &Nat, k: usize, p: ConfigCodeParams) -> Result<Configuration> {
    let heads = (0..k as u64).map(|i| code.slice(i * p.l, p.l).small()).collect::<Result<_>>()?;
    let state = code.slice(k as u64 * p.l, p.w).small_usize()?;
    Ok(Configuration { heads, state })
}

/// `f(x) = x + v` if `x ∧ u = 0`, else `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplisticFn {
    pub u: Nat,
    pub v: Nat,
}

impl SimplisticFn {
    /// Applies the function.
    pub fn apply(&self, x: &Nat) -> Nat {
        if nc::band(x, &self.u).is_zero() {
            x + &self.v
        } else {
            x.clone()
        }
    }
}

/// Three simplistic functions whose composition `f₃ ∘ f₂ ∘ f₁` acts on codes
/// as `F` acts on configurations, while every head stays below `2^l`.
///
/// `f₁` subtracts `q″` from the state field modulo `2^w`, `f₂` fires only on
/// state 0 with the guard head at 0, adding the shifts and `q′ − q″`, and `f₃`
/// adds `q″` back. Carries out of the state field land above it and are ignored.
pub fn simple_to_simplistic(
    f: &SimpleVectorFn,
    p: ConfigCodeParams,
    states: usize,
) -> Result<[SimplisticFn; 3]> {
    let k = f.shifts.len() as u64;
    let (w, l) = (p.w, p.l);
    if l == 0 || 1u128 << w < states as u128 {
        return Err(Error::domain("need l ≥ 1 and 2^w ≥ s"));
    }
    if f.guard_tape as u64 > k || f.guard_state >= 1 << w || f.target_state >= 1 << w {
        return Err(Error::domain("simple function does not fit the code"));
    }
    let lk = nc::pow2_u(l * k)?;
    let two_w = nc::pow2_u(w)?;
    let q2 = Nat::from(f.guard_state as u64);
    let q1 = Nat::from(f.target_state as u64);
    let f1 = SimplisticFn { u: Nat::zero(), v: monus(&two_w, &q2) * &lk };
    let mut u2 = monus(&two_w, &Nat::one()) * &lk;
    if f.guard_tape > 0 {
        u2 += &(monus(&nc::pow2_u(l)?, &Nat::one()) * nc::pow2_u(l * (f.guard_tape as u64 - 1))?);
    }
    let mut plus = nc::pow2_u(l * k + w)? + (&two_w + &q1) * &lk;
    let mut minus = &q2 * &lk;
    for (j, &a) in f.shifts.iter().enumerate() {
        let term = Nat::from(a.unsigned_abs()) * nc::pow2_u(l * j as u64)?;
        if a >= 0 {
            plus += &term;
        } else {
            minus += &term;
        }
    }
    let f2 = SimplisticFn { u: u2, v: monus(&plus, &minus) };
    let f3 = SimplisticFn { u: Nat::zero(), v: q2 * lk };
    Ok([f1, f2, f3])
}
