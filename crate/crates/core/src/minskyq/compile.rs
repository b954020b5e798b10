//! Compilation of a Minsky machine and an input into arguments of `Q`.

use crate::error::{Error, Result};
use crate::natcore::{self as nc, Nat};
use crate::poly::Poly;

use super::machine::{run, Configuration, Machine};
use super::q::{pack, q_eval, QParams, QPropertyInstance};
use super::simple::{config_code, decompose, simple_to_simplistic, ConfigCodeParams, SimplisticFn};

/// The compiled form of one machine run: `Q` arguments plus the code layout
/// the extractor needs.
#[derive(Debug, Clone)]
pub struct QCompilation {
    pub params: QParams,
    /// Head field width `l = ⌊log₂ m⌋ + 1`, `m = t + Σy`.
    pub l: u64,
    /// State field width, `2^w ≥ 2s` for the reduced machine with primed states.
    pub w: u64,
    /// Time bound `t` on the reduced machine.
    pub t: u64,
    /// The simplistic cycle without its marker step, in application order.
    pub sequence: Vec<SimplisticFn>,
}

impl QCompilation {
    /// `rm(rm(q, 2^{c₂}), 2^l)`: the first head of the final configuration.
    pub fn extract(&self, q: &Nat) -> Result<Nat> {
        Ok(nc::rm(&nc::rm(q, &nc::pow2_u(self.params.c2)?), &nc::pow2_u(self.l)?))
    }

    /// Evaluates `Q` and extracts the result.
    pub fn evaluate(&self) -> Result<Nat> {
        self.extract(&q_eval(&self.params)?)
    }

    /// The cycle as an instance of the basic property of `Q`.
    pub fn instance(&self) -> Result<QPropertyInstance> {
        let mut u: Vec<Nat> = self.sequence.iter().map(|f| f.u.clone()).collect();
        let mut v: Vec<Nat> = self.sequence.iter().map(|f| f.v.clone()).collect();
        v.push(nc::pow2_u(self.params.c2 - 1)?);
        u.push(nc::monus(&nc::pow2_u(self.params.c1)?, &Nat::one()));
        Ok(QPropertyInstance {
            x: self.params.x.clone(),
            c1: self.params.c1,
            c2: self.params.c2,
            t0: self.params.t,
            p1: pack(&u, self.params.c1)?,
            p2: pack(&v, self.params.c2)?,
            u,
            v,
        })
    }
}

/// Compiles `m` on `input` with running-time bound `time_poly(input)`.
///
/// General machines are reduced first; their bound is scaled by the tape
/// count, since each general step takes `k` reduced steps. The bound is
/// verified by simulation.
pub fn compile(m: &Machine, input: &[u64], time_poly: &Poly) -> Result<QCompilation> {
    let reduced = m.to_reduced();
    let k = reduced.tapes();
    if input.len() > k {
        return Err(Error::domain(format!("{} inputs for {k} tapes", input.len())));
    }
    if time_poly.arity() < input.len() {
        return Err(Error::domain("time polynomial has fewer variables than inputs"));
    }
    let mut args = input.to_vec();
    args.resize(time_poly.arity(), 0);
    let bound = time_poly.eval_u64(&args).small()?;
    let scale = if matches!(m, Machine::General(_)) { k as u64 } else { 1 };
    let t = bound.checked_mul(scale).ok_or_else(|| Error::domain("time bound overflows"))?;
    if t == 0 {
        return Err(Error::domain("time bound must be at least 1"));
    }
    let machine = Machine::Reduced(reduced.clone());
    match run(&machine, input, t) {
        Ok(_) => {}
        Err(Error::StepBudget(_)) => {
            return Err(Error::domain(format!("time bound {t} is below the running time")))
        }
        Err(e) => return Err(e),
    }

    let total: u64 = input.iter().sum::<u64>() + t;
    let l = 64 - total.leading_zeros() as u64;
    let s = reduced.states();
    let w = ConfigCodeParams::state_width(2 * s);
    let p = ConfigCodeParams { w, l };
    let mut sequence = Vec::new();
    for f in decompose(&reduced).iter().rev() {
        sequence.extend(simple_to_simplistic(f, p, 2 * s)?);
    }
    let start = Configuration::initial(k, input)?;
    let mut x = config_code(&start, p)?;
    x += &nc::pow2_u(l * k as u64 + w)?;

    let r1 = sequence.len() as u64;
    let t_prime = t.checked_mul(r1 + 1).ok_or_else(|| Error::domain("time bound overflows"))?;
    let u: Vec<Nat> = sequence.iter().map(|f| f.u.clone()).collect();
    let v: Vec<Nat> = sequence.iter().map(|f| f.v.clone()).collect();
    let inst = QPropertyInstance::from_cycle(x, t_prime, &u, &v)?;
    let params = inst.params();
    Ok(QCompilation { params, l, w, t, sequence })
}

#[cfg(test)]
mod tests {
    use super::*;

    const INC: &str = "tapes 1\nstates 2\n0 1 -> R 0\n1 1 -> R 0\n";

    #[test]
    fn increment_compiles() {
        let m = Machine::parse(INC).unwrap();
        for y in 0..6u64 {
            let c = compile(&m, &[y], &Poly::constant(1, 2)).unwrap();
            assert_eq!(c.evaluate().unwrap(), Nat::from(y + 1));
        }
    }

    #[test]
    fn short_bound_is_rejected() {
        let m = Machine::parse("tapes 1\nstates 3\n0 1 -> R 2\n1 1 -> R 2\n0 2 -> R 0\n").unwrap();
        assert!(compile(&m, &[1], &Poly::constant(1, 1)).is_err());
    }
}
