//! The function `Q` and its basic property for cyclic simplistic sequences.

use rand::Rng;

use crate::error::{Error, Result};
use crate::natcore::{self as nc, Nat};

use super::simple::SimplisticFn;

/// Arguments of `Q(x, p₁, p₂, c₁, c₂, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QParams {
    pub x: Nat,
    pub p1: Nat,
    pub p2: Nat,
    pub c1: u64,
    pub c2: u64,
    pub t: u64,
}

/// Runs the recursion `Q₀ = x`, `Q_{t+1} = Q_t` if `Q_t ∧ R(p₁, c₁t) ≠ 0`,
/// else `Q_t + R(p₂, c₂t)`, where `R` rotates right within the bit length.
pub fn q_eval(p: &QParams) -> Result<Nat> {
    let mut q = p.x.clone();
    for t in 0..p.t {
        let s1 = Nat::from(p.c1) * t;
        if nc::band(&q, &nc::rot_r(&p.p1, &s1)).is_zero() {
            let s2 = Nat::from(p.c2) * t;
            q += &nc::rot_r(&p.p2, &s2);
            nc::check_bits(q.bits())?;
        }
    }
    Ok(q)
}

/// Data of the basic property: a cycle `u₀..u_{r−1}`, `v₀..v_{r−1}` whose
/// last member is the marker step, plus the remaining numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPropertyInstance {
    pub x: Nat,
    pub c1: u64,
    pub c2: u64,
    pub t0: u64,
    pub u: Vec<Nat>,
    pub v: Vec<Nat>,
    pub p1: Nat,
    pub p2: Nat,
}

fn hyp(clause: usize, ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis { clause, msg: msg.into() })
    }
}

/// `Σ 2^{c·i}·a_i`.
pub fn pack(a: &[Nat], c: u64) -> Result<Nat> {
    let mut out = Nat::zero();
    for (i, ai) in a.iter().enumerate() {
        out += &(ai * nc::pow2_u(c * i as u64)?);
    }
    Ok(out)
}

impl QPropertyInstance {
    /// Cycle length `r`.
    pub fn r(&self) -> usize {
        self.u.len()
    }

    /// Checks the ten hypotheses in order; clause numbers are 1-based.
    ///
    /// 1. `t₀ ≥ 1`; 2. `u_{r−1} = 2^{c₁} − 1`; 3. `2^{c₂−1} ≤ v_{r−1} < 2^{c₂}`;
    /// 4. `p₁ = Σ 2^{c₁i}u_i`; 5. `p₂ = Σ 2^{c₂i}v_i`; 6. `x + 2p₂t₀ < 2^{c₁}`;
    /// 7. `x + t₀·max(v₀..v_{r−2}) < 2^{c₂}`; 8. `u_i < 2^{c₂}` for `i ≤ r−2`;
    /// 9. `c₁ ≥ c₂`; 10. `x ≥ 1`.
    pub fn validate(&self) -> Result<()> {
        let r = self.r();
        if r == 0 || self.v.len() != r {
            return Err(Error::domain("u and v need the same positive length"));
        }
        if self.c2 == 0 {
            return Err(Error::domain("c2 must be positive"));
        }
        let two_c1 = nc::pow2_u(self.c1)?;
        let two_c2 = nc::pow2_u(self.c2)?;
        hyp(1, self.t0 >= 1, "t0 >= 1")?;
        hyp(2, self.u[r - 1] == nc::monus(&two_c1, &Nat::one()), "u_{r-1} = 2^c1 - 1")?;
        hyp(3, self.v[r - 1] >= nc::pow2_u(self.c2 - 1)? && self.v[r - 1] < two_c2, "2^(c2-1) <= v_{r-1} < 2^c2")?;
        hyp(4, self.p1 == pack(&self.u, self.c1)?, "p1 = sum 2^(c1 i) u_i")?;
        hyp(5, self.p2 == pack(&self.v, self.c2)?, "p2 = sum 2^(c2 i) v_i")?;
        hyp(6, &self.x + &(&self.p2 * (2 * self.t0)) < two_c1, "x + 2 p2 t0 < 2^c1")?;
        let vmax = self.v[..r - 1].iter().max().cloned().unwrap_or_default();
        hyp(7, &self.x + &(vmax * self.t0) < two_c2, "x + t0 max v < 2^c2")?;
        hyp(8, self.u[..r - 1].iter().all(|u| *u < two_c2), "u_i < 2^c2")?;
        hyp(9, self.c1 >= self.c2, "c1 >= c2")?;
        hyp(10, !self.x.is_zero(), "x >= 1")
    }

    /// `Q(x, p₁, p₂, c₁, c₂, t₀)`.
    pub fn params(&self) -> QParams {
        QParams {
            x: self.x.clone(),
            p1: self.p1.clone(),
            p2: self.p2.clone(),
            c1: self.c1,
            c2: self.c2,
            t: self.t0,
        }
    }

    /// `f_{t₀−1}(…f₀(x)…)` with `f_i` the simplistic step of index `rm(i, r)`
    /// and the identity at index `r − 1`.
    pub fn composition(&self) -> Nat {
        let r = self.r() as u64;
        let mut y = self.x.clone();
        for i in 0..self.t0 {
            let j = (i % r) as usize;
            if j + 1 < self.r() {
                y = SimplisticFn { u: self.u[j].clone(), v: self.v[j].clone() }.apply(&y);
            }
        }
        y
    }

    /// Builds an instance the way the compiler does: `c₂` from `x`, `Σu` and
    /// `t₀·Σv`, then the marker step, `p₂`, `c₁`, and `p₁`.
    pub fn from_cycle(x: Nat, t0: u64, u: &[Nat], v: &[Nat]) -> Result<QPropertyInstance> {
        if u.len() != v.len() {
            return Err(Error::domain("u and v need the same length"));
        }
        let su = u.iter().fold(Nat::zero(), |a, b| a + b);
        let sv = v.iter().fold(Nat::zero(), |a, b| a + b);
        let c2 = (&x + &su + &(sv * t0)).bits().max(1);
        let mut v = v.to_vec();
        v.push(nc::pow2_u(c2 - 1)?);
        let p2 = pack(&v, c2)?;
        let c1 = (&x + &(&p2 * (2 * t0))).bits();
        let mut u = u.to_vec();
        u.push(nc::monus(&nc::pow2_u(c1)?, &Nat::one()));
        let p1 = pack(&u, c1)?;
        Ok(QPropertyInstance { x, c1, c2, t0, u, v, p1, p2 })
    }

    /// A random hypothesis-satisfying instance with `r ≤ max_r`, `t₀ ≤ max_t`.
    pub fn random<R: Rng>(rng: &mut R, max_r: usize, max_t: u64) -> Result<QPropertyInstance> {
        let r = rng.gen_range(1..=max_r.max(1));
        let t0 = rng.gen_range(1..=max_t.max(1));
        let x = Nat::from(rng.gen_range(1..64u64));
        let u: Vec<Nat> = (1..r).map(|_| Nat::from(rng.gen_range(0..16u64))).collect();
        let v: Vec<Nat> = (1..r).map(|_| Nat::from(rng.gen_range(0..16u64))).collect();
        Self::from_cycle(x, t0, &u, &v)
    }
}

/// Validates the hypotheses, then compares `h_{c₂}(Q)` with the explicit composition.
pub fn q_property_check(inst: &QPropertyInstance) -> Result<bool> {
    inst.validate()?;
    let q = q_eval(&inst.params())?;
    Ok(nc::rm(&q, &nc::pow2_u(inst.c2)?) == inst.composition())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn base_and_fixpoint() {
        let p = QParams { x: Nat::from(5u64), p1: Nat::from(63u64), p2: Nat::from(4u64), c1: 6, c2: 3, t: 0 };
        assert_eq!(q_eval(&p).unwrap(), Nat::from(5u64));
        let q = q_eval(&QParams { t: 2, ..p }).unwrap();
        assert_eq!(nc::rm(&q, &Nat::from(8u64)), Nat::from(5u64));
    }

    #[test]
    fn random_instances_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let inst = QPropertyInstance::random(&mut rng, 4, 8).unwrap();
            assert!(q_property_check(&inst).unwrap(), "{inst:?}");
            let q = q_eval(&inst.params()).unwrap();
            assert!(q <= &inst.x + &(&inst.p2 * (2 * inst.t0)));
        }
    }

    #[test]
    fn violated_clause_is_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut inst = QPropertyInstance::random(&mut rng, 3, 4).unwrap();
        inst.c1 = inst.c2;
        let last = inst.r() - 1;
        inst.u[last] = nc::monus(&nc::pow2_u(inst.c1).unwrap(), &Nat::one());
        inst.p1 = pack(&inst.u, inst.c1).unwrap();
        match q_property_check(&inst) {
            Err(Error::Hypothesis { clause: 6, .. }) => {}
            other => panic!("expected clause 6, got {other:?}"),
        }
    }
}
