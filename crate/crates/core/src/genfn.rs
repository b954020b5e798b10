//! Generating functions of predicates and the constructions that keep them
//! computable: propositional logic, polynomial comparison, explicit
//! transformations, counting, and function extraction from a bit graph.
//!
//! The generating function of `ρ(x₁,…,xₙ)` at `y` is
//! `f_ρ(y) = Σ_{0≤xᵢ<y} χ_ρ(x₁,…,xₙ)·2^{x₁+x₂y+…+xₙy^{n−1}}`.

use std::fmt;
use std::sync::Arc;

use crate::blockvec::{self, cmp, cmpeq, incr, not, rep, sum_blocks, swap_n};
use crate::error::{Error, Result};
use crate::natcore::{band, check_bits, div_floor, monus, pow2_u, Nat};
use crate::poly::Poly;

type Chi = Arc<dyn Fn(&[u64]) -> bool + Send + Sync>;

/// A total predicate on `ℕ₀ⁿ` with a name for reports.
#[derive(Clone)]
pub struct GenPredicate {
    pub arity: usize,
    pub name: String,
    chi: Chi,
}

impl fmt::Debug for GenPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

impl GenPredicate {
    /// Wraps a pure characteristic function.
    pub fn new<F>(name: &str, arity: usize, chi: F) -> GenPredicate
    where
        F: Fn(&[u64]) -> bool + Send + Sync + 'static,
    {
        GenPredicate { arity, name: name.to_string(), chi: Arc::new(chi) }
    }

    /// `χ(xs)`.
    pub fn holds(&self, xs: &[u64]) -> bool {
        (self.chi)(xs)
    }

    /// `p(x̃) ≥ q(x̃)`.
    pub fn poly_ge(p: &Poly, q: &Poly) -> GenPredicate {
        let arity = p.arity().max(q.arity());
        let (p, q) = (p.widened(arity), q.widened(arity));
        GenPredicate::new(&format!("({p}) >= ({q})"), arity, move |x| p.eval_u64(x) >= q.eval_u64(x))
    }

    /// The bit graph of `f`: `ψ(x̃, y) ≡ bit y of f(x̃) is 1`.
    pub fn bit_graph<F>(name: &str, arity: usize, f: F) -> GenPredicate
    where
        F: Fn(&[u64]) -> Nat + Send + Sync + 'static,
    {
        GenPredicate::new(name, arity + 1, move |xs| f(&xs[..arity]).bit(xs[arity]))
    }
}

/// A growth bound of the class `Pⁿ`: `P⁰` are polynomials and
/// `P^{k+1} = 2^{P^k}`.
#[derive(Debug, Clone)]
pub struct GrowthBound {
    pub level: u32,
    pub poly: Poly,
}

impl GrowthBound {
    /// Value of the bound at a point, under the bit budget.
    pub fn eval(&self, xs: &[u64]) -> Result<Nat> {
        let mut v = self.poly.eval_u64(xs);
        for _ in 0..self.level {
            v = crate::natcore::pow2(&v)?;
        }
        Ok(v)
    }
}

fn upow(y: u64, e: usize) -> Result<u64> {
    y.checked_pow(e as u32)
        .ok_or(Error::Budget { needed: u64::MAX, budget: crate::natcore::bit_budget() })
}

/// Cell index `x₁ + x₂y + … + xₙy^{n−1}`.
pub fn cell_index(xs: &[u64], y: u64) -> u64 {
    xs.iter().rev().fold(0, |acc, &x| acc * y + x)
}

fn for_each_cell(n: usize, y: u64, mut f: impl FnMut(&[u64])) {
    let mut idx = vec![0u64; n];
    if y == 0 && n > 0 {
        return;
    }
    loop {
        f(&idx);
        let mut r = 0;
        loop {
            if r == n {
                return;
            }
            idx[r] += 1;
            if idx[r] < y {
                break;
            }
            idx[r] = 0;
            r += 1;
        }
    }
}

/// `f_ρ(y)` by the defining sum.
pub fn genfn_bruteforce(rho: &GenPredicate, y: u64) -> Result<Nat> {
    let cells = upow(y, rho.arity)?;
    check_bits(cells)?;
    let mut bits = vec![false; cells as usize];
    for_each_cell(rho.arity, y, |xs| {
        if rho.holds(xs) {
            bits[cell_index(xs, y) as usize] = true;
        }
    });
    Ok(Nat::from_bits_le(&bits))
}

/// Propositional connective for [`gen_logic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicOp {
    Not,
    And,
}

/// Generating function of `¬ρ` (`not(f_ρ(y), yⁿ)`) or of `ρ ∧ φ`
/// (`f_ρ(y) ∧ f_φ(y)`); `b` is ignored for `Not`.
pub fn gen_logic(a: &Nat, b: &Nat, arity: usize, y: u64, op: LogicOp) -> Result<Nat> {
    match op {
        LogicOp::Not => not(a, upow(y, arity)?),
        LogicOp::And => Ok(band(a, b)),
    }
}

/// `g_m(x, y) = Σ_{z<x} z^m·2^{zy}` by direct summation.
pub fn g_sum(x: u64, y: u64, m: u32) -> Result<Nat> {
    check_bits(x.saturating_mul(y).saturating_add(64))?;
    let mut acc = Nat::zero();
    for z in 0..x {
        acc += &(Nat::from(z).pow(m) << (z * y));
    }
    Ok(acc)
}

/// `g_r(x, y) = Σ_{0≤zᵢ<x} r(z̃)·2^{y(z₁+z₂x+…+zₙx^{n−1})}`, assembled
/// monomial by monomial as products of the one-variable sums `g_m`.
pub fn g_poly(r: &Poly, x: u64, y: u64) -> Result<Nat> {
    let n = r.arity();
    check_bits(upow(x, n)?.saturating_mul(y))?;
    let mut acc = Nat::zero();
    for (e, c) in r.terms() {
        let mut term = c.clone();
        for (i, &m) in e.iter().enumerate() {
            term = term * g_sum(x, y * upow(x, i)?, m)?;
        }
        acc += &term;
    }
    Ok(acc)
}

/// Generating function of `p ≥ q` at `y`:
/// `cmp(g_p(y,W), g_q(y,W), yⁿ, W)` with `W = p(y,…,y) + q(y,…,y) + 1`.
pub fn gen_poly_cmp(p: &Poly, q: &Poly, y: u64) -> Result<Nat> {
    let arity = p.arity().max(q.arity());
    let (p, q) = (p.widened(arity), q.widened(arity));
    let w = poly_width(&p, &q, y)?;
    cmp(&g_poly(&p, y, w)?, &g_poly(&q, y, w)?, upow(y, arity)?, w)
}

/// Generating function of `p = q` at `y`, via `cmpeq`.
pub fn gen_poly_eq(p: &Poly, q: &Poly, y: u64) -> Result<Nat> {
    let arity = p.arity().max(q.arity());
    let (p, q) = (p.widened(arity), q.widened(arity));
    let w = poly_width(&p, &q, y)?;
    cmpeq(&g_poly(&p, y, w)?, &g_poly(&q, y, w)?, upow(y, arity)?, w)
}

fn poly_width(p: &Poly, q: &Poly, y: u64) -> Result<u64> {
    (p.eval_diag(y) + q.eval_diag(y) + 1u64).small()
}

/// An explicit transformation of a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    /// `φ(x₁,…,xₙ) = ψ(x_{i₁},…,x_{iₙ})`; holds the one-based `(i₁,…,iₙ)`.
    Permute(Vec<usize>),
    /// `φ(x₁,…,xₙ) = ψ(x₁,…,xₙ,a)`.
    SubstConst(u64),
    /// `φ(x₁,…,xₙ) = ψ(x₁,…,xₙ,xₙ)`.
    IdentifyLast,
    /// `φ(x₁,…,xₙ,x_{n+1}) = ψ(x₁,…,xₙ)`.
    AddDummy,
}

impl Transform {
    /// Arity of the result for a source of arity `n`.
    pub fn result_arity(&self, n: usize) -> usize {
        match self {
            Transform::Permute(_) => n,
            Transform::SubstConst(_) | Transform::IdentifyLast => n - 1,
            Transform::AddDummy => n + 1,
        }
    }

    /// The transformed predicate, evaluated directly.
    pub fn apply_to(&self, psi: &GenPredicate) -> GenPredicate {
        let src = psi.clone();
        let n = psi.arity;
        let name = format!("{:?}[{}]", self, psi.name);
        match self.clone() {
            Transform::Permute(perm) => GenPredicate::new(&name, n, move |x| {
                let args: Vec<u64> = perm.iter().map(|&i| x[i - 1]).collect();
                src.holds(&args)
            }),
            Transform::SubstConst(a) => GenPredicate::new(&name, n - 1, move |x| {
                let mut args = x.to_vec();
                args.push(a);
                src.holds(&args)
            }),
            Transform::IdentifyLast => GenPredicate::new(&name, n - 1, move |x| {
                let mut args = x.to_vec();
                args.push(*x.last().expect("arity ≥ 1"));
                src.holds(&args)
            }),
            Transform::AddDummy => GenPredicate::new(&name, n + 1, move |x| src.holds(&x[..n])),
        }
    }
}

/// Applies an explicit transformation to `f_ψ(y)` for `ψ` of arity `n`.
///
/// Permutation and identification move bits with `swap_n`; substitution
/// masks with `x_{n+1} = a` and divides by `2^{a·yⁿ}`; a dummy variable
/// multiplies by `Σ_{x<y} 2^{x·yⁿ}`.
pub fn gen_explicit(f: &Nat, n: usize, y: u64, t: &Transform) -> Result<Nat> {
    match t {
        Transform::Permute(perm) => {
            check_permutation(perm, n)?;
            let k: Vec<u64> = (0..n).map(|i| upow(y, i)).collect::<Result<_>>()?;
            let m: Vec<u64> = perm.iter().map(|&i| upow(y, i - 1)).collect::<Result<_>>()?;
            swap_n(f, y, &k, &m)
        }
        Transform::SubstConst(a) => {
            if n < 1 || y <= *a {
                return Err(Error::domain("substitution needs arity ≥ 1 and y > a"));
            }
            let last = Poly::var(n, n - 1);
            let eq = gen_poly_eq(&last, &Poly::constant(n, *a), y)?;
            let rho = band(f, &eq);
            Ok(div_floor(&rho, &pow2_u(a * upow(y, n - 1)?)?))
        }
        Transform::IdentifyLast => {
            if n < 2 {
                return Err(Error::domain("identification needs arity ≥ 2"));
            }
            let eq = gen_poly_eq(&Poly::var(n, n - 2), &Poly::var(n, n - 1), y)?;
            let rho = band(f, &eq);
            let mut k: Vec<u64> = (0..n - 1).map(|i| upow(y, i)).collect::<Result<_>>()?;
            let last = k.pop().expect("n ≥ 2");
            k.push(last + upow(y, n - 1)?);
            let m: Vec<u64> = (0..n - 1).map(|i| upow(y, i)).collect::<Result<_>>()?;
            swap_n(&rho, y, &k, &m)
        }
        Transform::AddDummy => {
            let yn = upow(y, n)?;
            let factor = div_floor(&monus(&pow2_u(yn * y)?, &Nat::one()), &monus(&pow2_u(yn)?, &Nat::one()));
            Ok(f * factor)
        }
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::domain("permutation length differs from arity"));
    }
    for &i in perm {
        if i == 0 || i > n || seen[i - 1] {
            return Err(Error::domain(format!("{perm:?} is not a permutation of 1..{n}")));
        }
        seen[i - 1] = true;
    }
    Ok(())
}

/// The counting predicate `φ(x₁,…,xₙ,y) ≡ y = #{x < p(x₁,…,xₙ) : ψ(x,x₂,…,xₙ)}`.
pub fn counting_predicate(psi: &GenPredicate, p: &Poly) -> GenPredicate {
    let n = psi.arity;
    let (psi, p) = (psi.clone(), p.widened(n.max(p.arity())));
    GenPredicate::new(&format!("count[{}]", psi.name), n + 1, move |xs| {
        let bound = p.eval_u64(&xs[..n]).to_u64().unwrap_or(u64::MAX);
        let mut args = xs[..n].to_vec();
        let mut c = 0u64;
        for x in 0..bound {
            args[0] = x;
            if psi.holds(&args) {
                c += 1;
            }
        }
        xs[n] == c
    })
}

/// `ρ(x, x₁,…,xₙ, y) ≡ ψ(x, x₂,…,xₙ) ∧ x < p(x₁,…,xₙ)`.
pub fn counting_rho(psi: &GenPredicate, p: &Poly) -> GenPredicate {
    let n = psi.arity;
    let (psi, p) = (psi.clone(), p.widened(n.max(p.arity())));
    GenPredicate::new(&format!("rho[{}]", psi.name), n + 2, move |xs| {
        let mut args = xs[1..=n].to_vec();
        args[0] = xs[0];
        psi.holds(&args) && Nat::from(xs[0]) < p.eval_u64(&xs[1..=n])
    })
}

/// Generating function at `z` of the counting predicate of `ψ` under `p`.
///
/// With `q = p(z,…,z) + z + 1`: `f' = incr(f_ρ(q), q^{n+2}, q)`,
/// `u = sum(f', q^{n+1}, q, q)`, `v` tabulates the candidate counts,
/// `w` masks cells below `z`, and `swap_{n+1}` re-indexes from base `q` to
/// base `z`. `f_ρ(q)` is tabulated from its definition.
pub fn gen_count(psi: &GenPredicate, p: &Poly, z: u64) -> Result<Nat> {
    let n = psi.arity;
    if n == 0 || p.arity() > n {
        return Err(Error::domain("counting needs arity ≥ 1 and a polynomial over the same variables"));
    }
    if z == 0 {
        return Err(Error::domain("counting needs z ≥ 1"));
    }
    let p = p.widened(n);
    let q = (p.eval_diag(z) + z + 1u64).small()?;
    let qn = upow(q, n)?;
    let q2 = q * q;
    check_bits(upow(q, n + 2)?)?;
    let rho = counting_rho(psi, &p);
    let f_rho = genfn_bruteforce(&rho, q)?;
    let f1 = incr(&f_rho, upow(q, n + 2)?, q)?;
    let u = sum_blocks(&f1, upow(q, n + 1)?, q, q)?;
    let ys = g_sum(q, q2 * qn, 1)?;
    let v = ys * rep(&Nat::one(), qn, q2)?;
    let sigma = cmpeq(&u, &v, upow(q, n + 1)?, q2)?;
    let mut w = Nat::one();
    for j in 0..=n {
        let step = upow(q, j)?;
        w = w * div_floor(&monus(&pow2_u(z * step)?, &Nat::one()), &monus(&pow2_u(step)?, &Nat::one()));
    }
    let k: Vec<u64> = (0..=n).map(|j| upow(q, j)).collect::<Result<_>>()?;
    let m: Vec<u64> = (0..=n).map(|j| upow(z, j)).collect::<Result<_>>()?;
    swap_n(&band(&sigma, &w), z, &k, &m)
}

/// Recovers `f(x̃)` from the generating function of its bit graph:
/// `decr(⌊f_ψ(z)/2^{x₁+x₂z+…}⌋, t·zⁿ, zⁿ)` with `z = Σxᵢ + 1`.
pub fn xs_extract<F>(fpsi: F, t: &Poly, args: &[u64]) -> Result<Nat>
where
    F: Fn(u64) -> Result<Nat>,
{
    let n = args.len();
    let z = args.iter().sum::<u64>() + 1;
    let tv = t.widened(n.max(t.arity())).eval_u64(args).small()?;
    let zn = upow(z, n)?;
    let g = fpsi(z)?;
    let shifted = div_floor(&g, &pow2_u(cell_index(args, z))?);
    if tv == 0 {
        return Ok(Nat::zero());
    }
    blockvec::decr(&shifted, tv * zn, zn)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let is_zero = GenPredicate::new("x=0", 1, |x| x[0] == 0);
        assert_eq!(genfn_bruteforce(&is_zero, 2).unwrap(), 1);
        let t = GenPredicate::new("true", 1, |_| true);
        let ft = genfn_bruteforce(&t, 2).unwrap();
        assert_eq!(ft, 3);
        assert_eq!(gen_logic(&ft, &ft, 1, 2, LogicOp::Not).unwrap(), 0);
        let x = Poly::parse("x", 1).unwrap();
        let one = Poly::constant(1, 1);
        assert_eq!(gen_poly_cmp(&x, &one, 2).unwrap(), 2);
        assert_eq!(gen_poly_cmp(&x, &x, 2).unwrap(), 3);
    }
}
