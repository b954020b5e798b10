//! The named permutations built on the triple numeration, function codes,
//! and the combinators that delete, compose and relocate them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::natcore::{monus, Nat};

use super::pairing::{c2, c3, split2, split3};
use super::perm::{NatMap, Perm};

fn one() -> Nat {
    Nat::one()
}

fn even(x: &Nat) -> bool {
    !x.bit(0)
}

fn mod4(x: &Nat) -> u64 {
    x.slice(0, 2).to_u64().unwrap_or(0)
}

/// `p_f`, a permutation for every total `f`:
///
/// ```text
/// c₃(x, 2y, z)   → c₃(f(x), 2c₂(x, y), z)
/// c₃(x, 4y+1, z) → c₃(x, 2y+1, z)
/// c₃(x, 4y+3, z) → c₃(x, 2y, z)      if x < f(c₂,₁(y))
/// c₃(x, 4y+3, z) → c₃(x+1, 2y, z)    if x ≥ f(c₂,₁(y))
/// ```
///
/// The inverse follows the partition of the image into the four rule ranges.
pub fn p_f(f: NatMap) -> Perm {
    let g = f.clone();
    let fwd = move |n: &Nat| {
        let (x, v, z) = split3(n);
        if even(&v) {
            let y = &v >> 1;
            return c3(&f(&x), &(c2(&x, &y) << 1), &z);
        }
        let y = &v >> 2;
        if mod4(&v) == 1 {
            return c3(&x, &((y << 1) + 1u64), &z);
        }
        let t = f(&split2(&y).0);
        let x = if x < t { x } else { x + 1u64 };
        c3(&x, &(y << 1), &z)
    };
    let bwd = move |m: &Nat| {
        let (u, v, w) = split3(m);
        if !even(&v) {
            return c3(&u, &(((&v >> 1) << 2) + 1u64), &w);
        }
        let y = &v >> 1;
        let (a, b) = split2(&y);
        let t = g(&a);
        if u == t {
            c3(&a, &(b << 1), &w)
        } else if u < t {
            c3(&u, &((y << 2) + 3u64), &w)
        } else {
            c3(&monus(&u, &one()), &((y << 2) + 3u64), &w)
        }
    };
    Perm::new(fwd, bwd)
}

/// A partial binary function.
pub type PartialFn = Arc<dyn Fn(&Nat, &Nat) -> Option<Nat> + Send + Sync>;

/// The code of a partial `g`: `c₃(x, y, 0) ↔ c₃(x, y, g(x, y) + 2)` where defined.
pub fn code_of(g: PartialFn) -> Perm {
    Perm::matching(move |n| {
        let (x, y, z) = split3(n);
        if z.is_zero() {
            match g(&x, &y) {
                Some(v) => c3(&x, &y, &(v + 2u64)),
                None => n.clone(),
            }
        } else if z >= 2u64 {
            match g(&x, &y) {
                Some(v) if &v + 2u64 == z => c3(&x, &y, &Nat::zero()),
                _ => n.clone(),
            }
        } else {
            n.clone()
        }
    })
}

/// `px`, the code of `g(x₁, x₂) = x₁`.
pub fn px() -> Perm {
    code_of(Arc::new(|x, _| Some(x.clone())))
}

/// `del: c₃(x, 2y, 0) ↔ c₃(x, 2y, 1)`.
pub fn del() -> Perm {
    Perm::matching(|n| {
        let (x, v, z) = split3(n);
        if !even(&v) || z > 1u64 {
            return n.clone();
        }
        let flipped = if z.is_zero() { one() } else { Nat::zero() };
        c3(&x, &v, &flipped)
    })
}

/// `s_ij: 4x + i ↔ 4x + j` for `0 ≤ i < j ≤ 3`.
pub fn s_ij(i: u64, j: u64) -> Result<Perm> {
    if i >= j || j > 3 {
        return Err(Error::domain("need 0 ≤ i < j ≤ 3"));
    }
    Ok(Perm::matching(move |n| {
        let r = mod4(n);
        let base = monus(n, &Nat::from(r));
        if r == i {
            base + j
        } else if r == j {
            base + i
        } else {
            n.clone()
        }
    }))
}

/// `move` on the plane `z = 0`: evens climb by 2, `1 → 0`, odds `≥ 3` descend by 2.
pub fn move_perm() -> Perm {
    let step = |up: bool| {
        move |n: &Nat| {
            let (x, v, z) = split3(n);
            if !z.is_zero() {
                return n.clone();
            }
            let v = match (even(&v), up) {
                (true, true) => v + 2u64,
                (false, true) if v == 1u64 => Nat::zero(),
                (false, true) => monus(&v, &Nat::from(2u64)),
                (true, false) if v.is_zero() => one(),
                (true, false) => monus(&v, &Nat::from(2u64)),
                (false, false) => v + 2u64,
            };
            c3(&x, &v, &z)
        }
    };
    Perm::new(step(true), step(false))
}

/// `place`: `c₃(x,0,0) → 2x`, `c₃(x,y+1,0) → 4c₂(x,y)+1`, `c₃(x,y,z+1) → 4c₃(x,y,z)+3`.
pub fn place() -> Perm {
    let fwd = |n: &Nat| {
        let (x, y, z) = split3(n);
        if !z.is_zero() {
            (c3(&x, &y, &monus(&z, &one())) << 2) + 3u64
        } else if y.is_zero() {
            x << 1
        } else {
            (c2(&x, &monus(&y, &one())) << 2) + 1u64
        }
    };
    let bwd = |n: &Nat| {
        if even(n) {
            return c3(&(n >> 1), &Nat::zero(), &Nat::zero());
        }
        let q = n >> 2;
        if mod4(n) == 1 {
            let (x, y) = split2(&q);
            c3(&x, &(y + 1u64), &Nat::zero())
        } else {
            let (x, y, z) = split3(&q);
            c3(&x, &y, &(z + 1u64))
        }
    };
    Perm::new(fwd, bwd)
}

/// The shared odd-plane rules of `swap₁` and `swap₂` (`z ≥ 2`):
/// `c₃(x+2, 2y+1, z) → c₃(x, 2y+1, z)`, `c₃(x, 2y+1, z) → c₃(x, 2y, z)` for `x < 2`.
fn odd_plane(x: Nat, v: &Nat, z: &Nat) -> Nat {
    if x >= 2u64 {
        c3(&monus(&x, &Nat::from(2u64)), v, z)
    } else {
        c3(&x, &monus(v, &one()), z)
    }
}

/// The inverse of the even-plane preimages of `x < 2` and the odd-plane shift.
fn odd_plane_inv(x: &Nat, v: &Nat, z: &Nat) -> Nat {
    c3(&(x + 2u64), v, z)
}

/// `swap₁`: on `z ≥ 2`, `c₃(x, 2y, z) → c₃(x+2, 2y, z)` closed up through the odd plane.
pub fn swap1() -> Perm {
    let fwd = |n: &Nat| {
        let (x, v, z) = split3(n);
        if z < 2u64 {
            n.clone()
        } else if even(&v) {
            c3(&(x + 2u64), &v, &z)
        } else {
            odd_plane(x, &v, &z)
        }
    };
    let bwd = |n: &Nat| {
        let (x, v, z) = split3(n);
        if z < 2u64 {
            n.clone()
        } else if even(&v) {
            if x >= 2u64 {
                c3(&monus(&x, &Nat::from(2u64)), &v, &z)
            } else {
                c3(&x, &(v + 1u64), &z)
            }
        } else {
            odd_plane_inv(&x, &v, &z)
        }
    };
    Perm::new(fwd, bwd)
}

/// `swap₂`: on `z ≥ 2`, `c₃(x, 2y, z) → c₃(z, 2y, x+2)` with the odd-plane rules of `swap₁`.
pub fn swap2() -> Perm {
    let fwd = |n: &Nat| {
        let (x, v, z) = split3(n);
        if z < 2u64 {
            n.clone()
        } else if even(&v) {
            c3(&z, &v, &(x + 2u64))
        } else {
            odd_plane(x, &v, &z)
        }
    };
    let bwd = |n: &Nat| {
        let (a, v, b) = split3(n);
        if b < 2u64 {
            n.clone()
        } else if even(&v) {
            if a >= 2u64 {
                c3(&monus(&b, &Nat::from(2u64)), &v, &a)
            } else {
                c3(&a, &(v + 1u64), &b)
            }
        } else {
            odd_plane_inv(&a, &v, &b)
        }
    };
    Perm::new(fwd, bwd)
}

/// `(f₁ ∘ f₂)⁴ ∘ f₂`, which is `x ↔ f₁(x)` on `A` under [`check_delete_preconditions`].
pub fn delete_combinator(f1: &Perm, f2: &Perm) -> Perm {
    f1.compose(f2).power(4).compose(f2)
}

/// Samples the hypotheses of [`delete_combinator`] at `points`: `A`, `f₁(A)`,
/// `f₂(A)` pairwise disjoint, `f₁` fixes `f₂(A)`, `f₂` fixes everything off `A ∪ f₂(A)`.
pub fn check_delete_preconditions(
    f1: &Perm,
    f2: &Perm,
    in_a: &dyn Fn(&Nat) -> bool,
    points: impl IntoIterator<Item = Nat>,
) -> Result<()> {
    let in_f2a = |y: &Nat| in_a(&f2.apply(y));
    for x in points {
        if in_a(&x) {
            let (a, b) = (f1.apply(&x), f2.apply(&x));
            if in_a(&a) || in_a(&b) || a == b || in_f2a(&a) {
                return Err(Error::Mismatch(format!("A, f1(A), f2(A) overlap at {x}")));
            }
            if f1.apply(&b) != b {
                return Err(Error::Mismatch(format!("f1 moves f2({x}) = {b}")));
            }
        } else if !in_f2a(&x) && f2.apply(&x) != x {
            return Err(Error::Mismatch(format!("f2 moves {x} outside A ∪ f2(A)")));
        }
    }
    Ok(())
}

/// `(f₁ ∘ f₂)²`; with `f₁: b₁↔b₂, b₃↔b₄` and `f₂: b₁↔b₃` this is `b₁↔b₃, b₂↔b₄`.
pub fn megadelete(f1: &Perm, f2: &Perm) -> Perm {
    f1.compose(f2).power(2)
}

/// `(f ∘ del)⁴ ∘ del`: restricts the code `f` of a total `g` to even second arguments.
pub fn delete_odd(code: &Perm) -> Perm {
    delete_combinator(code, &del())
}

/// `p_{f_n}⁻¹ ∘ … ∘ p_{f_1}⁻¹ ∘ px ∘ p_{f_1} ∘ … ∘ p_{f_n}`, the code of some
/// `g` with `g(x, 2y) = f₁(…fₙ(x)…)`.
pub fn unar_compose_code(fs: &[NatMap]) -> Result<Perm> {
    if fs.is_empty() {
        return Err(Error::domain("need at least one function"));
    }
    let inner = Perm::compose_all(&fs.iter().map(|f| p_f(f.clone())).collect::<Vec<_>>());
    Ok(inner.inverse().compose(&px()).compose(&inner))
}

/// The stages of rebuilding a matching over the even numbers from a word
/// `r₁, …, r_k` with `f′ = r₁ ∘ … ∘ r_k`, `f′(x) = f(2x)/2`.
#[derive(Debug, Clone)]
pub struct EvenPipeline {
    /// `ψ, ψ₁, …, ψ₆`.
    pub psi: Vec<Perm>,
    /// `place ∘ ψ₆ ∘ place⁻¹`.
    pub result: Perm,
}

/// Runs the chain `ψ → ψ₁ → … → ψ₆` and relocates `ψ₆` with `place`.
///
/// An empty word stands for the identity.
pub fn even_matching_pipeline(word: &[NatMap]) -> Result<EvenPipeline> {
    let word: Vec<NatMap> = if word.is_empty() { vec![Arc::new(|x: &Nat| x.clone())] } else { word.to_vec() };
    let psi = unar_compose_code(&word)?;
    let psi1 = delete_odd(&psi);
    let psi2 = psi1.conjugate_by(&swap1());
    let psi3 = psi1.conjugate_by(&swap2());
    let psi4 = psi3.compose(&psi2);
    let psi5 = psi4.conjugate_by(&move_perm());
    let psi6 = psi5.compose(&psi4);
    let result = psi6.conjugate_by(&place());
    Ok(EvenPipeline { psi: vec![psi, psi1, psi2, psi3, psi4, psi5, psi6], result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::pairing::c3u;
    use crate::permgroup::perm::prefix;

    #[test]
    fn worked_values() {
        let id: NatMap = Arc::new(|x: &Nat| x.clone());
        let p = p_f(id);
        assert_eq!(p.apply(&c3u(0, 1, 0)), c3u(0, 1, 0));
        assert_eq!(p.at(0), Nat::zero());
        assert_eq!(s_ij(0, 1).unwrap().at(8), Nat::from(9u64));
        assert_eq!(px().apply(&c3u(3, 5, 0)), c3u(3, 5, 5));
    }

    #[test]
    fn named_permutations_are_bijective() {
        let sq: NatMap = Arc::new(|x: &Nat| x * x);
        for p in [p_f(sq), px(), del(), move_perm(), place(), swap1(), swap2(), s_ij(1, 3).unwrap()] {
            p.check_bijective(4096).unwrap();
        }
        del().check_involution(10_000).unwrap();
        px().check_involution(4096).unwrap();
    }

    #[test]
    fn delete_of_transpositions() {
        let d = delete_combinator(&Perm::transposition(0, 1), &Perm::transposition(0, 2));
        d.agrees_with(&Perm::transposition(0, 1), prefix(50)).unwrap();
        let m = megadelete(
            &Perm::transposition(0, 1).compose(&Perm::transposition(2, 3)),
            &Perm::transposition(0, 2),
        );
        let want = Perm::transposition(0, 2).compose(&Perm::transposition(1, 3));
        m.agrees_with(&want, prefix(50)).unwrap();
    }
}
