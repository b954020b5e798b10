//! Decompositions into stationary parts, correct triples and matchings over
//! smaller sets.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};

use crate::error::{Error, Result};
use crate::natcore::Nat;

use super::pairing::{c2, split2};
use super::perm::Perm;
use super::regular::RegularSet;

/// Samples requirement III at `points`: `A ∩ B = ∅` and `f(A) ∩ B = ∅`.
pub fn check_separating_sets(
    f: &Perm,
    a: &RegularSet,
    b: &RegularSet,
    points: impl IntoIterator<Item = Nat>,
) -> Result<()> {
    for x in points {
        if a.contains(&x) && (b.contains(&x) || b.contains(&f.apply(&x))) {
            return Err(Error::Mismatch(format!("B meets A or f(A) at {x}")));
        }
    }
    Ok(())
}

/// `f = f₁ ∘ f₂` with `f₁` stationary on `B₂` and `f₂` stationary on `A`,
/// where `B₁`, `B₂` split `B` by rank parity.
///
/// `f₁` agrees with `f` on `A`; every sink of that partial graph continues into
/// the chain `ν_{B₁}(c₂(x, 0)), ν_{B₁}(c₂(x, 1)), …` and every source is fed by
/// the reversed chain.
pub fn stationary_decompose(f: &Perm, a: &RegularSet, b: &RegularSet) -> (Perm, Perm) {
    let (b1, _) = b.split();
    let ctx = Arc::new((f.clone(), a.clone(), b1));
    let sink = |c: &(Perm, RegularSet, RegularSet), x: &Nat| !c.1.contains(x) && c.1.contains(&c.0.apply_inv(x));
    let source = |c: &(Perm, RegularSet, RegularSet), x: &Nat| c.1.contains(x) && !c.1.contains(&c.0.apply_inv(x));
    let chain = |c: &(Perm, RegularSet, RegularSet), x: &Nat, y: Nat| c.2.unrank(&c2(x, &y));
    let c1 = ctx.clone();
    let fwd = move |n: &Nat| {
        let c = &*c1;
        if c.1.contains(n) {
            return c.0.apply(n);
        }
        if sink(c, n) {
            return chain(c, n, Nat::zero());
        }
        if c.2.contains(n) {
            let (x, y) = split2(&c.2.rank(n));
            if sink(c, &x) {
                return chain(c, &x, y + 1u64);
            }
            if source(c, &x) {
                return if y.is_zero() { x } else { chain(c, &x, crate::natcore::monus(&y, &Nat::one())) };
            }
        }
        n.clone()
    };
    let c2_ = ctx;
    let bwd = move |n: &Nat| {
        let c = &*c2_;
        let pre = c.0.apply_inv(n);
        if c.1.contains(&pre) {
            return pre;
        }
        if c.1.contains(n) {
            return chain(c, n, Nat::zero());
        }
        if c.2.contains(n) {
            let (x, y) = split2(&c.2.rank(n));
            if source(c, &x) {
                return chain(c, &x, y + 1u64);
            }
            if sink(c, &x) {
                return if y.is_zero() { x } else { chain(c, &x, crate::natcore::monus(&y, &Nat::one())) };
            }
        }
        n.clone()
    };
    let f1 = Perm::new(fwd, bwd);
    let f2 = f1.inverse().compose(f);
    (f1, f2)
}

/// A correct triple `(f, g, B)`: matchings with `f: b₁↔b₃, b₂↔b₄` and
/// `g: b₁↔b₂` over 4-tuples with pairwise distinct components.
///
/// `B` is implicit: it is `{(x, g(x), f(x), f(g(x))) : x < g(x)}`.
#[derive(Debug, Clone)]
pub struct CorrectTriple {
    pub f: Perm,
    pub g: Perm,
}

impl CorrectTriple {
    /// The tuples of `B` with `b₁` among `points`.
    pub fn tuples(&self, points: impl IntoIterator<Item = Nat>) -> Vec<[Nat; 4]> {
        points
            .into_iter()
            .filter_map(|x| {
                let gx = self.g.apply(&x);
                (x < gx).then(|| {
                    let (fx, fgx) = (self.f.apply(&x), self.f.apply(&gx));
                    [x, gx, fx, fgx]
                })
            })
            .collect()
    }

    /// Samples correctness at `points`.
    pub fn check(&self, points: impl IntoIterator<Item = Nat>) -> Result<()> {
        for x in points {
            let (fx, gx) = (self.f.apply(&x), self.g.apply(&x));
            if self.f.apply(&fx) != x || self.g.apply(&gx) != x {
                return Err(Error::Mismatch(format!("not matchings at {x}")));
            }
            if gx != x {
                let fgx = self.f.apply(&gx);
                let t = [&x, &gx, &fx, &fgx];
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j]));
                if !distinct || self.g.apply(&fx) != fx || self.g.apply(&fgx) != fgx {
                    return Err(Error::Mismatch(format!("bad tuple through {x}")));
                }
            } else if fx != x && self.g.apply(&fx) == fx {
                return Err(Error::Mismatch(format!("f moves {x} outside every tuple")));
            }
        }
        Ok(())
    }

    /// `(h, h′)` with `h: b₁↔b₂, b₃↔b₄` and `h′: b₁↔b₃`.
    pub fn h_pair(&self) -> (Perm, Perm) {
        let (f, g) = (self.f.clone(), self.g.clone());
        let h = Perm::matching(move |y| {
            let gy = g.apply(y);
            if gy != *y {
                return gy;
            }
            let fy = f.apply(y);
            if fy != *y {
                f.apply(&g.apply(&fy))
            } else {
                y.clone()
            }
        });
        let (f, g) = (self.f.clone(), self.g.clone());
        let h2 = Perm::matching(move |y| {
            let gy = g.apply(y);
            if gy != *y {
                return if *y < gy { f.apply(y) } else { y.clone() };
            }
            let z = f.apply(y);
            if z != *y && z < g.apply(&z) {
                z
            } else {
                y.clone()
            }
        });
        (h, h2)
    }
}

/// The coordinates `c′` (or `c″`) of the stationary-pair construction.
struct Coords {
    comp: RegularSet,
    a1: RegularSet,
    a2: RegularSet,
    a3: RegularSet,
    /// `μ_C ∘ f ∘ ν_C` for `c″`; `None` for `c′`.
    twist: Option<Perm>,
}

fn int(n: Nat, neg: bool) -> BigInt {
    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, n.as_biguint().clone())
}

fn nat(z: &BigInt) -> Nat {
    Nat::from(z.magnitude().clone())
}

impl Coords {
    fn enc(&self, x: &Nat, z: &BigInt) -> Nat {
        let x = match (&self.twist, z.sign()) {
            (Some(p), Sign::Plus) => p.apply(x),
            _ => x.clone(),
        };
        let two = BigInt::from(2);
        match z.sign() {
            Sign::NoSign => self.comp.unrank(&x),
            Sign::Plus if *z == BigInt::from(1) => self.a1.unrank(&x),
            Sign::Plus => self.a3.unrank(&c2(&x, &nat(&(z - &two)))),
            Sign::Minus => self.a2.unrank(&c2(&x, &nat(&(-z - 1)))),
        }
    }

    fn dec(&self, n: &Nat) -> (Nat, BigInt) {
        let (x, z) = if self.a1.contains(n) {
            (self.a1.rank(n), BigInt::from(1))
        } else if self.a2.contains(n) {
            let (x, b) = split2(&self.a2.rank(n));
            (x, -int(b, false) - 1)
        } else if self.a3.contains(n) {
            let (x, b) = split2(&self.a3.rank(n));
            (x, int(b, false) + 2)
        } else {
            (self.comp.rank(n), BigInt::from(0))
        };
        match (&self.twist, z.sign()) {
            (Some(p), Sign::Plus) => (p.apply_inv(&x), z),
            _ => (x, z),
        }
    }
}

fn level_matching(c: &Arc<Coords>, phi: fn(&BigInt) -> BigInt) -> Perm {
    let c = c.clone();
    Perm::matching(move |n| {
        let (x, z) = c.dec(n);
        c.enc(&x, &phi(&z))
    })
}

fn is_even(z: &BigInt) -> bool {
    z.magnitude() % BigUint::from(2u8) == BigUint::from(0u8)
}

/// The four matchings of a permutation stationary on `A` with
/// `f = h₂ ∘ h₁ ∘ r₁ ∘ r₂`, plus the level-shuffling `s₁`, `s₂`.
#[derive(Debug, Clone)]
pub struct StationaryPair {
    pub r1: Perm,
    pub r2: Perm,
    pub h1: Perm,
    pub h2: Perm,
    pub s1: Perm,
    pub s2: Perm,
}

impl StationaryPair {
    /// `h₂ ∘ h₁ ∘ r₁ ∘ r₂`.
    pub fn product(&self) -> Perm {
        Perm::compose_all(&[self.h2.clone(), self.h1.clone(), self.r1.clone(), self.r2.clone()])
    }

    /// `(r₁, s₁)`, `(r₂, s₂)`, `(h₁, s₁)`, `(h₂, s₂)` in the order of [`Self::product`]
    /// reversed: `[h₂, h₁, r₁, r₂]`.
    pub fn triples(&self) -> Vec<CorrectTriple> {
        vec![
            CorrectTriple { f: self.h2.clone(), g: self.s2.clone() },
            CorrectTriple { f: self.h1.clone(), g: self.s1.clone() },
            CorrectTriple { f: self.r1.clone(), g: self.s1.clone() },
            CorrectTriple { f: self.r2.clone(), g: self.s2.clone() },
        ]
    }
}

/// Writes `f`, stationary on `A` with complement `C`, as four matchings with
/// correct triples. `A` is split into `A₁`, `A₂`, `A₃` by rank parity twice.
pub fn stationary_to_triples(f: &Perm, a: &RegularSet, complement: &RegularSet) -> StationaryPair {
    let (x1, a3) = a.split();
    let (a1, a2) = x1.split();
    let (cn, cr) = (complement.clone(), complement.clone());
    let g = f.clone();
    let twist = Perm::new(
        {
            let (cn, cr, g) = (cn.clone(), cr.clone(), g.clone());
            move |x| cr.rank(&g.apply(&cn.unrank(x)))
        },
        move |x| cr.rank(&g.apply_inv(&cn.unrank(x))),
    );
    let plain = Arc::new(Coords {
        comp: complement.clone(),
        a1: a1.clone(),
        a2: a2.clone(),
        a3: a3.clone(),
        twist: None,
    });
    let twisted = Arc::new(Coords { comp: complement.clone(), a1, a2, a3, twist: Some(twist) });
    let one_minus = |z: &BigInt| BigInt::from(1) - z;
    let negate = |z: &BigInt| -z.clone();
    let s1 = |z: &BigInt| {
        if z.sign() == Sign::Plus {
            z.clone()
        } else if is_even(z) {
            z - 1
        } else {
            z + 1
        }
    };
    let s2 = |z: &BigInt| {
        if z.sign() != Sign::Minus {
            z.clone()
        } else if is_even(z) {
            z + 1
        } else {
            z - 1
        }
    };
    StationaryPair {
        r1: level_matching(&twisted, one_minus),
        r2: level_matching(&twisted, negate),
        h1: level_matching(&plain, one_minus),
        h2: level_matching(&plain, negate),
        s1: level_matching(&plain, s1),
        s2: level_matching(&plain, s2),
    }
}

/// Splits a matching `f` over `A ∪ B ∪ C` into matchings over `A ∪ B` or `B ∪ C`:
/// returns `[f₁, f₂, g₁, g₂, g₁]` with `f = f₁ ∘ f₂ ∘ g₁ ∘ g₂ ∘ g₁`.
pub fn three_two(f: &Perm, a: &RegularSet, b: &RegularSet, c: &RegularSet) -> Vec<Perm> {
    let in_ab = {
        let (a, b) = (a.clone(), b.clone());
        move |x: &Nat| a.contains(x) || b.contains(x)
    };
    let in_bc = {
        let (b, c) = (b.clone(), c.clone());
        move |x: &Nat| b.contains(x) || c.contains(x)
    };
    let f1 = {
        let f = f.clone();
        Perm::matching(move |x| {
            let y = f.apply(x);
            if in_ab(x) && in_ab(&y) {
                y
            } else {
                x.clone()
            }
        })
    };
    let f2 = {
        let (f, c) = (f.clone(), c.clone());
        Perm::matching(move |x| {
            let y = f.apply(x);
            if (c.contains(x) && in_bc(&y)) || (c.contains(&y) && in_bc(x)) {
                y
            } else {
                x.clone()
            }
        })
    };
    let crossing = {
        let (f, a, c) = (f.clone(), a.clone(), c.clone());
        Arc::new(move |x: &Nat| a.contains(x) && c.contains(&f.apply(x)))
    };
    let g1 = {
        let (b, cross) = (b.clone(), crossing.clone());
        Perm::matching(move |y| {
            if cross(y) {
                return b.unrank(y);
            }
            if b.contains(y) {
                let x = b.rank(y);
                if cross(&x) {
                    return x;
                }
            }
            y.clone()
        })
    };
    let g2 = {
        let (b, c, f, cross) = (b.clone(), c.clone(), f.clone(), crossing);
        Perm::matching(move |y| {
            if b.contains(y) {
                let x = b.rank(y);
                if cross(&x) {
                    return f.apply(&x);
                }
            } else if c.contains(y) {
                let x = f.apply(y);
                if cross(&x) {
                    return b.unrank(&x);
                }
            }
            y.clone()
        })
    };
    vec![f1, f2, g1.clone(), g2, g1]
}

/// Writes a matching over `A₁ ∪ … ∪ Aₙ` (`n ≥ 2`, a partition into regular sets)
/// as a composition of matchings, each over some `A_i ∪ A_{i+1}`. Returns the
/// factors with the index `i` (0-based) of the pair each lives on.
pub fn sequence(f: &Perm, parts: &[RegularSet]) -> Result<Vec<(usize, Perm)>> {
    match parts.len() {
        0 | 1 => Err(Error::domain("need at least two parts")),
        2 => Ok(vec![(0, f.clone())]),
        n => {
            let middle = parts[2..n - 1].iter().fold(parts[1].clone(), |acc, p| RegularSet::union(&acc, p));
            let mut out = Vec::new();
            for (k, g) in three_two(f, &parts[0], &middle, &parts[n - 1]).into_iter().enumerate() {
                let over_left = k == 0 || k == 2 || k == 4;
                let (sub, shift) = if over_left { (&parts[..n - 1], 0) } else { (&parts[1..], 1) };
                out.extend(sequence(&g, sub)?.into_iter().map(|(i, p)| (i + shift, p)));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::perm::prefix;

    #[test]
    fn identity_decomposes_to_identities() {
        let evens = RegularSet::arithmetic(2, 0).unwrap();
        let odds = RegularSet::arithmetic(2, 1).unwrap();
        let (f1, f2) = stationary_decompose(&Perm::identity(), &evens, &odds);
        f1.check_stationary(prefix(500)).unwrap();
        f2.check_stationary(prefix(500)).unwrap();
        let pair = stationary_to_triples(&Perm::identity(), &odds, &evens);
        pair.product().check_stationary(prefix(500)).unwrap();
    }

    #[test]
    fn finite_perm_on_evens() {
        let f = Perm::from_table(&[4, 1, 0, 3, 6, 5, 2]).unwrap();
        let odds = RegularSet::arithmetic(2, 1).unwrap();
        let evens = RegularSet::arithmetic(2, 0).unwrap();
        let pair = stationary_to_triples(&f, &odds, &evens);
        pair.product().agrees_with(&f, prefix(1000)).unwrap();
        for t in pair.triples() {
            t.check(prefix(1000)).unwrap();
        }
        for p in [&pair.r1, &pair.r2, &pair.h1, &pair.h2, &pair.s1, &pair.s2] {
            p.check_involution(1000).unwrap();
        }
    }
}
