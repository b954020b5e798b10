//! Computable permutations of ℕ₀ given by a forward and a backward map.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::natcore::Nat;

/// A total map on ℕ₀.
pub type NatMap = Arc<dyn Fn(&Nat) -> Nat + Send + Sync>;

/// A permutation of ℕ₀ with its inverse.
///
/// Equality of permutations is only ever tested on finite prefixes, see
/// [`Perm::check_bijective`] and [`Perm::agrees_with`].
#[derive(Clone)]
pub struct Perm {
    fwd: NatMap,
    bwd: NatMap,
    support: Option<Nat>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Perm").field("support", &self.support).finish_non_exhaustive()
    }
}

impl Perm {
    /// A permutation from its two maps; the caller guarantees they are inverse.
    pub fn new(
        fwd: impl Fn(&Nat) -> Nat + Send + Sync + 'static,
        bwd: impl Fn(&Nat) -> Nat + Send + Sync + 'static,
    ) -> Perm {
        Perm { fwd: Arc::new(fwd), bwd: Arc::new(bwd), support: None }
    }

    /// A matching: a self-inverse permutation.
    pub fn matching(f: impl Fn(&Nat) -> Nat + Send + Sync + 'static) -> Perm {
        let f: NatMap = Arc::new(f);
        Perm { fwd: f.clone(), bwd: f, support: None }
    }

    /// The identity.
    pub fn identity() -> Perm {
        Perm::matching(|x| x.clone()).with_support(Nat::zero())
    }

    /// The transposition `a ↔ b`.
    pub fn transposition(a: u64, b: u64) -> Perm {
        let (a, b) = (Nat::from(a), Nat::from(b));
        let bound = a.clone().max(b.clone()) + 1u64;
        Perm::matching(move |x| {
            if *x == a {
                b.clone()
            } else if *x == b {
                a.clone()
            } else {
                x.clone()
            }
        })
        .with_support(bound)
    }

    /// A finitely supported permutation given by its images on `[0, n)`.
    pub fn from_table(images: &[u64]) -> Result<Perm> {
        let n = images.len();
        let mut inv = vec![u64::MAX; n];
        for (i, &y) in images.iter().enumerate() {
            if y as usize >= n || inv[y as usize] != u64::MAX {
                return Err(Error::domain("table is not a permutation of its range"));
            }
            inv[y as usize] = i as u64;
        }
        let look = |t: Vec<u64>| {
            move |x: &Nat| match x.to_u64() {
                Some(v) if (v as usize) < t.len() => Nat::from(t[v as usize]),
                _ => x.clone(),
            }
        };
        Ok(Perm::new(look(images.to_vec()), look(inv)).with_support(Nat::from(n as u64)))
    }

    /// Records that the permutation fixes every `x ≥ bound`.
    pub fn with_support(mut self, bound: Nat) -> Perm {
        self.support = Some(bound);
        self
    }

    /// The support bound, if known.
    pub fn support(&self) -> Option<&Nat> {
        self.support.as_ref()
    }

    /// `f(x)`.
    pub fn apply(&self, x: &Nat) -> Nat {
        (self.fwd)(x)
    }

    /// `f⁻¹(x)`.
    pub fn apply_inv(&self, x: &Nat) -> Nat {
        (self.bwd)(x)
    }

    /// `f(x)` for a machine integer.
    pub fn at(&self, x: u64) -> Nat {
        self.apply(&Nat::from(x))
    }

    /// `f⁻¹`.
    pub fn inverse(&self) -> Perm {
        Perm { fwd: self.bwd.clone(), bwd: self.fwd.clone(), support: self.support.clone() }
    }

    /// `f ∘ g`, i.e. `x ↦ f(g(x))`.
    pub fn compose(&self, g: &Perm) -> Perm {
        let (f1, g1, f2, g2) = (self.fwd.clone(), g.fwd.clone(), self.bwd.clone(), g.bwd.clone());
        let support = match (&self.support, &g.support) {
            (Some(a), Some(b)) => Some(a.clone().max(b.clone())),
            _ => None,
        };
        Perm { fwd: Arc::new(move |x| f1(&g1(x))), bwd: Arc::new(move |x| g2(&f2(x))), support }
    }

    /// `f₁ ∘ f₂ ∘ … ∘ f_k`; the identity for an empty list.
    pub fn compose_all(fs: &[Perm]) -> Perm {
        fs.iter().fold(Perm::identity(), |acc, f| acc.compose(f))
    }

    /// `f^z`: `z`-fold composition, the identity at 0, powers of `f⁻¹` below 0.
    pub fn power(&self, z: i64) -> Perm {
        let base = if z < 0 { self.inverse() } else { self.clone() };
        let k = z.unsigned_abs();
        let (f, b) = (base.fwd.clone(), base.bwd.clone());
        Perm {
            fwd: Arc::new(move |x| (0..k).fold(x.clone(), |y, _| f(&y))),
            bwd: Arc::new(move |x| (0..k).fold(x.clone(), |y, _| b(&y))),
            support: self.support.clone(),
        }
    }

    /// `p ∘ f ∘ p⁻¹`.
    pub fn conjugate_by(&self, p: &Perm) -> Perm {
        p.compose(self).compose(&p.inverse())
    }

    /// Checks `f⁻¹(f(x)) = x` and `f(f⁻¹(x)) = x` on `[0, n)`, and the support hint.
    pub fn check_bijective(&self, n: u64) -> Result<()> {
        for x in 0..n {
            let x = Nat::from(x);
            let y = self.apply(&x);
            if self.apply_inv(&y) != x {
                return Err(Error::Mismatch(format!("f⁻¹(f({x})) = {} ≠ {x}", self.apply_inv(&y))));
            }
            let z = self.apply_inv(&x);
            if self.apply(&z) != x {
                return Err(Error::Mismatch(format!("f(f⁻¹({x})) ≠ {x}")));
            }
            if let Some(s) = &self.support {
                if x >= *s && y != x {
                    return Err(Error::Mismatch(format!("f({x}) = {y} beyond support bound {s}")));
                }
            }
        }
        Ok(())
    }

    /// Checks `f(f(x)) = x` on `[0, n)`.
    pub fn check_involution(&self, n: u64) -> Result<()> {
        for x in 0..n {
            let x = Nat::from(x);
            let y = self.apply(&self.apply(&x));
            if y != x {
                return Err(Error::Mismatch(format!("f(f({x})) = {y}")));
            }
        }
        Ok(())
    }

    /// Checks `f(x) = g(x)` for every `x` produced by `points`.
    pub fn agrees_with(&self, g: &Perm, points: impl IntoIterator<Item = Nat>) -> Result<()> {
        for x in points {
            let (a, b) = (self.apply(&x), g.apply(&x));
            if a != b {
                return Err(Error::Mismatch(format!("at {x}: {a} ≠ {b}")));
            }
        }
        Ok(())
    }

    /// Checks `f(x) = x` for every `x` produced by `points`.
    pub fn check_stationary(&self, points: impl IntoIterator<Item = Nat>) -> Result<()> {
        self.agrees_with(&Perm::identity(), points)
    }
}

/// `[0, n)` as an iterator of [`Nat`].
pub fn prefix(n: u64) -> impl Iterator<Item = Nat> {
    (0..n).map(Nat::from)
}
