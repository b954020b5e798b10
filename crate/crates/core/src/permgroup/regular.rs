//! Regular sets: infinite sets with computable membership, rank `μ` and unrank `ν`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::natcore::{monus, Nat};

use super::perm::NatMap;

type Chi = Arc<dyn Fn(&Nat) -> bool + Send + Sync>;

/// An infinite set `A ⊆ ℕ₀` with `χ_A`, the rank `μ` (0 off the set) and the unrank `ν`.
#[derive(Clone)]
pub struct RegularSet {
    chi: Chi,
    mu: NatMap,
    nu: NatMap,
}

impl fmt::Debug for RegularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RegularSet")
    }
}

impl RegularSet {
    /// A set from its three functions.
    pub fn new(
        chi: impl Fn(&Nat) -> bool + Send + Sync + 'static,
        mu: impl Fn(&Nat) -> Nat + Send + Sync + 'static,
        nu: impl Fn(&Nat) -> Nat + Send + Sync + 'static,
    ) -> RegularSet {
        RegularSet { chi: Arc::new(chi), mu: Arc::new(mu), nu: Arc::new(nu) }
    }

    /// `{m·k + r : k ∈ ℕ₀}`.
    pub fn arithmetic(m: u64, r: u64) -> Result<RegularSet> {
        if m == 0 || r >= m {
            return Err(Error::domain("need 0 ≤ r < m"));
        }
        Ok(RegularSet::new(
            move |x| (x % m) == r,
            move |x| if (x % m) == r { x / m } else { Nat::zero() },
            move |k| k * m + r,
        ))
    }

    /// ℕ₀ itself.
    pub fn naturals() -> RegularSet {
        RegularSet::new(|_| true, |x| x.clone(), |k| k.clone())
    }

    /// `χ_A(x)`.
    pub fn contains(&self, x: &Nat) -> bool {
        (self.chi)(x)
    }

    /// `μ_A(x)`.
    pub fn rank(&self, x: &Nat) -> Nat {
        (self.mu)(x)
    }

    /// `ν_A(k)`.
    pub fn unrank(&self, k: &Nat) -> Nat {
        (self.nu)(k)
    }

    /// Splits by rank parity: `A₁` holds even ranks, `A₂` odd ranks.
    pub fn split(&self) -> (RegularSet, RegularSet) {
        let part = |i: u64| {
            let (c, m, n) = (self.chi.clone(), self.mu.clone(), self.nu.clone());
            let m2 = m.clone();
            RegularSet::new(
                move |x| c(x) && m(x).bit(0) == (i == 1),
                move |x| {
                    let r = m2(x);
                    if r.bit(0) == (i == 1) {
                        r >> 1
                    } else {
                        Nat::zero()
                    }
                },
                move |k| n(&((k << 1) + i)),
            )
        };
        (part(0), part(1))
    }

    /// `A ∪ B` for disjoint `A`, `B`, ranks interleaved: `A` takes the even ranks.
    pub fn union(a: &RegularSet, b: &RegularSet) -> RegularSet {
        let (ca, cb) = (a.chi.clone(), b.chi.clone());
        let (ca2, ma, mb) = (a.chi.clone(), a.mu.clone(), b.mu.clone());
        let (na, nb) = (a.nu.clone(), b.nu.clone());
        let cb2 = b.chi.clone();
        RegularSet::new(
            move |x| ca(x) || cb(x),
            move |x| {
                if ca2(x) {
                    ma(x) << 1
                } else if cb2(x) {
                    (mb(x) << 1) + 1u64
                } else {
                    Nat::zero()
                }
            },
            move |k| if k.bit(0) { nb(&(k >> 1)) } else { na(&(k >> 1)) },
        )
    }

    /// Checks the defining identities on ranks `[0, n)` and on elements below `ν(n−1)`.
    pub fn check(&self, n: u64) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for k in 0..n {
            let k = Nat::from(k);
            let x = self.unrank(&k);
            if !self.contains(&x) || self.rank(&x) != k {
                return Err(Error::Mismatch(format!("ν({k}) = {x} does not rank back")));
            }
            if !seen.insert(x.clone()) {
                return Err(Error::Mismatch(format!("ν repeats {x}")));
            }
        }
        let top = seen.iter().next_back().cloned().unwrap_or_default();
        let mut x = Nat::zero();
        while x <= top {
            if self.contains(&x) && self.unrank(&self.rank(&x)) != x {
                return Err(Error::Mismatch(format!("ν(μ({x})) ≠ {x}")));
            }
            if !self.contains(&x) && !self.rank(&x).is_zero() {
                return Err(Error::Mismatch(format!("μ({x}) ≠ 0 off the set")));
            }
            x += 1;
        }
        Ok(())
    }
}

/// `h(x) = 2^{⌊log₂(x+20)⌋^n} + 2x`, the band growth bound for polynomial time.
pub fn default_growth(n: u32) -> NatMap {
    Arc::new(move |x: &Nat| {
        let e = (x + 20u64).bits() - 1;
        Nat::pow2(e.pow(n)) + (x << 1)
    })
}

/// Bands `A_i = [hⁱ(0), h^{i+1}(0))` and their unions by residue of `i` mod 4.
#[derive(Clone)]
pub struct BandFactory {
    h: NatMap,
}

impl fmt::Debug for BandFactory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BandFactory")
    }
}

impl BandFactory {
    /// Bands for a growth bound with `h(x) > x` and `h(x) − x` non-decreasing.
    pub fn new(h: NatMap) -> BandFactory {
        BandFactory { h }
    }

    /// `(i, hⁱ(0))` for the band containing `x`.
    pub fn band_of(&self, x: &Nat) -> (u64, Nat) {
        let mut lo = Nat::zero();
        let mut i = 0;
        loop {
            let hi = (self.h)(&lo);
            if *x < hi {
                return (i, lo);
            }
            lo = hi;
            i += 1;
        }
    }

    /// `⋃ {A_i : i mod 4 ∈ residues}`.
    pub fn set(&self, residues: &[u64]) -> Result<RegularSet> {
        let mask: [bool; 4] = std::array::from_fn(|r| residues.contains(&(r as u64)));
        if !mask.iter().any(|&b| b) {
            return Err(Error::domain("a band union needs a residue"));
        }
        let (h1, h2, h3) = (self.h.clone(), self.h.clone(), self.h.clone());
        let chi = move |x: &Nat| {
            let (i, _) = BandFactory { h: h1.clone() }.band_of(x);
            mask[(i % 4) as usize]
        };
        let mu = move |x: &Nat| {
            let mut lo = Nat::zero();
            let mut count = Nat::zero();
            let mut i = 0usize;
            loop {
                let hi = h2(&lo);
                let inside = mask[i % 4];
                if *x < hi {
                    return if inside { count + monus(x, &lo) } else { Nat::zero() };
                }
                if inside {
                    count += &monus(&hi, &lo);
                }
                lo = hi;
                i += 1;
            }
        };
        let nu = move |k: &Nat| {
            let mut lo = Nat::zero();
            let mut k = k.clone();
            let mut i = 0usize;
            loop {
                let hi = h3(&lo);
                if mask[i % 4] {
                    let len = monus(&hi, &lo);
                    if k < len {
                        return lo + k;
                    }
                    k = monus(&k, &len);
                }
                lo = hi;
                i += 1;
            }
        };
        Ok(RegularSet::new(chi, mu, nu))
    }

    /// `R₁ = A₀ ∪ A₄ ∪ …` and `R₂ = A₂ ∪ A₆ ∪ …` with their complements.
    pub fn sets(&self) -> Result<[RegularSet; 4]> {
        Ok([self.set(&[0])?, self.set(&[2])?, self.set(&[1, 2, 3])?, self.set(&[0, 1, 3])?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_union_of_evens() {
        let evens = RegularSet::arithmetic(2, 0).unwrap();
        let (a1, a2) = evens.split();
        assert_eq!(a1.unrank(&Nat::from(3u64)), Nat::from(12u64));
        assert_eq!(a2.unrank(&Nat::from(0u64)), Nat::from(2u64));
        a1.check(200).unwrap();
        a2.check(200).unwrap();
        let all = RegularSet::union(&evens, &RegularSet::arithmetic(2, 1).unwrap());
        for k in 0..100u64 {
            assert_eq!(all.unrank(&Nat::from(k)), Nat::from(k));
        }
        all.check(300).unwrap();
    }

    #[test]
    fn bands() {
        let f = BandFactory::new(default_growth(2));
        let [r1, r2, c1, c2] = f.sets().unwrap();
        assert!(r1.contains(&Nat::zero()));
        assert!(!r2.contains(&Nat::zero()));
        r1.check(1000).unwrap();
        let small = BandFactory::new(Arc::new(|x: &Nat| (x << 1) + 4u64));
        for s in small.sets().unwrap().iter().chain([&c1, &c2]) {
            s.check(500).unwrap();
        }
    }
}
