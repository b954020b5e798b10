//! Two generators `rol` and `all` for a product of correct-triple matchings.
//!
//! With `M = 2^{2n+1}` the residues mod `M` split ℕ₀ into the classes
//! `E_r = {Mx + r}`. The matchings `h₁ … h_{2n}` are copied onto
//! `E₀ ∪ E₁`, shifted into pairwise disjoint classes by powers of `rol`, and
//! collected into the single matching `all`. Every `w_i`, the copy of the
//! `i`-th factor on `E₀ ∪ E₁`, is then a word in `rol` and `all`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::natcore::Nat;

use super::perm::Perm;
use super::stationary::CorrectTriple;

/// A generator occurrence in a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    /// `rol^k` for `0 ≤ k < M`.
    Rol(u64),
    /// `all`.
    All,
}

/// A composition of generators, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    /// `self ∘ other`.
    pub fn then_after(mut self, other: &Word) -> Word {
        self.0.extend_from_slice(&other.0);
        self
    }

    /// The word repeated `k` times.
    pub fn repeat(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Total count of `rol` and `all` letters, counting `rol^k` as `k` letters.
    pub fn letters(&self) -> u64 {
        self.0.iter().map(|g| if let Gen::Rol(k) = g { *k } else { 1 }).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|g| match g {
                Gen::Rol(k) => format!("rol^{k}"),
                Gen::All => "all".into(),
            })
            .collect();
        f.write_str(&parts.join(" ∘ "))
    }
}

/// `rol^k` for the modulus `m`, with `k` taken mod `m`.
pub fn rol_power(m: u64, k: i64) -> Perm {
    let k = k.rem_euclid(m as i64) as u64;
    let shift = move |x: &Nat, k: u64| {
        let r = (x % m).to_u64().unwrap_or(0);
        let base = (x / m) * m;
        base + (r + k) % m
    };
    Perm::new(move |x| shift(x, k), move |x| shift(x, (m - k) % m))
}

/// The generators for `n` correct triples.
#[derive(Clone)]
pub struct TwoGenerators {
    n: usize,
    m: u64,
    triples: Vec<CorrectTriple>,
    hs: Arc<Vec<Perm>>,
}

impl fmt::Debug for TwoGenerators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoGenerators").field("n", &self.n).field("m", &self.m).finish()
    }
}

impl TwoGenerators {
    /// Generators for the triples `(f₁, g₁), …, (f_n, g_n)`.
    pub fn new(triples: Vec<CorrectTriple>) -> Result<TwoGenerators> {
        let n = triples.len();
        if n == 0 || 2 * n + 1 >= 63 {
            return Err(Error::domain("need 1 ≤ n ≤ 30 triples"));
        }
        let pairs: Vec<(Perm, Perm)> = triples.iter().map(CorrectTriple::h_pair).collect();
        let mut hs: Vec<Perm> = pairs.iter().map(|p| p.0.clone()).collect();
        hs.extend(pairs.into_iter().map(|p| p.1));
        Ok(TwoGenerators { n, m: 1 << (2 * n + 1), triples, hs: Arc::new(hs) })
    }

    /// `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `M = 2^{2n+1}`.
    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// `rol`.
    pub fn rol(&self) -> Perm {
        rol_power(self.m, 1)
    }

    /// `ν_{E₀∪E₁}(x) = M⌊x/2⌋ + x mod 2`.
    pub fn nu01(&self, x: &Nat) -> Nat {
        (x >> 1) * self.m + u64::from(x.bit(0))
    }

    /// `μ_{E₀∪E₁}`, or `None` off `E₀ ∪ E₁`.
    pub fn mu01(&self, x: &Nat) -> Option<Nat> {
        let r = (x % self.m).to_u64()?;
        (r < 2).then(|| ((x / self.m) << 1) + r)
    }

    /// `h_i`, `1 ≤ i ≤ 2n`.
    pub fn h(&self, i: usize) -> Perm {
        self.hs[i - 1].clone()
    }

    /// `ν₀₁ ∘ p ∘ μ₀₁` on `E₀ ∪ E₁`, the identity elsewhere.
    pub fn transport(&self, p: &Perm) -> Perm {
        let (g1, g2, pf, pb) = (self.clone(), self.clone(), p.clone(), p.clone());
        Perm::new(
            move |x| g1.mu01(x).map_or_else(|| x.clone(), |y| g1.nu01(&pf.apply(&y))),
            move |x| g2.mu01(x).map_or_else(|| x.clone(), |y| g2.nu01(&pb.apply_inv(&y))),
        )
    }

    /// `u_i`, the copy of `h_i` on `E₀ ∪ E₁`.
    pub fn u(&self, i: usize) -> Perm {
        self.transport(&self.h(i))
    }

    /// `v_i = rol^{2^i} ∘ u_i ∘ rol^{−2^i}`, a matching over `E_{2^i} ∪ E_{2^i+1}`.
    pub fn v(&self, i: usize) -> Perm {
        let s = 1i64 << i;
        self.u(i).conjugate_by(&rol_power(self.m, s))
    }

    /// `all = v₁ ∘ … ∘ v_{2n}`, evaluated by dispatching on the residue.
    pub fn all(&self) -> Perm {
        let g = self.clone();
        Perm::matching(move |x| {
            let r = (x % g.m).to_u64().unwrap_or(0);
            let j = (1..=2 * g.n).find(|&j| r >> 1 == 1 << (j - 1));
            match j {
                Some(j) => {
                    let base = (x / g.m) * g.m;
                    let y = g.u(j).apply(&(base + (r & 1)));
                    let ry = (&y % g.m).to_u64().unwrap_or(0);
                    (&y / g.m) * g.m + ((ry + (1 << j)) % g.m)
                }
                None => x.clone(),
            }
        })
    }

    /// `all` as the literal product `v₁ ∘ … ∘ v_{2n}`.
    pub fn all_as_product(&self) -> Perm {
        Perm::compose_all(&(1..=2 * self.n).map(|i| self.v(i)).collect::<Vec<_>>())
    }

    /// `w_i`, the copy of the `i`-th factor `f_i` on `E₀ ∪ E₁`.
    pub fn w_direct(&self, i: usize) -> Perm {
        self.transport(&self.triples[i - 1].f)
    }

    /// `s₁ = rol^{M−2^i} ∘ all ∘ rol^{2^i}`.
    pub fn s1_word(&self, i: usize) -> Word {
        self.conj_word(1 << i)
    }

    /// `s₂ = rol^{M−2^{i+n}} ∘ all ∘ rol^{2^{i+n}}`.
    pub fn s2_word(&self, i: usize) -> Word {
        self.conj_word(1 << (i + self.n))
    }

    fn conj_word(&self, s: u64) -> Word {
        Word(vec![Gen::Rol(self.m - s), Gen::All, Gen::Rol(s)])
    }

    /// `w_i = (s₁ ∘ s₂)²` as a word in `rol` and `all`.
    pub fn w_word(&self, i: usize) -> Word {
        self.s1_word(i).then_after(&self.s2_word(i)).repeat(2)
    }

    /// `w₁ ∘ … ∘ w_n` as a word.
    pub fn product_word(&self) -> Word {
        (1..=self.n).fold(Word::default(), |acc, i| acc.then_after(&self.w_word(i)))
    }

    /// The permutation a word denotes.
    pub fn eval(&self, word: &Word) -> Perm {
        let all = self.all();
        let perms: Vec<Perm> = word
            .0
            .iter()
            .map(|g| match g {
                Gen::Rol(k) => rol_power(self.m, *k as i64),
                Gen::All => all.clone(),
            })
            .collect();
        Perm::compose_all(&perms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::perm::prefix;

    #[test]
    fn rol_cycles_residues() {
        let rol = rol_power(8, 1);
        assert_eq!(rol.at(7), Nat::from(0u64));
        assert_eq!(rol.at(12), Nat::from(13u64));
        rol.check_bijective(200).unwrap();
        let back = rol_power(8, -3);
        for x in prefix(100) {
            assert_eq!(back.apply(&rol_power(8, 3).apply(&x)), x);
        }
    }

    #[test]
    fn word_display_and_letters() {
        let w = Word(vec![Gen::Rol(6), Gen::All, Gen::Rol(2)]);
        assert_eq!(w.to_string(), "rol^6 ∘ all ∘ rol^2");
        assert_eq!(w.letters(), 9);
    }
}
