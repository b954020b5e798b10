//! End-to-end reassembly of a finitely supported permutation from `rol` and `all`.
//!
//! The permutation `f` is split by [`stationary_decompose`] over the bands
//! `R₁`, `R₂`, each half is written as four matchings with correct triples, and
//! the eight triples drive [`TwoGenerators`]. The copy `ν₀₁ ∘ f ∘ μ₀₁` of `f`
//! on `E₀ ∪ E₁` then equals the word `w₁ ∘ … ∘ w₈` in `rol` and `all`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::natcore::Nat;

use super::perm::Perm;
use super::regular::{BandFactory, RegularSet};
use super::stationary::{check_separating_sets, stationary_decompose, stationary_to_triples, CorrectTriple};
use super::twogen::{TwoGenerators, Word};

/// The small band growth `h(x) = 2x + 4` used at desk scale.
pub fn small_bands() -> BandFactory {
    BandFactory::new(Arc::new(|x: &Nat| (x << 1) + 4u64))
}

/// A uniformly random permutation of `[0, size)` that maps no point of `R₁`
/// into `R₂`, so that `R₁`, `R₂` separate it.
pub fn random_band_perm(rng: &mut impl Rng, bands: &BandFactory, size: u64) -> Result<Perm> {
    let [r1, r2, ..] = bands.sets()?;
    let pts: Vec<u64> = (0..size).collect();
    let in_r1: Vec<u64> = pts.iter().copied().filter(|&x| r1.contains(&Nat::from(x))).collect();
    let mut allowed: Vec<u64> = pts.iter().copied().filter(|&x| !r2.contains(&Nat::from(x))).collect();
    if allowed.len() < in_r1.len() {
        return Err(Error::domain("prefix too short to separate the bands"));
    }
    allowed.shuffle(rng);
    let mut images = vec![u64::MAX; size as usize];
    for (x, y) in in_r1.iter().zip(&allowed) {
        images[*x as usize] = *y;
    }
    let used: std::collections::BTreeSet<u64> = allowed[..in_r1.len()].iter().copied().collect();
    let mut rest: Vec<u64> = pts.iter().copied().filter(|y| !used.contains(y)).collect();
    rest.shuffle(rng);
    let mut rest = rest.into_iter();
    for slot in images.iter_mut().filter(|s| **s == u64::MAX) {
        *slot = rest.next().expect("counts match");
    }
    Perm::from_table(&images)
}

/// The pieces of a reassembly.
#[derive(Debug, Clone)]
pub struct Reassembly {
    /// The permutation being rebuilt.
    pub f: Perm,
    /// `f₁`, `f₂` with `f = f₁ ∘ f₂`.
    pub halves: (Perm, Perm),
    /// The eight triples, first factor first.
    pub triples: Vec<CorrectTriple>,
    /// The generators they define.
    pub generators: TwoGenerators,
    /// `w₁ ∘ … ∘ w₈` in `rol` and `all`.
    pub word: Word,
}

/// Decomposes `f`, which `R₁`, `R₂` of `bands` must separate, down to a word
/// in `rol` and `all`.
pub fn reassemble(f: &Perm, bands: &BandFactory) -> Result<Reassembly> {
    let [r1, r2, comp_r1, comp_r2] = bands.sets()?;
    let (f1, f2) = stationary_decompose(f, &r1, &r2);
    let (b1, b2) = r2.split();
    let comp_b2 = RegularSet::union(&comp_r2, &b1);
    let mut triples = stationary_to_triples(&f1, &b2, &comp_b2).triples();
    triples.extend(stationary_to_triples(&f2, &r1, &comp_r1).triples());
    let generators = TwoGenerators::new(triples.clone())?;
    let word = generators.product_word();
    Ok(Reassembly { f: f.clone(), halves: (f1, f2), triples, generators, word })
}

impl Reassembly {
    /// Checks the chain at `points`: the separating sets, `f = f₁ ∘ f₂`, the
    /// triples, the product of the factors, and finally the word against
    /// `ν₀₁ ∘ f ∘ μ₀₁` both at `ν₀₁(x)` and at `x` itself.
    pub fn check(&self, bands: &BandFactory, points: &[Nat]) -> Result<()> {
        let [r1, r2, ..] = bands.sets()?;
        check_separating_sets(&self.f, &r1, &r2, points.iter().cloned())?;
        self.halves.0.compose(&self.halves.1).agrees_with(&self.f, points.iter().cloned())?;
        for t in &self.triples {
            t.check(points.iter().cloned())?;
        }
        let factors: Vec<Perm> = self.triples.iter().map(|t| t.f.clone()).collect();
        Perm::compose_all(&factors).agrees_with(&self.f, points.iter().cloned())?;
        let g = &self.generators;
        let assembled = g.eval(&self.word);
        let target = g.transport(&self.f);
        for x in points {
            let at = g.nu01(x);
            if assembled.apply(&at) != g.nu01(&self.f.apply(x)) {
                return Err(Error::Mismatch(format!("word disagrees with f at ν₀₁({x})")));
            }
        }
        assembled.agrees_with(&target, points.iter().cloned())
    }
}
