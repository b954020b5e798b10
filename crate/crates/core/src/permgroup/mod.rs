//! Computable permutations of ℕ₀: codes of partial functions, matchings over
//! regular sets, decompositions into stationary parts and correct triples, and
//! the assembly of a product of matchings from two generators.

pub mod demo;
pub mod named;
pub mod pairing;
pub mod perm;
pub mod regular;
pub mod stationary;
pub mod twogen;

pub use demo::{random_band_perm, reassemble, small_bands, Reassembly};
pub use named::{
    check_delete_preconditions, code_of, del, delete_combinator, delete_odd, even_matching_pipeline, megadelete, move_perm, p_f, place, px,
    s_ij, swap1, swap2, unar_compose_code, EvenPipeline, PartialFn,
};
pub use pairing::{c2, c21, c22, c3, c3u, split2, split3};
pub use perm::{prefix, NatMap, Perm};
pub use regular::{default_growth, BandFactory, RegularSet};
pub use stationary::{
    check_separating_sets, sequence, stationary_decompose, stationary_to_triples, three_two, CorrectTriple,
    StationaryPair,
};
pub use twogen::{rol_power, Gen, TwoGenerators, Word};
