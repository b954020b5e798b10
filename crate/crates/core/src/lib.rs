//! Exact constructive machinery for recursive function classes.
//!
//! The crate provides arbitrary-precision basis functions ([`natcore`]), a
//! formula language over them ([`formula`]), block-code combinators given by
//! closed formulas ([`blockvec`]), generating functions of predicates
//! ([`genfn`]), an FO[M] evaluator and compiler ([`fomlogic`]), a Minsky
//! machine to quasi-universal function compiler ([`minskyq`]) and computable
//! permutation constructions ([`permgroup`]). Each construction comes with an
//! independent brute-force oracle.

pub mod blockvec;
pub mod error;
pub mod fomlogic;
pub mod formula;
pub mod genfn;
pub mod minskyq;
pub mod natcore;
pub mod permgroup;
pub mod poly;
pub mod suite;

pub use error::{Error, Result};
pub use natcore::Nat;
