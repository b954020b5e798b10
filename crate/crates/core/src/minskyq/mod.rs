//! Minsky machines compiled into the function `Q`.
//!
//! A machine is reduced to one read per state, its step map is decomposed
//! into simple vector functions, each of those becomes three simplistic
//! functions on `(w;l)`-codes of configurations, and the resulting cycle is
//! packed into the arguments of `Q`. Extracting the low bits of `Q` recovers
//! the machine output.

mod compile;
mod machine;
mod q;
mod simple;

pub use compile::{compile, QCompilation};
pub use machine::{reduce, run, Configuration, Machine, MinskyMachine, Move, ReducedCommand, ReducedMachine, RunResult};
pub use q::{pack, q_eval, q_property_check, QParams, QPropertyInstance};
pub use simple::{
    apply_all, config_code, config_decode, decompose, simple_to_simplistic, ConfigCodeParams, SimpleVectorFn,
    SimplisticFn,
};
