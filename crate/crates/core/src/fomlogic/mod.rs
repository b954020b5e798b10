//! First-order logic with majority over binary words: syntax and model
//! checking, tuple encodings, the answer-word rewriting, the compiler to
//! arithmetic table evaluators, and function reassembly from bit-graph
//! tables.

mod codes;
mod compile;
pub mod corpus;
mod ffom;
mod rewrite;
mod syntax;

pub use codes::{code, code_alt, code_num, code_var, double_digits, ext, lcode, word_value};
pub use compile::{compile_fom, table_cell, term_table, HFunctionTable, TableCache};
pub use ffom::{ffom_assemble, FfomFunction, ModelTable, TableSource};
pub use rewrite::{
    all_of, double_of, eq, gt, iff, implies, rewrite_alt_to_var, succ_of, AltRewrite, VarPool,
};
pub use syntax::{eval_formula, eval_term, parse_word, show_word, FomFormula, FomTerm, WordModel};
