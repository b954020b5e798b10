//! Reference formulas: a compiler corpus and bit-graph definitions of a few
//! functions on padded codes (one argument, `k = 1`).

use crate::error::Result;
use crate::natcore::Nat;

use super::codes::code_var;
use super::rewrite::{all_of, double_of, succ_of, VarPool};
use super::syntax::{FomFormula as F, FomTerm as T};

/// Compiler corpus as `(s-expression, arity)`, covering every connective.
pub const COMPILER_CORPUS: [(&str, usize); 12] = [
    ("(leq y1 len)", 1),
    ("(bit len y1)", 1),
    ("(wbit y1)", 1),
    ("(and (wbit y1) (not (leq y1 1)))", 1),
    ("(or (wbit 1) (bit y1 len))", 1),
    ("(not (wbit len))", 1),
    ("(E y1 (wbit y1))", 1),
    ("(A y1 (or (wbit y1) (leq y1 1)))", 1),
    ("(M y1 (wbit y1))", 1),
    ("(M y1 (not (bit y1 len)))", 1),
    ("(and (leq y1 y2) (bit y2 y1))", 2),
    ("(E y2 (and (leq y1 y2) (wbit y2)))", 2),
];

/// Parsed [`COMPILER_CORPUS`].
pub fn compiler_corpus() -> Vec<(F, usize)> {
    COMPILER_CORPUS
        .iter()
        .map(|(s, m)| (F::parse(s).expect("corpus formulas parse"), *m))
        .collect()
}

/// A function of one argument defined by a formula in the answer variable `y1`.
#[derive(Debug, Clone)]
pub struct BitGraphTarget {
    pub name: &'static str,
    pub formula: F,
    /// Direct evaluation of the function.
    pub direct: fn(u64) -> Nat,
}

const ONE: T = T::One;

/// Locates the closing frame of `CODE(x)`: `p` even, `p ≥ 4`, `X⟨p−1⟩X⟨p⟩ = 01`.
/// Inside the word only the frames have an aligned `01` pair.
fn closing_frame(p: usize, pool: &mut VarPool) -> Result<F> {
    let c = pool.fresh()?;
    let a = pool.fresh()?;
    Ok(all_of(vec![
        F::wbit(T::Var(p)),
        F::exists(c, F::and(succ_of(T::Var(p), T::Var(c), pool)?, F::not(F::wbit(T::Var(c))))),
        F::exists(a, F::and(F::not(F::leq(T::Var(a), ONE)), double_of(T::Var(p), T::Var(a), pool)?)),
    ]))
}

/// `∃e₁…∃e_d` stepping down from `p` by one each time, ending at a position
/// `e_d ≥ 3` that holds a one.
fn digit_below(p: usize, d: usize, pool: &mut VarPool) -> Result<F> {
    let e = pool.fresh()?;
    let inner = if d == 1 {
        let c = pool.fresh()?;
        F::and(
            F::wbit(T::Var(e)),
            F::exists(c, F::and(succ_of(T::Var(e), T::Var(c), pool)?, F::not(F::leq(T::Var(c), ONE)))),
        )
    } else {
        digit_below(e, d - 1, pool)?
    };
    Ok(F::exists(e, F::and(succ_of(T::Var(p), T::Var(e), pool)?, inner)))
}

/// `len(x)`: `L = p/2 − 2` for the closing frame `p`; the answer is bit `y−1` of `L`.
pub fn len_formula() -> Result<F> {
    let mut pool = VarPool::new(2, 64);
    let p = pool.fresh()?;
    let a = pool.fresh()?;
    let d = pool.fresh()?;
    let b = pool.fresh()?;
    let frame = closing_frame(p, &mut pool)?;
    let arith = F::exists(
        a,
        all_of(vec![
            F::not(F::leq(T::Var(a), ONE)),
            double_of(T::Var(p), T::Var(a), &mut pool)?,
            F::exists(
                d,
                F::and(
                    succ_of(T::Var(a), T::Var(d), &mut pool)?,
                    F::exists(
                        b,
                        F::and(succ_of(T::Var(d), T::Var(b), &mut pool)?, F::bit(T::Var(b), T::Var(1))),
                    ),
                ),
            ),
        ]),
    );
    Ok(F::exists(p, F::and(frame, arith)))
}

/// `x ∧ 5`: bit `j` of `x` ends at position `p − 2 − 2j`, so bits 0 and 2
/// sit two and six places before the closing frame.
pub fn and5_formula() -> Result<F> {
    let mut pool = VarPool::new(2, 128);
    let branch = |is_y: F, d: usize, pool: &mut VarPool| -> Result<F> {
        let p = pool.fresh()?;
        let frame = closing_frame(p, pool)?;
        Ok(F::and(is_y, F::exists(p, F::and(frame, digit_below(p, d, pool)?))))
    };
    let y_is_1 = F::leq(T::Var(1), ONE);
    let two = pool.fresh()?;
    let y_is_3 = F::exists(
        two,
        F::and(succ_of(T::Var(two), ONE, &mut pool)?, succ_of(T::Var(1), T::Var(two), &mut pool)?),
    );
    let low = branch(y_is_1, 2, &mut pool)?;
    let high = branch(y_is_3, 6, &mut pool)?;
    Ok(F::or(low, high))
}

/// The padded code read backwards: `Σ_y 2^{y−1}·X⟨y⟩`.
pub fn reversed_code(x: u64) -> Nat {
    let w = code_var(&[Nat::from(x)], 1).expect("small code");
    Nat::from_bits_le(&w)
}

/// The bit-graph targets used by the reassembly checks.
pub fn bit_graph_targets() -> Result<Vec<BitGraphTarget>> {
    Ok(vec![
        BitGraphTarget { name: "zero", formula: F::not(F::leq(ONE, ONE)), direct: |_| Nat::zero() },
        BitGraphTarget { name: "reversed-code", formula: F::wbit(T::Var(1)), direct: reversed_code },
        BitGraphTarget { name: "and5", formula: and5_formula()?, direct: |x| Nat::from(x & 5) },
        BitGraphTarget {
            name: "len",
            formula: len_formula()?,
            direct: |x| Nat::from(64 - x.leading_zeros() as u64),
        },
    ])
}
