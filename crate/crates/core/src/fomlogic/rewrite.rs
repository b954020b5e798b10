//! Derived connectives, position arithmetic, and the rewriting that turns a
//! formula read on interleaved answer words into one read on padded words.

use crate::error::{Error, Result};

use super::syntax::{FomFormula as F, FomTerm as T};

/// Hands out fresh variable indices in increasing order.
#[derive(Debug, Clone)]
pub struct VarPool {
    next: usize,
    limit: usize,
}

impl VarPool {
    /// A pool yielding `first, first+1, …` up to `limit` inclusive.
    pub fn new(first: usize, limit: usize) -> VarPool {
        VarPool { next: first, limit }
    }

    /// The next unused index.
    pub fn fresh(&mut self) -> Result<usize> {
        if self.next > self.limit {
            return Err(Error::domain(format!("variable pool exhausted at y{}", self.limit)));
        }
        self.next += 1;
        Ok(self.next - 1)
    }

    /// First index not yet handed out.
    pub fn peek(&self) -> usize {
        self.next
    }
}

/// `a → b`.
pub fn implies(a: F, b: F) -> F {
    F::or(F::not(a), b)
}

/// `a ↔ b`.
pub fn iff(a: F, b: F) -> F {
    F::or(F::and(a.clone(), b.clone()), F::and(F::not(a), F::not(b)))
}

/// Conjunction of a non-empty list, nested to the right.
pub fn all_of(mut parts: Vec<F>) -> F {
    let last = parts.pop().expect("non-empty conjunction");
    parts.into_iter().rev().fold(last, |acc, p| F::and(p, acc))
}

/// `a = b`.
pub fn eq(a: T, b: T) -> F {
    F::and(F::leq(a, b), F::leq(b, a))
}

/// `x > y ≡ x ≥ y & ¬(y ≥ x)`.
pub fn gt(x: T, y: T) -> F {
    F::and(F::leq(y, x), F::not(F::leq(x, y)))
}

/// `y = x + 1 ≡ y > x & ¬∃u(y > u & u > x)`.
pub fn succ_of(y: T, x: T, pool: &mut VarPool) -> Result<F> {
    let u = pool.fresh()?;
    Ok(F::and(gt(y, x), F::not(F::exists(u, F::and(gt(y, T::Var(u)), gt(T::Var(u), x))))))
}

/// `y = 2x ≡ ∀u∀v(u = v+1 → (BIT(y,u) ↔ BIT(x,v))) & ¬BIT(y,1) & ¬BIT(x,|X|)`.
pub fn double_of(y: T, x: T, pool: &mut VarPool) -> Result<F> {
    let u = pool.fresh()?;
    let v = pool.fresh()?;
    let step = succ_of(T::Var(u), T::Var(v), pool)?;
    let shifted = iff(F::bit(y, T::Var(u)), F::bit(x, T::Var(v)));
    Ok(all_of(vec![
        F::forall(u, F::forall(v, implies(step, shifted))),
        F::not(F::bit(y, T::One)),
        F::not(F::bit(x, T::WordLen)),
    ]))
}

/// Result of [`rewrite_alt_to_var`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltRewrite {
    /// The rewritten formula.
    pub formula: F,
    /// Index of the answer-position variable `y`.
    pub answer: usize,
    /// One past the largest index in use.
    pub next_var: usize,
}

/// Replaces every `X⟨t⟩` by
/// `∃u(t = 2u & ∃y′(y = y′+1 & BIT(y′,u))) ∨ ∃v∃w(w = 2v & w = t+1 & X⟨v⟩)`.
///
/// The input formula uses variables `1..=m` (free and bound). The answer
/// variable is `m+1`; auxiliaries are numbered from `m+2` and never exceed
/// `limit`. On a padded word the result agrees with the input formula on the
/// interleaved word that carries `y − 1` in its even positions.
pub fn rewrite_alt_to_var(phi: &F, m: usize, limit: usize) -> Result<AltRewrite> {
    let m = m.max(phi.max_var());
    let answer = m + 1;
    let mut pool = VarPool::new(m + 2, limit);
    let formula = rewrite(phi, answer, &mut pool)?;
    Ok(AltRewrite { formula, answer, next_var: pool.peek() })
}

fn rewrite(phi: &F, y: usize, pool: &mut VarPool) -> Result<F> {
    Ok(match phi {
        F::Leq(..) | F::Bit(..) => phi.clone(),
        F::WordBit(t) => word_bit_from_answer(*t, y, pool)?,
        F::And(a, b) => F::and(rewrite(a, y, pool)?, rewrite(b, y, pool)?),
        F::Or(a, b) => F::or(rewrite(a, y, pool)?, rewrite(b, y, pool)?),
        F::Not(a) => F::not(rewrite(a, y, pool)?),
        F::Exists(v, a) => F::exists(*v, rewrite(a, y, pool)?),
        F::Forall(v, a) => F::forall(*v, rewrite(a, y, pool)?),
        F::Majority(v, a) => F::majority(*v, rewrite(a, y, pool)?),
    })
}

fn word_bit_from_answer(t: T, y: usize, pool: &mut VarPool) -> Result<F> {
    let u = pool.fresh()?;
    let yp = pool.fresh()?;
    let even = F::exists(
        u,
        F::and(
            double_of(t, T::Var(u), pool)?,
            F::exists(
                yp,
                F::and(succ_of(T::Var(y), T::Var(yp), pool)?, F::bit(T::Var(yp), T::Var(u))),
            ),
        ),
    );
    let v = pool.fresh()?;
    let w = pool.fresh()?;
    let odd = F::exists(
        v,
        F::exists(
            w,
            all_of(vec![
                double_of(T::Var(w), T::Var(v), pool)?,
                succ_of(T::Var(w), t, pool)?,
                F::wbit(T::Var(v)),
            ]),
        ),
    );
    Ok(F::or(even, odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fomlogic::{code_alt, code_var, eval_formula, WordModel};
    use crate::Nat;

    #[test]
    fn arithmetic_helpers() {
        let mut pool = VarPool::new(3, 100);
        let dbl = double_of(T::Var(1), T::Var(2), &mut pool).unwrap();
        let sc = succ_of(T::Var(1), T::Var(2), &mut pool).unwrap();
        let word = vec![false; 9];
        for a in 1..=9u64 {
            for b in 1..=9u64 {
                let m = WordModel::new(word.clone(), &[a, b]).unwrap();
                assert_eq!(eval_formula(&dbl, &m).unwrap(), a == 2 * b, "{a}=2·{b}");
                assert_eq!(eval_formula(&sc, &m).unwrap(), a == b + 1);
            }
        }
    }

    #[test]
    fn word_bit_rewrite_on_paired_encodings() {
        let phi = F::wbit(T::Var(1));
        let rw = rewrite_alt_to_var(&phi, 1, 64).unwrap();
        assert_eq!(rw.answer, 2);
        let untouched = F::leq(T::One, T::Var(1));
        assert_eq!(rewrite_alt_to_var(&untouched, 1, 64).unwrap().formula, untouched);
        for x in 0..3u64 {
            let xs = [Nat::from(x)];
            let var = code_var(&xs, 1).unwrap();
            let n = var.len() as u64;
            for y in 1..=n {
                let alt = code_alt(&xs, 1, &Nat::from(y - 1)).unwrap();
                for t in 1..=n {
                    let want = eval_formula(&phi, &WordModel::new(alt.clone(), &[t]).unwrap());
                    let got = eval_formula(&rw.formula, &WordModel::new(var.clone(), &[t, y]).unwrap());
                    assert_eq!(got.unwrap(), want.unwrap(), "x={x} y={y} t={t}");
                }
            }
        }
    }
}
