//! Generating functions: worked examples, the bit-support law, and the
//! arithmetic constructions against the defining sum.

use proptest::prelude::*;

use recfun::genfn::{
    cell_index, counting_predicate, gen_count, gen_explicit, gen_logic, gen_poly_cmp, gen_poly_eq, genfn_bruteforce,
    xs_extract, GenPredicate, LogicOp, Transform,
};
use recfun::error::Error;
use recfun::natcore::Nat;
use recfun::poly::Poly;

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn poly(s: &str, arity: usize) -> Poly {
    Poly::parse(s, arity).unwrap()
}

#[test]
fn defining_sum_examples() {
    let is_zero = GenPredicate::new("x=0", 1, |x| x[0] == 0);
    assert_eq!(genfn_bruteforce(&is_zero, 2).unwrap(), n(1));
    assert_eq!(genfn_bruteforce(&GenPredicate::new("false", 1, |_| false), 2).unwrap(), n(0));
    let t = genfn_bruteforce(&GenPredicate::new("true", 1, |_| true), 2).unwrap();
    assert_eq!(t, n(3));
    assert_eq!(gen_logic(&t, &t, 1, 2, LogicOp::Not).unwrap(), n(0));
    assert_eq!(gen_logic(&n(1), &n(0), 1, 2, LogicOp::Not).unwrap(), n(2));
    assert_eq!(gen_logic(&t, &n(1), 1, 2, LogicOp::And).unwrap(), n(1));
}

#[test]
fn polynomial_comparison_examples() {
    let x = poly("x1", 1);
    assert_eq!(gen_poly_cmp(&x, &Poly::constant(1, 1), 2).unwrap(), n(2));
    assert_eq!(gen_poly_cmp(&x, &x, 2).unwrap(), n(3));
    assert_eq!(gen_poly_eq(&x, &x, 2).unwrap(), n(3));
    assert_eq!(gen_poly_cmp(&Poly::zero(1), &poly("x1 + 1", 1), 2).unwrap(), n(0));
}

#[test]
fn transformation_examples() {
    // x₁ = 0 with a dummy second variable holds on cells (0,0) and (0,1).
    assert_eq!(gen_explicit(&n(1), 1, 2, &Transform::AddDummy).unwrap(), n(5));
    // x₁ < x₂ with x₂ := 1 leaves x₁ = 0.
    let lt = genfn_bruteforce(&GenPredicate::new("x<y", 2, |x| x[0] < x[1]), 2).unwrap();
    assert_eq!(gen_explicit(&lt, 2, 2, &Transform::SubstConst(1)).unwrap(), n(1));
    assert!(gen_explicit(&lt, 2, 2, &Transform::SubstConst(2)).is_err());
    assert!(gen_explicit(&lt, 2, 2, &Transform::Permute(vec![1, 1])).is_err());
}

#[test]
fn counting_examples() {
    // #{x' < x : true} = x, so the graph is the diagonal.
    let t = GenPredicate::new("true", 1, |_| true);
    assert_eq!(gen_count(&t, &poly("x1", 1), 1).unwrap(), n(1));
    assert_eq!(gen_count(&t, &Poly::constant(1, 1), 1).unwrap(), n(0));
    let f = GenPredicate::new("false", 1, |_| false);
    assert_eq!(gen_count(&f, &Poly::constant(1, 1), 1).unwrap(), n(1));
    assert!(gen_count(&t, &poly("x1", 1), 0).is_err());
    assert!(matches!(gen_count(&t, &poly("x1", 1), 2), Err(Error::Budget { .. })));
}

fn graph(f: fn(u64) -> u64) -> impl Fn(u64) -> recfun::error::Result<Nat> {
    move |z| genfn_bruteforce(&GenPredicate::bit_graph("f", 1, move |x| n(f(x[0]))), z)
}

#[test]
fn extraction_examples() {
    let bound = poly("x1 + 1", 1);
    assert_eq!(xs_extract(graph(|x| x), &bound, &[2]).unwrap(), n(2));
    assert_eq!(xs_extract(graph(|_| 0), &bound, &[2]).unwrap(), n(0));
    assert_eq!(xs_extract(graph(|x| x.saturating_sub(1)), &bound, &[3]).unwrap(), n(2));
    for x in 0..8 {
        assert_eq!(xs_extract(graph(|x| x * x % 7), &bound, &[x]).unwrap(), n(x * x % 7), "at {x}");
    }
}

/// A predicate given by its truth table on `[0, 4)ⁿ`, false elsewhere.
fn table_predicate(arity: usize, table: Vec<bool>) -> GenPredicate {
    GenPredicate::new("table", arity, move |xs| {
        xs.iter().all(|&x| x < 4) && table[cell_index(xs, 4) as usize]
    })
}

fn arb_predicate() -> impl Strategy<Value = GenPredicate> {
    (1usize..=3).prop_flat_map(|arity| {
        prop::collection::vec(any::<bool>(), 4usize.pow(arity as u32)).prop_map(move |t| table_predicate(arity, t))
    })
}

proptest! {
    #[test]
    fn bit_support_law(rho in arb_predicate(), y in 1u64..=5) {
        let f = genfn_bruteforce(&rho, y).unwrap();
        let cells = y.pow(rho.arity as u32);
        prop_assert!(f.bits() <= cells);
        let mut xs = vec![0u64; rho.arity];
        for c in 0..cells {
            for (j, x) in xs.iter_mut().enumerate() {
                *x = c / y.pow(j as u32) % y;
            }
            prop_assert_eq!(f.bit(c), rho.holds(&xs));
        }
    }

    #[test]
    fn logic_matches_defining_sum(a in arb_predicate(), seed in any::<u64>(), y in 1u64..=4) {
        let b = GenPredicate::new("mask", a.arity, move |xs| seed >> (cell_index(xs, 4) % 64) & 1 == 1);
        let (fa, fb) = (genfn_bruteforce(&a, y).unwrap(), genfn_bruteforce(&b, y).unwrap());
        let (a2, b2) = (a.clone(), b.clone());
        let both = GenPredicate::new("and", a.arity, move |xs| a2.holds(xs) && b2.holds(xs));
        prop_assert_eq!(gen_logic(&fa, &fb, a.arity, y, LogicOp::And).unwrap(), genfn_bruteforce(&both, y).unwrap());
        let a3 = a.clone();
        let neg = GenPredicate::new("not", a.arity, move |xs| !a3.holds(xs));
        prop_assert_eq!(gen_logic(&fa, &fa, a.arity, y, LogicOp::Not).unwrap(), genfn_bruteforce(&neg, y).unwrap());
    }

    #[test]
    fn transformations_match_defining_sum(psi in arb_predicate(), y in 1u64..=4, a in 0u64..4, rot in 0usize..3) {
        let k = psi.arity;
        let f = genfn_bruteforce(&psi, y).unwrap();
        let mut ts = vec![Transform::AddDummy, Transform::Permute((0..k).map(|i| (i + rot) % k + 1).collect())];
        if a < y {
            ts.push(Transform::SubstConst(a));
        }
        if k >= 2 {
            ts.push(Transform::IdentifyLast);
        }
        for t in ts {
            let want = genfn_bruteforce(&t.apply_to(&psi), y).unwrap();
            match gen_explicit(&f, k, y, &t) {
                Ok(got) => prop_assert_eq!(got, want, "{:?}", t),
                // Arity 3 at y ≥ 3 builds an equality mask beyond the default budget.
                Err(e) => prop_assert!(matches!(e, Error::Budget { .. }) && k == 3 && y >= 3, "{e}"),
            }
        }
    }

    #[test]
    fn polynomial_comparison_matches_defining_sum(c in 0u64..4, d in 0u64..4, y in 1u64..=4) {
        let p = poly(&format!("x1^2 + {c}"), 1);
        let q = poly(&format!("{d}*x1 + 1"), 1);
        let ge = GenPredicate::poly_ge(&p, &q);
        prop_assert_eq!(gen_poly_cmp(&p, &q, y).unwrap(), genfn_bruteforce(&ge, y).unwrap());
        let (p2, q2) = (p.clone(), q.clone());
        let eq = GenPredicate::new("eq", 1, move |x| p2.eval_u64(x) == q2.eval_u64(x));
        prop_assert_eq!(gen_poly_eq(&p, &q, y).unwrap(), genfn_bruteforce(&eq, y).unwrap());
    }
}

/// Every instance within the bit budget matches; larger ones are refused.
#[test]
fn counting_matches_defining_sum_within_budget() {
    let mut checked = 0;
    for mask in 0u64..16 {
        let psi = table_predicate(1, (0..4).map(|i| mask >> i & 1 == 1).collect());
        for p in ["x1", "x1 + 1", "2", "1"] {
            let p = poly(p, 1);
            for z in 1..=3 {
                match gen_count(&psi, &p, z) {
                    Ok(got) => {
                        assert_eq!(got, genfn_bruteforce(&counting_predicate(&psi, &p), z).unwrap(), "{p} at {z}");
                        checked += 1;
                    }
                    Err(e) => assert!(matches!(e, Error::Budget { .. }), "{e}"),
                }
            }
        }
    }
    assert!(checked >= 32, "{checked} instances fit the budget");
}
