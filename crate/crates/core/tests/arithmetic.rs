//! Basic operations and formulas against direct integer oracles.

use std::collections::BTreeMap;

use proptest::prelude::*;

use recfun::error::Error;
use recfun::formula::{binomial_formula, env, parse, Basis, Formula, Tower};
use recfun::natcore::{self as nc, Nat};

fn n(v: u64) -> Nat {
    Nat::from(v)
}

#[test]
fn basic_operation_examples() {
    assert_eq!(nc::monus(&n(5), &n(3)), n(2));
    assert_eq!(nc::monus(&n(3), &n(5)), n(0));
    assert_eq!(nc::rm(&n(7), &n(3)), n(1));
    assert_eq!(nc::rm(&n(7), &n(0)), n(0));
    assert_eq!(nc::div_floor(&n(7), &n(2)), n(3));
    assert_eq!(nc::div_floor(&n(7), &n(0)), n(0));
    assert_eq!(nc::bit_get(&n(5), &n(0)), n(1));
    assert_eq!(nc::bit_get(&n(5), &n(1)), n(0));
    assert_eq!(nc::len(&n(0)), n(0));
    assert_eq!(nc::len(&n(8)), n(4));
    assert_eq!(nc::log2_floor(&n(0)), n(0));
    assert_eq!(nc::log2_floor(&n(9)), n(3));
    assert_eq!(nc::band(&n(6), &n(3)), n(2));
    assert_eq!(nc::rot_r(&n(0), &n(5)), n(0));
    assert_eq!(nc::rot_r(&n(1), &n(5)), n(1));
    assert_eq!(nc::rot_r(&n(6), &n(1)), n(3));
    assert_eq!(nc::min_pow2(&n(5), &n(2)), n(4));
    assert_eq!(nc::min_pow2(&n(0), &n(10)), n(0));
    assert_eq!(nc::exp_logsq(&n(0)).unwrap(), n(1));
    assert_eq!(nc::exp_logsq(&n(4)).unwrap(), n(16));
    assert_eq!(nc::pow_log(&n(3), &n(8)).unwrap(), n(27));
    assert_eq!(nc::pow_log(&n(2), &n(0)).unwrap(), n(1));
}

#[test]
fn bounded_summation_and_minimization() {
    let id = |y: &Nat, _: &[Nat]| Ok(y.clone());
    assert_eq!(nc::bounded_sum(id, &n(3), &[]).unwrap(), n(3));
    assert_eq!(nc::bounded_sum(id, &n(0), &[]).unwrap(), n(0));
    let square_is_4 = |y: &Nat, _: &[Nat]| Ok(y * y == n(4));
    assert_eq!(nc::bounded_mu(square_is_4, &n(5), &[]).unwrap(), n(2));
    assert_eq!(nc::bounded_mu(square_is_4, &n(2), &[]).unwrap(), n(0));
}

#[test]
fn oversized_powers_are_refused() {
    assert!(matches!(nc::pow2(&n(1 << 40)), Err(Error::Budget { .. })));
}

/// Rotation oracle on digit arrays.
fn rotate_digits(x: u64, y: u64) -> u64 {
    if x < 2 {
        return x;
    }
    let len = 64 - u64::from(x.leading_zeros());
    let digits: Vec<u64> = (0..len).map(|i| x >> i & 1).collect();
    (0..len).map(|i| digits[((i + y) % len) as usize] << i).sum()
}

proptest! {
    #[test]
    fn monus_bounds(x in 0u64..1 << 40, y in 0u64..1 << 40) {
        let d = nc::monus(&n(x), &n(y));
        prop_assert!(&d + y >= n(x));
        prop_assert!(d <= n(x));
    }

    #[test]
    fn log_and_length(x in 1u64..u64::MAX) {
        let l = nc::log2_floor(&n(x)).to_u64().unwrap();
        prop_assert!(1u128 << l <= u128::from(x) && u128::from(x) < 1u128 << (l + 1));
        prop_assert_eq!(nc::len(&n(x)), n(l + 1));
    }

    #[test]
    fn rotation_matches_digits_and_has_period_len(x in 2u64..1 << 16, y in 0u64..64) {
        let r = nc::rot_r(&n(x), &n(y));
        prop_assert_eq!(r.clone(), n(rotate_digits(x, y)));
        let len = nc::len(&n(x)).to_u64().unwrap();
        prop_assert_eq!(nc::rot_r(&n(x), &n(len)), n(x));
        prop_assert_eq!(nc::rot_r(&n(x), &n(y + len)), r);
    }

    #[test]
    fn band_below_both(x in any::<u64>(), y in any::<u64>()) {
        prop_assert!(nc::band(&n(x), &n(y)) <= n(x.min(y)));
    }

    #[test]
    fn powers_match_square_and_multiply(x in 0u64..1 << 10, y in 0u64..1 << 10) {
        let naive = |base: u64, e: u64| (0..e).fold(n(1), |acc, _| acc * base);
        let ly = if y == 0 { 0 } else { 63 - u64::from(y.leading_zeros()) };
        prop_assert_eq!(nc::pow_log(&n(x), &n(y)).unwrap(), naive(x, ly));
        let lx = if x == 0 { 0 } else { 63 - u64::from(x.leading_zeros()) };
        prop_assert_eq!(nc::exp_logsq(&n(x)).unwrap(), naive(2, lx * lx));
    }
}

#[test]
fn formula_examples() {
    assert_eq!(parse("monus(5,3)").unwrap().eval(&BTreeMap::new()).unwrap(), n(2));
    assert_eq!(parse("x").unwrap(), Formula::var("x"));
    assert_eq!(parse("pow2(3)").unwrap().eval(&BTreeMap::new()).unwrap(), n(8));
    let nested = parse("pow2(add(x,mul(y,z)))").unwrap();
    assert_eq!(nested.eval(&env([("x", 1), ("y", 2), ("z", 3)])).unwrap(), n(128));
}

#[test]
fn unbound_variables_and_bad_text_fail() {
    assert!(matches!(parse("add(x,1)").unwrap().eval(&env([("y", 1)])), Err(Error::Unbound(_))));
    assert!(matches!(parse("add(x"), Err(Error::Parse { .. })));
    assert!(parse("add(x)").is_err());
}

#[test]
fn heights_in_both_towers() {
    let h = |s: &str, t| parse(s).unwrap().height(t).unwrap().height;
    assert_eq!(h("add(mul(x,pow2(add(x,mul(y,z)))),pow2(t))", Tower::Exp2), 2);
    assert_eq!(h("pow2(pow2(x))", Tower::Exp2), 3);
    assert_eq!(h("monus(x,y)", Tower::Exp2), 1);
    assert_eq!(h("powvar(x,y)", Tower::PowXY), 2);
    assert!(parse("powvar(x,y)").unwrap().height(Tower::Exp2).is_err());
}

#[test]
fn binomial_against_pascal() {
    let f = binomial_formula();
    assert_eq!(f.eval(&env([("x", 4), ("y", 2)])).unwrap(), n(6));
    assert_eq!(f.eval(&env([("x", 5), ("y", 7)])).unwrap(), n(0));
    let mut row = vec![n(1)];
    for x in 0..=40u64 {
        for (y, want) in row.iter().enumerate() {
            assert_eq!(&f.eval(&env([("x", x), ("y", y as u64)])).unwrap(), want, "C({x},{y})");
        }
        let mut next = vec![n(1)];
        next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
        next.push(n(1));
        row = next;
    }
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z", "t1", "long_name"]).prop_map(Formula::var),
        (0u64..1000).prop_map(Formula::num),
    ];
    leaf.prop_recursive(8, 64, 3, |inner| {
        (prop::sample::select(Basis::ALL.to_vec()), prop::collection::vec(inner, 3)).prop_map(|(b, mut args)| {
            args.truncate(b.arity());
            Formula::app(b, args)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn print_parse_round_trip(f in arb_formula()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }
}

proptest! {
    #[test]
    fn height_ignores_renaming(f in arb_formula()) {
        let renamed = f.rename(&|v| format!("{v}_renamed"));
        for tower in [Tower::Exp2, Tower::PowXY] {
            prop_assert_eq!(f.height(tower).ok(), renamed.height(tower).ok());
        }
    }
}
