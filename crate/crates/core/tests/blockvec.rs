//! Block combinators: worked examples, algebraic identities, and the closed
//! forms against the decode-transform-encode oracles.

use proptest::prelude::*;

use recfun::blockvec::{self as bv, checked, oracle, BitOp, BlockVec};
use recfun::natcore::Nat;
use recfun::suite::{run_suite, Scale};

fn n(v: u64) -> Nat {
    Nat::from(v)
}

#[test]
fn encoding_examples() {
    assert_eq!(bv::encode(&[n(1), n(2), n(3)], 4), n(801));
    assert_eq!(bv::decode(&n(801), 3, 4), vec![n(1), n(2), n(3)]);
    assert_eq!(bv::encode(&[n(0)], 7), n(0));
    let v = BlockVec::decode(&n(801), 3, 4);
    assert_eq!(v.encode(), n(801));
}

#[test]
fn combinator_examples() {
    assert_eq!(bv::rep(&n(5), 3, 4).unwrap(), n(1365));
    assert_eq!(bv::rep(&n(1), 1, 1).unwrap(), n(1));
    assert_eq!(bv::rep(&n(0), 7, 5).unwrap(), n(0));
    assert!(checked::rep(&n(1), 0, 3).is_err());
    assert_eq!(bv::incrx(&n(5), 3, 1, 4).unwrap(), n(257));
    assert_eq!(bv::incrx(&n(0), 2, 1, 4).unwrap(), n(0));
    assert_eq!(bv::swap_n(&n(3), 2, &[1], &[3]).unwrap(), n(9));
    assert_eq!(bv::incr(&n(3), 2, 3).unwrap(), n(9));
    assert_eq!(bv::decr(&n(9), 2, 3).unwrap(), n(3));
    assert_eq!(bv::not(&n(1), 2).unwrap(), n(2));
    assert_eq!(bv::or(&n(1), &n(2), 2).unwrap(), n(3));
    assert_eq!(bv::xor(&n(3), &n(3), 2).unwrap(), n(0));
    assert_eq!(bv::cmp(&n(7), &n(10), 2, 2).unwrap(), n(1));
    assert_eq!(bv::cmp(&n(0), &n(0), 3, 4).unwrap(), n(7));
    assert_eq!(bv::sum_blocks(&n(5), 1, 2, 2).unwrap(), n(2));
    assert_eq!(bv::sum_blocks(&bv::encode(&[n(1), n(0), n(0), n(1)], 2), 2, 2, 2).unwrap(), n(17));
    assert_eq!(bv::reverse_bits(&n(4), 3).unwrap(), n(1));
    for (y, r) in [(16, 4), (1, 1), (256, 16)] {
        assert_eq!(bv::ssqrt(&n(y)).unwrap(), n(r));
    }
}

#[test]
fn checked_wrappers_reject_bad_inputs() {
    assert!(checked::swap_n(&n(1), 3, &[1, 1], &[1, 3]).is_err());
    assert!(checked::incrx(&n(5), 3, 1, 3).is_err());
    assert!(checked::cmp(&n(16), &n(0), 1, 4).is_err());
    assert!(checked::reverse_bits(&n(8), 3).is_err());
}

fn bits(width: u64) -> impl Strategy<Value = Nat> {
    prop::collection::vec(any::<bool>(), width as usize).prop_map(|b| Nat::from_bits_le(&b))
}

proptest! {
    #[test]
    fn encode_decode_round_trip(blocks in prop::collection::vec(0u64..256, 1..8)) {
        let v: Vec<Nat> = blocks.iter().map(|&b| n(b)).collect();
        prop_assert_eq!(bv::decode(&bv::encode(&v, 8), v.len() as u64, 8), v);
    }

    #[test]
    fn swap_with_equal_weights_is_identity(q in 1u64..4, k in prop::collection::vec(1u64..6, 1..3), seed in any::<u64>()) {
        prop_assume!(checked::swap_precondition(&Nat::zero(), q, &k, &k).is_ok());
        let sums: Vec<u64> = k.iter().fold(vec![0], |acc, &kr| acc.iter().flat_map(|s| (0..q).map(move |i| s + i * kr)).collect());
        let mut x = Nat::zero();
        for (j, s) in sums.iter().enumerate() {
            if seed >> (j % 64) & 1 == 1 {
                x.set_bit(*s, true);
            }
        }
        prop_assert_eq!(checked::swap_n(&x, q, &k, &k).unwrap(), x);
    }

    #[test]
    fn decr_undoes_incr(q in 1u64..12, l in 1u64..8, x in bits(12)) {
        let x = x.slice(0, q);
        prop_assert_eq!(bv::decr(&bv::incr(&x, q, l).unwrap(), q, l).unwrap(), x);
    }

    #[test]
    fn reverse_is_an_involution(w in 1u64..40, x in bits(40)) {
        let x = x.slice(0, w);
        prop_assert_eq!(bv::reverse_bits(&bv::reverse_bits(&x, w).unwrap(), w).unwrap(), x);
    }

    #[test]
    fn outputs_decode_within_widths(count in 1u64..6, l in 1u64..6, a in bits(36), b in bits(36)) {
        let (a, b) = (a.slice(0, count * l), b.slice(0, count * l));
        prop_assert!(bv::cmp(&a, &b, count, l).unwrap().bits() <= count);
        prop_assert!(bv::cmpeq(&a, &b, count, l).unwrap().bits() <= count);
        prop_assert_eq!(bv::cmpeq(&a, &a, count, l).unwrap(), Nat::ones(count));
        prop_assert_eq!(checked::bitlogic(&a, &b, count * l, BitOp::Xor).unwrap(), oracle::xor(&a, &b, count * l));
    }
}

#[test]
fn ten_thousand_instances_per_combinator() {
    let outcome = run_suite(3, 11, &Scale::full());
    assert!(outcome.pass, "{outcome}");
}
