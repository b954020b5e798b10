use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recfun::minskyq::*;
use recfun::poly::Poly;
use recfun::{Error, Nat};

const INC: &str = include_str!("../machines/inc.mm");
const ID: &str = include_str!("../machines/id.mm");
const ADD: &str = include_str!("../machines/add.mm");
const DBL: &str = include_str!("../machines/dbl.mm");

fn machine(text: &str) -> Machine {
    Machine::parse(text).unwrap()
}

#[test]
fn runs_match_hand_traces() {
    let r = run(&machine(INC), &[3], 100).unwrap();
    assert_eq!((r.output, r.steps), (4, 1));
    let r = run(&machine(ID), &[7], 100).unwrap();
    assert_eq!((r.output, r.steps), (7, 1));
    assert_eq!(run(&machine(INC), &[3], 0), Err(Error::StepBudget(0)));
    for x in 0..6 {
        for y in 0..6 {
            assert_eq!(run(&machine(ADD), &[x, y], 100).unwrap().output, x + y);
        }
        assert_eq!(run(&machine(DBL), &[x], 100).unwrap().output, 2 * x);
    }
}

#[test]
fn missing_command_is_stuck() {
    let m = machine("tapes 1\nstates 3\n0 1 -> R 2\n");
    assert!(matches!(run(&m, &[1], 10), Err(Error::Stuck { state: 2, .. })));
}

#[test]
fn parser_round_trips_and_rejects() {
    for text in [INC, ID, ADD, DBL] {
        let m = machine(text);
        assert_eq!(Machine::parse(&m.to_string()).unwrap(), m);
    }
    assert!(Machine::parse("tapes 1\nstates 2\n1 1 -> L 0\n").is_err());
    assert!(Machine::parse("tapes 1\nstates 2\n0 1 -> R 0\n0 1 -> N 0\n").is_err());
    assert!(Machine::parse("tapes 1\nstates 2\n0 1 -> R 0\n1 -> 1 ; R 0 ; R 0\n").is_err());
    assert!(Machine::parse("states 2\n0 1 -> R 0\n").is_err());
}

#[test]
fn reduction_preserves_outputs() {
    for (text, n) in [(INC, 1), (ID, 1), (ADD, 2)] {
        let m = machine(text);
        let Machine::General(g) = &m else { unreachable!() };
        let red = Machine::Reduced(reduce(g));
        for x in 0..8u64 {
            for y in 0..8u64 {
                let input = &[x, y][..n];
                let a = run(&m, input, 1000).unwrap();
                let b = run(&red, input, 1000).unwrap();
                assert_eq!(a.output, b.output);
                assert!(b.steps <= g.tapes() as u64 * a.steps + g.tapes() as u64);
            }
        }
    }
}

#[test]
fn decomposition_matches_one_step() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for text in [INC, ID, ADD, DBL] {
        let red = machine(text).to_reduced();
        let fs = decompose(&red);
        let m = Machine::Reduced(red.clone());
        for _ in 0..1000 {
            let heads = (0..red.tapes()).map(|_| rng.gen_range(0..4u64)).collect();
            let c = Configuration { heads, state: rng.gen_range(0..red.states()) };
            match m.step(&c) {
                Ok(next) => assert_eq!(apply_all(&fs, &c).unwrap(), next),
                Err(_) => assert!(apply_all(&fs, &c).is_err()),
            }
        }
        let last = Configuration { heads: vec![2; red.tapes()], state: 0 };
        assert_eq!(apply_all(&fs, &last).unwrap(), last);
    }
}

#[test]
fn single_state_machine_has_no_simple_functions() {
    let red = ReducedMachine::new(1, vec![]).unwrap();
    assert!(decompose(&red).is_empty());
}

#[test]
fn simplistic_triples_act_on_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let k = rng.gen_range(1..=3usize);
        let s = rng.gen_range(1..=6usize);
        let l = rng.gen_range(2..=12u64);
        let w = ConfigCodeParams::state_width(s);
        let p = ConfigCodeParams { w, l };
        let heads: Vec<u64> = (0..k).map(|_| rng.gen_range(1..(1 << l) - 1)).collect();
        let c = Configuration { heads: heads.clone(), state: rng.gen_range(0..s) };
        let mut guard_tape = rng.gen_range(0..=k);
        if rng.gen_bool(0.3) && guard_tape > 0 {
            let mut h = c.heads.clone();
            h[guard_tape - 1] = 0;
            check_triple(&Configuration { heads: h, state: c.state }, &mut rng, p, s, guard_tape);
            guard_tape = 0;
        }
        check_triple(&c, &mut rng, p, s, guard_tape);
    }
}

fn check_triple(c: &Configuration, rng: &mut ChaCha8Rng, p: ConfigCodeParams, s: usize, guard_tape: usize) {
    let k = c.heads.len();
    let shifts = (0..k).map(|i| if c.heads[i] == 0 { rng.gen_range(0..=1) } else { rng.gen_range(-1..=1) }).collect();
    let guard_state = if rng.gen_bool(0.5) { c.state } else { rng.gen_range(0..s) };
    let f = SimpleVectorFn { shifts, guard_tape, guard_state, target_state: rng.gen_range(0..s) };
    let want = f.apply(c).unwrap();
    let mut code = config_code(c, p).unwrap();
    // Junk above the state field must be tolerated.
    code += &(Nat::from(rng.gen_range(0..4u64)) * Nat::pow2(p.l * k as u64 + p.w));
    for g in simple_to_simplistic(&f, p, s).unwrap() {
        code = g.apply(&code);
    }
    assert_eq!(config_decode(&code, k, p).unwrap(), want);
}

#[test]
fn q_property_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..1000 {
        let inst = QPropertyInstance::random(&mut rng, 4, 8).unwrap();
        assert!(q_property_check(&inst).unwrap());
    }
    let one = QPropertyInstance::from_cycle(Nat::from(9u64), 5, &[], &[]).unwrap();
    assert!(q_property_check(&one).unwrap());
    assert_eq!(one.composition(), Nat::from(9u64));
}

#[test]
fn compiled_machines_match_simulation() {
    let cases: [(&str, usize, &str); 4] =
        [(INC, 1, "2"), (ID, 1, "1"), (ADD, 2, "x2 + 1"), (DBL, 1, "3*x1 + 2")];
    for (text, n, bound) in cases {
        let m = machine(text);
        let poly = Poly::parse(bound, n).unwrap();
        for x in 0..=5u64 {
            for y in 0..=5u64 {
                let input = &[x, y][..n];
                let want = run(&m, input, 1000).unwrap().output;
                let c = compile(&m, input, &poly).unwrap();
                assert_eq!(c.evaluate().unwrap(), Nat::from(want), "{text} on {input:?}");
                c.instance().unwrap().validate().unwrap();
            }
        }
    }
}

#[test]
fn insufficient_time_bound_is_rejected() {
    let poly = Poly::parse("x2", 2).unwrap();
    assert!(compile(&machine(ADD), &[2, 3], &poly).is_err());
}
