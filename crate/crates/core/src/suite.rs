//! Seeded verification suites: each compares a construction against an
//! independent oracle and reports counts. Reports contain no timings, so equal
//! seeds give byte-identical output.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blockvec::{self, checked, oracle, BitOp};
use crate::error::{Error, Result};
use crate::fomlogic::{compile_fom, corpus, eval_formula, table_cell, TableCache, WordModel};
use crate::formula::{binomial_formula, env, parse, Tower};
use crate::genfn::{self, GenPredicate, LogicOp, Transform};
use crate::minskyq::{compile, q_property_check, run, Machine, QPropertyInstance};
use crate::natcore::{self, Nat};
use crate::permgroup::{self as pg, CorrectTriple, Perm, RegularSet, TwoGenerators};
use crate::poly::Poly;

/// The increment machine.
pub const INC_MACHINE: &str = include_str!("../machines/inc.mm");
/// The identity machine.
pub const ID_MACHINE: &str = include_str!("../machines/id.mm");
/// The two-tape adder.
pub const ADD_MACHINE: &str = include_str!("../machines/add.mm");

/// Instance sizes for the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scale {
    pub binom_max: u64,
    pub block_instances: usize,
    pub ssqrt_max: u64,
    pub genfn_y_max: u64,
    pub xs_shrink: bool,
    pub fom_max_len: usize,
    pub minsky_max_input: u64,
    pub q_instances: usize,
    pub perm_prefix: u64,
}

impl Scale {
    /// The sizes the acceptance criteria name.
    pub fn full() -> Scale {
        Scale {
            binom_max: 40,
            block_instances: 10_000,
            ssqrt_max: 200,
            genfn_y_max: 4,
            xs_shrink: false,
            fom_max_len: 6,
            minsky_max_input: 10,
            q_instances: 1000,
            perm_prefix: 1 << 12,
        }
    }

    /// A reduced run that finishes in seconds.
    pub fn quick() -> Scale {
        Scale {
            binom_max: 20,
            block_instances: 200,
            ssqrt_max: 60,
            genfn_y_max: 3,
            xs_shrink: true,
            fom_max_len: 3,
            minsky_max_input: 3,
            q_instances: 100,
            perm_prefix: 512,
        }
    }
}

/// The result of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

/// Names of suites `1..=9`.
pub const NAMES: [&str; 9] = [
    "binomial formula",
    "height classifier",
    "block combinators",
    "ssqrt identity",
    "generating-function constructions",
    "XS extraction",
    "FOM compiler",
    "Minsky to Q",
    "permutation identities",
];

/// Runs suite `id` (`1..=9`).
pub fn run_suite(id: u32, seed: u64, scale: &Scale) -> Outcome {
    let seed = seed ^ (u64::from(id) << 32);
    let result = match id {
        1 => binomial(scale),
        2 => heights(),
        3 => block_combinators(seed, scale),
        4 => ssqrt(scale),
        5 => generating_functions(scale),
        6 => xs_extraction(scale),
        7 => fom_compiler(scale),
        8 => minsky(seed, scale),
        9 => permutations(seed, scale),
        _ => Err(Error::domain(format!("no suite {id}"))),
    };
    let name = NAMES.get(id.wrapping_sub(1) as usize).copied().unwrap_or("unknown");
    match result {
        Ok((pass, detail)) => Outcome { id, name, pass, detail },
        Err(e) => Outcome { id, name, pass: false, detail: format!("error: {e}") },
    }
}

/// Runs suites `1..=9` in order.
pub fn run_all(seed: u64, scale: &Scale) -> Vec<Outcome> {
    (1..=9).map(|id| run_suite(id, seed, scale)).collect()
}

type Verdict = Result<(bool, String)>;

/// Tallies of one comparison campaign.
#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    checked: u64,
    mismatched: u64,
    refused: u64,
}

impl Tally {
    fn record(&mut self, got: Result<Nat>, want: impl FnOnce() -> Result<Nat>) -> Result<()> {
        match got {
            Err(Error::Budget { .. }) => self.refused += 1,
            Err(e) => return Err(e),
            Ok(v) => {
                self.checked += 1;
                if v != want()? {
                    self.mismatched += 1;
                }
            }
        }
        Ok(())
    }

    fn verdict(&self) -> (bool, String) {
        let pass = self.mismatched == 0 && self.refused == 0 && self.checked > 0;
        let detail = format!(
            "{} checked, {} mismatches, {} refused by the bit budget",
            self.checked, self.mismatched, self.refused
        );
        (pass, detail)
    }
}

fn binomial(scale: &Scale) -> Verdict {
    let f = binomial_formula();
    let mut row = vec![Nat::one()];
    let mut bad = 0u64;
    let mut count = 0u64;
    for x in 0..=scale.binom_max {
        for (y, want) in row.iter().enumerate() {
            count += 1;
            if f.eval(&env([("x", x), ("y", y as u64)]))? != *want {
                bad += 1;
            }
        }
        let mut next = vec![Nat::one()];
        next.extend(row.windows(2).map(|w| &w[0] + &w[1]));
        next.push(Nat::one());
        row = next;
    }
    Ok((bad == 0, format!("{count} pairs 0 ≤ y ≤ x ≤ {}, {bad} mismatches", scale.binom_max)))
}

fn heights() -> Verdict {
    let a = parse("add(mul(x,pow2(add(x,mul(y,z)))),pow2(t))")?.height(Tower::Exp2)?.height;
    let b = parse("pow2(pow2(x))")?.height(Tower::Exp2)?.height;
    Ok((a == 2 && b == 3, format!("height(x·2^(x+yz)+2^t) = {a}, height(2^2^x) = {b}")))
}

fn random_below(rng: &mut ChaCha8Rng, bits: u64) -> Nat {
    let v: Vec<bool> = (0..bits).map(|_| rng.gen()).collect();
    Nat::from_bits_le(&v)
}

fn weighted_sums(q: u64, k: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &kr in k {
        out = out.iter().flat_map(|s| (0..q).map(move |i| s + i * kr)).collect();
    }
    out
}

fn swap_instance(rng: &mut ChaCha8Rng) -> (Nat, u64, Vec<u64>, Vec<u64>) {
    loop {
        let n = rng.gen_range(1..=3usize);
        let q = rng.gen_range(1..=4u64);
        let k: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let m: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let zero = Nat::zero();
        if checked::swap_precondition(&zero, q, &k, &m).is_err() || checked::swap_precondition(&zero, q, &m, &k).is_err() {
            continue;
        }
        let mut x = Nat::zero();
        for s in weighted_sums(q, &k) {
            if rng.gen() {
                x.set_bit(s, true);
            }
        }
        return (x, q, k, m);
    }
}

fn unit_blocks(rng: &mut ChaCha8Rng, cells: u64, l: u64) -> Nat {
    let mut x = Nat::zero();
    for c in 0..cells {
        if rng.gen() {
            x.set_bit(c * l, true);
        }
    }
    x
}

fn block_combinators(seed: u64, scale: &Scale) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["rep", "incrx", "swap", "incr", "decr", "not", "or", "xor", "cmp", "cmpeq", "sum", "reverse"];
    let mut tallies = [Tally::default(); 12];
    for _ in 0..scale.block_instances {
        let (count, l) = (rng.gen_range(1..=8u64), rng.gen_range(1..=8u64));
        let x = random_below(&mut rng, l);
        tallies[0].record(checked::rep(&x, count, l), || Ok(oracle::rep(&x, count, l)))?;

        let (count, l1) = (rng.gen_range(1..=6u64), rng.gen_range(1..=6u64));
        let l2 = (count + 1) * l1 + rng.gen_range(0..=4);
        let x = random_below(&mut rng, count * l1);
        tallies[1].record(checked::incrx(&x, count, l1, l2), || Ok(oracle::incrx(&x, count, l1, l2)))?;

        let (x, q, k, m) = swap_instance(&mut rng);
        tallies[2].record(checked::swap_n(&x, q, &k, &m), || Ok(oracle::swap_n(&x, q, &k, &m)))?;

        let (q, l) = (rng.gen_range(1..=12u64), rng.gen_range(1..=8u64));
        let x = random_below(&mut rng, q);
        tallies[3].record(checked::incr(&x, q, l), || Ok(oracle::incr(&x, q, l)))?;
        let y = unit_blocks(&mut rng, q, l);
        tallies[4].record(checked::decr(&y, q, l), || Ok(oracle::decr(&y, q, l)))?;

        let w = rng.gen_range(1..=64u64);
        let (a, b) = (random_below(&mut rng, w), random_below(&mut rng, w));
        tallies[5].record(checked::bitlogic(&a, &b, w, BitOp::Not), || Ok(oracle::not(&a, w)))?;
        tallies[6].record(checked::bitlogic(&a, &b, w, BitOp::Or), || Ok(oracle::or(&a, &b, w)))?;
        tallies[7].record(checked::bitlogic(&a, &b, w, BitOp::Xor), || Ok(oracle::xor(&a, &b, w)))?;

        let (count, l) = (rng.gen_range(1..=8u64), rng.gen_range(1..=6u64));
        let (a, mut b) = (random_below(&mut rng, count * l), random_below(&mut rng, count * l));
        if rng.gen_bool(0.3) {
            b = a.clone();
        }
        tallies[8].record(checked::cmp(&a, &b, count, l), || Ok(oracle::cmp(&a, &b, count, l)))?;
        tallies[9].record(checked::cmpeq(&a, &b, count, l), || Ok(oracle::cmpeq(&a, &b, count, l)))?;

        let (count, l) = (rng.gen_range(1..=6u64), rng.gen_range(2..=5u64));
        let k = rng.gen_range(1..(1u64 << l).min(7));
        let x = unit_blocks(&mut rng, count * k, l);
        tallies[10].record(checked::sum_blocks(&x, count, l, k), || Ok(oracle::sum_blocks(&x, count, l, k)))?;

        let w = rng.gen_range(1..=24u64);
        let x = random_below(&mut rng, w);
        tallies[11].record(checked::reverse_bits(&x, w), || Ok(oracle::reverse_bits(&x, w)))?;
    }
    let pass = tallies.iter().all(|t| t.verdict().0);
    let bad: u64 = tallies.iter().map(|t| t.mismatched + t.refused).sum();
    let per: Vec<String> = names.iter().zip(&tallies).map(|(n, t)| format!("{n} {}", t.checked)).collect();
    Ok((pass, format!("{} instances per combinator ({}), {bad} mismatches or refusals", scale.block_instances, per.join(", "))))
}

fn ssqrt(scale: &Scale) -> Verdict {
    let mut bad = Vec::new();
    for x in 0..=scale.ssqrt_max {
        if blockvec::ssqrt(&Nat::pow2(2 * x))? != Nat::pow2(x) {
            bad.push(x);
        }
    }
    Ok((bad.is_empty(), format!("x ∈ [0, {}], failures at {bad:?}", scale.ssqrt_max)))
}

/// Predicates of arity 1 to 3 used by the generating-function suite.
pub fn predicate_corpus() -> Vec<GenPredicate> {
    vec![
        GenPredicate::new("x=0", 1, |x| x[0] == 0),
        GenPredicate::new("even", 1, |x| x[0] % 2 == 0),
        GenPredicate::new("x>=2", 1, |x| x[0] >= 2),
        GenPredicate::new("true", 1, |_| true),
        GenPredicate::new("false", 1, |_| false),
        GenPredicate::new("x1=x2", 2, |x| x[0] == x[1]),
        GenPredicate::new("x1<x2", 2, |x| x[0] < x[1]),
        GenPredicate::new("bit(x1,x2)", 2, |x| x[1] < 64 && x[0] >> x[1] & 1 == 1),
        GenPredicate::new("x1+x2=x3", 3, |x| x[0] + x[1] == x[2]),
        GenPredicate::new("x1<x2<x3", 3, |x| x[0] < x[1] && x[1] < x[2]),
        GenPredicate::new("x1*x2>=x3", 3, |x| x[0] * x[1] >= x[2]),
    ]
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations_of(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn generating_functions(scale: &Scale) -> Verdict {
    let preds = predicate_corpus();
    let brute = |p: &GenPredicate, y: u64| genfn::genfn_bruteforce(p, y);
    let mut t = Tally::default();
    for y in 1..=scale.genfn_y_max {
        for a in &preds {
            let fa = brute(a, y);
            let not_a = GenPredicate::new("not", a.arity, {
                let a = a.clone();
                move |x| !a.holds(x)
            });
            t.record(fa.clone().and_then(|f| genfn::gen_logic(&f, &f, a.arity, y, LogicOp::Not)), || brute(&not_a, y))?;
            for b in preds.iter().filter(|b| b.arity == a.arity) {
                let both = GenPredicate::new("and", a.arity, {
                    let (a, b) = (a.clone(), b.clone());
                    move |x| a.holds(x) && b.holds(x)
                });
                let got = fa.clone().and_then(|fa| genfn::gen_logic(&fa, &brute(b, y)?, a.arity, y, LogicOp::And));
                t.record(got, || brute(&both, y))?;
            }
        }
    }
    let polys = [("x", "1"), ("x1", "x2"), ("2*x", "x + 3"), ("x1*x2", "x3 + 1"), ("x1^2", "x2 + x3"), ("0", "x + 1")];
    for y in 1..=scale.genfn_y_max {
        for (p, q) in polys {
            let arity = if p.contains('3') || q.contains('3') { 3 } else if p.contains('2') || q.contains('2') { 2 } else { 1 };
            let (p, q) = (Poly::parse(p, arity)?, Poly::parse(q, arity)?);
            t.record(genfn::gen_poly_cmp(&p, &q, y), || brute(&GenPredicate::poly_ge(&p, &q), y))?;
            let eq = GenPredicate::new("eq", arity, {
                let (p, q) = (p.clone(), q.clone());
                move |x| p.eval_u64(x) == q.eval_u64(x)
            });
            t.record(genfn::gen_poly_eq(&p, &q, y), || brute(&eq, y))?;
        }
    }
    for y in 1..=scale.genfn_y_max {
        for psi in &preds {
            let n = psi.arity;
            let mut transforms: Vec<Transform> = permutations_of(n).into_iter().map(Transform::Permute).collect();
            transforms.extend((0..y).map(Transform::SubstConst).filter(|_| n >= 2));
            if n >= 2 {
                transforms.push(Transform::IdentifyLast);
            }
            if n <= 2 {
                transforms.push(Transform::AddDummy);
            }
            for tr in transforms {
                let got = brute(psi, y).and_then(|f| genfn::gen_explicit(&f, n, y, &tr));
                t.record(got, || brute(&tr.apply_to(psi), y))?;
            }
        }
    }
    for z in 1..=scale.genfn_y_max {
        for psi in preds.iter().filter(|p| p.arity <= 2) {
            for p in ["x1", "x1 + 1", "2"] {
                let p = Poly::parse(p, psi.arity)?;
                t.record(genfn::gen_count(psi, &p, z), || brute(&genfn::counting_predicate(psi, &p), z))?;
            }
        }
    }
    Ok(t.verdict())
}

/// One XS target: the function, its bit bound `t` and the input box.
struct XsTarget {
    name: &'static str,
    arity: usize,
    f: fn(&[u64]) -> u64,
    bound: &'static str,
    max: u64,
}

/// Runs `f` with the bit budget raised to at least `bits`, then restores it.
fn with_budget(bits: u64, f: impl FnOnce() -> Verdict) -> Verdict {
    let saved = natcore::bit_budget();
    natcore::set_bit_budget(saved.max(bits));
    let result = f();
    natcore::set_bit_budget(saved);
    result
}

/// The largest box entries reach about 2^30 bits: `decr` on `t·zⁿ` blocks.
fn xs_extraction(scale: &Scale) -> Verdict {
    with_budget(1 << 30, || xs_extraction_inner(scale))
}

fn xs_extraction_inner(scale: &Scale) -> Verdict {
    let targets = [
        XsTarget { name: "identity", arity: 1, f: |x| x[0], bound: "x + 1", max: 7 },
        XsTarget { name: "rm3", arity: 1, f: |x| x[0] % 3, bound: "x + 1", max: 15 },
        XsTarget { name: "bit", arity: 2, f: |x| (x[0] >> x[1]) & 1, bound: "1", max: 3 },
        XsTarget { name: "monus", arity: 2, f: |x| x[0].saturating_sub(x[1]), bound: "x1 + 1", max: 2 },
    ];
    let mut t = Tally::default();
    let mut names = Vec::new();
    for tg in targets {
        let max = if scale.xs_shrink { tg.max.min(3) } else { tg.max };
        let f = tg.f;
        let graph = GenPredicate::bit_graph(tg.name, tg.arity, move |x| Nat::from(f(x)));
        let bound = Poly::parse(tg.bound, tg.arity)?;
        let points: Vec<Vec<u64>> = match tg.arity {
            1 => (0..=max).map(|a| vec![a]).collect(),
            _ => (0..=max).flat_map(|a| (0..=max).map(move |b| vec![a, b])).collect(),
        };
        for x in points {
            let got = genfn::xs_extract(|z| genfn::genfn_bruteforce(&graph, z), &bound, &x);
            t.record(got, || Ok(Nat::from(f(&x))))?;
        }
        names.push(format!("{} on [0,{max}]^{}", tg.name, tg.arity));
    }
    let (pass, detail) = t.verdict();
    Ok((pass, format!("{}: {detail}", names.join(", "))))
}

fn fom_compiler(scale: &Scale) -> Verdict {
    with_budget(1 << 26, || fom_compiler_inner(scale))
}

fn fom_compiler_inner(scale: &Scale) -> Verdict {
    let mut t = Tally::default();
    let corpus = corpus::compiler_corpus();
    let mut words = 0u64;
    for (phi, m) in &corpus {
        let table = compile_fom(phi, *m)?;
        let mut cache = TableCache::new();
        for n in 1..=scale.fom_max_len {
            for v in 0..1u32 << n {
                words += 1;
                let w: Vec<bool> = (0..n).map(|i| v >> (n - 1 - i) & 1 == 1).collect();
                let tb = match table.eval_word(&w, &mut cache) {
                    Err(Error::Budget { .. }) => {
                        t.refused += 1;
                        continue;
                    }
                    other => other?,
                };
                let l = n as u64;
                for c in 0..l.pow(*m as u32) {
                    let ys: Vec<u64> = (0..*m).map(|j| c / l.pow(j as u32) % l + 1).collect();
                    let want = eval_formula(phi, &WordModel::new(w.clone(), &ys)?)?;
                    t.record(Ok(table_cell(&tb, l, &ys)), || Ok(Nat::from(want)))?;
                }
            }
        }
    }
    let (pass, detail) = t.verdict();
    Ok((pass, format!("{} formulas, {} words of length ≤ {}, table cells: {detail}", corpus.len(), words / corpus.len() as u64, scale.fom_max_len)))
}

fn minsky(seed: u64, scale: &Scale) -> Verdict {
    let cases: [(&str, &str, usize, &str); 3] =
        [("increment", INC_MACHINE, 1, "2"), ("identity", ID_MACHINE, 1, "1"), ("adder", ADD_MACHINE, 2, "x2 + 1")];
    let mut t = Tally::default();
    for (_, text, n, bound) in cases {
        let m = Machine::parse(text)?;
        let poly = Poly::parse(bound, n)?;
        let max = scale.minsky_max_input;
        let inputs: Vec<Vec<u64>> = match n {
            1 => (0..=max).map(|a| vec![a]).collect(),
            _ => (0..=max).flat_map(|a| (0..=max).map(move |b| vec![a, b])).collect(),
        };
        for input in inputs {
            let want = run(&m, &input, 10_000)?.output;
            let got = compile(&m, &input, &poly).and_then(|c| c.evaluate());
            t.record(got, || Ok(Nat::from(want)))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q_bad = 0;
    for _ in 0..scale.q_instances {
        let inst = QPropertyInstance::random(&mut rng, 4, 8)?;
        if !q_property_check(&inst)? {
            q_bad += 1;
        }
    }
    let (pass, detail) = t.verdict();
    Ok((
        pass && q_bad == 0,
        format!(
            "inputs ≤ {}: {detail}; Q property {}/{} instances",
            scale.minsky_max_input,
            scale.q_instances - q_bad,
            scale.q_instances
        ),
    ))
}

/// The triple `f = (b↔b+2)(b+1↔b+3)`, `g = (b↔b+1)`.
pub fn finite_triple(base: u64) -> CorrectTriple {
    let f = Perm::transposition(base, base + 2).compose(&Perm::transposition(base + 1, base + 3));
    CorrectTriple { f, g: Perm::transposition(base, base + 1) }
}

/// The delete combinator on `0↔1`, `0↔2`, `A = {0}`, the odd-entry deletion
/// against its case table, and megadelete on the tuple `(0, 1, 2, 3)`.
pub fn check_deletions(prefix: u64) -> Result<Vec<Perm>> {
    let pts = || pg::prefix(prefix);
    let (f1, f2) = (Perm::transposition(0, 1), Perm::transposition(0, 2));
    pg::check_delete_preconditions(&f1, &f2, &|x: &Nat| x.is_zero(), pts())?;
    pg::delete_combinator(&f1, &f2).agrees_with(&f1, pts())?;

    let deleted = pg::delete_odd(&pg::px());
    for x in pts() {
        let (a, b, c) = pg::split3(&x);
        let want = match (b.bit(0), c.to_u64()) {
            (false, Some(0)) => pg::c3(&a, &b, &(&a + 2u64)),
            (false, _) if c == &a + 2u64 => pg::c3(&a, &b, &Nat::zero()),
            _ => x.clone(),
        };
        if deleted.apply(&x) != want {
            return Err(Error::Mismatch(format!("odd-entry deletion differs at {x}")));
        }
    }

    let mega = pg::megadelete(&Perm::from_table(&[1, 0, 3, 2])?, &Perm::transposition(0, 2));
    mega.agrees_with(&Perm::from_table(&[2, 3, 0, 1])?, pts())?;
    Ok(vec![deleted, mega])
}

/// Checks `w_i = (s₁∘s₂)²` and `all = v₁ ∘ … ∘ v_{2n}` on `[0, limit)`.
pub fn check_rol_all(triples: Vec<CorrectTriple>, limit: u64) -> Result<TwoGenerators> {
    let g = TwoGenerators::new(triples)?;
    for i in 1..=g.n() {
        g.eval(&g.w_word(i)).agrees_with(&g.w_direct(i), pg::prefix(limit))?;
    }
    g.all().agrees_with(&g.all_as_product(), pg::prefix(limit))?;
    Ok(g)
}

/// `n` disjoint finite triples at bases `0, 4, 8, …`.
pub fn finite_triples(n: usize) -> Vec<CorrectTriple> {
    (0..n as u64).map(|i| finite_triple(4 * i)).collect()
}

/// The even-matching pipeline on the word `0↔1` rebuilds `0↔2`.
pub fn check_even_pipeline(prefix: u64) -> Result<pg::EvenPipeline> {
    let t01: pg::NatMap = Arc::new(|x: &Nat| Perm::transposition(0, 1).apply(x));
    let pipeline = pg::even_matching_pipeline(&[t01])?;
    pipeline.result.agrees_with(&Perm::transposition(0, 2), pg::prefix(prefix))?;
    Ok(pipeline)
}

/// Every named permutation and the factors of a stationary decomposition.
pub fn named_permutations(seed: u64) -> Result<Vec<Perm>> {
    let id: pg::NatMap = Arc::new(|x: &Nat| x.clone());
    let sq: pg::NatMap = Arc::new(|x: &Nat| x * x);
    let pipeline = check_even_pipeline(16)?;
    let pair = pg::stationary_to_triples(
        &Perm::from_table(&[6, 1, 0, 3, 4, 5, 2])?,
        &RegularSet::arithmetic(2, 1)?,
        &RegularSet::arithmetic(2, 0)?,
    );
    let bands = pg::small_bands();
    let [r1, r2, ..] = bands.sets()?;
    let f = pg::random_band_perm(&mut ChaCha8Rng::seed_from_u64(seed), &bands, 64)?;
    let (h1, h2) = pg::stationary_decompose(&f, &r1, &r2);
    let mut out = vec![
        pg::p_f(id.clone()),
        pg::p_f(sq),
        pg::px(),
        pg::del(),
        pg::s_ij(0, 1)?,
        pg::s_ij(2, 3)?,
        pg::move_perm(),
        pg::place(),
        pg::swap1(),
        pg::swap2(),
        pg::unar_compose_code(&[id])?,
        pipeline.result.clone(),
        h1,
        h2,
        pair.r1,
        pair.r2,
        pair.h1,
        pair.h2,
        pair.s1,
        pair.s2,
    ];
    out.extend(pipeline.psi.iter().cloned());
    Ok(out)
}

/// Reassembles a random band-separated permutation of `[0, 64)` from `rol`
/// and `all`, checks it on `[0, prefix)`, and confirms that a truncated word
/// is rejected.
pub fn check_reassembly(seed: u64, prefix: u64) -> Result<pg::Reassembly> {
    let bands = pg::small_bands();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = pg::random_band_perm(&mut rng, &bands, 64)?;
    let demo = pg::reassemble(&f, &bands)?;
    let points: Vec<Nat> = pg::prefix(prefix).collect();
    demo.check(&bands, &points)?;
    demo.generators.all().check_bijective(prefix)?;

    let mut sample = points;
    sample.shuffle(&mut rng);
    sample.truncate(256);
    let broken = pg::Reassembly { word: pg::Word(demo.word.0[12..].to_vec()), ..demo.clone() };
    if broken.check(&bands, &sample).is_ok() {
        return Err(Error::Mismatch("a truncated word was accepted".into()));
    }
    Ok(demo)
}

fn permutations(seed: u64, scale: &Scale) -> Verdict {
    let prefix = scale.perm_prefix;
    let mut perms = check_deletions(prefix)?;

    let pair = pg::stationary_to_triples(
        &Perm::from_table(&[6, 1, 0, 3, 4, 5, 2])?,
        &RegularSet::arithmetic(2, 1)?,
        &RegularSet::arithmetic(2, 0)?,
    );
    for triples in [finite_triples(1), vec![finite_triple(4), pair.triples()[0].clone()]] {
        let limit = (1u64 << (2 * triples.len() + 1)) * 64;
        perms.push(check_rol_all(triples, limit)?.all());
    }

    check_even_pipeline(prefix)?;
    perms.extend(named_permutations(seed)?);
    for p in &perms {
        p.check_bijective(prefix)?;
    }
    let demo = check_reassembly(seed, prefix)?;
    Ok((
        true,
        format!(
            "deletions, w = (s1∘s2)² for n = 1, 2, even pipeline, {} permutations bijective on [0, {prefix}), \
             reassembly as a {}-letter word on [0, {prefix})",
            perms.len() + 1,
            demo.word.0.len()
        ),
    ))
}
