//! Command implementations. Each returns a [`Report`] or a library error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};

use recfun::error::{Error, Result};
use recfun::fomlogic::{compile_fom, eval_formula, parse_word, table_cell, FomFormula, TableCache, WordModel};
use recfun::formula::{binomial_formula, env as bind, parse, Formula, Tower};
use recfun::genfn::{self, GenPredicate};
use recfun::minskyq::{compile, q_property_check, run, Machine, QCompilation};
use recfun::natcore::Nat;
use recfun::poly::Poly;
use recfun::suite::{self, Scale};

use crate::{FomArgs, FomCommand, GenfnCommand, MinskyArgs, MinskyCommand, PermCommand, PermSuite, Report, SuiteCommand};

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::domain(format!("cannot read {path}: {e}")))
}

fn report(text: String, json: Value) -> Result<Report> {
    Ok(Report { text, json, ok: true })
}

pub fn eval(expr: &str, pairs: &[String]) -> Result<Report> {
    let f = parse(expr)?;
    let mut env = BTreeMap::new();
    for pair in pairs {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::domain(format!("binding `{pair}` is not name=value")))?;
        let v: Nat = v.trim().parse().map_err(|_| Error::domain(format!("`{v}` is not a natural number")))?;
        env.insert(k.trim().to_string(), v);
    }
    let value = f.eval(&env)?;
    report(format!("{value}\n"), json!({ "value": value.to_string() }))
}

pub fn height(expr: &str, tower: &str) -> Result<Report> {
    let tower: Tower = tower.parse()?;
    let h = parse(expr)?.height(tower)?;
    report(format!("{}\n", h.height), json!({ "tower": tower.to_string(), "height": h.height }))
}

pub fn binom(x: u64, y: u64) -> Result<Report> {
    let value = binomial_formula().eval(&bind([("x", x), ("y", y)]))?;
    report(format!("{value}\n"), json!({ "x": x, "y": y, "value": value.to_string() }))
}

/// Parses `P op Q` with `op` one of `>=`, `<=`, `!=`, `=`, `<`, `>`.
fn parse_predicate(text: &str, min_arity: usize) -> Result<GenPredicate> {
    for op in [">=", "<=", "!=", "=", "<", ">"] {
        if let Some((l, r)) = text.split_once(op) {
            let (p, q) = (Poly::parse(l.trim(), min_arity)?, Poly::parse(r.trim(), min_arity)?);
            let arity = p.arity().max(q.arity());
            let (p, q) = (p.widened(arity), q.widened(arity));
            let cmp: fn(&Nat, &Nat) -> bool = match op {
                ">=" => |a, b| a >= b,
                "<=" => |a, b| a <= b,
                "!=" => |a, b| a != b,
                "=" => |a, b| a == b,
                "<" => |a, b| a < b,
                _ => |a, b| a > b,
            };
            return Ok(GenPredicate::new(text, arity, move |x| cmp(&p.eval_u64(x), &q.eval_u64(x))));
        }
    }
    Err(Error::Parse { pos: 0, msg: "expected a comparison such as `x1 >= x2`".into() })
}

/// Evaluates `f` at `xs`, binding `x1, x2, ..` and `x` for the first argument.
fn apply_formula(f: &Formula, xs: &[u64]) -> Result<Nat> {
    let mut env: BTreeMap<String, Nat> = xs.iter().enumerate().map(|(i, &v)| (format!("x{}", i + 1), Nat::from(v))).collect();
    if let Some(&x) = xs.first() {
        env.insert("x".into(), Nat::from(x));
    }
    f.eval(&env)
}

fn boxes(n: usize, below: u64) -> Vec<Vec<u64>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|p| (0..below).map(move |v| [p.clone(), vec![v]].concat())).collect()
    })
}

pub fn genfn(c: GenfnCommand) -> Result<Report> {
    match c {
        GenfnCommand::Brute { pred, y, arity } => {
            let rho = parse_predicate(&pred, arity)?;
            let value = genfn::genfn_bruteforce(&rho, y)?;
            report(format!("{value}\n"), json!({ "arity": rho.arity, "y": y, "value": value.to_string() }))
        }
        GenfnCommand::Count { pred, bound, z, arity } => {
            let psi = parse_predicate(&pred, arity)?;
            let p = Poly::parse(&bound, psi.arity)?;
            let built = genfn::gen_count(&psi, &p, z)?;
            let brute = genfn::genfn_bruteforce(&genfn::counting_predicate(&psi, &p), z)?;
            let ok = built == brute;
            let text = format!("constructed {built}\nbrute force {brute}\n{}\n", if ok { "agree" } else { "MISMATCH" });
            Ok(Report {
                text,
                json: json!({ "z": z, "constructed": built.to_string(), "brute_force": brute.to_string(), "agree": ok }),
                ok,
            })
        }
        GenfnCommand::Extract { function, bound, args } => {
            let f = parse(&function)?;
            let n = args.len();
            let t = Poly::parse(&bound, n)?;
            let z = args.iter().sum::<u64>() + 1;
            let mut table = BTreeMap::new();
            for x in boxes(n, z) {
                table.insert(x.clone(), apply_formula(&f, &x)?);
            }
            let graph = GenPredicate::bit_graph(&function, n, move |x| table.get(x).cloned().unwrap_or_default());
            let got = genfn::xs_extract(|z| genfn::genfn_bruteforce(&graph, z), &t, &args)?;
            let direct = apply_formula(&f, &args)?;
            let ok = got == direct;
            let text = format!("extracted {got}\ndirect    {direct}\n{}\n", if ok { "agree" } else { "MISMATCH" });
            Ok(Report { text, json: json!({ "extracted": got.to_string(), "direct": direct.to_string(), "agree": ok }), ok })
        }
    }
}

fn load_fom(args: &FomArgs) -> Result<(FomFormula, usize, Vec<bool>)> {
    let phi = FomFormula::parse(read_file(&args.file)?.trim())?;
    let m = args.arity.unwrap_or(0).max(phi.max_var()).max(1);
    Ok((phi, m, parse_word(&args.word)?))
}

fn assignments(m: usize, l: u64) -> impl Iterator<Item = Vec<u64>> {
    (0..l.pow(m as u32)).map(move |c| (0..m).map(|j| c / l.pow(j as u32) % l + 1).collect())
}

fn show_tuple(ys: &[u64]) -> String {
    ys.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn fom(c: FomCommand) -> Result<Report> {
    match c {
        FomCommand::Eval { args, assign } => {
            let (phi, m, w) = load_fom(&args)?;
            let l = w.len() as u64;
            let all: Vec<Vec<u64>> = if assign.is_empty() { assignments(m, l).collect() } else { vec![assign] };
            let mut text = String::new();
            let mut rows = Vec::new();
            for ys in all {
                let v = eval_formula(&phi, &WordModel::new(w.clone(), &ys)?)?;
                let _ = writeln!(text, "y=({}) {}", show_tuple(&ys), u8::from(v));
                rows.push(json!({ "assignment": ys, "value": v }));
            }
            report(text, json!({ "formula": phi.to_string(), "rows": rows }))
        }
        FomCommand::Compile { args } => {
            let (phi, m, w) = load_fom(&args)?;
            let l = w.len() as u64;
            let table = compile_fom(&phi, m)?.eval_word(&w, &mut TableCache::new())?;
            let mut text = format!("table {table}\n");
            let mut cells = Vec::new();
            for ys in assignments(m, l) {
                let cell = table_cell(&table, l, &ys);
                let _ = writeln!(text, "y=({}) {cell}", show_tuple(&ys));
                cells.push(json!({ "assignment": ys, "value": cell.to_string() }));
            }
            report(text, json!({ "formula": phi.to_string(), "table": table.to_string(), "cells": cells }))
        }
        FomCommand::Verify { args } => {
            let (phi, m, w) = load_fom(&args)?;
            let l = w.len() as u64;
            let table = compile_fom(&phi, m)?.eval_word(&w, &mut TableCache::new())?;
            let mut bad = Vec::new();
            let mut count = 0u64;
            for ys in assignments(m, l) {
                count += 1;
                let want = eval_formula(&phi, &WordModel::new(w.clone(), &ys)?)?;
                if table_cell(&table, l, &ys) != Nat::from(u64::from(want)) {
                    bad.push(ys);
                }
            }
            let text = format!("{count} cells, {} mismatches\n", bad.len());
            Ok(Report { text, json: json!({ "cells": count, "mismatches": bad }), ok: bad.is_empty() })
        }
    }
}

fn minsky_compile(args: &MinskyArgs) -> Result<(Machine, u64, u64, QCompilation)> {
    let m = Machine::parse(&read_file(&args.file)?)?;
    let r = run(&m, &args.input, args.max_steps)?;
    let poly = match &args.time_poly {
        Some(p) => Poly::parse(p, args.input.len())?,
        None => Poly::constant(args.input.len(), r.steps),
    };
    let q = compile(&m, &args.input, &poly)?;
    Ok((m, r.output, r.steps, q))
}

pub fn minsky(c: MinskyCommand) -> Result<Report> {
    match c {
        MinskyCommand::Run { args } => {
            let m = Machine::parse(&read_file(&args.file)?)?;
            let r = run(&m, &args.input, args.max_steps)?;
            report(
                format!("output {}\nsteps {}\n", r.output, r.steps),
                json!({ "output": r.output.to_string(), "steps": r.steps.to_string() }),
            )
        }
        MinskyCommand::Compile { args } => {
            let (_, _, _, q) = minsky_compile(&args)?;
            let value = q.evaluate()?;
            let p = &q.params;
            let text = format!(
                "t {}\nc1 {}\nc2 {}\nx {} bits\np1 {} bits\np2 {} bits\noutput {value}\n",
                p.t,
                p.c1,
                p.c2,
                p.x.bits(),
                p.p1.bits(),
                p.p2.bits()
            );
            let json = json!({
                "t": p.t.to_string(), "c1": p.c1.to_string(), "c2": p.c2.to_string(),
                "x": p.x.to_string(), "p1": p.p1.to_string(), "p2": p.p2.to_string(),
                "output": value.to_string(),
            });
            report(text, json)
        }
        MinskyCommand::Verify { args } => {
            let (_, output, steps, q) = minsky_compile(&args)?;
            let value = q.evaluate()?;
            let agree = value == Nat::from(output);
            let property = q_property_check(&q.instance()?)?;
            let ok = agree && property;
            let text = format!(
                "run {output} in {steps} steps\nQ {value}\nQ property {}\n{}\n",
                if property { "holds" } else { "FAILS" },
                if ok { "agree" } else { "MISMATCH" }
            );
            Ok(Report {
                text,
                json: json!({ "run": output.to_string(), "steps": steps.to_string(), "q": value.to_string(), "q_property": property, "agree": ok }),
                ok,
            })
        }
    }
}

pub fn perm(c: PermCommand) -> Result<Report> {
    let PermCommand::Verify { suite: which, n, prefix, seed } = c;
    let text = match which {
        PermSuite::Codes => {
            let prefix = prefix.unwrap_or(1 << 12);
            let perms = suite::named_permutations(seed)?;
            for p in &perms {
                p.check_bijective(prefix)?;
            }
            format!("{} permutations bijective on [0, {prefix})", perms.len())
        }
        PermSuite::Delete => {
            let prefix = prefix.unwrap_or(1 << 12);
            suite::check_deletions(prefix)?;
            format!("delete combinator, odd-entry deletion and megadelete agree on [0, {prefix})")
        }
        PermSuite::Rolall => {
            let limit = prefix.unwrap_or((1u64 << (2 * n + 1)) * 64);
            let g = suite::check_rol_all(suite::finite_triples(n), limit)?;
            let words: Vec<String> = (1..=n).map(|i| format!("w{i} = {}", g.w_word(i))).collect();
            format!("{}\nall words agree on [0, {limit})", words.join("\n"))
        }
        PermSuite::Pipeline => {
            let prefix = prefix.unwrap_or(1 << 12);
            suite::check_even_pipeline(prefix)?;
            let demo = suite::check_reassembly(seed, prefix)?;
            format!(
                "even pipeline rebuilds 0↔2 on [0, {prefix})\nrandom permutation rebuilt as a {}-letter word in rol and all (M = {}) on [0, {prefix})",
                demo.word.0.len(),
                demo.generators.modulus()
            )
        }
    };
    report(format!("{text}\n"), json!({ "suite": format!("{which:?}").to_lowercase(), "result": text, "pass": true }))
}

pub fn suite(c: SuiteCommand) -> Result<Report> {
    let SuiteCommand::All { seed, quick } = c;
    let scale = if quick { Scale::quick() } else { Scale::full() };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for id in 1..=suite::NAMES.len() as u32 {
        let start = Instant::now();
        let o = suite::run_suite(id, seed, &scale);
        eprintln!("suite {id} finished in {:.3} s", start.elapsed().as_secs_f64());
        ok &= o.pass;
        let _ = writeln!(text, "{o}");
        rows.push(json!({ "id": o.id, "name": o.name, "pass": o.pass, "detail": o.detail }));
    }
    Ok(Report { text, json: json!({ "seed": seed.to_string(), "suites": rows }), ok })
}
