//! Minsky machines: program text, simulation and reduction to one-tape reads.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A head move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Stay,
    Right,
}

impl Move {
    /// `−1`, `0` or `1`.
    pub fn delta(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Stay => 0,
            Move::Right => 1,
        }
    }

    fn from_char(c: char) -> Option<Move> {
        match c {
            'L' => Some(Move::Left),
            'N' => Some(Move::Stay),
            'R' => Some(Move::Right),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Stay => 'N',
            Move::Right => 'R',
        }
    }
}

/// A machine configuration `(x₁,…,x_k; q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub heads: Vec<u64>,
    pub state: usize,
}

impl Configuration {
    /// The initial configuration for `input`: heads at the inputs, the rest at 0, state 1.
    pub fn initial(k: usize, input: &[u64]) -> Result<Configuration> {
        if input.len() > k {
            return Err(Error::domain(format!("{} inputs for {k} tapes", input.len())));
        }
        let mut heads = input.to_vec();
        heads.resize(k, 0);
        Ok(Configuration { heads, state: 1 })
    }

    /// Symbols under the heads: 1 exactly at the end cell.
    pub fn read(&self) -> Vec<u8> {
        self.heads.iter().map(|&x| (x == 0) as u8).collect()
    }
}

fn apply_moves(heads: &mut [u64], moves: &[Move]) -> Result<()> {
    for (h, m) in heads.iter_mut().zip(moves) {
        *h = h
            .checked_add_signed(m.delta())
            .ok_or_else(|| Error::domain("a head moved left of the end cell"))?;
    }
    Ok(())
}

/// A general `k`-tape machine: `e₁…e_k q → d₁…d_k q′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinskyMachine {
    tapes: usize,
    states: usize,
    commands: BTreeMap<(Vec<u8>, usize), (Vec<Move>, usize)>,
}

impl MinskyMachine {
    /// An empty program.
    pub fn new(tapes: usize, states: usize) -> Result<MinskyMachine> {
        if tapes == 0 || states == 0 {
            return Err(Error::domain("machines need a tape and a state"));
        }
        Ok(MinskyMachine { tapes, states, commands: BTreeMap::new() })
    }

    /// Adds a command; rejects duplicates and moves left off a read end cell.
    pub fn add(&mut self, read: &[u8], q: usize, moves: &[Move], next: usize) -> Result<()> {
        let k = self.tapes;
        if read.len() != k || moves.len() != k {
            return Err(Error::domain(format!("commands need {k} symbols and moves")));
        }
        if q == 0 || q >= self.states || next >= self.states {
            return Err(Error::domain(format!("state out of range in command for state {q}")));
        }
        if read.iter().any(|&e| e > 1) {
            return Err(Error::domain("read symbols are 0 or 1"));
        }
        if read.iter().zip(moves).any(|(&e, &d)| e == 1 && d == Move::Left) {
            return Err(Error::domain("a head reading the end cell cannot move left"));
        }
        if self.commands.insert((read.to_vec(), q), (moves.to_vec(), next)).is_some() {
            return Err(Error::domain(format!("duplicate command for state {q} reading {read:?}")));
        }
        Ok(())
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// The command for `(e, q)`, if any.
    pub fn command(&self, read: &[u8], q: usize) -> Option<&(Vec<Move>, usize)> {
        self.commands.get(&(read.to_vec(), q))
    }

    /// One step; the final configuration is a fixpoint.
    pub fn step(&self, c: &Configuration) -> Result<Configuration> {
        if c.state == 0 {
            return Ok(c.clone());
        }
        let read = c.read();
        let (moves, next) =
            self.command(&read, c.state).ok_or(Error::Stuck { state: c.state, read: read.clone() })?;
        let mut heads = c.heads.clone();
        apply_moves(&mut heads, moves)?;
        Ok(Configuration { heads, state: *next })
    }
}

/// One row `q → i; d⁰ q⁰; d¹ q¹` of a reduced machine (`i` is 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedCommand {
    pub tape: usize,
    /// Taken when the head on `tape` reads 0.
    pub on_zero: (Vec<Move>, usize),
    /// Taken when it reads 1 (the end cell).
    pub on_one: (Vec<Move>, usize),
}

/// A machine that reads one tape per state; row `q−1` belongs to state `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMachine {
    tapes: usize,
    rows: Vec<ReducedCommand>,
}

impl ReducedMachine {
    /// Builds from the `s − 1` rows of states `1..s`.
    pub fn new(tapes: usize, rows: Vec<ReducedCommand>) -> Result<ReducedMachine> {
        let states = rows.len() + 1;
        for (q, row) in rows.iter().enumerate() {
            let q = q + 1;
            if row.tape == 0 || row.tape > tapes {
                return Err(Error::domain(format!("state {q} reads tape {} of {tapes}", row.tape)));
            }
            for (moves, next) in [&row.on_zero, &row.on_one] {
                if moves.len() != tapes || *next >= states {
                    return Err(Error::domain(format!("malformed branch in state {q}")));
                }
            }
            if row.on_one.0[row.tape - 1] == Move::Left {
                return Err(Error::domain(format!("state {q} moves left off the end cell")));
            }
        }
        Ok(ReducedMachine { tapes, rows })
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    /// Number of states, the final state included.
    pub fn states(&self) -> usize {
        self.rows.len() + 1
    }

    /// Rows of states `1..s`.
    pub fn rows(&self) -> &[ReducedCommand] {
        &self.rows
    }

    /// One step; the final configuration is a fixpoint.
    pub fn step(&self, c: &Configuration) -> Result<Configuration> {
        if c.state == 0 {
            return Ok(c.clone());
        }
        let row = &self.rows[c.state - 1];
        let (moves, next) = if c.heads[row.tape - 1] == 0 { &row.on_one } else { &row.on_zero };
        let mut heads = c.heads.clone();
        apply_moves(&mut heads, moves)?;
        Ok(Configuration { heads, state: *next })
    }
}

/// Either kind of program, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    General(MinskyMachine),
    Reduced(ReducedMachine),
}

impl Machine {
    pub fn tapes(&self) -> usize {
        match self {
            Machine::General(m) => m.tapes(),
            Machine::Reduced(m) => m.tapes(),
        }
    }

    pub fn states(&self) -> usize {
        match self {
            Machine::General(m) => m.states(),
            Machine::Reduced(m) => m.states(),
        }
    }

    /// One step of either kind.
    pub fn step(&self, c: &Configuration) -> Result<Configuration> {
        match self {
            Machine::General(m) => m.step(c),
            Machine::Reduced(m) => m.step(c),
        }
    }

    /// The reduced form; reduced programs are returned as they are.
    pub fn to_reduced(&self) -> ReducedMachine {
        match self {
            Machine::General(m) => reduce(m),
            Machine::Reduced(m) => m.clone(),
        }
    }

    /// Parses the line-based program format.
    ///
    /// ```text
    /// tapes 1
    /// states 2
    /// 0 1 -> R 0        # general: E1..EK Q -> D1..DK Q'
    /// 1 -> 1 ; R 0 ; R 0  # reduced: Q -> I ; D.. Q0 ; D.. Q1
    /// ```
    pub fn parse(text: &str) -> Result<Machine> {
        parse_machine(text)
    }
}

/// Result of [`run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    /// Position of the first head at the final state.
    pub output: u64,
    /// Number of steps `T_M`.
    pub steps: u64,
    /// The final configuration.
    pub last: Configuration,
}

/// Runs from `(x₁..xₙ, 0..0; 1)` until the final state.
pub fn run(m: &Machine, input: &[u64], max_steps: u64) -> Result<RunResult> {
    if m.states() < 2 {
        return Err(Error::domain("the initial state 1 does not exist"));
    }
    let mut c = Configuration::initial(m.tapes(), input)?;
    let mut steps = 0;
    while c.state != 0 {
        if steps == max_steps {
            return Err(Error::StepBudget(max_steps));
        }
        c = m.step(&c)?;
        steps += 1;
    }
    Ok(RunResult { output: c.heads[0], steps, last: c })
}

/// Simulates each general step with `k` single-tape reads.
///
/// State `(q, j, b)` has read tapes `1..j` with bits `b` and reads tape
/// `j+1`; after the last read it applies the general command and enters
/// `(q′, 0, 0)`. State `(1,0,0)` is numbered 1. A missing general command
/// leads to a trap state that loops without moving.
pub fn reduce(m: &MinskyMachine) -> ReducedMachine {
    let k = m.tapes();
    let per = (1usize << k) - 1;
    let start = |q: usize| if q == 0 { 0 } else { 1 + (q - 1) * per };
    let index = |q: usize, j: usize, b: usize| start(q) + (1usize << j) - 1 + b;
    let stay = vec![Move::Stay; k];
    let trap = 1 + (m.states() - 1) * per;
    let mut needs_trap = false;
    let mut rows = Vec::with_capacity(trap);
    for q in 1..m.states() {
        for j in 0..k {
            for b in 0..1usize << j {
                let branch = |e: usize, needs_trap: &mut bool| {
                    let bits = b | e << j;
                    if j + 1 < k {
                        return (stay.clone(), index(q, j + 1, bits));
                    }
                    let read: Vec<u8> = (0..k).map(|i| (bits >> i & 1) as u8).collect();
                    match m.command(&read, q) {
                        Some((moves, next)) => (moves.clone(), start(*next)),
                        None => {
                            *needs_trap = true;
                            (stay.clone(), trap)
                        }
                    }
                };
                let on_zero = branch(0, &mut needs_trap);
                let on_one = branch(1, &mut needs_trap);
                rows.push(ReducedCommand { tape: j + 1, on_zero, on_one });
            }
        }
    }
    if needs_trap {
        rows.push(ReducedCommand { tape: 1, on_zero: (stay.clone(), trap), on_one: (stay, trap) });
    }
    ReducedMachine::new(k, rows).expect("reduction preserves well-formedness")
}

fn parse_machine(text: &str) -> Result<Machine> {
    let mut tapes = None;
    let mut states = None;
    let mut general = Vec::new();
    let mut reduced = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse { pos: no + 1, msg: msg.into() };
        let mut words = line.split_whitespace();
        match words.next() {
            Some("tapes") => tapes = Some(words.next().and_then(|w| w.parse().ok()).ok_or(err("bad tape count"))?),
            Some("states") => {
                states = Some(words.next().and_then(|w| w.parse().ok()).ok_or(err("bad state count"))?)
            }
            _ => {
                let (lhs, rhs) = line.split_once("->").ok_or(err("expected `->`"))?;
                if rhs.contains(';') {
                    reduced.push((no + 1, lhs.to_string(), rhs.to_string()));
                } else {
                    general.push((no + 1, lhs.to_string(), rhs.to_string()));
                }
            }
        }
    }
    let k: usize = tapes.ok_or(Error::Parse { pos: 0, msg: "missing `tapes`".into() })?;
    let s: usize = states.ok_or(Error::Parse { pos: 0, msg: "missing `states`".into() })?;
    if !general.is_empty() && !reduced.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "mixed general and reduced commands".into() });
    }
    if reduced.is_empty() {
        let mut m = MinskyMachine::new(k, s)?;
        for (no, lhs, rhs) in general {
            let at = |e: Error| match e {
                Error::Domain(msg) => Error::Parse { pos: no, msg },
                e => e,
            };
            let (read, q) = split_last(&lhs, no)?;
            let read: Vec<u8> = read
                .chars()
                .map(|c| c.to_digit(2).map(|d| d as u8))
                .collect::<Option<_>>()
                .ok_or(Error::Parse { pos: no, msg: "read symbols are 0 or 1".into() })?;
            let (moves, next) = parse_branch(&rhs, no)?;
            m.add(&read, q, &moves, next).map_err(at)?;
        }
        return Ok(Machine::General(m));
    }
    let mut rows: Vec<Option<ReducedCommand>> = vec![None; s.saturating_sub(1)];
    for (no, lhs, rhs) in reduced {
        let q: usize = lhs.trim().parse().map_err(|_| Error::Parse { pos: no, msg: "bad state".into() })?;
        let parts: Vec<&str> = rhs.split(';').collect();
        if parts.len() != 3 || q == 0 || q >= s {
            return Err(Error::Parse { pos: no, msg: "expected `Q -> I ; D.. Q0 ; D.. Q1`".into() });
        }
        let tape = parts[0].trim().parse().map_err(|_| Error::Parse { pos: no, msg: "bad tape".into() })?;
        let on_zero = parse_branch(parts[1], no)?;
        let on_one = parse_branch(parts[2], no)?;
        if rows[q - 1].replace(ReducedCommand { tape, on_zero, on_one }).is_some() {
            return Err(Error::Parse { pos: no, msg: format!("duplicate row for state {q}") });
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(Error::Parse { pos: 0, msg: format!("no row for state {}", i + 1) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Machine::Reduced(ReducedMachine::new(k, rows)?))
}

/// Splits `"<symbols…> <number>"` into the joined symbols and the number.
fn split_last(side: &str, no: usize) -> Result<(String, usize)> {
    let words: Vec<&str> = side.split_whitespace().collect();
    let (last, rest) = words.split_last().ok_or(Error::Parse { pos: no, msg: "empty side".into() })?;
    let n = last.parse().map_err(|_| Error::Parse { pos: no, msg: format!("bad state `{last}`") })?;
    Ok((rest.concat(), n))
}

fn parse_branch(side: &str, no: usize) -> Result<(Vec<Move>, usize)> {
    let (moves, next) = split_last(side, no)?;
    let moves = moves
        .chars()
        .map(Move::from_char)
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::Parse { pos: no, msg: "moves are L, N or R".into() })?;
    Ok((moves, next))
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mv = |m: &[Move]| m.iter().map(|d| d.as_char()).collect::<String>();
        writeln!(f, "tapes {}", self.tapes())?;
        writeln!(f, "states {}", self.states())?;
        match self {
            Machine::General(m) => {
                for ((read, q), (moves, next)) in &m.commands {
                    let e: String = read.iter().map(|b| char::from(b'0' + b)).collect();
                    writeln!(f, "{e} {q} -> {} {next}", mv(moves))?;
                }
            }
            Machine::Reduced(m) => {
                for (i, row) in m.rows.iter().enumerate() {
                    writeln!(
                        f,
                        "{} -> {} ; {} {} ; {} {}",
                        i + 1,
                        row.tape,
                        mv(&row.on_zero.0),
                        row.on_zero.1,
                        mv(&row.on_one.0),
                        row.on_one.1
                    )?;
                }
            }
        }
        Ok(())
    }
}
