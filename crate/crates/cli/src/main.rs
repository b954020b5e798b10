//! `recfun`: evaluate formulas, run constructions and verify them against
//! their oracles from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use recfun::error::Error;
use recfun::natcore;

/// Exact arithmetic constructions with oracle checks.
#[derive(Debug, Parser)]
#[command(name = "recfun", version, about)]
struct Cli {
    /// Print a JSON report; numbers are decimal strings.
    #[arg(long, global = true)]
    json: bool,
    /// Bit budget for intermediate values, overriding RECFUN_BIT_BUDGET.
    #[arg(long, global = true, value_name = "BITS")]
    bit_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula such as `add(x,pow2(y))`.
    Eval {
        expr: String,
        /// Variable bindings `name=value`.
        #[arg(long, value_delimiter = ',', value_name = "K=V,..")]
        env: Vec<String>,
    },
    /// Exponent height of a formula.
    Height {
        expr: String,
        #[arg(long, default_value = "exp2", value_parser = ["exp2", "powxy"])]
        tower: String,
    },
    /// Binomial coefficient through its closed formula.
    Binom { x: u64, y: u64 },
    /// Generating functions of predicates.
    #[command(subcommand)]
    Genfn(GenfnCommand),
    /// FO[M] formulas over binary words.
    #[command(subcommand)]
    Fom(FomCommand),
    /// Minsky machines and their compilation to Q.
    #[command(subcommand)]
    Minsky(MinskyCommand),
    /// Permutation constructions.
    #[command(subcommand)]
    Perm(PermCommand),
    /// Seeded oracle suites.
    #[command(subcommand)]
    Suite(SuiteCommand),
}

#[derive(Debug, Subcommand)]
pub enum GenfnCommand {
    /// Brute-force generating function of `P op Q` at `y`.
    Brute {
        /// A comparison of polynomials, e.g. `x1 + 1 >= x2`.
        #[arg(long)]
        pred: String,
        #[arg(long)]
        y: u64,
        /// Minimum arity of the predicate.
        #[arg(long, default_value_t = 1)]
        arity: usize,
    },
    /// Counting construction at `z`, checked against brute force.
    Count {
        #[arg(long)]
        pred: String,
        /// Bound polynomial `p`: count witnesses `x < p(args)`.
        #[arg(long)]
        bound: String,
        #[arg(long)]
        z: u64,
        #[arg(long, default_value_t = 1)]
        arity: usize,
    },
    /// Recover `f(args)` from the generating function of its bit graph.
    Extract {
        /// The target function as a formula in `x1, x2, ..` (`x` for one argument).
        #[arg(long = "fn", value_name = "EXPR")]
        function: String,
        /// Bit-length bound `t` with `f < 2^t`.
        #[arg(long)]
        bound: String,
        #[arg(long, value_delimiter = ',', required = true)]
        args: Vec<u64>,
    },
}

#[derive(Debug, Args)]
pub struct FomArgs {
    /// File holding one s-expression formula.
    pub file: String,
    /// The word as a 0/1 string.
    #[arg(long)]
    pub word: String,
    /// Number of variables, at least the largest index used.
    #[arg(long)]
    pub arity: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum FomCommand {
    /// Model-check every assignment, or one given with `--assign`.
    Eval {
        #[command(flatten)]
        args: FomArgs,
        #[arg(long, value_delimiter = ',')]
        assign: Vec<u64>,
    },
    /// Compile to an arithmetic table and evaluate it on the word.
    Compile {
        #[command(flatten)]
        args: FomArgs,
    },
    /// Compare every compiled cell with the model checker.
    Verify {
        #[command(flatten)]
        args: FomArgs,
    },
}

#[derive(Debug, Args)]
pub struct MinskyArgs {
    /// Machine description file.
    pub file: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub input: Vec<u64>,
    /// Running-time bound; defaults to the measured step count.
    #[arg(long, value_name = "P")]
    pub time_poly: Option<String>,
    #[arg(long, default_value_t = 1_000_000, value_name = "N")]
    pub max_steps: u64,
}

#[derive(Debug, Subcommand)]
pub enum MinskyCommand {
    /// Simulate the machine.
    Run {
        #[command(flatten)]
        args: MinskyArgs,
    },
    /// Compile to Q and evaluate.
    Compile {
        #[command(flatten)]
        args: MinskyArgs,
    },
    /// Compile, evaluate, and compare with the simulator and the Q property.
    Verify {
        #[command(flatten)]
        args: MinskyArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PermSuite {
    /// Named permutations are bijective on the prefix.
    Codes,
    /// Delete combinator, odd-entry deletion and megadelete.
    Delete,
    /// Words in rol and all for `n` triples.
    Rolall,
    /// Even-matching pipeline and the reassembly of a random permutation.
    Pipeline,
}

#[derive(Debug, Subcommand)]
pub enum PermCommand {
    /// Run one identity suite on a prefix.
    Verify {
        #[arg(long, value_enum)]
        suite: PermSuite,
        /// Number of triples for `rolall`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Prefix length; `rolall` defaults to `2^{2n+1}·64`.
        #[arg(long)]
        prefix: Option<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCommand {
    /// Run every suite and print one line each; wall times go to stderr.
    All {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Reduced instance sizes.
        #[arg(long)]
        quick: bool,
    },
}

/// What a command produced.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } | Error::StepBudget(_) => 3,
        Error::Parse { .. } | Error::Domain(_) | Error::Unbound(_) => 2,
        Error::Stuck { .. } | Error::Hypothesis { .. } | Error::Mismatch(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(bits) = cli.bit_budget {
        natcore::set_bit_budget(bits);
    }
    let result = match cli.command {
        Command::Eval { expr, env } => commands::eval(&expr, &env),
        Command::Height { expr, tower } => commands::height(&expr, &tower),
        Command::Binom { x, y } => commands::binom(x, y),
        Command::Genfn(c) => commands::genfn(c),
        Command::Fom(c) => commands::fom(c),
        Command::Minsky(c) => commands::minsky(c),
        Command::Perm(c) => commands::perm(c),
        Command::Suite(c) => commands::suite(c),
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let kind = match exit_code(&e) {
                    3 => "budget",
                    2 => "usage",
                    _ => "verification",
                };
                println!("{}", serde_json::json!({ "error": e.to_string(), "kind": kind }));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
