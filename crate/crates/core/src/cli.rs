//! The `exact-matching` command line.
//!
//! Exit status is 0 on success, 2 when a solve is impossible (and a verified
//! certificate is printed), 1 on usage or input errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use crate::coloring::{count_colors, verify_certificate, BalancedColoring, Matching};
use crate::generator::{
    make_circulant_instance, make_lemma1_instance, make_random_disconnected_instance, make_random_instance,
    GeneratorSeed,
};
use crate::io::{format_certificate, format_instance, format_matching, parse_binary_matrix, parse_instance, parse_matching};
use crate::oracle::{blue_components, enumerate_spectrum};
use crate::permanent::{ryser_permanent, select_zero_entries_with_witness};
use crate::solver::{solve, SolveResult};

/// Minors up to this size get an exact permanent; larger ones a matching witness.
pub const CLI_RYSER_LIMIT: usize = 20;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_IMPOSSIBLE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome { status: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        CommandOutcome { status: EXIT_ERROR, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Lemma1,
    Circulant,
    Random,
    RandomDisconnected,
}

#[derive(Debug, Parser)]
#[command(name = "exact-matching", version, about = "Perfect matchings with exactly k red edges in balanced colorings of K_{2n,2n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an instance file to standard output.
    Gen {
        #[arg(value_enum)]
        kind: Option<Kind>,
        #[arg(long = "kind", value_enum, conflicts_with = "kind")]
        kind_flag: Option<Kind>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attempted flips for `random`; defaults to 10 * (2n)^2.
        #[arg(long)]
        steps: Option<u64>,
    },
    /// Find a perfect matching with exactly k red edges.
    Solve {
        #[arg(long)]
        input: String,
        #[arg(long)]
        k: usize,
    },
    /// Check a matching file against an instance.
    Verify {
        #[arg(long)]
        input: String,
        #[arg(long)]
        matching: String,
    },
    /// Print the number of perfect matchings for every red count (n <= 5).
    Oracle {
        #[arg(long)]
        input: String,
    },
    /// List the connected components of the blue graph.
    Components {
        #[arg(long)]
        input: String,
    },
    /// Select k zero entries of a balanced 0/1 matrix keeping the minor's permanent nonzero.
    Permanent {
        #[arg(long)]
        input: String,
        #[arg(long)]
        k: usize,
    },
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn load_instance(path: &str) -> Result<BalancedColoring, String> {
    parse_instance(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}

fn join_one_based(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_gen(kind: Kind, n: usize, seed: u64, steps: Option<u64>) -> CommandOutcome {
    if n == 0 {
        return CommandOutcome::error("--n must be at least 1");
    }
    let c = match kind {
        Kind::Lemma1 => make_lemma1_instance(n),
        Kind::Circulant => make_circulant_instance(n),
        Kind::Random => {
            let steps = steps.unwrap_or(10 * (2 * n as u64).pow(2));
            make_random_instance(n, GeneratorSeed::new(seed, steps))
        }
        Kind::RandomDisconnected => make_random_disconnected_instance(n, seed),
    };
    CommandOutcome::ok(format_instance(&c))
}

fn cmd_solve(input: &str, k: usize) -> CommandOutcome {
    let c = match load_instance(input) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::error(e),
    };
    match solve(&c, k) {
        Ok(SolveResult::Found { matching, .. }) => CommandOutcome::ok(format_matching(&c, &matching)),
        Ok(SolveResult::Impossible { certificate }) => {
            if !verify_certificate(&c, &certificate) {
                return CommandOutcome::error("internal error: certificate failed verification");
            }
            CommandOutcome {
                status: EXIT_IMPOSSIBLE,
                stdout: format!("impossible\n{}", format_certificate(&certificate)),
                stderr: format!("no perfect matching has {k} red edges: the blue graph is two copies of K_{{n,n}}\n"),
            }
        }
        Err(e) => CommandOutcome::error(e),
    }
}

fn cmd_verify(input: &str, matching_path: &str) -> CommandOutcome {
    let c = match load_instance(input) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::error(e),
    };
    let lines = match read_input(matching_path).and_then(|t| parse_matching(&t).map_err(|e| format!("{matching_path}: {e}"))) {
        Ok(l) => l,
        Err(e) => return CommandOutcome::error(e),
    };
    let invalid = |reason: String| CommandOutcome {
        status: EXIT_ERROR,
        stdout: format!("invalid: {reason}\n"),
        stderr: String::new(),
    };
    let side = c.side();
    if let Some(l) = lines.iter().find(|l| l.left >= side || l.right >= side) {
        return invalid(format!("line {}: vertex index out of range 1..={side}", l.line));
    }
    for l in &lines {
        if let Some(color) = l.color {
            if c.color(l.left, l.right) != color {
                return invalid(format!("line {}: edge ({}, {}) is {}, not {color}", l.line, l.left + 1, l.right + 1, c.color(l.left, l.right)));
            }
        }
    }
    let edges: Vec<(usize, usize)> = lines.iter().map(|l| (l.left, l.right)).collect();
    let m = match Matching::from_edges(side, &edges) {
        Ok(m) => m,
        Err(e) => return invalid(e.to_string()),
    };
    let count = count_colors(&c, &m).expect("sizes agree");
    CommandOutcome::ok(format!("valid, red={} blue={}\n", count.red, count.blue))
}

fn cmd_oracle(input: &str) -> CommandOutcome {
    let c = match load_instance(input) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::error(e),
    };
    match enumerate_spectrum(&c) {
        Ok(s) => {
            let mut out = String::new();
            for (k, count) in s.counts().iter().enumerate() {
                writeln!(out, "{k} {count}").unwrap();
            }
            CommandOutcome::ok(out)
        }
        Err(e) => CommandOutcome::error(e),
    }
}

fn cmd_components(input: &str) -> CommandOutcome {
    let c = match load_instance(input) {
        Ok(c) => c,
        Err(e) => return CommandOutcome::error(e),
    };
    let report = blue_components(&c);
    let mut out = format!("components {}\n", report.count());
    for (idx, comp) in report.components.iter().enumerate() {
        writeln!(out, "component {} left {} right {}", idx + 1, join_one_based(&comp.left), join_one_based(&comp.right)).unwrap();
    }
    CommandOutcome::ok(out)
}

fn cmd_permanent(input: &str, k: usize) -> CommandOutcome {
    let m = match read_input(input).and_then(|t| parse_binary_matrix(&t).map_err(|e| format!("{input}: {e}"))) {
        Ok(m) => m,
        Err(e) => return CommandOutcome::error(e),
    };
    let sel = match select_zero_entries_with_witness(&m, k) {
        Ok(s) => s,
        Err(e) => return CommandOutcome::error(e),
    };
    let mut out = String::new();
    for &(r, c) in &sel.zeros {
        writeln!(out, "zero {} {}", r + 1, c + 1).unwrap();
    }
    let minor = m.minor(&sel.rows(), &sel.cols());
    writeln!(out, "minor {}", minor.size()).unwrap();
    if minor.size() <= CLI_RYSER_LIMIT {
        match ryser_permanent(&minor) {
            Ok(p) if p > 0 => writeln!(out, "permanent {p}").unwrap(),
            Ok(_) => return CommandOutcome::error("internal error: minor has zero permanent"),
            Err(e) => return CommandOutcome::error(e),
        }
    } else {
        for &(r, c) in &sel.witness {
            writeln!(out, "witness {} {}", r + 1, c + 1).unwrap();
        }
    }
    CommandOutcome::ok(out)
}

/// Runs the CLI on `args` (including the program name) without touching the process state.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome::ok(text),
                _ => CommandOutcome { status: EXIT_ERROR, stdout: String::new(), stderr: text },
            };
        }
    };
    match cli.command {
        Command::Gen { kind, kind_flag, n, seed, steps } => match kind.or(kind_flag) {
            Some(kind) => cmd_gen(kind, n, seed, steps),
            None => CommandOutcome::error("gen needs a kind: lemma1, circulant, random or random-disconnected"),
        },
        Command::Solve { input, k } => cmd_solve(&input, k),
        Command::Verify { input, matching } => cmd_verify(&input, &matching),
        Command::Oracle { input } => cmd_oracle(&input),
        Command::Components { input } => cmd_components(&input),
        Command::Permanent { input, k } => cmd_permanent(&input, k),
    }
}
