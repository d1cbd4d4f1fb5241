mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Weighted ω-context-free grammars, Greibach normal forms and pushdown automata.
#[derive(Parser, Debug)]
#[command(name = "omegalg", version)]
pub struct Cli {
    /// Rounds allowed to fixed-point evaluations before reporting "inconclusive".
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_rounds: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a grammar file and print a JSON summary.
    Parse { path: PathBuf },
    /// Transform a grammar into Greibach normal form.
    Gnf {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Omega)]
        target: Target,
        /// Büchi count; defaults to `@buchi` or 1.
        #[arg(long)]
        buchi: Option<usize>,
        /// Designated ω-variable; defaults to `@start` or the last one.
        #[arg(long)]
        component: Option<String>,
        /// Where to write the output grammar.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the induced simple reset pushdown automaton of a GNF grammar.
    BuildPda {
        path: PathBuf,
        /// Start variable, by name or 1-based index.
        #[arg(long)]
        start: Option<String>,
        /// x-variable whose finite behavior the automaton also accepts.
        #[arg(long)]
        finite: Option<String>,
        #[arg(long)]
        buchi: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also write the automaton as JSON.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also write the automaton as a dot graph.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Evaluate a grammar or automaton (`.json`) on a word or a lasso `u:v`.
    Eval {
        path: PathBuf,
        #[arg(long, conflicts_with = "lasso")]
        word: Option<String>,
        #[arg(long)]
        lasso: Option<String>,
        /// List every word up to this length with a nonzero coefficient.
        #[arg(long, conflicts_with_all = ["word", "lasso"])]
        maxlen: Option<usize>,
        /// Variable to evaluate; defaults to `@start`.
        #[arg(long)]
        component: Option<String>,
        #[arg(long)]
        buchi: Option<usize>,
    },
    /// Run a self-check suite.
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per property.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Golden values for the examples suite.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    Mixed,
    Omega,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Examples,
    Oracle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code.into(),
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code.into()
        }
    }
}
