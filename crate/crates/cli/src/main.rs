//! `fairdiv`: solvers, fairness checks, allocation procedures and the
//! verification suites from the command line.
//!
//! Exit codes: 0 success, satisfied or found; 1 violated, not found or not
//! as expected; 2 usage or input error; 3 search budget exhausted.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use fairdiv::harness::ValuationFamily;
use fairdiv::{Notion, Rational};

#[derive(Debug, Parser)]
#[command(name = "fairdiv", version, about = "Exact fair division of indivisible goods")]
struct Cli {
    /// Print the JSON document instead of the text view.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an allocation procedure.
    Solve(SolveArgs),
    /// Check an allocation against a fairness notion.
    Check(CheckArgs),
    /// Maximin share of an agent and a partition attaining it.
    Mms(PartitionArgs),
    /// Leximin partition under an agent's valuation.
    Leximin(PartitionArgs),
    /// Minimax partition under an agent's valuation.
    Minimax(PartitionArgs),
    /// Search all allocations for one meeting a requirement.
    Search(SearchArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// List, dump or re-check the bundled fixtures.
    Examples(ExamplesArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    /// Matching rounds with envy-cycle elimination (any number of agents).
    Matching,
    /// Divide and choose for three additive agents.
    ThreeAgents,
    /// Leximin partition for agents sharing one valuation.
    IdenticalLeximin,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Include the per-round trace.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    max_nodes: Option<u64>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    allocation: PathBuf,
    #[arg(long)]
    notion: Notion,
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    alpha: Rational,
    #[arg(long)]
    max_nodes: Option<u64>,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    #[arg(long)]
    instance: PathBuf,
    /// 1-based agent whose valuation is used.
    #[arg(long)]
    agent: usize,
    /// Number of parts.
    #[arg(long)]
    k: usize,
    /// Comma-separated 1-based goods; all goods when omitted.
    #[arg(long, value_delimiter = ',')]
    goods: Vec<usize>,
    #[arg(long)]
    max_nodes: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["notion", "min_value"])))]
struct SearchArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    notion: Option<Notion>,
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    alpha: Rational,
    /// Require every bundle to be worth at least this much to its owner.
    #[arg(long, value_parser = parse_rational)]
    min_value: Option<Rational>,
    #[arg(long)]
    max_nodes: Option<u64>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    family: ValuationFamily,
    #[arg(long)]
    agents: usize,
    #[arg(long)]
    goods: usize,
    #[arg(long)]
    seed: u64,
    /// Position in the seeded instance stream.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Claim id, `all`, or `egalitarian-bounds`.
    #[arg(long, required_unless_present = "list")]
    claim: Option<String>,
    #[arg(long, required_unless_present = "list")]
    seed: Option<u64>,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// List the claim ids.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Args)]
struct ExamplesArgs {
    /// Restrict to one fixture; alone, prints the whole entry.
    #[arg(long)]
    id: Option<String>,
    /// Write `<id>.json` and `<id>.alloc<k>.json` files into this directory.
    #[arg(long, conflicts_with = "reproduce")]
    dump: Option<PathBuf>,
    /// Re-run every expected verdict, share and search.
    #[arg(long)]
    reproduce: bool,
    /// With --reproduce, include the expensive searches.
    #[arg(long, requires = "reproduce")]
    slow: bool,
    #[arg(long)]
    max_nodes: Option<u64>,
}

fn parse_rational(text: &str) -> Result<Rational, fairdiv::Error> {
    fairdiv::rational(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(out) => {
            match (&out.raw, cli.json) {
                (Some(raw), _) => print!("{raw}"),
                (None, true) => println!("{}", serde_json::to_string_pretty(&out.value).expect("JSON value")),
                (None, false) => print!("{}", render::human(&out.value)),
            }
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
