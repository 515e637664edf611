mod cache;
mod commands;
mod emit;
mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use input::InputArgs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "krull-arith",
    version,
    about = "Factorization arithmetic of Krull monoids via block monoids"
)]
struct Cli {
    /// Worker threads; 1 runs sequentially, omitted uses all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for cached reports.
    #[arg(long, global = true, env = "KRULL_ARITH_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Product or size bound for bounded searches.
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true, visible_alias = "report")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the atoms of B(G0).
    Atoms(InputArgs),
    /// All factorizations of one block.
    Factorize(FactorizeArgs),
    /// Arithmetical invariants with exactness flags and expectation checks.
    Invariants(InvariantArgs),
    /// Bounded verification of the two transfer conditions.
    TransferCheck(TransferArgs),
    /// Count atoms of the monoid over a characteristic.
    AtomCount(AtomCountArgs),
    /// List or build presets.
    #[command(subcommand)]
    Preset(PresetCommand),
    /// Sets of lengths: listing, membership, sumsets, fitting, closure probes.
    Lengths(LengthArgs),
    /// Split the alphabet into independent components.
    Decompose(InputArgs),
    /// Decide whether the class data describes a divisor theory.
    DivisorTheory(InputArgs),
}

#[derive(Args)]
pub struct FactorizeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Block written as `g^k * h * …`, e.g. `(1)^2 * (-2)`.
    #[arg(long)]
    block: String,
    #[arg(long, default_value_t = 1_000_000)]
    limit: usize,
}

#[derive(Args)]
pub struct InvariantArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Product bound for catenary sweeps (defaults to min(bound, 4)).
    #[arg(long)]
    catenary_bound: Option<u32>,
    /// Largest k for which U_k is reported.
    #[arg(long, default_value_t = 4)]
    unions: u32,
    /// Comma-separated subset of: delta, delta_star, unions, elasticity, omega, tame, catenary, abs_irred.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Node limit for minimal-cover searches.
    #[arg(long, default_value_t = 200_000_000)]
    max_nodes: u64,
    /// Add wall-clock timings to the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
pub struct TransferArgs {
    /// prop712, prop713, collapse, or a map file (inline JSON or path).
    #[arg(long)]
    map: String,
    /// Skip the length-preservation comparison.
    #[arg(long)]
    no_lengths: bool,
}

#[derive(Args)]
pub struct AtomCountArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also count by brute force over labeled primes, up to this many primes.
    #[arg(long)]
    brute_force: Option<u64>,
}

#[derive(Subcommand)]
enum PresetCommand {
    /// Names of the preset families and their parameters.
    List,
    /// Build a preset and print (or write with --out) its alphabet file.
    Build(Box<InputArgs>),
}

#[derive(Args)]
pub struct LengthArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Search for sumsets of length sets that are not length sets.
    #[arg(long)]
    closure_probe: bool,
    /// Verification bound of the closure probe (default: twice --bound).
    #[arg(long)]
    verify_bound: Option<u32>,
    /// L(B) of one block, with progression and AAMP fits.
    #[arg(long)]
    block: Option<String>,
    /// Membership in a closed-form system: C3, C4 or thm74:r,alpha.
    #[arg(long)]
    member: Option<String>,
    /// A finite set of lengths, e.g. `2,3,5`.
    #[arg(long, value_name = "SET")]
    lengths: Option<String>,
    /// Second set for `--lengths A --sumset B`.
    #[arg(long, value_name = "SET")]
    sumset: Option<String>,
    /// Fit `--lengths` as a progression and as an AAMP with this difference.
    #[arg(long)]
    fit: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = krull_core::Exec::from_threads(cli.threads);
    let ctx = commands::Context {
        exec,
        bound: cli.bound,
        cache_dir: cli.cache_dir.clone(),
    };
    let result = exec.install(|| match &cli.command {
        Command::Atoms(a) => commands::atoms(&ctx, a),
        Command::Factorize(a) => commands::factorize(&ctx, a),
        Command::Invariants(a) => commands::invariants(&ctx, a),
        Command::TransferCheck(a) => commands::transfer_check(&ctx, a),
        Command::AtomCount(a) => commands::atom_count(&ctx, a),
        Command::Preset(PresetCommand::List) => commands::preset_list(),
        Command::Preset(PresetCommand::Build(a)) => commands::preset_build(a),
        Command::Lengths(a) => commands::lengths(&ctx, a),
        Command::Decompose(a) => commands::decompose(&ctx, a),
        Command::DivisorTheory(a) => commands::divisor_theory(&ctx, a),
    });
    match result.and_then(|o| emit::write(&o, cli.format, cli.out.as_deref()).map(|_| o.mismatch)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
