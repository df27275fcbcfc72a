mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Ordinal data science toolkit.
#[derive(Parser, Debug)]
#[command(name = "odsk", version, about)]
pub struct Cli {
    /// Emit JSON instead of line-oriented text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the formal concepts of a context.
    Concepts {
        context: PathBuf,
        /// Label concepts by their own objects and attributes only.
        #[arg(long)]
        reduced_labels: bool,
    },
    /// Print the canonical implication base.
    Implications { context: PathBuf },
    /// Test whether a context is a Guttman scale.
    Guttman { context: PathBuf },
    /// Dedekind-MacNeille completion of an edge-list poset.
    Complete { poset: PathBuf },
    /// Exact order dimension with a realizer, or bounds.
    Dimension {
        /// Edge list, or a CSV table together with --spec.
        input: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        /// Overrides ODSK_BUDGET_MS.
        #[arg(long)]
        budget_ms: Option<u64>,
        /// With --spec: order rows by componentwise <= instead of strict
        /// improvement in every column.
        #[arg(long)]
        weak: bool,
        /// With --weak: keep rows tied in every column as separate
        /// incomparable elements.
        #[arg(long)]
        no_quotient: bool,
    },
    /// Pareto maxima of a table under its ordinal scales.
    Pareto {
        table: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Check Pts = 3W + D and that ranking by Pts then GD extends the
        /// domination order.
        #[arg(long)]
        verify_points: bool,
    },
    /// Domination order of a table as an edge list: a row lies below
    /// another when it is strictly worse in every ordinal column.
    Domination {
        table: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Use componentwise <= instead.
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        no_quotient: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scale a many-valued table into a formal context.
    Scale {
        table: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Ordinal (or Boolean) factorization.
    Factors {
        context: PathBuf,
        #[arg(short, default_value_t = 2)]
        k: usize,
        /// Greedy Boolean factors instead of chains.
        #[arg(long)]
        boolean: bool,
    },
    /// Ordered metric space analytics.
    Omspace {
        #[command(subcommand)]
        command: OmCommand,
    },
    /// Draw an order diagram.
    Draw(DrawArgs),
}

#[derive(Subcommand, Debug)]
pub enum OmCommand {
    /// Relational distortion of a relation against a metric.
    Distortion {
        relation: PathBuf,
        distances: PathBuf,
        /// Use the pairs as listed instead of their order closure.
        #[arg(long)]
        raw_relation: bool,
        /// Add loops so every element relates to itself.
        #[arg(long)]
        reflexive_close: bool,
    },
    /// Hausdorff distances between attribute extents.
    Mediate { context: PathBuf, distances: PathBuf },
}

#[derive(Args, Debug)]
pub struct DrawArgs {
    /// Edge list, or a `.cxt` context whose concept lattice is drawn.
    pub input: PathBuf,
    #[arg(long, default_value = "dimdraw")]
    pub algo: String,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// svg or dot; defaults from the output extension, else svg.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub reduced_labels: bool,
    #[arg(long)]
    pub budget_ms: Option<u64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(commands::Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Budget(out)) => {
            print!("{out}");
            eprintln!("error: budget exceeded");
            ExitCode::from(3)
        }
    }
}
