use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dimerlab::commands::{self, Options};

/// Dimer model toolkit: validation, zigzag paths, R-charges, matchings,
/// bounded rewriting, and the consistency cross-check table.
#[derive(Parser)]
#[command(name = "dimerlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural axioms and report witnesses
    Validate {
        file: PathBuf,
        /// output format
        #[arg(long, value_parser = ["text", "json"], default_value = "text")]
        format: String,
    },
    /// Counts, Euler characteristic, genus, and degrees
    Info { file: PathBuf },
    /// Zigzag paths and the zigzag consistency condition
    Zigzag {
        file: PathBuf,
        /// print the cover labeling of every arrow
        #[arg(long)]
        labeling: bool,
    },
    /// Consistent R-charges: linear feasibility and the direction construction
    Rcharge {
        file: PathBuf,
        /// verification tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Build the embedding with isoradial cycles
    Embed {
        file: PathBuf,
        /// write an SVG rendering here
        #[arg(long)]
        svg: Option<PathBuf>,
        /// include the face circles in the SVG
        #[arg(long)]
        circles: bool,
        /// charge verification tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Enumerate perfect matchings
    Matchings {
        file: PathBuf,
        /// print the translation-class tally relative to the first matching
        #[arg(long)]
        tally: bool,
    },
    /// Bounded cancellation oracle over the rewriting closure
    Cancel {
        file: PathBuf,
        /// word length bound
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// word budget
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Exponent lattice and bounded algebraic consistency
    Balgebra {
        file: PathBuf,
        /// degree bound
        #[arg(long, default_value_t = 6)]
        bound: usize,
        /// word budget
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Truncated complex exactness per vertex
    Cy3 {
        file: PathBuf,
        /// truncation window
        #[arg(long, default_value_t = 8)]
        window: usize,
        /// safe window (defaults to the largest leak-free value)
        #[arg(long)]
        safe: Option<usize>,
        /// word budget
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
        /// dump component shapes
        #[arg(long)]
        dump: bool,
    },
    /// Run every applicable check and cross-compare the verdicts
    Summary {
        file: PathBuf,
        /// rewriting length bound for the cancellation oracle
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// degree bound for algebraic consistency
        #[arg(long = "algcon-bound", default_value_t = 6)]
        algcon_bound: usize,
        /// truncation window for the complex
        #[arg(long, default_value_t = 8)]
        window: usize,
        /// safe window override
        #[arg(long)]
        safe: Option<usize>,
        /// word budget
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
        /// verification tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// output format
        #[arg(long, value_parser = ["text", "json"], default_value = "text")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { file, format } => commands::cmd_validate(&file, format == "json"),
        Command::Info { file } => commands::cmd_info(&file),
        Command::Zigzag { file, labeling } => commands::cmd_zigzag(&file, labeling),
        Command::Rcharge { file, tol } => {
            let opts = Options { tol, ..Options::default() };
            commands::cmd_rcharge(&file, &opts)
        }
        Command::Embed { file, svg, circles, tol } => {
            let opts = Options { tol, ..Options::default() };
            commands::cmd_embed(&file, &opts, svg.as_deref(), circles)
        }
        Command::Matchings { file, tally } => commands::cmd_matchings(&file, tally),
        Command::Cancel { file, bound, budget } => {
            let opts = Options { bound, budget, ..Options::default() };
            commands::cmd_cancel(&file, &opts)
        }
        Command::Balgebra { file, bound, budget } => {
            let opts = Options { algcon_bound: bound, budget, ..Options::default() };
            commands::cmd_balgebra(&file, &opts)
        }
        Command::Cy3 { file, window, safe, budget, dump } => {
            let opts = Options { window, safe_window: safe, budget, ..Options::default() };
            commands::cmd_cy3(&file, &opts, dump)
        }
        Command::Summary { file, bound, algcon_bound, window, safe, budget, tol, format } => {
            let opts = Options {
                bound,
                algcon_bound,
                window,
                safe_window: safe,
                budget,
                tol,
                json: format == "json",
            };
            commands::cmd_summary(&file, &opts)
        }
    };
    print!("{}", result.text);
    ExitCode::from(result.code as u8)
}
