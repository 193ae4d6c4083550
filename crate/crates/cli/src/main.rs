//! `polyvar`: analyze polynomials and measures, run the verification suite,
//! reproduce the named instances and drive the extremal search.
//!
//! Exit codes: 0 when nothing was found, 1 on errors (including a violated
//! theorem, which signals a numerical defect), 2 when a violation of an open
//! statement persisted under re-verification or the search reported a
//! candidate.

mod analyze;
mod checks;
mod commands;
mod manifest;
mod output;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use commands::{AnalyzeConfig, SearchMode, VerifyConfig};
use manifest::InputDescriptor;
use output::Format;
use params::{parse_p_list, p_label, Tolerances};

#[derive(Parser)]
#[command(name = "polyvar", version, about = "Variance inequalities between the zeros and critical points of polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, critical points, variances, Hausdorff distances and Gauss–Lucas diagnostics.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated exponents; `inf` for the Chebyshev radius.
        #[arg(long, default_value = "1,2,inf")]
        p: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification suite and report one verdict per statement.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        checks: Vec<String>,
        /// Every check that applies to the input (the default).
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "1,2,inf")]
        p: String,
        /// Tolerance override NAME=VALUE (margin, grid_density, polar_grid, disk_radius).
        #[arg(long = "tol")]
        tol: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Multistart search for large h/σ_p, or a local-maximum probe of a given polynomial.
    Search {
        #[command(flatten)]
        input: InputArgs,
        /// Degree of the searched polynomials.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long, default_value_t = 100)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Function evaluations per start.
        #[arg(long, default_value_t = 2000)]
        evals: usize,
        #[arg(long, default_value_t = 3)]
        restarts: usize,
        /// Probe the input polynomial with this many random perturbations instead of searching.
        #[arg(long)]
        probe: Option<usize>,
        /// Perturbation radius of the probe, relative to σ_p.
        #[arg(long, default_value_t = 1e-3)]
        radius: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The named instances accepted by --repro.
    List {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-run the command recorded in a report's manifest.
    Replay {
        /// A JSON report written by any command.
        report: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// JSON file with a polynomial, measure, matrix, Toeplitz or circulant instance.
    #[arg(long, conflicts_with = "repro")]
    input: Option<PathBuf>,
    /// A named instance such as `example1(5)`, `miller` or `claim93(3)`.
    #[arg(long)]
    repro: Option<String>,
}

impl InputArgs {
    fn resolve(&self) -> Result<InputDescriptor> {
        InputDescriptor::resolve(self.input.as_ref(), self.repro.as_deref())
    }

    fn given(&self) -> bool {
        self.input.is_some() || self.repro.is_some()
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write `<command>.json` and `<command>.csv` here instead of printing.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn normalized_p(text: &str) -> Result<Vec<String>> {
    Ok(parse_p_list(text)?.into_iter().map(p_label).collect())
}

fn run(cli: Cli) -> Result<u8> {
    let (emitted, output) = match cli.command {
        Command::Analyze { input, p, output } => {
            let cfg = AnalyzeConfig { p: normalized_p(&p)? };
            (commands::run_analyze(input.resolve()?, cfg)?, output)
        }
        Command::Verify {
            input,
            checks,
            all: _,
            p,
            tol,
            output,
        } => {
            let cfg = VerifyConfig {
                checks,
                p: normalized_p(&p)?,
                tolerances: Tolerances::parse(&tol)?,
            };
            (commands::run_verify(input.resolve()?, cfg)?, output)
        }
        Command::Search {
            input,
            n,
            p,
            starts,
            seed,
            evals,
            restarts,
            probe,
            radius,
            output,
        } => {
            let p = normalized_p(&p)?;
            let (descriptor, mode) = match probe {
                Some(trials) => {
                    anyhow::ensure!(radius > 0.0 && radius.is_finite(), "--radius must be positive");
                    (Some(input.resolve()?), SearchMode::Probe { p, trials, radius, seed })
                }
                None => {
                    anyhow::ensure!(!input.given(), "--input and --repro need --probe");
                    let mode = SearchMode::Multistart {
                        degree: n,
                        p,
                        starts,
                        seed,
                        max_evaluations: evals,
                        max_restarts: restarts,
                    };
                    (None, mode)
                }
            };
            (commands::run_search(descriptor, mode)?, output)
        }
        Command::List { output } => (commands::run_list()?, output),
        Command::Replay { report, output } => {
            let text = std::fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let value = serde_json::from_str(&text).with_context(|| format!("parsing {}", report.display()))?;
            (commands::replay(&value)?, output)
        }
    };
    output::write(&emitted, output.format, output.out.as_deref())?;
    Ok(emitted.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
