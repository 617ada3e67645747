mod commands;
mod load;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quantale_core::Budget;

#[derive(Debug, Parser)]
#[command(name = "quantale", version, about = "Finite quantales, Girard couples and their verification suites")]
struct Cli {
    /// Also write the report as JSON to this path (`-` for stdout instead of text).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest enumeration (valuations, sup-map candidates, G carriers) allowed.
    #[arg(long, global = true, value_name = "INT")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Lattice,
    Quantale,
    Couple,
    Girard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Endo,
    Tensor,
    #[value(name = "cs-couple")]
    CsCouple,
    #[value(name = "G")]
    G,
    Rosenthal,
    #[value(name = "GofS")]
    GofS,
    Subring,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification suites on a definition file or `builtin:NAME`.
    Check {
        input: String,
        /// Suites to run; defaults depend on what the input is.
        #[arg(long, value_enum)]
        suite: Vec<SuiteArg>,
    },
    /// Build a structure, print it in the text format and verify it.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        args: commands::ConstructArgs,
    },
    /// The endomorphism quantale of a lattice (same as `construct endo`).
    Endo {
        #[command(flatten)]
        args: commands::ConstructArgs,
    },
    /// The tensor product of two lattices (same as `construct tensor`).
    Tensor {
        #[command(flatten)]
        args: commands::ConstructArgs,
    },
    /// Sampled Girard checks on the subspace lattice of a matrix algebra.
    Spectrum {
        /// Matrix size of the full algebra.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Block sizes of a block-diagonal algebra, e.g. `2,1`.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = quantale_core::spectrum::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Evaluate a linear-logic formula in a Girard quantale.
    Eval {
        /// Model file or builtin; defaults to the two-element Boolean algebra.
        #[arg(long, default_value = "builtin:chain2")]
        model: String,
        #[arg(long)]
        formula: String,
        /// Atom values, e.g. `a=x,b=y`, by element label.
        #[arg(long)]
        assign: Option<String>,
        /// Check validity under every valuation.
        #[arg(long)]
        tautology: bool,
        /// Check that the formula has the same value as this one everywhere.
        #[arg(long, value_name = "FORMULA")]
        equivalent: Option<String>,
    },
}

fn command_line() -> String {
    let args: Vec<String> = std::env::args()
        .skip(1)
        .map(|a| {
            if a.is_empty() || a.contains(char::is_whitespace) {
                format!("{a:?}")
            } else {
                a
            }
        })
        .collect();
    format!("quantale {}", args.join(" "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = Budget::default();
    if let Some(b) = cli.budget {
        budget.enumeration = b;
    }
    let ctx = commands::Context {
        budget,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Check { input, suite } => commands::check(&ctx, &input, &suite),
        Command::Construct { kind, args } => commands::construct(&ctx, kind, &args),
        Command::Endo { args } => commands::construct(&ctx, Kind::Endo, &args),
        Command::Tensor { args } => commands::construct(&ctx, Kind::Tensor, &args),
        Command::Spectrum { n, dims, samples, tol } => commands::spectrum(&ctx, n, dims.as_deref(), samples, tol),
        Command::Eval {
            model,
            formula,
            assign,
            tautology,
            equivalent,
        } => commands::eval(&ctx, &model, &formula, assign.as_deref(), tautology, equivalent.as_deref()),
    };
    let builder = match result {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let report = builder.finish(command_line());
    let to_stdout = cli.json.as_deref() == Some(std::path::Path::new("-"));
    if let Some(path) = cli.json.as_ref().filter(|_| !to_stdout) {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(path, json + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if to_stdout {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code())
}
