//! `gquasi`: verification suites, example reproductions and reports for
//! g-quasi metric spaces.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gquasi::{Rational, Scalar};

#[derive(Parser)]
#[command(name = "gquasi", version, about = "Exact checks for g-quasi metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Args, Clone, Default)]
pub struct GridArgs {
    /// Grid step for sampling a line carrier, as p/q.
    #[arg(long, value_parser = rational)]
    pub grid_step: Option<Rational>,

    /// Grid bounds `lo,hi` for sampling a line carrier.
    #[arg(long, value_parser = rational, value_delimiter = ',', allow_hyphen_values = true)]
    pub bounds: Option<Vec<Rational>>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the index and triangle axioms.
    CheckAxioms {
        #[arg(long)]
        space: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Build the generalized topology induced by a finite space, or generated
    /// by a base file.
    MakeTopology {
        #[arg(long, conflicts_with = "base", required_unless_present = "base")]
        space: Option<PathBuf>,
        /// Base file: a `ground {..}` line, then one subset per line.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Also write the topology in text form to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Decide whether a generalized topology is a topology.
    DiagnoseTopology {
        #[arg(long)]
        topology: PathBuf,
    },
    /// Check μ-T0, μ-T1 and closed singletons.
    CheckSeparation {
        #[arg(long, conflicts_with = "space", required_unless_present = "space")]
        topology: Option<PathBuf>,
        /// Use the topology induced by this finite space.
        #[arg(long)]
        space: Option<PathBuf>,
    },
    /// Form the max-product of two spaces and verify its axioms.
    Product {
        /// Exactly two space files.
        #[arg(long, num_args = 1, required = true)]
        space: Vec<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
        /// Evaluate the distance from this pair `x,y` ...
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "to")]
        from: Option<Vec<String>>,
        /// ... to this pair.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        to: Option<Vec<String>>,
    },
    /// Decide g-uniform continuity of a map between finite spaces, or sweep
    /// the distance-map witnesses on a piecewise space.
    CheckUniform {
        /// Domain then codomain; a single piecewise space selects the sweep.
        #[arg(long, num_args = 1, required = true)]
        space: Vec<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
        /// Explicit δ values for the sweep.
        #[arg(long, value_parser = rational, value_delimiter = ',')]
        delta: Vec<Rational>,
        /// Sweep δ = r + 1/j for j = 1..k when no δ is given.
        #[arg(long, default_value_t = 10)]
        k: u64,
    },
    /// Certify a Cauchy-type property of a sequence up to a horizon.
    ClassifySeq {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        space: PathBuf,
        /// cauchy, g-cauchy or pseudo-cauchy.
        #[arg(long, value_parser = property)]
        property: gquasi::sequences::Property,
        #[arg(long, value_parser = rational)]
        epsilon: Rational,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 100)]
        horizon: u64,
    },
    /// Reproduce a worked example; `all` runs every one.
    Reproduce {
        id: String,
        #[arg(long, value_parser = rational)]
        r: Option<Rational>,
        #[arg(long)]
        horizon: Option<u64>,
        /// Sweep length or instance count.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Completeness hierarchy of a finite space, optionally with the
    /// implication diagram checked on a sequence.
    FiniteCompleteness {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, requires = "epsilon")]
        seq: Option<PathBuf>,
        #[arg(long, value_parser = rational)]
        epsilon: Option<Rational>,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 100)]
        horizon: u64,
    },
}

fn rational(text: &str) -> Result<Rational, String> {
    Rational::parse_exact(text).ok_or_else(|| format!("`{text}` is not a rational of the form p/q"))
}

fn property(text: &str) -> Result<gquasi::sequences::Property, String> {
    gquasi::sequences::Property::parse(text)
        .ok_or_else(|| format!("unknown property `{text}`; expected cauchy, g-cauchy or pseudo-cauchy"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match commands::run(cli.command, echo) {
        Ok(report) => {
            let text = match cli.output.format {
                Format::Text => report.render_text(),
                Format::Structured => report.render_structured(),
            };
            let written = match &cli.output.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                Ok(()) if report.passed() => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
