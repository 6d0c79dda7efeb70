//! `delpezzo`: reports on marked del Pezzo lattices.

mod commands;
mod report;

use std::io::{ErrorKind, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use delpezzo_core::Error;

use crate::report::Timing;

#[derive(Parser, Debug)]
#[command(name = "delpezzo", version, about = "Roots, lines and Weyl orbits of marked del Pezzo lattices")]
struct Cli {
    /// Output format; JSON is the stable machine-readable form.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,

    /// Cap on orbit sizes for Weyl-orbit searches.
    #[arg(long, env = "DELPEZZO_ORBIT_CAP", global = true)]
    orbit_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots: classes of norm -2 and degree 0.
    Roots {
        #[arg(long)]
        r: usize,
        /// Only roots that are non-negative combinations of simple roots.
        #[arg(long)]
        positive: bool,
    },
    /// Line classes: norm -1, degree 1.
    Lines {
        #[arg(long)]
        r: usize,
    },
    /// Classes with given self-intersection and degree.
    Classes {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        self_int: i64,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// Allow pairs violating adjunction for rational curves.
        #[arg(long)]
        any: bool,
    },
    /// Triples of lines summing to the anticanonical class (r = 6).
    Triples {
        #[arg(long)]
        r: usize,
    },
    /// Sixes of disjoint lines, or double sixes (r = 6).
    Sixes {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        double: bool,
    },
    /// Weyl orbit of a vector.
    Orbit {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Fundamental weights: lift, minuscule test, dual partner or adjoint weights.
    Weights {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        fundamental: Option<usize>,
        #[arg(long, group = "mode")]
        minuscule: bool,
        #[arg(long, group = "mode")]
        dual: bool,
        #[arg(long, group = "mode")]
        adjoint: bool,
    },
    /// Orbits of the lines under the reflections in a set of -2-curves.
    Degenerate {
        #[arg(long)]
        r: usize,
        /// Comma-separated root classes, e.g. `e1-e2,h-e1-e2-e3`.
        #[arg(long, allow_hyphen_values = true)]
        curves: String,
    },
    /// Period homomorphisms with values in the torsion points of an elliptic curve.
    Period {
        #[arg(long)]
        r: usize,
        /// `SYMBOL=a/b,c/d` for SYMBOL in h, e1, .., er; unassigned symbols map to 0.
        #[arg(long = "assign", allow_hyphen_values = true)]
        assign: Vec<String>,
        /// Report the Weyl-canonical coroot values.
        #[arg(long)]
        canonical: bool,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Resource { .. }) => 3,
        Some(Error::Internal(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli.command, cli.orbit_cap) {
        Ok(mut report) => {
            if cli.timing {
                report.timing = Some(Timing {
                    seconds: start.elapsed().as_secs_f64(),
                });
            }
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Table => report.to_table(),
            };
            // a closed pipe (e.g. `| head`) is not an error
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
