//! `polycol`: column structures of lattice polytopes from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad input or
//! usage, 3 an internal assertion fired.

use std::io::Read;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use polycol::polytope::Polytope;
use polycol::report::{scan_polygons, AnalysisReport, MAX_BOX};

mod verify;

#[derive(Parser)]
#[command(name = "polycol", version, about = "Column vectors, partial products and elementary automorphisms of lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis report of one polytope, as JSON.
    Analyze {
        /// Polytope JSON file, or `-` for stdin.
        input: PathBuf,
    },
    /// Enumerate lattice polygons in a box and classify the balanced ones.
    ScanPolygons {
        #[arg(long = "box", default_value_t = 3)]
        box_size: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one family of checks; exits 1 if any check fails.
    Verify {
        which: verify::Which,
        input: PathBuf,
        /// Degree bound for semigroup checks.
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Enumerate columns from the literal definition.
        #[arg(long)]
        no_prune: bool,
    },
    /// Product graph, Steinberg presentation, or normal fan.
    Export {
        what: ExportTarget,
        input: PathBuf,
        /// Instantiate the presentation over ℤ/p.
        #[arg(long)]
        modulus: Option<u64>,
        /// JSON instead of the line format (presentation only).
        #[arg(long)]
        json: bool,
    },
    /// FIFO doubling spectrum, as a JSON log.
    Spectrum {
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportTarget {
    Dot,
    Presentation,
    Fan,
}

/// Reads and normalizes a polytope. The returned name is the input's.
pub(crate) fn load(path: &PathBuf) -> anyhow::Result<Polytope> {
    let p = Polytope::from_json(&read_raw(path)?)?;
    let name = p.name().map(str::to_string);
    let q = p.normalize_full_dim().polytope;
    Ok(match name {
        Some(n) => q.with_name(n),
        None => q,
    })
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Analyze { input } => {
            let p = Polytope::from_json(&read_raw(&input)?)?;
            println!("{}", AnalysisReport::analyze(&p)?.to_json());
            Ok(true)
        }
        Command::ScanPolygons { box_size, seed } => {
            if box_size > MAX_BOX {
                bail!("box {box_size} is too large (at most {MAX_BOX})");
            }
            let summary = scan_polygons(box_size, seed)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(summary.is_clean())
        }
        Command::Verify { which, input, max_degree, no_prune } => {
            let p = load(&input)?;
            let report = verify::run(which, &p, max_degree, no_prune)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.passed)
        }
        Command::Export { what, input, modulus, json } => {
            let p = load(&input)?;
            let cs = polycol::columns::ColumnStructure::new(&p)?;
            let out = match what {
                ExportTarget::Dot => cs.to_dot(),
                ExportTarget::Presentation => {
                    let pres = polycol::algebra::Presentation::from_columns(&cs)?;
                    match (modulus, json) {
                        (Some(m), _) => pres.to_finite_text(m),
                        (None, true) => pres.to_json() + "\n",
                        (None, false) => pres.to_text(),
                    }
                }
                ExportTarget::Fan => serde_json::to_string_pretty(&p.normal_fan()?)? + "\n",
            };
            print!("{out}");
            Ok(true)
        }
        Command::Spectrum { input, steps } => {
            let p = load(&input)?;
            let spectrum = polycol::doubling::doubling_spectrum(&p, steps)?;
            println!("{}", spectrum.to_json());
            Ok(spectrum.is_fair())
        }
    }
}

fn read_raw(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    panic::set_hook(Box::new(|info| eprintln!("polycol: internal error: {info}")));
    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok(true)) => ExitCode::SUCCESS,
        Ok(Ok(false)) => ExitCode::from(1),
        Ok(Err(e)) => {
            eprintln!("polycol: {e:#}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(3),
    }
}
