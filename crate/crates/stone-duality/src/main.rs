//! Command-line front end: parse a model document, run operations and check
//! suites, export spectra and reports.
//!
//! Exit codes: 0 success, 1 check failure, 2 parse/model error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use stone_duality::checks::{run_all, run_check, CheckId, CheckReport, CheckStatus};
use stone_duality::error::Error;
use stone_duality::measure::{check_support_shift, lift};
use stone_duality::model::ResolvedModel;
use stone_duality::spectrum::spectrum_of;

#[derive(Parser)]
#[command(name = "stone-duality", version, about = "Symbolic Stone-duality engine")]
struct Cli {
    /// Model document (TOML).
    #[arg(long, global = true, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Overrides the document's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the atom partition of the generated algebra.
    Atoms,
    /// Export the spectrum: a structured listing, or DOT with `--dot`.
    Spectrum {
        #[arg(long)]
        dot: bool,
        /// Structured listing (the default).
        #[arg(long)]
        list: bool,
    },
    /// Run one named check, or `all`.
    Check {
        /// A check id (try `list`) or `all`.
        target: String,
        /// Emit the reports as JSON.
        #[arg(long)]
        json_report: bool,
    },
    /// Lift the measure to the spectrum and report its support.
    Lift,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    if let Command::Check { target, .. } = &cli.command {
        if target == "list" {
            for id in CheckId::ALL {
                println!("{:<22} {}", id.to_string(), id.summary());
            }
            return Ok(ExitCode::SUCCESS);
        }
    }
    let path = cli
        .model
        .as_ref()
        .ok_or_else(|| Error::Document("pass a model document with --model <FILE>".into()))?;
    let mut model = ResolvedModel::from_path(path)?;
    if let Some(seed) = cli.seed {
        model.seed = seed;
    }

    match cli.command {
        Command::Atoms => {
            print!("{}", model.atoms_listing());
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { dot, .. } => {
            let sp = spectrum_of(&model.sigma);
            if dot {
                print!("{}", sp.to_dot());
            } else {
                print!("{}", sp.describe());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { target, json_report } => {
            let reports: Vec<CheckReport> = if target == "all" {
                run_all(&model)
            } else {
                let id = CheckId::from_str(&target)?;
                match run_check(id, &model) {
                    Ok(r) => vec![r],
                    Err(Error::NotApplicable { check, reason }) => {
                        println!("{check:<22} skip  ({reason})");
                        return Ok(ExitCode::SUCCESS);
                    }
                    Err(e) => return Err(e),
                }
            };
            if json_report {
                println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
            } else {
                for r in &reports {
                    let line = match &r.status {
                        CheckStatus::Skipped { reason } => format!("({reason})"),
                        _ => format!("[{} ms]", r.elapsed_ms),
                    };
                    println!("{:<22} {:<5} {}", r.id.to_string(), r.status_word(), line);
                    for d in &r.details {
                        println!("    {d}");
                    }
                    if let Some(c) = &r.counterexample {
                        println!("    counterexample: {c}");
                    }
                }
            }
            let all_passed = reports.iter().all(CheckReport::passed);
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Lift => {
            let mu = model.measure.as_ref().ok_or_else(|| {
                Error::Document("the document has no [measure] section to lift".into())
            })?;
            let sp = spectrum_of(&model.sigma);
            let lifted = lift(&sp, mu)?;
            println!("μ  = {mu}   (total {})", mu.total());
            println!("*μ = {}   (total {})", lifted.as_measure(), lifted.total());
            let support = lifted.support();
            let names: Vec<String> = support.iter().map(|s| s.to_string()).collect();
            println!("supp(*μ) = {{{}}}", names.join(", "));
            let shift = check_support_shift(&sp, mu)?;
            println!(
                "support shift: supp(*μ) ∩ X = positive atoms of μ ({} points): {}",
                shift.support_in_carrier.len(),
                if shift.matches { "verified" } else { "MISMATCH" }
            );
            if shift.free_in_support {
                println!("the free point carries mass: diffuse μ-mass landed on it");
            }
            Ok(if shift.matches { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
