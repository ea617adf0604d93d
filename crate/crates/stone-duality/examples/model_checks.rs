//! Load a shipped model document and run the whole check registry against
//! it, exactly as `stone-duality check all` does.
//!
//! ```bash
//! cargo run --example model_checks
//! cargo run --example model_checks -- models/limsup.toml
//! ```

use std::path::PathBuf;

use stone_duality::checks::{run_all, CheckStatus};
use stone_duality::model::ResolvedModel;

fn main() -> stone_duality::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/convergent_seq.toml")
    });
    let model = ResolvedModel::from_path(&path)?;
    println!("model `{}` from {}\ncarrier: {}\n", model.name, path.display(), model.carrier);

    let reports = run_all(&model);
    let mut failures = 0;
    for report in &reports {
        match &report.status {
            CheckStatus::Pass => println!("{:<22} pass", report.id.to_string()),
            CheckStatus::Skipped { reason } => {
                println!("{:<22} skip  ({reason})", report.id.to_string());
            }
            CheckStatus::Fail => {
                failures += 1;
                println!("{:<22} FAIL", report.id.to_string());
                if let Some(c) = &report.counterexample {
                    println!("    counterexample: {c}");
                }
            }
        }
        for line in &report.details {
            println!("    {line}");
        }
    }
    println!(
        "\n{} checks, {} failures",
        reports.len(),
        failures
    );
    std::process::exit(if failures == 0 { 0 } else { 1 });
}
