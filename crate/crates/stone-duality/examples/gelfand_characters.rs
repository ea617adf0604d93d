//! The seminormed-algebra layer: enumerate characters, filter them by norm
//! continuity, adjoin a unit, search for the compactness witness, and
//! compute the density constant — under sup and under lim-sup, where the
//! answers diverge sharply.
//!
//! ```bash
//! cargo run --example gelfand_characters
//! ```

use stone_duality::carrier::Carrier;
use stone_duality::exact::ScalarField;
use stone_duality::function::QuasiNorm;
use stone_duality::gelfand::{CompactnessReport, SeminormedFnAlgebra};
use stone_duality::Result;

fn main() -> Result<()> {
    let nat = Carrier::naturals(4, []);

    for norm in [QuasiNorm::SupNorm, QuasiNorm::LimSup] {
        let alg = SeminormedFnAlgebra::full(&nat, norm.clone(), ScalarField::Real)?;
        println!("=== eventually-constant functions on ℕ under {norm} ===");
        let set = alg.characters()?;
        println!("characters ({} named{}):", set.characters.len(), if set.unnamed_tail { " + unnamed tail" } else { "" });
        for ch in &set.characters {
            println!("  {ch}");
        }
        let report = alg.continuous_characters(1)?;
        println!("continuous: {}", report.continuous.len());
        for rejected in report.rejected.iter().take(2) {
            println!(
                "rejected {} — witness a = {} with |α(a)| > ρ(a)",
                rejected.character, rejected.witness
            );
        }
        let density = alg.density_report(1)?;
        match &density.d_star {
            Some(d) => println!("density constant D* = {d} (dense: {})", density.dense),
            None => println!(
                "density constant unbounded — witness {} has positive norm over an empty sup",
                density.witness.as_ref().expect("witness accompanies failure")
            ),
        }
        println!();
    }

    // the finitely supported functions: no unit, a genuinely non-compact
    // spectrum, and a one-point compactification by unitizing
    let fs = SeminormedFnAlgebra::finitely_supported(&nat, QuasiNorm::SupNorm, ScalarField::Real)?;
    println!("=== finitely supported functions on ℕ under sup ===");
    match fs.compactness_witness(1)? {
        CompactnessReport::Compact { a0, .. } => println!("compact with a₀ = {a0}"),
        CompactnessReport::NonCompact { evidence } => {
            println!("non-compact:");
            for line in evidence {
                println!("  · {line}");
            }
        }
    }
    let unitized = fs.unitize();
    let chars = unitized.characters()?;
    println!(
        "after unitization: {} named characters (one more than before), including ∞̂ with \
         ∞̂(a, λ) = λ",
        chars.named_count()
    );
    let sample = unitized.sample_elements(1, 1)?.remove(0);
    println!("  e.g. ∞̂({sample}) = {}", chars.adjoined.apply(&sample)?);
    Ok(())
}
