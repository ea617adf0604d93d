//! Generate a Boolean set algebra from a handful of subsets, inspect its
//! atom partition, test membership, and ask about completeness.
//!
//! ```bash
//! cargo run --example finite_algebra
//! ```

use stone_duality::algebra::{AlgebraModel, FiniteAlgebra};
use stone_duality::carrier::Carrier;
use stone_duality::Result;

fn main() -> Result<()> {
    // four explicit points, two overlapping generators
    let x = Carrier::finite(1u64..=4)?;
    let gens = vec![x.positive_set([1u64, 2])?, x.positive_set([2u64, 3])?];
    let algebra = FiniteAlgebra::generate(&x, gens)?;

    println!("carrier: {x}");
    println!("atoms of the generated algebra:");
    for atom in algebra.atoms() {
        println!("  {atom}");
    }

    let inside = x.positive_set([1u64, 2, 3])?;
    let outside = x.positive_set([1u64])?; // {1} happens to be an atom here
    println!("contains {inside}? {}", algebra.contains(&inside)?);
    println!("contains {outside}? {}", algebra.contains(&outside)?);

    // the same construction over the naturals: one generic atom appears
    let nat = Carrier::naturals(0, []);
    let gens = vec![nat.singleton(0u64)?, nat.singleton(1u64)?];
    let algebra = FiniteAlgebra::generate(&nat, gens)?;
    println!("\ncarrier: {nat}");
    println!("atoms: {:?}", algebra.atoms().iter().map(|a| a.to_string()).collect::<Vec<_>>());

    // completeness is a model-level question, not a structural one
    for (label, model) in [
        ("finite", AlgebraModel::for_carrier(&x, vec![])?),
        ("finite–cofinite(ℕ)", AlgebraModel::for_carrier(&nat, vec![])?),
    ] {
        let report = model.is_complete();
        println!("\n{label}: complete under arbitrary unions = {}", report.complete);
        if let Some(witness) = report.witness {
            println!("  witness: {}", witness.description);
        }
    }
    Ok(())
}
