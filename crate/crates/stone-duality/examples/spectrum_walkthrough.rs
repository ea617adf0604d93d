//! Walk through the spectrum of the finite–cofinite algebra on ℕ: the one
//! free point, clopen sets as tildes, the closure operator, and the open set
//! whose closure stops being open.
//!
//! ```bash
//! cargo run --example spectrum_walkthrough
//! ```

use stone_duality::algebra::AlgebraModel;
use stone_duality::carrier::{Carrier, PointLabel};
use stone_duality::spectrum::spectrum_of;
use stone_duality::Result;

fn main() -> Result<()> {
    let nat = Carrier::naturals(4, []);
    let model = AlgebraModel::for_carrier(&nat, vec![nat.singleton(0u64)?, nat.singleton(1u64)?])?;
    let spectrum = spectrum_of(&model);

    println!("{}", spectrum.describe());

    // tildes: positive members stay put, co members pick up the free point
    let co = nat.co_set([0u64])?;
    let tilde = spectrum.tilde(&co)?;
    println!("tilde({co}) = {tilde}");
    println!("  contains ∞? {}", tilde.member(&PointLabel::Free)?);

    // closure: finite sets are closed, the carrier's closure is everything
    let everything = spectrum.embed_set(&nat.full_set())?;
    println!("embed(ℕ) = {everything}");
    println!("closure(embed(ℕ)) = {}", spectrum.closure(&everything)?);

    // clopses are exactly the tildes; a set holding ∞ without a co-form
    // neighbourhood is closed but not open
    let closed_only = spectrum.carrier().positive_set([PointLabel::Nat(2), PointLabel::Free])?;
    println!(
        "{closed_only}: open = {}, closed = {}",
        spectrum.is_open(&closed_only)?,
        spectrum.is_closed(&closed_only)?
    );

    // extreme disconnectedness fails here, and the witness is checkable
    let report = spectrum.extremely_disconnected();
    println!("\nextremely disconnected: {}", report.extremely_disconnected);
    if let Some(witness) = report.witness {
        println!("witness: {}", witness.description);
        if let Some(pattern) = witness.pattern {
            for line in spectrum.verify_open_witness(&pattern, 6)? {
                println!("  · {line}");
            }
        }
    }

    println!("\nDOT export:\n{}", spectrum.to_dot());
    Ok(())
}
