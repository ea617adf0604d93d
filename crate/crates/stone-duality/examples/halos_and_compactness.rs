//! Halos on a convergent sequence: isolated points have singleton halos, the
//! limit's halo captures the free point, and a subspace is compact exactly
//! when the halos of its points cover its closure.
//!
//! ```bash
//! cargo run --example halos_and_compactness
//! ```

use stone_duality::carrier::{Carrier, PointLabel};
use stone_duality::topology::{check_open_halo, robinson_check, TopSpace};
use stone_duality::Result;

fn main() -> Result<()> {
    let carrier = Carrier::naturals(5, [PointLabel::sym("ω")]);
    let space = TopSpace::convergent_seq(&carrier)?;
    let spectrum = space.spectrum()?;
    println!("space: {space}");

    for x in [PointLabel::Nat(3), PointLabel::sym("ω")] {
        let halo = space.halo(&spectrum, &x)?;
        let report = check_open_halo(&space, &spectrum, &x)?;
        println!(
            "h({x}) = {}   open: {}   {{{x}}} open: {}   (equivalence holds: {})",
            halo.set, report.halo_open, report.singleton_open, report.equivalent
        );
    }

    println!("\nhalo-cover compactness verdicts:");
    let cases = [
        ("a finite set", carrier.positive_set([1u64, 2])?),
        ("a cofinite set containing ω", carrier.co_set([1u64, 3])?),
        ("all isolated points, no ω", carrier.co_set([PointLabel::sym("ω")])?),
    ];
    for (label, y) in cases {
        let r = robinson_check(&space, &spectrum, &y)?;
        println!("\nY = {y} ({label})");
        println!("  closure(Y) in the spectrum: {}", r.closure);
        println!("  covered by ⋃ h(y): {}   oracle: compact = {}", r.covered_by_halos, r.oracle_compact);
        println!("  {}", r.oracle_note);
        if let Some(missing) = r.missing {
            println!("  escape point: {missing} lies in the closure but in no halo");
        }
        assert!(r.agrees);
    }

    // the cofinite naturals are T1 but not Hausdorff: halos overlap, the
    // disjointness check refuses, yet the cover criterion still agrees
    let nat = Carrier::naturals(0, []);
    let cofinite = TopSpace::cofinite_nat(&nat)?;
    let spectrum = cofinite.spectrum()?;
    println!("\nspace: {cofinite}");
    let h0 = cofinite.halo(&spectrum, &PointLabel::Nat(0))?;
    let h1 = cofinite.halo(&spectrum, &PointLabel::Nat(1))?;
    println!("h(0) = {} and h(1) = {} overlap (both hold ∞)", h0.set, h1.set);
    match check_open_halo(&cofinite, &spectrum, &PointLabel::Nat(0)) {
        Err(e) => println!("open-halo check: {e}"),
        Ok(_) => unreachable!("the cofinite topology is not Hausdorff"),
    }
    let r = robinson_check(&cofinite, &spectrum, &nat.co_set([7u64])?)?;
    println!(
        "cover criterion (informational here): covered = {}, oracle compact = {}",
        r.covered_by_halos, r.oracle_compact
    );
    Ok(())
}
