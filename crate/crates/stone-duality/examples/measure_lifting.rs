//! Lift measures to the spectrum and watch the support shift: atomic masses
//! ride along, diffuse mass lands on the free point, and zero-mass points
//! drop out of the support.
//!
//! ```bash
//! cargo run --example measure_lifting
//! ```

use num::{BigInt, BigRational, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stone_duality::algebra::AlgebraModel;
use stone_duality::carrier::{Carrier, PointLabel};
use stone_duality::measure::{check_support_shift, lift, verify_lift, Measure};
use stone_duality::spectrum::spectrum_of;
use stone_duality::Result;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() -> Result<()> {
    let nat = Carrier::naturals(10, []);
    let spectrum = spectrum_of(&AlgebraModel::for_carrier(&nat, vec![])?);

    // geometric masses on 0..10, the leftover mass diffuse on the remainder
    let mut atomic = Vec::new();
    let mut placed = BigRational::zero();
    for n in 0u64..10 {
        let mass = BigRational::new(BigInt::from(1), BigInt::from(2i64.pow(n as u32 + 1)));
        placed += &mass;
        atomic.push((PointLabel::Nat(n), mass));
    }
    let mu = Measure::new(&nat, atomic, rat(1, 1) - placed)?;
    println!("μ  = {mu}");

    let lifted = lift(&spectrum, &mu)?;
    println!("*μ = {}", lifted.as_measure());
    println!("total preserved: {} = {}", mu.total(), lifted.total());

    // the lifting identity and the simple-function pairing, verified exactly
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let report = verify_lift(&lifted, &mu, &mut rng, 60, 30)?;
    println!(
        "*μ(Ẽ) = μ(E) on {} members; pairing exact on {} simple functions",
        report.members_checked, report.pairings_checked
    );

    let shift = check_support_shift(&spectrum, &mu)?;
    println!(
        "supp(*μ) ∩ ℕ = {:?} (free point in support: {})",
        shift.support_in_carrier.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        shift.free_in_support
    );

    // a purely diffuse measure: everything lands on the free point
    let diffuse = Measure::new(&nat, [], rat(1, 1))?;
    let lifted = lift(&spectrum, &diffuse)?;
    println!("\npurely diffuse μ lifts to {}", lifted.as_measure());
    let support = lifted.support();
    println!(
        "supp(*μ) = {{{}}} — the carrier sees none of the mass",
        support.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
    );
    Ok(())
}
