//! Finite positive measures on the supported models, their lift to the
//! spectrum, and the support-shift phenomenon.
//!
//! A measure is finitely many atomic masses on named points plus one diffuse
//! mass attached to the symbolic remainder. That single scalar is exactly
//! the data the supported algebras can see: they cannot distinguish finer
//! co-sets, so nothing finer is stored. Masses are exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Signed, Zero};
use rand::Rng;

use crate::carrier::{Carrier, PointLabel, Polarity, SymbolicSet};
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::function::FnElement;
use crate::spectrum::{Spectrum, SpectrumPoint};

/// A finite positive measure: atomic masses plus a diffuse remainder mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    carrier: Carrier,
    atomic: BTreeMap<PointLabel, BigRational>,
    diffuse: BigRational,
}

impl Measure {
    pub fn new(
        carrier: &Carrier,
        atomic: impl IntoIterator<Item = (PointLabel, BigRational)>,
        diffuse: BigRational,
    ) -> Result<Measure> {
        if diffuse.is_negative() {
            return Err(Error::Document("diffuse mass must be nonnegative".into()));
        }
        if carrier.is_finite() && !diffuse.is_zero() {
            return Err(Error::Document(
                "a finite carrier has no symbolic remainder to carry diffuse mass".into(),
            ));
        }
        let mut masses = BTreeMap::new();
        for (p, m) in atomic {
            carrier.check_label(&p)?;
            if m.is_negative() {
                return Err(Error::Document(format!("negative mass at `{p}`")));
            }
            if m.is_zero() {
                continue;
            }
            if masses.insert(p.clone(), m).is_some() {
                return Err(Error::Document(format!("duplicate mass entry at `{p}`")));
            }
        }
        Ok(Measure { carrier: carrier.clone(), atomic: masses, diffuse })
    }

    pub fn dirac(carrier: &Carrier, at: PointLabel) -> Result<Measure> {
        Measure::new(carrier, [(at, BigRational::from_integer(1.into()))], BigRational::zero())
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// Points with strictly positive atomic mass, in canonical order.
    pub fn positive_atoms(&self) -> impl Iterator<Item = (&PointLabel, &BigRational)> {
        self.atomic.iter()
    }

    pub fn mass_at(&self, p: &PointLabel) -> BigRational {
        self.atomic.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn diffuse(&self) -> &BigRational {
        &self.diffuse
    }

    pub fn total(&self) -> BigRational {
        self.atomic.values().sum::<BigRational>() + &self.diffuse
    }

    /// `μ(E)` for a normal-form set: the atomic sum over a positive base, or
    /// total minus that sum over a co base. This is σ-additivity on the
    /// symbolic models.
    pub fn evaluate(&self, set: &SymbolicSet) -> Result<BigRational> {
        self.carrier.check_same(set.carrier())?;
        let base_sum: BigRational = set.base().map(|p| self.mass_at(p)).sum();
        Ok(match set.polarity() {
            Polarity::Positive => base_sum,
            Polarity::Co => self.total() - base_sum,
        })
    }

    /// `∫ f dμ` for a function element: atomic masses weigh the values at
    /// their points, the diffuse mass weighs the default value. Exceptional
    /// points without atomic mass are μ-null, so they cannot disturb the sum.
    pub fn integrate(&self, f: &FnElement) -> Result<Scalar> {
        self.carrier.check_same(f.carrier())?;
        let mut acc = f.default_value().scale(&self.diffuse);
        for (p, m) in &self.atomic {
            acc = acc + f.value_at(p)?.scale(m);
        }
        Ok(acc)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.atomic.iter().map(|(p, m)| format!("{p} ↦ {m}")).collect();
        if !self.diffuse.is_zero() {
            parts.push(format!("diffuse {}", self.diffuse));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The lift `*μ` of a measure to the spectrum: a measure on the spectrum
/// carrier with the free point carrying the diffuse mass.
#[derive(Debug, Clone)]
pub struct LiftedMeasure {
    spectrum: Spectrum,
    measure: Measure,
}

/// Lifts `μ` to the spectrum: atomic masses ride along the embedding, the
/// diffuse mass lands on the free point, and `*μ(Ẽ) = μ(E)` by construction.
pub fn lift(spectrum: &Spectrum, mu: &Measure) -> Result<LiftedMeasure> {
    spectrum.base_carrier().check_same(mu.carrier())?;
    let carrier = spectrum.carrier().clone();
    let mut atomic: BTreeMap<PointLabel, BigRational> = BTreeMap::new();
    if spectrum.base_carrier().is_finite() {
        // masses accumulate on atom representatives
        for (p, m) in mu.positive_atoms() {
            let rep = spectrum.label_of_point(&spectrum.embed(p)?);
            *atomic.entry(rep).or_insert_with(BigRational::zero) += m;
        }
    } else {
        for (p, m) in mu.positive_atoms() {
            atomic.insert(p.clone(), m.clone());
        }
        if !mu.diffuse().is_zero() {
            atomic.insert(PointLabel::Free, mu.diffuse().clone());
        }
    }
    let measure = Measure::new(&carrier, atomic, BigRational::zero())?;
    Ok(LiftedMeasure { spectrum: spectrum.clone(), measure })
}

impl LiftedMeasure {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// The lift as a plain measure on the spectrum carrier.
    pub fn as_measure(&self) -> &Measure {
        &self.measure
    }

    pub fn total(&self) -> BigRational {
        self.measure.total()
    }

    /// `*μ(Ẽ)` for an algebra member `E` of the base model.
    pub fn evaluate_tilde(&self, set: &SymbolicSet) -> Result<BigRational> {
        let t = self.spectrum.tilde(set)?;
        self.measure.evaluate(&t)
    }

    /// `∫ f̃ d*μ` for the continuous extension of a function element:
    /// `f̃(Principal x) = f(x)` and `f̃(∞) = default(f)`.
    pub fn integrate_extension(&self, f: &FnElement) -> Result<Scalar> {
        self.spectrum.base_carrier().check_same(f.carrier())?;
        let mut acc = Scalar::zero();
        for (p, m) in self.measure.positive_atoms() {
            let value = if *p == PointLabel::Free {
                f.default_value().clone()
            } else {
                f.value_at(p)?
            };
            acc = acc + value.scale(m);
        }
        Ok(acc)
    }

    /// Support of the lift: a principal point is in the support exactly when
    /// its singleton clopen has positive mass; the free point is in the
    /// support when its co-neighbourhoods all do, which for the stored data
    /// means positive mass at the free point (or diffuse mass on a measure
    /// given directly on the spectrum carrier).
    pub fn support(&self) -> Vec<SpectrumPoint> {
        support_on_spectrum(&self.spectrum, &self.measure)
    }
}

/// Support of any measure living on a spectrum carrier.
pub fn support_on_spectrum(spectrum: &Spectrum, nu: &Measure) -> Vec<SpectrumPoint> {
    let mut out = Vec::new();
    let mut free_in_support = false;
    for (p, _) in nu.positive_atoms() {
        if *p == PointLabel::Free {
            free_in_support = true;
        } else {
            out.push(SpectrumPoint::Principal(p.clone()));
        }
    }
    // diffuse mass on the spectrum's own remainder meets every co-clopen,
    // which is every neighbourhood of the free point
    if !nu.diffuse().is_zero() {
        free_in_support = true;
    }
    if free_in_support {
        out.extend(spectrum.free_point());
    }
    out
}

/// Report of the lifting identity, mass conservation, and the Riesz pairing
/// on sampled members and simple functions.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub members_checked: usize,
    pub pairings_checked: usize,
    pub mass_conserved: bool,
}

/// Verifies `*μ(Ẽ) = μ(E)` over all atoms of the generated picture plus
/// `member_samples` random members, conservation of total mass, and the
/// pairing `∫ f̃ d*μ = ∫ f dμ` on `pairing_samples` random simple functions.
pub fn verify_lift(
    lifted: &LiftedMeasure,
    mu: &Measure,
    rng: &mut impl Rng,
    member_samples: usize,
    pairing_samples: usize,
) -> Result<LiftReport> {
    let spectrum = lifted.spectrum();
    let mut members = spectrum.sample_members(rng, member_samples)?;
    members.extend(spectrum.model().generated().atoms().iter().cloned());
    for e in &members {
        let lhs = lifted.evaluate_tilde(e)?;
        let rhs = mu.evaluate(e)?;
        if lhs != rhs {
            return Err(Error::UnsupportedModel(format!(
                "lift identity failed on {e}: *μ = {lhs}, μ = {rhs}"
            )));
        }
    }
    let mass_conserved = lifted.total() == mu.total();
    // simple functions Σ cᵢ·χ(Eᵢ) over sampled members
    let mut pairings = 0;
    for _ in 0..pairing_samples {
        let terms = rng.gen_range(1..=3usize);
        let mut f = FnElement::zero(mu.carrier());
        for _ in 0..terms {
            let e = &members[rng.gen_range(0..members.len())];
            let c = crate::function::sample_scalar(rng, crate::exact::ScalarField::Real);
            f = f.add(&FnElement::characteristic(e).scale(&c))?;
        }
        let direct = mu.integrate(&f)?;
        let extended = lifted.integrate_extension(&f)?;
        if direct != extended {
            return Err(Error::UnsupportedModel(format!(
                "Riesz pairing failed on {f}: ∫f dμ = {direct}, ∫f̃ d*μ = {extended}"
            )));
        }
        pairings += 1;
    }
    Ok(LiftReport { members_checked: members.len(), pairings_checked: pairings, mass_conserved })
}

/// The support-shift facts for a lifted measure.
#[derive(Debug, Clone)]
pub struct SupportShiftReport {
    /// `supp(*μ) ∩ X`, as base-carrier labels.
    pub support_in_carrier: Vec<PointLabel>,
    /// Points with positive atomic `μ`-mass.
    pub positive_atoms: Vec<PointLabel>,
    /// Whether the two sets agree (the shift statement).
    pub matches: bool,
    /// Zero-mass named points, all verified outside the support.
    pub zero_mass_excluded: usize,
    pub free_in_support: bool,
}

/// Checks that `supp(*μ) ∩ X` is exactly the positive-atom set of `μ` —
/// countable by construction — and that zero-mass named points fall out of
/// the support.
pub fn check_support_shift(spectrum: &Spectrum, mu: &Measure) -> Result<SupportShiftReport> {
    let lifted = lift(spectrum, mu)?;
    let support = lifted.support();
    let support_in_carrier: Vec<PointLabel> = support
        .iter()
        .filter_map(|s| match s {
            SpectrumPoint::Principal(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    let positive_atoms: Vec<PointLabel> = mu.positive_atoms().map(|(p, _)| p.clone()).collect();
    // embed() collapses atoms on non-separating finite models; compare images
    let expected: Vec<PointLabel> = {
        let mut v: Vec<PointLabel> = positive_atoms
            .iter()
            .map(|p| spectrum.embed(p).map(|s| spectrum.label_of_point(&s)))
            .collect::<Result<_>>()?;
        v.sort();
        v.dedup();
        v
    };
    let matches = support_in_carrier == expected;
    let mut zero_mass_excluded = 0;
    for p in spectrum.base_carrier().named_points() {
        if mu.mass_at(p).is_zero() && spectrum.base_carrier().is_finite() {
            let image = spectrum.label_of_point(&spectrum.embed(p)?);
            if lifted.as_measure().mass_at(&image).is_zero() {
                assert!(!support_in_carrier.contains(&image));
                zero_mass_excluded += 1;
            }
        } else if mu.mass_at(p).is_zero() {
            assert!(!support_in_carrier.contains(p), "zero-mass point {p} out of support");
            zero_mass_excluded += 1;
        }
    }
    let free_in_support = support
        .iter()
        .any(|s| matches!(s, SpectrumPoint::FreeCofinite | SpectrumPoint::FreeCocountable));
    Ok(SupportShiftReport {
        support_in_carrier,
        positive_atoms,
        matches,
        zero_mass_excluded,
        free_in_support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraModel;
    use crate::spectrum::spectrum_of;
    use num::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn nat_spectrum() -> Spectrum {
        let nat = Carrier::naturals(4, []);
        spectrum_of(&AlgebraModel::for_carrier(&nat, vec![]).unwrap())
    }

    #[test]
    fn evaluate_atomic_and_diffuse() {
        let nat = Carrier::naturals(2, []);
        let mu = Measure::new(
            &nat,
            [(PointLabel::Nat(0), rat(1, 2)), (PointLabel::Nat(1), rat(1, 2))],
            BigRational::zero(),
        )
        .unwrap();
        assert_eq!(mu.evaluate(&nat.positive_set([0u64]).unwrap()).unwrap(), rat(1, 2));
        assert_eq!(mu.evaluate(&nat.empty_set()).unwrap(), BigRational::zero());

        let diffuse = Measure::new(&nat, [], rat(1, 1)).unwrap();
        assert_eq!(diffuse.evaluate(&nat.co_set([0u64, 1]).unwrap()).unwrap(), rat(1, 1));
        assert_eq!(diffuse.evaluate(&nat.positive_set([0u64, 1]).unwrap()).unwrap(), BigRational::zero());
    }

    #[test]
    fn additivity_on_disjoint_samples() {
        let sp = nat_spectrum();
        let nat = sp.base_carrier().clone();
        let mu = Measure::new(
            &nat,
            (0u64..6).map(|n| (PointLabel::Nat(n), rat(1, 1 + n as i64))),
            rat(2, 3),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for e in sp.sample_members(&mut rng, 40).unwrap() {
            let f = e.complement();
            let whole = mu.evaluate(&e.union(&f).unwrap()).unwrap();
            assert_eq!(whole, mu.evaluate(&e).unwrap() + mu.evaluate(&f).unwrap());
        }
    }

    #[test]
    fn negative_and_misplaced_masses_rejected() {
        let nat = Carrier::naturals(0, []);
        assert!(Measure::new(&nat, [(PointLabel::Nat(0), rat(-1, 2))], BigRational::zero()).is_err());
        let x = Carrier::finite(1u64..=2).unwrap();
        assert!(Measure::new(&x, [], rat(1, 2)).is_err());
    }

    #[test]
    fn lift_keeps_masses_and_identity() {
        // μ({n}) = 2^{-n-1} for n ≤ 9, diffuse the remainder to total 1
        let nat = Carrier::naturals(10, []);
        let sp = spectrum_of(&AlgebraModel::for_carrier(&nat, vec![]).unwrap());
        let mut atomic = Vec::new();
        let mut sum = BigRational::zero();
        for n in 0u64..10 {
            let m = BigRational::new(BigInt::from(1), BigInt::from(2i64.pow(n as u32 + 1)));
            sum += &m;
            atomic.push((PointLabel::Nat(n), m));
        }
        let diffuse = rat(1, 1) - sum;
        let mu = Measure::new(&nat, atomic, diffuse.clone()).unwrap();
        let lifted = lift(&sp, &mu).unwrap();
        assert_eq!(lifted.as_measure().mass_at(&PointLabel::Free), diffuse);
        assert_eq!(lifted.as_measure().mass_at(&PointLabel::Nat(3)), rat(1, 16));
        assert_eq!(lifted.total(), mu.total());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let report = verify_lift(&lifted, &mu, &mut rng, 100, 50).unwrap();
        assert!(report.mass_conserved);
    }

    #[test]
    fn purely_diffuse_lifts_to_free_point_mass() {
        let sp = nat_spectrum();
        let mu = Measure::new(sp.base_carrier(), [], rat(1, 1)).unwrap();
        let lifted = lift(&sp, &mu).unwrap();
        assert_eq!(lifted.as_measure().mass_at(&PointLabel::Free), rat(1, 1));
        // *μ(tilde(co ∅)) = 1, every principal clopen gets 0
        assert_eq!(
            lifted.evaluate_tilde(&sp.base_carrier().co_set(Vec::<PointLabel>::new()).unwrap()).unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            lifted.evaluate_tilde(&sp.base_carrier().positive_set([3u64]).unwrap()).unwrap(),
            BigRational::zero()
        );
        assert_eq!(lifted.support(), vec![SpectrumPoint::FreeCofinite]);
    }

    #[test]
    fn dirac_lifts_to_dirac() {
        let sp = nat_spectrum();
        let mu = Measure::dirac(sp.base_carrier(), PointLabel::Nat(3)).unwrap();
        let lifted = lift(&sp, &mu).unwrap();
        assert_eq!(lifted.support(), vec![SpectrumPoint::Principal(PointLabel::Nat(3))]);
    }

    #[test]
    fn support_shift_reports() {
        let sp = nat_spectrum();
        // purely diffuse: support ∩ X = ∅
        let mu = Measure::new(sp.base_carrier(), [], rat(1, 1)).unwrap();
        let report = check_support_shift(&sp, &mu).unwrap();
        assert!(report.matches && report.support_in_carrier.is_empty() && report.free_in_support);
        // three mass points: support ∩ X has exactly those three
        let mu = Measure::new(
            sp.base_carrier(),
            [(PointLabel::Nat(0), rat(1, 3)), (PointLabel::Nat(2), rat(1, 3)), (PointLabel::Nat(4), rat(1, 3))],
            BigRational::zero(),
        )
        .unwrap();
        let report = check_support_shift(&sp, &mu).unwrap();
        assert!(report.matches);
        assert_eq!(report.support_in_carrier.len(), 3);
        assert!(!report.free_in_support);
        assert!(!report.support_in_carrier.contains(&PointLabel::Nat(1)));
        // finite carrier, everywhere positive: support = X, no shift
        let x = Carrier::finite(1u64..=3).unwrap();
        let gens = (1u64..=3).map(|k| x.singleton(k).unwrap()).collect();
        let spf = spectrum_of(&AlgebraModel::for_carrier(&x, gens).unwrap());
        let mu = Measure::new(
            &x,
            (1u64..=3).map(|k| (PointLabel::Nat(k), rat(1, 3))),
            BigRational::zero(),
        )
        .unwrap();
        let report = check_support_shift(&spf, &mu).unwrap();
        assert!(report.matches);
        assert_eq!(report.support_in_carrier.len(), 3);
    }

    #[test]
    fn omega_lift() {
        let omega = Carrier::omega(["a", "b"].map(PointLabel::sym));
        let sp = spectrum_of(&AlgebraModel::for_carrier(&omega, vec![]).unwrap());
        let mu = Measure::new(&omega, [(PointLabel::sym("a"), rat(1, 4))], rat(3, 4)).unwrap();
        let lifted = lift(&sp, &mu).unwrap();
        assert_eq!(lifted.total(), rat(1, 1));
        let report = check_support_shift(&sp, &mu).unwrap();
        assert!(report.matches);
        assert_eq!(report.support_in_carrier, vec![PointLabel::sym("a")]);
        assert!(report.free_in_support);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        verify_lift(&lifted, &mu, &mut rng, 60, 30).unwrap();
    }
}
