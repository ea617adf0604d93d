//! Seminormed function algebras and their character theory: enumeration,
//! norm-continuity filtering, unitization, the compactness witness, and the
//! density constant tying the pulled-back seminorm to the sup over
//! continuous evaluations.
//!
//! Universally quantified inequalities are tested over a family of all
//! generator products up to degree three plus seeded random linear
//! combinations, augmented with targeted separators that make the
//! evaluation-versus-default rejections deterministic. Basis-only testing
//! would be unsound for multiplicative statements; the family is the
//! documented compromise.

use std::fmt;

use num::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::carrier::{Carrier, PointLabel, SymbolicSet};
use crate::error::{Error, Result};
use crate::exact::{Radical, Scalar, ScalarField};
use crate::function::{quasi_norm, sample_scalar, FnElement, NormValue, QuasiNorm};

/// What the algebra spans inside the bounded functions on its carrier.
#[derive(Debug, Clone)]
pub enum AlgebraSpan {
    /// Linear combinations of products of the listed generators (plus the
    /// constants, when unital).
    Generated { generators: Vec<FnElement> },
    /// Every representable function: all of `F^X` on a finite carrier, the
    /// eventually-constant functions on a symbolic one.
    Full,
    /// Every function vanishing at the default — the finitely supported
    /// functions. Infinite carriers only; never unital.
    FinitelySupported,
}

/// A function algebra with a quasi-norm tag and a scalar-field session flag.
#[derive(Debug, Clone)]
pub struct SeminormedFnAlgebra {
    carrier: Carrier,
    span: AlgebraSpan,
    norm: QuasiNorm,
    field: ScalarField,
    unital: bool,
}

impl SeminormedFnAlgebra {
    pub fn new(
        carrier: &Carrier,
        span: AlgebraSpan,
        norm: QuasiNorm,
        field: ScalarField,
        unital: bool,
    ) -> Result<SeminormedFnAlgebra> {
        norm.validate(carrier)?;
        match &span {
            AlgebraSpan::Generated { generators } => {
                for g in generators {
                    carrier.check_same(g.carrier())?;
                    if field == ScalarField::Real && !g.is_symmetric() {
                        return Err(Error::Document(format!(
                            "generator {g} has complex values in a real session"
                        )));
                    }
                }
            }
            AlgebraSpan::Full => {
                if !unital {
                    return Err(Error::Document("the full algebra contains 1; declare it unital".into()));
                }
            }
            AlgebraSpan::FinitelySupported => {
                if carrier.is_finite() {
                    return Err(Error::UnsupportedModel(
                        "finitely-supported coincides with the full algebra on a finite carrier"
                            .into(),
                    ));
                }
                if unital {
                    return Err(Error::Document(
                        "the finitely supported functions never contain 1".into(),
                    ));
                }
            }
        }
        Ok(SeminormedFnAlgebra { carrier: carrier.clone(), span, norm, field, unital })
    }

    pub fn generated(
        carrier: &Carrier,
        generators: Vec<FnElement>,
        norm: QuasiNorm,
        field: ScalarField,
        unital: bool,
    ) -> Result<SeminormedFnAlgebra> {
        SeminormedFnAlgebra::new(carrier, AlgebraSpan::Generated { generators }, norm, field, unital)
    }

    pub fn full(carrier: &Carrier, norm: QuasiNorm, field: ScalarField) -> Result<SeminormedFnAlgebra> {
        SeminormedFnAlgebra::new(carrier, AlgebraSpan::Full, norm, field, true)
    }

    pub fn finitely_supported(
        carrier: &Carrier,
        norm: QuasiNorm,
        field: ScalarField,
    ) -> Result<SeminormedFnAlgebra> {
        SeminormedFnAlgebra::new(carrier, AlgebraSpan::FinitelySupported, norm, field, false)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn span(&self) -> &AlgebraSpan {
        &self.span
    }

    pub fn norm(&self) -> &QuasiNorm {
        &self.norm
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn norm_value(&self, f: &FnElement) -> NormValue {
        quasi_norm(&self.norm, f)
    }

    /// Named labels the samplers may touch; the naturals get a small prefix
    /// even when the session named none.
    fn label_pool(&self) -> Vec<PointLabel> {
        let mut pool: Vec<PointLabel> = self.carrier.named_points().cloned().collect();
        pool.retain(|p| *p != PointLabel::Free);
        if pool.len() < 4 && !self.carrier.is_finite() {
            if let crate::carrier::CarrierKind::CountableNat = self.carrier.kind() {
                pool.extend((0u64..4).map(PointLabel::Nat));
                pool.sort();
                pool.dedup();
            }
        }
        pool
    }

    /// The probe elements whose value vectors classify evaluation cells: the
    /// generators themselves, or one indicator per named label on the full
    /// and finitely supported spans.
    fn probes(&self) -> Vec<FnElement> {
        match &self.span {
            AlgebraSpan::Generated { generators } => generators.clone(),
            AlgebraSpan::Full | AlgebraSpan::FinitelySupported => self
                .label_pool()
                .into_iter()
                .map(|p| {
                    FnElement::characteristic(
                        &self.carrier.singleton(p).expect("pool labels are valid"),
                    )
                })
                .collect(),
        }
    }

    /// A ramp with distinct values across the pool; enriches the family on
    /// the non-generated spans.
    fn ramp(&self) -> Option<FnElement> {
        match self.span {
            AlgebraSpan::Generated { .. } => None,
            AlgebraSpan::Full | AlgebraSpan::FinitelySupported => {
                let default = if matches!(self.span, AlgebraSpan::Full) && !self.carrier.is_finite()
                {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                let values: Vec<(PointLabel, Scalar)> = self
                    .label_pool()
                    .into_iter()
                    .enumerate()
                    .map(|(k, p)| (p, Scalar::from_int(k as i64 + 2)))
                    .collect();
                Some(FnElement::new(&self.carrier, values, default).expect("pool labels"))
            }
        }
    }

    /// Products of the probes up to degree three, the unit first when the
    /// algebra is unital.
    pub fn monomials(&self) -> Vec<FnElement> {
        let mut gens = self.probes();
        gens.extend(self.ramp());
        let mut out: Vec<FnElement> = Vec::new();
        if self.unital {
            out.push(FnElement::one(&self.carrier));
        }
        let k = gens.len();
        out.extend(gens.iter().cloned());
        for i in 0..k {
            for j in i..k {
                out.push(gens[i].mul(&gens[j]).expect("same carrier"));
            }
        }
        for i in 0..k {
            for j in i..k {
                for l in j..k {
                    out.push(gens[i].mul(&gens[j]).and_then(|p| p.mul(&gens[l])).expect("same carrier"));
                }
            }
        }
        out.dedup();
        out
    }

    /// The test family: monomials plus `combos` seeded random linear
    /// combinations of them. Exceptions stay inside the label pool, so the
    /// unnamed tail acts by the default value on every member.
    pub fn test_family(&self, seed: u64, combos: usize) -> Result<Vec<FnElement>> {
        let monomials = self.monomials();
        if monomials.is_empty() {
            return Err(Error::EmptyTestFamily);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut family = monomials.clone();
        for _ in 0..combos {
            let terms = rng.gen_range(2..=4usize);
            let mut f = FnElement::zero(&self.carrier);
            for _ in 0..terms {
                let m = &monomials[rng.gen_range(0..monomials.len())];
                let c = sample_scalar(&mut rng, self.field);
                f = f.add(&m.scale(&c))?;
            }
            family.push(f);
        }
        Ok(family)
    }

    fn cells(&self) -> CellPartition {
        let probes = self.probes();
        let defaults: Vec<Scalar> = probes.iter().map(|g| g.default_value().clone()).collect();
        let mut support: Vec<PointLabel> = if self.carrier.is_finite() {
            self.carrier.named_points().cloned().collect()
        } else {
            let mut s: Vec<PointLabel> =
                probes.iter().flat_map(|g| g.exception_points().cloned()).collect();
            s.sort();
            s.dedup();
            s
        };
        support.sort();

        let mut named: Vec<(PointLabel, Vec<PointLabel>, Vec<Scalar>)> = Vec::new();
        for p in support {
            let vector: Vec<Scalar> =
                probes.iter().map(|g| g.value_at(&p).expect("support point")).collect();
            // a point with the default vector belongs to the generic cell
            if !self.carrier.is_finite() && vector == defaults {
                continue;
            }
            if let Some(entry) = named.iter_mut().find(|(_, _, v)| *v == vector) {
                entry.1.push(p);
            } else {
                named.push((p.clone(), vec![p], vector));
            }
        }
        let named = named
            .into_iter()
            .map(|(rep, points, vector)| {
                let cell = self.carrier.positive_set(points).expect("support points");
                (rep, cell, vector)
            })
            .collect();
        let generic = (!self.carrier.is_finite()).then_some(defaults);
        CellPartition { named, generic }
    }

    /// The characters: one evaluation per point-separation cell, plus the
    /// default-value character on infinite carriers; zero functionals (an
    /// all-zero cell of a non-unital algebra) are excluded. The full and
    /// finitely supported spans also carry the tail of evaluations at
    /// unnamed points.
    pub fn characters(&self) -> Result<CharacterSet> {
        let partition = self.cells();
        let mut characters = Vec::new();
        for (rep, cell, vector) in &partition.named {
            let zero_vector = vector.iter().all(Scalar::is_zero);
            if zero_vector && !self.unital {
                continue;
            }
            characters.push(Character {
                kind: CharacterKind::Evaluation(rep.clone()),
                cell: Some(cell.clone()),
                probe_values: vector.clone(),
            });
        }
        if let Some(defaults) = &partition.generic {
            let zero_vector = defaults.iter().all(Scalar::is_zero);
            if !(zero_vector && !self.unital) {
                characters.push(Character {
                    kind: CharacterKind::DefaultValue,
                    cell: None,
                    probe_values: defaults.clone(),
                });
            }
        }
        let unnamed_tail = matches!(self.span, AlgebraSpan::Full | AlgebraSpan::FinitelySupported)
            && !self.carrier.is_finite();
        Ok(CharacterSet { characters, unnamed_tail })
    }

    /// Whether the default-value character is itself an evaluation: on a
    /// generated span every unnamed point realizes it; on the full and
    /// finitely supported spans it is only the tail's limit.
    pub fn default_char_is_evaluation(&self) -> bool {
        matches!(self.span, AlgebraSpan::Generated { .. }) && !self.carrier.is_finite()
    }

    /// Targeted separators: for each evaluation character, a span member on
    /// which it provably differs from the default-value functional. These
    /// make the lim-sup rejections independent of random sampling.
    fn separators(&self, set: &CharacterSet) -> Vec<FnElement> {
        if self.carrier.is_finite() {
            return Vec::new();
        }
        let probes = self.probes();
        let defaults: Vec<Scalar> = probes.iter().map(|g| g.default_value().clone()).collect();
        let mut out = Vec::new();
        for ch in &set.characters {
            if ch.kind == CharacterKind::DefaultValue {
                continue;
            }
            let v = &ch.probe_values;
            let Some(i) = v.iter().zip(&defaults).position(|(a, b)| a != b) else { continue };
            if defaults[i].is_zero() {
                out.push(probes[i].clone());
            } else if !v[i].is_zero() {
                // gᵢ² − dᵢ·gᵢ kills the default, not the evaluation
                let sq = probes[i].mul(&probes[i]).expect("same carrier");
                out.push(sq.sub(&probes[i].scale(&defaults[i])).expect("same carrier"));
            } else if let Some(j) = v.iter().position(|a| !a.is_zero()) {
                // gⱼ − (dⱼ/dᵢ)·gᵢ: default value cancels, evaluation survives
                let ratio = defaults[j].div(&defaults[i]).expect("dᵢ ≠ 0");
                out.push(probes[j].sub(&probes[i].scale(&ratio)).expect("same carrier"));
            }
        }
        out
    }

    /// Splits the characters by the continuity inequality `|α(a)| ≤ ρ(a)`
    /// over the test family, with a witness per rejection. The tail verdict
    /// follows the named evaluations by symmetry.
    pub fn continuous_characters(&self, seed: u64) -> Result<ContinuityReport> {
        let set = self.characters()?;
        let mut family = self.test_family(seed, 1000)?;
        family.extend(self.separators(&set));
        let mut continuous = Vec::new();
        let mut rejected = Vec::new();
        for ch in set.characters {
            let witness = family.iter().find(|a| {
                let value = ch.apply(a).expect("family on carrier").abs();
                let bound = self.norm_value(a);
                match bound.finite() {
                    Some(b) => value > *b,
                    None => false,
                }
            });
            match witness {
                Some(a) => rejected.push(RejectedCharacter { character: ch, witness: a.clone() }),
                None => continuous.push(ch),
            }
        }
        let tail_continuous = if set.unnamed_tail {
            let named_evals_continuous = continuous
                .iter()
                .filter(|c| matches!(c.kind, CharacterKind::Evaluation(_)))
                .count();
            let named_evals_total = named_evals_continuous
                + rejected
                    .iter()
                    .filter(|r| matches!(r.character.kind, CharacterKind::Evaluation(_)))
                    .count();
            Some(named_evals_total == 0 || named_evals_continuous == named_evals_total)
        } else {
            None
        };
        Ok(ContinuityReport { continuous, rejected, tail_continuous })
    }

    /// Adjoins a unit: pairs `(a, λ)` under
    /// `(a,λ)(b,γ) = (ab + γa + λb, λγ)` with `ρ₁(a,λ) = ρ(a) + |λ|`.
    pub fn unitize(&self) -> UnitizedAlgebra {
        UnitizedAlgebra { base: self.clone() }
    }

    /// Looks for `a₀` with `|α(a₀)| ≥ 1` over every continuous character —
    /// the unit when there is one, otherwise a scaled family member. Failure
    /// produces the vanishing-evaluations evidence of non-compactness.
    pub fn compactness_witness(&self, seed: u64) -> Result<CompactnessReport> {
        let report = self.continuous_characters(seed)?;
        if self.unital {
            let a0 = FnElement::one(&self.carrier);
            for ch in &report.continuous {
                assert_eq!(ch.apply(&a0)?.abs(), Radical::one(), "characters are unital");
            }
            return Ok(CompactnessReport::Compact { a0, min_abs: Radical::one() });
        }
        let tail_continuous = report.tail_continuous.unwrap_or(false);
        let family = self.test_family(seed, 200)?;
        let mut evidence: Vec<String> = Vec::new();
        for a in &family {
            let mut min_abs: Option<Radical> = None;
            for ch in &report.continuous {
                let v = ch.apply(a)?.abs();
                min_abs = Some(match min_abs {
                    None => v,
                    Some(m) => m.min(v),
                });
            }
            if tail_continuous {
                let v = a.default_value().abs();
                min_abs = Some(match min_abs {
                    None => v,
                    Some(m) => m.min(v),
                });
            }
            match min_abs {
                None => {
                    // no continuous characters at all: the spectrum is empty
                    // and the covering condition is vacuous
                    return Ok(CompactnessReport::Compact {
                        a0: FnElement::zero(&self.carrier),
                        min_abs: Radical::one(),
                    });
                }
                Some(m) if m.is_positive() => {
                    let scale = ceil_to_integer(&Radical::one().div(&m).expect("single term"));
                    let a0 = a.scale(&Scalar::from_rational(scale));
                    let min_scaled = self.min_over_continuous(&report, tail_continuous, &a0)?;
                    assert!(min_scaled >= Radical::one());
                    return Ok(CompactnessReport::Compact { a0, min_abs: min_scaled });
                }
                Some(_) => {
                    if evidence.len() < 3 {
                        let culprit = if tail_continuous && a.default_value().is_zero() {
                            "evaluations beyond its support vanish: e_x(a) = 0 for every unnamed x"
                                .to_string()
                        } else {
                            "a continuous character vanishes on it".to_string()
                        };
                        evidence.push(format!("candidate {a}: {culprit}"));
                    }
                }
            }
        }
        Ok(CompactnessReport::NonCompact { evidence })
    }

    fn min_over_continuous(
        &self,
        report: &ContinuityReport,
        tail_continuous: bool,
        a: &FnElement,
    ) -> Result<Radical> {
        let mut min_abs: Option<Radical> = None;
        for ch in &report.continuous {
            let v = ch.apply(a)?.abs();
            min_abs = Some(match min_abs {
                None => v,
                Some(m) => m.min(v),
            });
        }
        if tail_continuous {
            let v = a.default_value().abs();
            min_abs = Some(match min_abs {
                None => v,
                Some(m) => m.min(v),
            });
        }
        Ok(min_abs.unwrap_or_else(Radical::one))
    }

    /// The density constant: `D* = max ρ(a) / sup_{x ∈ X_ρ} |a(x)|` over the
    /// test family, with density of the continuous evaluations in the
    /// spectrum checked directly against the character enumeration.
    pub fn density_report(&self, seed: u64) -> Result<DensityReport> {
        let family = self.test_family(seed, 1000)?;
        let continuity = self.continuous_characters(seed)?;
        let tail_in_x_rho = continuity.tail_continuous.unwrap_or(false);
        // X_ρ: continuous characters that are evaluations at carrier points
        let x_rho: Vec<&Character> = continuity
            .continuous
            .iter()
            .filter(|c| match c.kind {
                CharacterKind::Evaluation(_) => true,
                CharacterKind::DefaultValue => self.default_char_is_evaluation(),
            })
            .collect();

        let mut d_star: Option<Radical> = None;
        let mut witness: Option<FnElement> = None;
        let mut unbounded = false;
        for a in &family {
            let numerator = match self.norm_value(a).finite() {
                Some(v) => v.clone(),
                None => {
                    unbounded = true;
                    witness.get_or_insert_with(|| a.clone());
                    continue;
                }
            };
            if numerator.is_zero() {
                continue;
            }
            let mut denominator = Radical::zero();
            for ch in &x_rho {
                let v = ch.apply(a)?.abs();
                if v > denominator {
                    denominator = v;
                }
            }
            if tail_in_x_rho {
                let v = a.default_value().abs();
                if v > denominator {
                    denominator = v;
                }
            }
            if denominator.is_zero() {
                unbounded = true;
                witness.get_or_insert_with(|| a.clone());
                continue;
            }
            let ratio = numerator.div(&denominator).expect("norm values are single radicals");
            d_star = Some(match d_star {
                None => ratio,
                Some(d) => d.max(ratio),
            });
        }
        // no binding ratio at all (a zero algebra, say) constrains nothing:
        // D* = 0 and the evaluations are trivially dense
        let d_star =
            if unbounded { None } else { Some(d_star.unwrap_or_else(Radical::zero)) };
        let dense = d_star.is_some();

        // direct density: the closure of ι*(X_ρ) adds the default-value
        // character exactly when the continuous evaluations have a tail
        let direct_dense = continuity.continuous.iter().all(|ch| match ch.kind {
            CharacterKind::Evaluation(_) => x_rho.iter().any(|c| c.kind == ch.kind),
            CharacterKind::DefaultValue => {
                self.default_char_is_evaluation() && x_rho.iter().any(|c| c.kind == ch.kind)
                    || tail_in_x_rho
            }
        });

        Ok(DensityReport {
            d_star,
            dense,
            witness,
            evaluations_continuous: x_rho.len(),
            tail_in_x_rho,
            direct_dense,
            agrees: dense == direct_dense,
        })
    }
}

struct CellPartition {
    /// (representative, cell, probe value vector) per named cell.
    named: Vec<(PointLabel, SymbolicSet, Vec<Scalar>)>,
    /// Probe defaults when an infinite carrier has a generic cell.
    generic: Option<Vec<Scalar>>,
}

/// Smallest positive integer `k ≥ r`, as a rational.
fn ceil_to_integer(r: &Radical) -> BigRational {
    let mut k = 1i64;
    let mut step = 1i64;
    while Radical::from_int(k) < *r {
        k += step;
        step *= 2;
    }
    // binary search back down
    let mut lo = k - step / 2;
    let mut hi = k;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if Radical::from_int(mid) < *r {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    BigRational::from_integer(lo.into())
}

/// A character of the base algebra: an evaluation along a cell, or the
/// default-value functional.
#[derive(Debug, Clone)]
pub struct Character {
    kind: CharacterKind,
    cell: Option<SymbolicSet>,
    probe_values: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterKind {
    Evaluation(PointLabel),
    DefaultValue,
}

impl Character {
    pub fn kind(&self) -> &CharacterKind {
        &self.kind
    }

    /// The cell the evaluation represents; `None` for the generic cell.
    pub fn cell(&self) -> Option<&SymbolicSet> {
        self.cell.as_ref()
    }

    pub fn probe_values(&self) -> &[Scalar] {
        &self.probe_values
    }

    pub fn apply(&self, f: &FnElement) -> Result<Scalar> {
        match &self.kind {
            CharacterKind::Evaluation(p) => f.value_at(p),
            CharacterKind::DefaultValue => Ok(f.default_value().clone()),
        }
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CharacterKind::Evaluation(p) => write!(f, "e_{p}"),
            CharacterKind::DefaultValue => write!(f, "δ (default value)"),
        }
    }
}

/// The enumerated characters. `unnamed_tail` acknowledges evaluations at
/// every unnamed point of the full or finitely supported spans: on any
/// family member they act by the default value, and they accumulate at the
/// default-value functional.
#[derive(Debug, Clone)]
pub struct CharacterSet {
    pub characters: Vec<Character>,
    pub unnamed_tail: bool,
}

impl CharacterSet {
    pub fn named_count(&self) -> usize {
        self.characters.len()
    }
}

/// A character that failed the continuity inequality, with the family member
/// violating it.
#[derive(Debug, Clone)]
pub struct RejectedCharacter {
    pub character: Character,
    pub witness: FnElement,
}

/// Continuity filtering outcome.
#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub continuous: Vec<Character>,
    pub rejected: Vec<RejectedCharacter>,
    /// Classification of the unnamed tail, present only when there is one.
    pub tail_continuous: Option<bool>,
}

/// A member of the unitization: the pair `a + λ·1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitizedElement {
    pub a: FnElement,
    pub lambda: Scalar,
}

impl fmt::Display for UnitizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.lambda)
    }
}

/// The unitization `A₁ = A ⊕ F`.
#[derive(Debug, Clone)]
pub struct UnitizedAlgebra {
    base: SeminormedFnAlgebra,
}

impl UnitizedAlgebra {
    pub fn base(&self) -> &SeminormedFnAlgebra {
        &self.base
    }

    pub fn element(&self, a: FnElement, lambda: Scalar) -> Result<UnitizedElement> {
        self.base.carrier.check_same(a.carrier())?;
        Ok(UnitizedElement { a, lambda })
    }

    pub fn one(&self) -> UnitizedElement {
        UnitizedElement { a: FnElement::zero(&self.base.carrier), lambda: Scalar::one() }
    }

    pub fn add(&self, x: &UnitizedElement, y: &UnitizedElement) -> Result<UnitizedElement> {
        Ok(UnitizedElement {
            a: x.a.add(&y.a)?,
            lambda: x.lambda.clone() + y.lambda.clone(),
        })
    }

    /// `(a,λ)(b,γ) = (ab + γa + λb, λγ)`.
    pub fn mul(&self, x: &UnitizedElement, y: &UnitizedElement) -> Result<UnitizedElement> {
        let ab = x.a.mul(&y.a)?;
        let with_cross = ab.add(&x.a.scale(&y.lambda))?.add(&y.a.scale(&x.lambda))?;
        Ok(UnitizedElement { a: with_cross, lambda: x.lambda.clone() * y.lambda.clone() })
    }

    pub fn conj(&self, x: &UnitizedElement) -> UnitizedElement {
        UnitizedElement { a: x.a.conj(), lambda: x.lambda.conj() }
    }

    /// `ρ₁(a,λ) = ρ(a) + |λ|`.
    pub fn norm_value(&self, x: &UnitizedElement) -> Radical {
        self.base.norm_value(&x.a).expect_finite().clone() + x.lambda.abs()
    }

    /// Characters of `A₁`: every character of `A` extended by
    /// `α'(a,λ) = α(a) + λ`, plus exactly one new character `∞̂(a,λ) = λ`.
    pub fn characters(&self) -> Result<UnitizedCharacterSet> {
        let base = self.base.characters()?;
        let extensions = base.characters.into_iter().map(UnitizedCharacter::Extension).collect();
        Ok(UnitizedCharacterSet {
            extensions,
            adjoined: UnitizedCharacter::Adjoined,
            unnamed_tail: base.unnamed_tail,
        })
    }

    /// Random elements over the base test family.
    pub fn sample_elements(&self, seed: u64, count: usize) -> Result<Vec<UnitizedElement>> {
        let family = self.base.test_family(seed, count.min(50))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let a = family[rng.gen_range(0..family.len())].clone();
            let lambda = sample_scalar(&mut rng, self.base.field);
            out.push(UnitizedElement { a, lambda });
        }
        Ok(out)
    }
}

/// A character of the unitization.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitizedCharacter {
    Extension(Character),
    /// `∞̂(a,λ) = λ` — zero on `A`, ρ₁-continuous.
    Adjoined,
}

impl UnitizedCharacter {
    pub fn apply(&self, x: &UnitizedElement) -> Result<Scalar> {
        match self {
            UnitizedCharacter::Extension(ch) => Ok(ch.apply(&x.a)? + x.lambda.clone()),
            UnitizedCharacter::Adjoined => Ok(x.lambda.clone()),
        }
    }
}

impl fmt::Display for UnitizedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitizedCharacter::Extension(ch) => write!(f, "{ch}′"),
            UnitizedCharacter::Adjoined => write!(f, "∞̂"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct UnitizedCharacterSet {
    pub extensions: Vec<UnitizedCharacter>,
    pub adjoined: UnitizedCharacter,
    pub unnamed_tail: bool,
}

impl UnitizedCharacterSet {
    /// Named character count including the adjoined one.
    pub fn named_count(&self) -> usize {
        self.extensions.len() + 1
    }
}

/// Outcome of the compactness search.
#[derive(Debug, Clone)]
pub enum CompactnessReport {
    Compact { a0: FnElement, min_abs: Radical },
    NonCompact { evidence: Vec<String> },
}

/// The density constant and the direct density verdict it must agree with.
#[derive(Debug, Clone)]
pub struct DensityReport {
    /// `max ρ(a) / sup_{x∈X_ρ} |a(x)|`; `None` means unbounded (a ratio hit
    /// a zero denominator with positive numerator).
    pub d_star: Option<Radical>,
    pub dense: bool,
    /// A member with positive norm invisible to every continuous evaluation.
    pub witness: Option<FnElement>,
    pub evaluations_continuous: usize,
    pub tail_in_x_rho: bool,
    pub direct_dense: bool,
    pub agrees: bool,
}
