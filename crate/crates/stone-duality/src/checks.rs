//! The check registry: every structural statement the engine materializes is
//! bound to one named, re-runnable routine. The CLI and the test suites both
//! go through this registry, so a statement passes in exactly one place.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::carrier::{CarrierKind, PointLabel};
use crate::error::{Error, Result};
use crate::exact::Radical;
use crate::function::{quasi_norm, sample_fn_element, sample_scalar, QuasiNorm};
use crate::gelfand::{AlgebraSpan, CharacterKind, CompactnessReport, UnitizedCharacter};
use crate::measure::{check_support_shift, lift, verify_lift};
use crate::model::{render_set, ResolvedModel};
use crate::spectrum::{spectrum_of, sup_distance, Spectrum};
use crate::topology::{check_open_halo, measurability_check, robinson_check, TopSpace};

/// Identifiers of the registry, in canonical run order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    QuasiNormAxioms,
    CtsHom,
    UnitCmpt,
    NonUnital,
    JstBndd,
    ImgOfMeas,
    Mcmpt1,
    Mcmpt2,
    Mcmpt3,
    Mcmpt4,
    NotMetrizable,
    CompleteIffExtdisc,
    CntblyGenNote,
    MeasFucAlg,
    MeasExt,
    MeasShift,
    SuppCorollary,
    OpenHalos,
    SemiRobinson,
}

impl CheckId {
    pub const ALL: [CheckId; 19] = [
        CheckId::QuasiNormAxioms,
        CheckId::CtsHom,
        CheckId::UnitCmpt,
        CheckId::NonUnital,
        CheckId::JstBndd,
        CheckId::ImgOfMeas,
        CheckId::Mcmpt1,
        CheckId::Mcmpt2,
        CheckId::Mcmpt3,
        CheckId::Mcmpt4,
        CheckId::NotMetrizable,
        CheckId::CompleteIffExtdisc,
        CheckId::CntblyGenNote,
        CheckId::MeasFucAlg,
        CheckId::MeasExt,
        CheckId::MeasShift,
        CheckId::SuppCorollary,
        CheckId::OpenHalos,
        CheckId::SemiRobinson,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::QuasiNormAxioms => "quasi-norm-axioms",
            CheckId::CtsHom => "cts-hom",
            CheckId::UnitCmpt => "unit-cmpt",
            CheckId::NonUnital => "non-unital",
            CheckId::JstBndd => "jst-bndd",
            CheckId::ImgOfMeas => "img-of-meas",
            CheckId::Mcmpt1 => "mcmpt-1",
            CheckId::Mcmpt2 => "mcmpt-2",
            CheckId::Mcmpt3 => "mcmpt-3",
            CheckId::Mcmpt4 => "mcmpt-4",
            CheckId::NotMetrizable => "not-metrizable",
            CheckId::CompleteIffExtdisc => "complete-iff-extdisc",
            CheckId::CntblyGenNote => "cntbly-gen-note",
            CheckId::MeasFucAlg => "meas-fuc-alg",
            CheckId::MeasExt => "meas-ext",
            CheckId::MeasShift => "meas-shift",
            CheckId::SuppCorollary => "supp-corollary",
            CheckId::OpenHalos => "open-halos",
            CheckId::SemiRobinson => "semi-robinson",
        }
    }

    /// One line on what the check verifies.
    pub fn summary(&self) -> &'static str {
        match self {
            CheckId::QuasiNormAxioms => {
                "quasi-norm axioms (involution, triangle, homogeneity, submultiplicativity) on samples"
            }
            CheckId::CtsHom => "character continuity ⇔ |α(a)| ≤ ρ(a) over the test family",
            CheckId::UnitCmpt => "unital spectra are compact; a₀ with |α(a₀)| ≥ 1 exists or fails honestly",
            CheckId::NonUnital => "unitization adds exactly one character ∞̂(a,λ) = λ",
            CheckId::JstBndd => "density constant D* finite ⇔ continuous evaluations dense in the spectrum",
            CheckId::ImgOfMeas => "closure(E) = Ẽ in the spectrum for algebra members",
            CheckId::Mcmpt1 => "every Ẽ is clopen",
            CheckId::Mcmpt2 => "the Ẽ form a basis of the spectrum topology",
            CheckId::Mcmpt3 => "the carrier is open, dense, and discrete in the spectrum",
            CheckId::Mcmpt4 => "closure(Y) = Y ⇔ Y finite, for subsets of the carrier",
            CheckId::NotMetrizable => "pairwise sup-distance-1 indicator family (non-separability defect)",
            CheckId::CompleteIffExtdisc => "completeness of Σ ⇔ extreme disconnectedness of the spectrum",
            CheckId::CntblyGenNote => "the Borel algebra is countably generated",
            CheckId::MeasFucAlg => "level sets measurable ⇔ induced point map measurable",
            CheckId::MeasExt => "*μ(Ẽ) = μ(E), mass conservation, and the simple-function pairing",
            CheckId::MeasShift => "supp(*μ) ∩ X is exactly the positive-atom set",
            CheckId::SuppCorollary => "zero-mass points fall out of supp(*μ)",
            CheckId::OpenHalos => "h(x) open ⇔ {x} open, and halos are pairwise disjoint (Hausdorff)",
            CheckId::SemiRobinson => "Y compact ⇔ Ỹ covered by the halos of its points",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<CheckId> {
        CheckId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Document(format!("unknown check id `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped { reason: String },
}

/// The outcome of one check on one model.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: CheckId,
    pub model: String,
    #[serde(flatten)]
    pub status: CheckStatus,
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, CheckStatus::Fail)
    }

    pub fn status_word(&self) -> &str {
        match &self.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped { .. } => "skip",
        }
    }
}

struct Outcome {
    failed: Option<String>,
    details: Vec<String>,
}

impl Outcome {
    fn pass() -> Outcome {
        Outcome { failed: None, details: Vec::new() }
    }

    fn note(mut self, line: impl Into<String>) -> Outcome {
        self.details.push(line.into());
        self
    }

    fn fail(counterexample: impl Into<String>) -> Outcome {
        Outcome { failed: Some(counterexample.into()), details: Vec::new() }
    }
}

/// Runs one check. A check that does not apply to the model kind returns
/// `Error::NotApplicable`.
pub fn run_check(id: CheckId, model: &ResolvedModel) -> Result<CheckReport> {
    applicability(id, model).map_err(|reason| Error::NotApplicable {
        check: id.as_str().into(),
        reason,
    })?;
    let start = Instant::now();
    let outcome = execute(id, model)?;
    let elapsed_ms = start.elapsed().as_millis();
    Ok(CheckReport {
        id,
        model: model.name.clone(),
        status: match &outcome.failed {
            None => CheckStatus::Pass,
            Some(_) => CheckStatus::Fail,
        },
        details: outcome.details,
        counterexample: outcome.failed,
        elapsed_ms,
    })
}

/// Runs every check in registry order; inapplicable ones appear as skips.
pub fn run_all(model: &ResolvedModel) -> Vec<CheckReport> {
    CheckId::ALL
        .iter()
        .map(|id| match run_check(*id, model) {
            Ok(report) => report,
            Err(Error::NotApplicable { reason, .. }) => CheckReport {
                id: *id,
                model: model.name.clone(),
                status: CheckStatus::Skipped { reason },
                details: Vec::new(),
                counterexample: None,
                elapsed_ms: 0,
            },
            Err(e) => CheckReport {
                id: *id,
                model: model.name.clone(),
                status: CheckStatus::Fail,
                details: Vec::new(),
                counterexample: Some(e.to_string()),
                elapsed_ms: 0,
            },
        })
        .collect()
}

fn applicability(id: CheckId, model: &ResolvedModel) -> std::result::Result<(), String> {
    let needs_fn_algebra = || {
        model
            .fn_algebra
            .as_ref()
            .map(|_| ())
            .ok_or_else(|| "no [function-algebra] section in the model".to_string())
    };
    let needs_measure = || {
        model
            .measure
            .as_ref()
            .map(|_| ())
            .ok_or_else(|| "no [measure] section in the model".to_string())
    };
    let needs_topology = || {
        model
            .topology
            .as_ref()
            .map(|_| ())
            .ok_or_else(|| "no [topology] section in the model".to_string())
    };
    match id {
        CheckId::QuasiNormAxioms | CheckId::CtsHom | CheckId::JstBndd => needs_fn_algebra(),
        CheckId::UnitCmpt | CheckId::NonUnital => needs_fn_algebra(),
        CheckId::ImgOfMeas
        | CheckId::Mcmpt1
        | CheckId::Mcmpt2
        | CheckId::CompleteIffExtdisc => Ok(()),
        CheckId::Mcmpt3 | CheckId::Mcmpt4 => {
            if model.sigma.has_singletons() {
                Ok(())
            } else {
                Err("Σ does not contain every named singleton (the hypothesis fails)".into())
            }
        }
        CheckId::NotMetrizable => {
            let available = match model.sigma.kind() {
                crate::algebra::ModelKind::FiniteCofinite => usize::MAX,
                _ => model.sigma.generated().atoms().len(),
            };
            if available >= 2 {
                Ok(())
            } else {
                Err("fewer than two disjoint nonempty members".into())
            }
        }
        CheckId::CntblyGenNote => needs_topology(),
        CheckId::MeasFucAlg => {
            needs_topology()?;
            needs_fn_algebra()?;
            match model.topology {
                Some(TopSpace::Finite(_)) => Ok(()),
                _ => Err("the measurability criterion runs on finite topologies".into()),
            }
        }
        CheckId::MeasExt | CheckId::MeasShift | CheckId::SuppCorollary => needs_measure(),
        CheckId::OpenHalos => {
            needs_topology()?;
            match &model.topology {
                Some(t) if t.is_hausdorff() => Ok(()),
                Some(t) => Err(format!(
                    "{t} is T1 but not Hausdorff; halo disjointness does not apply"
                )),
                None => unreachable!(),
            }
        }
        CheckId::SemiRobinson => needs_topology(),
    }
}

fn execute(id: CheckId, model: &ResolvedModel) -> Result<Outcome> {
    match id {
        CheckId::QuasiNormAxioms => quasi_norm_axioms(model),
        CheckId::CtsHom => cts_hom(model),
        CheckId::UnitCmpt => unit_cmpt(model),
        CheckId::NonUnital => non_unital(model),
        CheckId::JstBndd => jst_bndd(model),
        CheckId::ImgOfMeas => img_of_meas(model),
        CheckId::Mcmpt1 | CheckId::Mcmpt2 | CheckId::Mcmpt3 | CheckId::Mcmpt4 => mcmpt(id, model),
        CheckId::NotMetrizable => not_metrizable(model),
        CheckId::CompleteIffExtdisc => complete_iff_extdisc(model),
        CheckId::CntblyGenNote => cntbly_gen_note(model),
        CheckId::MeasFucAlg => meas_fuc_alg(model),
        CheckId::MeasExt => meas_ext(model),
        CheckId::MeasShift => meas_shift(model),
        CheckId::SuppCorollary => supp_corollary(model),
        CheckId::OpenHalos => open_halos(model),
        CheckId::SemiRobinson => semi_robinson(model),
    }
}

fn spectrum_for(model: &ResolvedModel) -> Spectrum {
    spectrum_of(&model.sigma)
}

fn quasi_norm_axioms(model: &ResolvedModel) -> Result<Outcome> {
    let alg = model.fn_algebra.as_ref().expect("applicability");
    let norm = alg.norm();
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let pool: Vec<PointLabel> = {
        let mut p: Vec<PointLabel> = model
            .carrier
            .named_points()
            .filter(|l| !matches!(l, PointLabel::Free))
            .cloned()
            .collect();
        if p.len() < 4 && model.carrier.kind() == CarrierKind::CountableNat {
            p.extend((0u64..4).map(PointLabel::Nat));
            p.sort();
            p.dedup();
        }
        p
    };
    for sample in 0..1000 {
        let f = sample_fn_element(&mut rng, &model.carrier, &pool, alg.field());
        let g = sample_fn_element(&mut rng, &model.carrier, &pool, alg.field());
        let r = sample_scalar(&mut rng, alg.field());
        let nf = quasi_norm(norm, &f).expect_finite().clone();
        let ng = quasi_norm(norm, &g).expect_finite().clone();
        if quasi_norm(norm, &f.conj()).expect_finite() != &nf {
            return Ok(Outcome::fail(format!("involution invariance fails at f = {f}")));
        }
        let sum = quasi_norm(norm, &f.add(&g)?).expect_finite().clone();
        if sum > nf.clone() + ng.clone() {
            return Ok(Outcome::fail(format!(
                "triangle fails on sample {sample}: ρ(f+g) = {sum} > {} for f = {f}, g = {g}",
                nf.clone() + ng.clone()
            )));
        }
        let scaled = quasi_norm(norm, &f.scale(&r)).expect_finite().clone();
        if scaled != nf.clone() * r.abs() {
            return Ok(Outcome::fail(format!("homogeneity fails at r = {r}, f = {f}")));
        }
        let prod = quasi_norm(norm, &f.mul(&g)?).expect_finite().clone();
        if prod > nf * ng {
            return Ok(Outcome::fail(format!(
                "submultiplicativity fails on sample {sample}: f = {f}, g = {g}"
            )));
        }
    }
    let mut outcome = Outcome::pass().note("axioms (1)–(4) hold on 1000 sampled pairs");
    if !norm.unit_norm_at_least_one(&model.carrier) {
        outcome = outcome.note("warning: ρ(1) < 1 for this norm tag");
    }
    Ok(outcome)
}

fn cts_hom(model: &ResolvedModel) -> Result<Outcome> {
    let alg = model.fn_algebra.as_ref().expect("applicability");
    let report = alg.continuous_characters(model.seed)?;
    // every rejection carries an inequality witness; re-verify it
    for r in &report.rejected {
        let value = r.character.apply(&r.witness)?.abs();
        let bound = alg.norm_value(&r.witness).expect_finite().clone();
        if value <= bound {
            return Ok(Outcome::fail(format!(
                "stale rejection witness for {}: |α(a)| = {value} ≤ ρ(a) = {bound}",
                r.character
            )));
        }
    }
    // the Gelfand bound, C = 1, on the surviving characters
    for a in alg.test_family(model.seed, 300)? {
        let bound = alg.norm_value(&a).expect_finite().clone();
        for ch in &report.continuous {
            if ch.apply(&a)?.abs() > bound {
                return Ok(Outcome::fail(format!("|{ch}(a)| > ρ(a) for a = {a}")));
            }
        }
    }
    // classified norms have a known continuity verdict; compare against it
    let expected_all_continuous = match alg.norm() {
        QuasiNorm::SupNorm => Some(true),
        QuasiNorm::ScaledSup(c) => {
            (*c >= num::BigRational::from_integer(1.into())).then_some(true)
        }
        QuasiNorm::WeightedSup { weights, default_weight } => (weights
            .values()
            .chain([default_weight])
            .all(|w| *w >= num::BigRational::from_integer(1.into())))
        .then_some(true),
        QuasiNorm::LimSup => Some(false),
        QuasiNorm::SupSquared => None,
    };
    let mut outcome = Outcome::pass().note(format!(
        "{} continuous, {} rejected with verified witnesses",
        report.continuous.len(),
        report.rejected.len()
    ));
    match expected_all_continuous {
        Some(true) => {
            if !report.rejected.is_empty() {
                return Ok(Outcome::fail(format!(
                    "a character was rejected under a norm that dominates evaluation: {}",
                    report.rejected[0].character
                )));
            }
            outcome = outcome.note("classification: every character is continuous — matched");
        }
        Some(false) => {
            let bad = report
                .continuous
                .iter()
                .find(|c| matches!(c.kind(), CharacterKind::Evaluation(_)));
            if let Some(c) = bad {
                return Ok(Outcome::fail(format!(
                    "{c} survived the lim-sup filter but evaluations are discontinuous there"
                )));
            }
            outcome = outcome
                .note("classification: only the default-value character is continuous — matched");
        }
        None => {
            outcome = outcome.note("no classification for this norm tag; witnesses only");
        }
    }
    if let Some(tail) = report.tail_continuous {
        outcome = outcome.note(format!(
            "unnamed evaluation tail classified {} by symmetry with the named ones",
            if tail { "continuous" } else { "discontinuous" }
        ));
    }
    Ok(outcome)
}

fn unit_cmpt(model: &ResolvedModel) -> Result<Outcome> {
    let alg = model.fn_algebra.as_ref().expect("applicability");
    match alg.compactness_witness(model.seed)? {
        CompactnessReport::Compact { a0, min_abs } => {
            if min_abs < Radical::one() {
                return Ok(Outcome::fail(format!("a₀ = {a0} has min |α(a₀)| = {min_abs} < 1")));
            }
            let mut o = Outcome::pass().note(format!("a₀ = {a0}, min |α(a₀)| = {min_abs}"));
            if alg.is_unital() {
                o = o.note("unital: the unit itself witnesses compactness");
            }
            Ok(o)
        }
        CompactnessReport::NonCompact { evidence } => {
            if alg.is_unital() {
                return Ok(Outcome::fail(
                    "a unital algebra reported non-compact evidence".to_string(),
                ));
            }
            let mut o = Outcome::pass().note("non-compact: no candidate dominates every character");
            for e in evidence {
                o = o.note(e);
            }
            Ok(o)
        }
    }
}

fn non_unital(model: &ResolvedModel) -> Result<Outcome> {
    let alg = model.fn_algebra.as_ref().expect("applicability");
    let base_count = alg.characters()?.named_count();
    let unitized = alg.unitize();
    let set = unitized.characters()?;
    if set.named_count() != base_count + 1 {
        return Ok(Outcome::fail(format!(
            "character counts: |X(A₁)| = {} but |X(A)| + 1 = {}",
            set.named_count(),
            base_count + 1
        )));
    }
    for x in unitized.sample_elements(model.seed, 60)? {
        let infinity = set.adjoined.apply(&x)?;
        if infinity != x.lambda {
            return Ok(Outcome::fail(format!("∞̂({x}) = {infinity} ≠ λ")));
        }
        if infinity.abs() > unitized.norm_value(&x) {
            return Ok(Outcome::fail(format!("∞̂ violates ρ₁-continuity at {x}")));
        }
        for ext in &set.extensions {
            if let UnitizedCharacter::Extension(ch) = ext {
                let lhs = ext.apply(&x)?;
                let rhs = ch.apply(&x.a)? + x.lambda.clone();
                if lhs != rhs {
                    return Ok(Outcome::fail(format!("extension rule fails for {ch} at {x}")));
                }
            }
        }
    }
    // ρ₁ is submultiplicative on sampled pairs
    let samples = unitized.sample_elements(model.seed ^ 1, 40)?;
    for pair in samples.chunks(2) {
        if let [x, y] = pair {
            let prod = unitized.mul(x, y)?;
            if unitized.norm_value(&prod) > unitized.norm_value(x) * unitized.norm_value(y) {
                return Ok(Outcome::fail(format!("ρ₁ not submultiplicative at {x}, {y}")));
            }
        }
    }
    Ok(Outcome::pass().note(format!(
        "|X(A₁)| = {} = |X(A)| + 1; ∞̂(a,λ) = λ and the extension rule hold on samples",
        set.named_count()
    )))
}

fn jst_bndd(model: &ResolvedModel) -> Result<Outcome> {
    let alg = model.fn_algebra.as_ref().expect("applicability");
    let report = alg.density_report(model.seed)?;
    if !report.agrees {
        return Ok(Outcome::fail(format!(
            "D* route says dense = {}, direct spectrum density says {}",
            report.dense, report.direct_dense
        )));
    }
    let mut o = Outcome::pass();
    o = match &report.d_star {
        Some(d) => o.note(format!("D* = {d}; bound holds over the test family")),
        None => o.note("D* unbounded: a member has positive norm over an empty/zero sup"),
    };
    o = o.note(format!(
        "X_ρ: {} continuous evaluations{}",
        report.evaluations_continuous,
        if report.tail_in_x_rho { " plus the unnamed tail" } else { "" }
    ));
    if let Some(w) = &report.witness {
        o = o.note(format!("density witness: a = {w}"));
    }
    o = o.note(format!("dense = {} — both routes agree", report.dense));
    Ok(o)
}

fn img_of_meas(model: &ResolvedModel) -> Result<Outcome> {
    let sp = spectrum_for(model);
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let mut members = sp.sample_members(&mut rng, 100)?;
    members.extend(model.sigma.generated().atoms().iter().cloned());
    for e in &members {
        let closure = sp.closure(&sp.embed_set(e)?)?;
        let tilde = sp.tilde(e)?;
        if closure != tilde {
            return Ok(Outcome::fail(format!(
                "closure(embed({})) = {} ≠ tilde = {}",
                render_set(e),
                render_set(&closure),
                render_set(&tilde)
            )));
        }
    }
    Ok(Outcome::pass().note(format!("closure(E) = Ẽ on {} members (atoms included)", members.len())))
}

fn mcmpt(id: CheckId, model: &ResolvedModel) -> Result<Outcome> {
    let sp = spectrum_for(model);
    let report = sp.structure_report(model.seed)?;
    let outcome = match id {
        CheckId::Mcmpt1 => Outcome::pass().note(report.basic_clopen),
        CheckId::Mcmpt2 => Outcome::pass().note(report.basis),
        CheckId::Mcmpt3 => match report.open_dense_discrete {
            Some(line) => Outcome::pass().note(line),
            None => Outcome::fail("singleton hypothesis vanished mid-check".to_string()),
        },
        CheckId::Mcmpt4 => match report.closed_iff_finite {
            Some(line) => Outcome::pass().note(line),
            None => Outcome::fail("singleton hypothesis vanished mid-check".to_string()),
        },
        _ => unreachable!(),
    };
    Ok(outcome)
}

fn not_metrizable(model: &ResolvedModel) -> Result<Outcome> {
    let sp = spectrum_for(model);
    let k = match model.sigma.kind() {
        crate::algebra::ModelKind::FiniteCofinite => 4,
        _ => model.sigma.generated().atoms().len().min(4),
    };
    let family = sp.separability_defect(k)?;
    for (i, f) in family.iter().enumerate() {
        for g in family.iter().skip(i + 1) {
            let d = sup_distance(f, g)?;
            if d != Radical::one() {
                return Ok(Outcome::fail(format!("sup distance {d} ≠ 1 inside the family")));
            }
        }
    }
    Ok(Outcome::pass().note(format!(
        "{k} indicator functions with pairwise sup-distance exactly 1 (balls of radius ½ \
         are disjoint; the family scales with the disjoint members available)"
    )))
}

fn complete_iff_extdisc(model: &ResolvedModel) -> Result<Outcome> {
    let sp = spectrum_for(model);
    let completeness = model.sigma.is_complete();
    let disconnectedness = sp.extremely_disconnected();
    if completeness.complete != disconnectedness.extremely_disconnected {
        return Ok(Outcome::fail(format!(
            "complete = {} but extremely disconnected = {}",
            completeness.complete, disconnectedness.extremely_disconnected
        )));
    }
    let mut o = Outcome::pass().note(format!(
        "complete = {} ⇔ extremely disconnected = {}",
        completeness.complete, disconnectedness.extremely_disconnected
    ));
    if let Some(w) = &completeness.witness {
        o = o.note(format!(
            "completeness witness{}: {}",
            if w.symbolic { " (symbolic)" } else { "" },
            w.description
        ));
    }
    if let Some(w) = &disconnectedness.witness {
        if let Some(pattern) = &w.pattern {
            for line in sp.verify_open_witness(pattern, 8)? {
                o = o.note(line);
            }
        } else {
            o = o.note(format!("open-set witness (symbolic): {}", w.description));
        }
    }
    Ok(o)
}

fn cntbly_gen_note(model: &ResolvedModel) -> Result<Outcome> {
    let space = model.topology.as_ref().expect("applicability");
    let borel = space.borel_algebra()?;
    let sp = spectrum_of(&borel);
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    // sampled members of the Borel picture are decided by the countable basis
    let sampled = sp.sample_members(&mut rng, 30)?;
    for e in &sampled {
        if !borel.sigma_contains(e)? {
            return Ok(Outcome::fail(format!("{} escaped the Borel algebra", render_set(e))));
        }
    }
    let basis_note = match space {
        TopSpace::Finite(t) => format!("finite basis: {} opens generate", t.opens().len()),
        TopSpace::CofiniteNat { .. } => {
            "countable basis: complements of finite sets; the Borel picture is the \
             finite–cofinite algebra"
                .to_string()
        }
        TopSpace::ConvergentSeq { .. } => {
            "countable basis: singletons plus cofinite neighbourhoods of the limit; the \
             Borel picture is the finite–cofinite algebra"
                .to_string()
        }
    };
    Ok(Outcome::pass().note(basis_note).note(format!(
        "{} sampled members all decided by the countable generating family",
        sampled.len()
    )))
}

fn meas_fuc_alg(model: &ResolvedModel) -> Result<Outcome> {
    let space = model.topology.as_ref().expect("applicability");
    let alg = model.fn_algebra.as_ref().expect("applicability");
    let images: Vec<crate::function::FnElement> = match alg.span() {
        AlgebraSpan::Generated { generators } => generators.clone(),
        _ => alg.monomials().into_iter().take(8).collect(),
    };
    let report = measurability_check(space, &images)?;
    let mut o = Outcome::pass().note(format!(
        "both routes agree: measurable = {} over {} level sets",
        report.measurable, report.level_sets_checked
    ));
    if let Some(w) = &report.witness {
        o = o.note(format!("non-measurable level set: {}", render_set(w)));
    }
    Ok(o)
}

fn meas_ext(model: &ResolvedModel) -> Result<Outcome> {
    let mu = model.measure.as_ref().expect("applicability");
    let sp = spectrum_for(model);
    let lifted = lift(&sp, mu)?;
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let report = verify_lift(&lifted, mu, &mut rng, 100, 50)
        .map_err(|e| Error::UnsupportedModel(e.to_string()));
    match report {
        Ok(r) => {
            if !r.mass_conserved {
                return Ok(Outcome::fail(format!(
                    "total(*μ) = {} ≠ total(μ) = {}",
                    lifted.total(),
                    mu.total()
                )));
            }
            Ok(Outcome::pass().note(format!(
                "*μ(Ẽ) = μ(E) on {} members; mass conserved; pairing exact on {} simple functions",
                r.members_checked, r.pairings_checked
            )))
        }
        Err(e) => Ok(Outcome::fail(e.to_string())),
    }
}

fn meas_shift(model: &ResolvedModel) -> Result<Outcome> {
    let mu = model.measure.as_ref().expect("applicability");
    let sp = spectrum_for(model);
    let report = check_support_shift(&sp, mu)?;
    if !report.matches {
        return Ok(Outcome::fail(format!(
            "supp(*μ) ∩ X = {:?} differs from the positive-atom set {:?}",
            report.support_in_carrier, report.positive_atoms
        )));
    }
    Ok(Outcome::pass().note(format!(
        "supp(*μ) ∩ X has {} points (countable by construction); free point in support: {}",
        report.support_in_carrier.len(),
        report.free_in_support
    )))
}

fn supp_corollary(model: &ResolvedModel) -> Result<Outcome> {
    let mu = model.measure.as_ref().expect("applicability");
    let sp = spectrum_for(model);
    let report = check_support_shift(&sp, mu)?;
    Ok(Outcome::pass().note(format!(
        "{} named zero-mass points verified outside supp(*μ)",
        report.zero_mass_excluded
    )))
}

fn open_halos(model: &ResolvedModel) -> Result<Outcome> {
    let space = model.topology.as_ref().expect("applicability");
    let sp = space.spectrum()?;
    let mut points: Vec<PointLabel> = space.carrier().named_points().cloned().collect();
    if space.carrier().kind() == CarrierKind::CountableNat {
        points.extend((0u64..4).map(PointLabel::Nat));
        points.sort();
        points.dedup();
    }
    let mut checked = 0;
    for x in &points {
        let report = check_open_halo(space, &sp, x)?;
        if !report.equivalent {
            return Ok(Outcome::fail(format!(
                "h({x}) open = {} but {{{x}}} open = {}",
                report.halo_open, report.singleton_open
            )));
        }
        checked += 1;
    }
    Ok(Outcome::pass().note(format!(
        "h(x) open ⇔ {{x}} open at {checked} points; halos pairwise disjoint"
    )))
}

fn semi_robinson(model: &ResolvedModel) -> Result<Outcome> {
    let space = model.topology.as_ref().expect("applicability");
    let sp = space.spectrum()?;
    let carrier = space.carrier().clone();
    let mut o = Outcome::pass();
    let run = |name: &str, y: crate::carrier::SymbolicSet, o: &mut Outcome| -> Result<bool> {
        let r = robinson_check(space, &sp, &y)?;
        if !r.agrees {
            return Ok(false);
        }
        o.details.push(format!(
            "{name}: compact = {}{} — halo cover and subcover oracle agree{}",
            r.oracle_compact,
            r.missing
                .as_ref()
                .map(|m| format!(" (missing from halos: {m})"))
                .unwrap_or_default(),
            if r.informational { " (halo side informational: not Hausdorff)" } else { "" },
        ));
        Ok(true)
    };
    match space {
        TopSpace::Finite(_) => {
            // exhaustive over subsets when small, sampled otherwise
            let points: Vec<PointLabel> = carrier.named_points().cloned().collect();
            let n = points.len();
            if n <= 6 {
                for mask in 0u32..(1 << n) {
                    let chosen: Vec<PointLabel> = points
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, p)| p.clone())
                        .collect();
                    let y = carrier.positive_set(chosen)?;
                    if !run(&format!("Y = {}", render_set(&y)), y.clone(), &mut o)? {
                        return Ok(Outcome::fail(format!("disagreement at Y = {}", render_set(&y))));
                    }
                }
                o.details.truncate(4);
                o.details.push(format!("… exhaustive over all 2^{n} subsets"));
            }
        }
        TopSpace::CofiniteNat { .. } => {
            for (name, y) in [
                ("finite", carrier.positive_set([0u64, 5])?),
                ("cofinite", carrier.co_set([2u64])?),
                ("empty", carrier.empty_set()),
            ] {
                if !run(name, y.clone(), &mut o)? {
                    return Ok(Outcome::fail(format!("disagreement at Y = {}", render_set(&y))));
                }
            }
        }
        TopSpace::ConvergentSeq { limit, .. } => {
            let cases = [
                ("finite without the limit", carrier.positive_set([1u64, 2])?),
                (
                    "finite with the limit",
                    carrier.positive_set([PointLabel::Nat(0), limit.clone()])?,
                ),
                ("all isolated points (no limit)", carrier.co_set([limit.clone()])?),
                ("cofinite with the limit", carrier.co_set([1u64, 3])?),
                ("empty", carrier.empty_set()),
            ];
            for (name, y) in cases {
                if !run(name, y.clone(), &mut o)? {
                    return Ok(Outcome::fail(format!("disagreement at Y = {}", render_set(&y))));
                }
            }
        }
    }
    Ok(o)
}
