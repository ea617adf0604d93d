//! Function elements — finitely presented members of the bounded function
//! algebras — and the built-in quasi-norms on them.
//!
//! A function is a finite list of exceptional values plus a default taken on
//! the rest of the carrier (the eventually-constant picture of bounded
//! simple functions). On a finite carrier the default is pinned to zero so
//! representations stay unique.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Signed, Zero};

use crate::carrier::{Carrier, PointLabel, Polarity, SymbolicSet};
use crate::error::{Error, Result};
use crate::exact::{Radical, Scalar};

/// A scalar-valued function on a carrier: finitely many exceptional values
/// over a default. Involution is pointwise conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnElement {
    carrier: Carrier,
    exceptions: BTreeMap<PointLabel, Scalar>,
    default: Scalar,
}

impl FnElement {
    pub fn new(
        carrier: &Carrier,
        values: impl IntoIterator<Item = (PointLabel, Scalar)>,
        default: Scalar,
    ) -> Result<FnElement> {
        let mut exceptions = BTreeMap::new();
        for (p, v) in values {
            carrier.check_label(&p)?;
            if exceptions.insert(p.clone(), v).is_some() {
                return Err(Error::Document(format!("duplicate exception at point `{p}`")));
            }
        }
        Ok(FnElement { carrier: carrier.clone(), exceptions, default }.normalized())
    }

    pub fn constant(carrier: &Carrier, value: Scalar) -> FnElement {
        FnElement { carrier: carrier.clone(), exceptions: BTreeMap::new(), default: value }
            .normalized()
    }

    pub fn zero(carrier: &Carrier) -> FnElement {
        FnElement::constant(carrier, Scalar::zero())
    }

    pub fn one(carrier: &Carrier) -> FnElement {
        FnElement::constant(carrier, Scalar::one())
    }

    /// The characteristic function of a normal-form set.
    pub fn characteristic(set: &SymbolicSet) -> FnElement {
        let (inside, outside) = match set.polarity() {
            Polarity::Positive => (Scalar::one(), Scalar::zero()),
            Polarity::Co => (Scalar::zero(), Scalar::one()),
        };
        let exceptions = set.base().map(|p| (p.clone(), inside.clone())).collect();
        FnElement { carrier: set.carrier().clone(), exceptions, default: outside }.normalized()
    }

    fn normalized(mut self) -> FnElement {
        if self.carrier.is_finite() {
            // expand against the default, then pin the default to zero
            let default = std::mem::replace(&mut self.default, Scalar::zero());
            let mut full = BTreeMap::new();
            for p in self.carrier.named_points() {
                let v = self.exceptions.get(p).cloned().unwrap_or_else(|| default.clone());
                if !v.is_zero() {
                    full.insert(p.clone(), v);
                }
            }
            self.exceptions = full;
        } else {
            self.exceptions.retain(|_, v| *v != self.default);
        }
        self
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// The default (eventual/generic) value.
    pub fn default_value(&self) -> &Scalar {
        &self.default
    }

    pub fn exception_points(&self) -> impl Iterator<Item = &PointLabel> {
        self.exceptions.keys()
    }

    pub fn value_at(&self, label: &PointLabel) -> Result<Scalar> {
        self.carrier.check_label(label)?;
        Ok(self.exceptions.get(label).cloned().unwrap_or_else(|| self.default.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.exceptions.is_empty() && self.default.is_zero()
    }

    /// Whether every value is real (so the element is symmetric).
    pub fn is_symmetric(&self) -> bool {
        self.default.is_real() && self.exceptions.values().all(Scalar::is_real)
    }

    pub fn conj(&self) -> FnElement {
        FnElement {
            carrier: self.carrier.clone(),
            exceptions: self.exceptions.iter().map(|(p, v)| (p.clone(), v.conj())).collect(),
            default: self.default.conj(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FnElement {
        FnElement {
            carrier: self.carrier.clone(),
            exceptions: self
                .exceptions
                .iter()
                .map(|(p, v)| (p.clone(), v.clone() * c.clone()))
                .collect(),
            default: self.default.clone() * c.clone(),
        }
        .normalized()
    }

    fn zip_with(
        &self,
        other: &FnElement,
        op: impl Fn(Scalar, Scalar) -> Scalar,
    ) -> Result<FnElement> {
        self.carrier.check_same(&other.carrier)?;
        let mut exceptions = BTreeMap::new();
        for p in self.exceptions.keys().chain(other.exceptions.keys()) {
            let v = op(self.value_at(p)?, other.value_at(p)?);
            exceptions.insert(p.clone(), v);
        }
        let default = op(self.default.clone(), other.default.clone());
        Ok(FnElement { carrier: self.carrier.clone(), exceptions, default }.normalized())
    }

    pub fn add(&self, other: &FnElement) -> Result<FnElement> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FnElement) -> Result<FnElement> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &FnElement) -> Result<FnElement> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Whether some carrier point takes the default value; such a point
    /// exists on every infinite carrier and on a finite carrier exactly when
    /// not every point is exceptional.
    fn default_attained(&self) -> bool {
        if self.carrier.is_finite() {
            self.exceptions.len() < self.carrier.named_count()
        } else {
            true
        }
    }

    /// All level sets `{x : f(x) = v}` with their values, in normal form.
    pub fn level_sets(&self) -> Vec<(Scalar, SymbolicSet)> {
        let mut by_value: BTreeMap<Scalar, Vec<PointLabel>> = BTreeMap::new();
        for (p, v) in &self.exceptions {
            by_value.entry(v.clone()).or_default().push(p.clone());
        }
        let mut out = Vec::new();
        for (v, points) in by_value {
            let level = self.carrier.positive_set(points).expect("carrier points");
            out.push((v, level));
        }
        if self.default_attained() {
            let exceptional: Vec<PointLabel> = self.exceptions.keys().cloned().collect();
            let level = self
                .carrier
                .co_set(exceptional)
                .expect("exception points are carrier points");
            out.push((self.default.clone(), level));
        }
        out
    }

    /// `sup |f|` as an exact radical (every representable element is
    /// bounded, so this is total).
    pub fn sup_abs(&self) -> Radical {
        let mut best = if self.default_attained() { self.default.abs_sq() } else { BigRational::zero() };
        for v in self.exceptions.values() {
            let sq = v.abs_sq();
            if sq > best {
                best = sq;
            }
        }
        Radical::sqrt_rational(&best)
    }
}

impl fmt::Display for FnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.exceptions.iter().map(|(p, v)| format!("{p} ↦ {v}")).collect();
        if !self.carrier.is_finite() || parts.is_empty() {
            parts.push(format!("default {}", self.default));
        }
        write!(f, "({})", parts.join(", "))
    }
}

/// The built-in quasi-norm tags.
///
/// `SupSquared` deliberately violates subadditivity and homogeneity; it
/// exists so fault injection through a model document makes the axiom check
/// fail with a concrete witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiNorm {
    SupNorm,
    /// `c · sup |f|` with `c > 0`; submultiplicative only for `c ≥ 1`.
    ScaledSup(BigRational),
    /// `sup w(x)·|f(x)|` with named weights over a default weight, all `> 0`;
    /// submultiplicative only when every weight is `≥ 1`.
    WeightedSup { weights: BTreeMap<PointLabel, BigRational>, default_weight: BigRational },
    /// `|default value|` — the eventual magnitude. Infinite carriers only.
    LimSup,
    /// `(sup |f|)²` — a broken tag for fault-injection demos.
    SupSquared,
}

impl QuasiNorm {
    /// Validates weights/factors and carrier compatibility.
    pub fn validate(&self, carrier: &Carrier) -> Result<()> {
        match self {
            QuasiNorm::SupNorm | QuasiNorm::SupSquared => Ok(()),
            QuasiNorm::ScaledSup(c) => {
                if c.is_positive() {
                    Ok(())
                } else {
                    Err(Error::Document("scaled-sup factor must be positive".into()))
                }
            }
            QuasiNorm::WeightedSup { weights, default_weight } => {
                if !default_weight.is_positive() {
                    return Err(Error::Document("default weight must be positive".into()));
                }
                for (p, w) in weights {
                    carrier.check_label(p)?;
                    if !w.is_positive() {
                        return Err(Error::Document(format!("weight at `{p}` must be positive")));
                    }
                }
                Ok(())
            }
            QuasiNorm::LimSup => {
                if carrier.is_finite() {
                    Err(Error::UnsupportedModel(
                        "lim-sup needs an infinite carrier (there is no eventual value on a \
                         finite one)"
                            .into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// `ρ(1) ≥ 1` holds for every conforming built-in; a violation is
    /// reported, not guessed around.
    pub fn unit_norm_at_least_one(&self, carrier: &Carrier) -> bool {
        match quasi_norm(self, &FnElement::one(carrier)) {
            NormValue::Finite(v) => v >= Radical::one(),
            NormValue::Infinite => true,
        }
    }
}

impl fmt::Display for QuasiNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiNorm::SupNorm => write!(f, "sup"),
            QuasiNorm::ScaledSup(c) => write!(f, "{c}·sup"),
            QuasiNorm::WeightedSup { .. } => write!(f, "weighted-sup"),
            QuasiNorm::LimSup => write!(f, "lim-sup"),
            QuasiNorm::SupSquared => write!(f, "sup² (broken)"),
        }
    }
}

/// An extended nonnegative norm value. Every representable element is
/// bounded, so `Infinite` never arises from the built-in norms; the variant
/// keeps the contract of `Bnd_ρ` filtering honest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormValue {
    Finite(Radical),
    Infinite,
}

impl NormValue {
    pub fn finite(&self) -> Option<&Radical> {
        match self {
            NormValue::Finite(v) => Some(v),
            NormValue::Infinite => None,
        }
    }

    pub fn expect_finite(&self) -> &Radical {
        self.finite().expect("built-in norms are finite on representable elements")
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Finite(v) => write!(f, "{v}"),
            NormValue::Infinite => write!(f, "∞"),
        }
    }
}

/// Evaluates a quasi-norm on a function element.
pub fn quasi_norm(norm: &QuasiNorm, f: &FnElement) -> NormValue {
    let value = match norm {
        QuasiNorm::SupNorm => f.sup_abs(),
        QuasiNorm::ScaledSup(c) => f.sup_abs().scale(c),
        QuasiNorm::SupSquared => {
            let s = f.sup_abs();
            s.clone() * s
        }
        QuasiNorm::LimSup => f.default_value().abs(),
        QuasiNorm::WeightedSup { weights, default_weight } => {
            // best weighted squared magnitude over every relevant point
            let mut best = BigRational::zero();
            let mut consider = |w: &BigRational, v: &Scalar| {
                let sq = v.abs_sq() * w * w;
                if sq > best {
                    best = sq;
                }
            };
            for (p, v) in &f.exceptions {
                consider(weights.get(p).unwrap_or(default_weight), v);
            }
            for (p, w) in weights {
                if !f.exceptions.contains_key(p) {
                    consider(w, &f.default);
                }
            }
            if f.default_attained() {
                consider(default_weight, &f.default);
            }
            Radical::sqrt_rational(&best)
        }
    };
    NormValue::Finite(value)
}

/// Filters a sample to the members of finite quasi-norm — `Bnd_ρ`.
pub fn bounded_part<'a>(
    members: impl IntoIterator<Item = &'a FnElement>,
    norm: &QuasiNorm,
) -> Vec<&'a FnElement> {
    members
        .into_iter()
        .filter(|f| matches!(quasi_norm(norm, f), NormValue::Finite(_)))
        .collect()
}

/// Splits `f = s + i·t` with both parts symmetric: `s = (f+f*)/2` and
/// `t = (f−f*)/2i`. Only sensible in a complex session.
pub fn symmetric_decompose(f: &FnElement, field: crate::exact::ScalarField) -> Result<(FnElement, FnElement)> {
    if field == crate::exact::ScalarField::Real {
        return Err(Error::RealSession);
    }
    let half = Scalar::parse("1/2").expect("literal");
    let minus_half_i = Scalar::parse("-1/2i").expect("literal");
    let conj = f.conj();
    let s = f.add(&conj)?.scale(&half);
    let t = f.sub(&conj)?.scale(&minus_half_i);
    debug_assert!(s.is_symmetric() && t.is_symmetric());
    Ok((s, t))
}

/// Pairwise sup-distance-1 family: characteristic functions of `k` pairwise
/// disjoint nonempty sets.
pub fn indicator_family(sets: &[SymbolicSet]) -> Vec<FnElement> {
    sets.iter().map(FnElement::characteristic).collect()
}

#[allow(unused_imports)]
pub(crate) use helpers::*;

mod helpers {
    use super::*;
    use num::BigInt;
    use rand::Rng;

    /// Small random rational: numerator in [-6, 6], denominator in [1, 4].
    pub fn sample_rational(rng: &mut impl Rng) -> BigRational {
        let n = rng.gen_range(-6i64..=6);
        let d = rng.gen_range(1i64..=4);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn sample_scalar(rng: &mut impl Rng, field: crate::exact::ScalarField) -> Scalar {
        match field {
            crate::exact::ScalarField::Real => Scalar::from_rational(sample_rational(rng)),
            crate::exact::ScalarField::Complex => {
                Scalar::new(sample_rational(rng), sample_rational(rng))
            }
        }
    }

    /// Random function element whose exceptions stay inside `points`.
    pub fn sample_fn_element(
        rng: &mut impl Rng,
        carrier: &Carrier,
        points: &[PointLabel],
        field: crate::exact::ScalarField,
    ) -> FnElement {
        let default = if carrier.is_finite() { Scalar::zero() } else { sample_scalar(rng, field) };
        let mut values = Vec::new();
        for p in points {
            if rng.gen_bool(0.6) {
                values.push((p.clone(), sample_scalar(rng, field)));
            }
        }
        FnElement::new(carrier, values, default).expect("sampled points are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ScalarField;
    use num::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn nat() -> Carrier {
        Carrier::naturals(0, [])
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sup_norm_of_indicator() {
        let f = FnElement::characteristic(&nat().singleton(0u64).unwrap());
        assert_eq!(quasi_norm(&QuasiNorm::SupNorm, &f), NormValue::Finite(Radical::one()));
    }

    #[test]
    fn limsup_sees_the_eventual_value() {
        // f(0) = 5, default 2 → lim-sup 2
        let f = FnElement::new(&nat(), [(PointLabel::Nat(0), Scalar::from_int(5))], Scalar::from_int(2))
            .unwrap();
        assert_eq!(quasi_norm(&QuasiNorm::LimSup, &f), NormValue::Finite(Radical::from_int(2)));
        assert_eq!(quasi_norm(&QuasiNorm::SupNorm, &f), NormValue::Finite(Radical::from_int(5)));
    }

    #[test]
    fn scaled_sup_of_constant_one() {
        let one = FnElement::one(&nat());
        assert_eq!(
            quasi_norm(&QuasiNorm::ScaledSup(rat(3, 1)), &one),
            NormValue::Finite(Radical::from_int(3))
        );
    }

    #[test]
    fn weighted_sup_counts_unexceptional_weighted_points() {
        // weight 3 at point 1; f has an exception only at 0, default 2:
        // the weighted point contributes 3·|2| = 6
        let weights = [(PointLabel::Nat(1), rat(3, 1))].into_iter().collect();
        let norm = QuasiNorm::WeightedSup { weights, default_weight: rat(1, 1) };
        let f = FnElement::new(&nat(), [(PointLabel::Nat(0), Scalar::from_int(4))], Scalar::from_int(2))
            .unwrap();
        assert_eq!(quasi_norm(&norm, &f), NormValue::Finite(Radical::from_int(6)));
    }

    #[test]
    fn limsup_rejected_on_finite_carriers() {
        let x = Carrier::finite(1u64..=3).unwrap();
        assert!(matches!(QuasiNorm::LimSup.validate(&x), Err(Error::UnsupportedModel(_))));
        assert!(QuasiNorm::LimSup.validate(&nat()).is_ok());
    }

    #[test]
    fn finite_carrier_representation_is_unique() {
        let x = Carrier::finite(1u64..=2).unwrap();
        let a = FnElement::new(&x, [(PointLabel::Nat(1), Scalar::from_int(5)), (PointLabel::Nat(2), Scalar::from_int(5))], Scalar::zero()).unwrap();
        let b = FnElement::constant(&x, Scalar::from_int(5));
        assert_eq!(a, b);
        // sup over a finite carrier ignores the unattained default
        assert_eq!(quasi_norm(&QuasiNorm::SupNorm, &a), NormValue::Finite(Radical::from_int(5)));
    }

    #[test]
    fn symmetric_decomposition() {
        let f = FnElement::new(
            &nat(),
            [(PointLabel::Nat(0), Scalar::parse("1+2i").unwrap())],
            Scalar::zero(),
        )
        .unwrap();
        let (s, t) = symmetric_decompose(&f, ScalarField::Complex).unwrap();
        assert_eq!(s.value_at(&PointLabel::Nat(0)).unwrap(), Scalar::from_int(1));
        assert_eq!(t.value_at(&PointLabel::Nat(0)).unwrap(), Scalar::from_int(2));
        // f = s + i·t
        let recombined = s.add(&t.scale(&Scalar::i())).unwrap();
        assert_eq!(recombined, f);
        // real session refuses
        assert!(matches!(symmetric_decompose(&f, ScalarField::Real), Err(Error::RealSession)));
        // real-valued input decomposes as (f, 0)
        let g = FnElement::one(&nat());
        let (s, t) = symmetric_decompose(&g, ScalarField::Complex).unwrap();
        assert_eq!(s, g);
        assert!(t.is_zero());
        // purely imaginary: f = i·g → (0, g)
        let h = g.scale(&Scalar::i());
        let (s, t) = symmetric_decompose(&h, ScalarField::Complex).unwrap();
        assert!(s.is_zero());
        assert_eq!(t, g);
    }

    #[test]
    fn level_sets_partition_the_carrier() {
        let f = FnElement::new(
            &nat(),
            [(PointLabel::Nat(0), Scalar::from_int(5)), (PointLabel::Nat(3), Scalar::from_int(5))],
            Scalar::from_int(2),
        )
        .unwrap();
        let levels = f.level_sets();
        assert_eq!(levels.len(), 2);
        let mut union = nat().empty_set();
        for (v, set) in &levels {
            for p in set.base() {
                // positive level sets carry the exceptional value
                if set.is_positive() {
                    assert_eq!(&f.value_at(p).unwrap(), v);
                }
            }
            union = union.union(set).unwrap();
        }
        assert_eq!(union, nat().full_set());
    }

    /// Quasi-norm axioms on random samples, exact arithmetic, both fields.
    #[test]
    fn quasi_norm_axioms_on_samples() {
        let carrier = nat();
        let points: Vec<PointLabel> = (0u64..5).map(PointLabel::Nat).collect();
        let weights = [(PointLabel::Nat(0), rat(2, 1))].into_iter().collect();
        let norms = [
            QuasiNorm::SupNorm,
            QuasiNorm::ScaledSup(rat(3, 1)),
            QuasiNorm::WeightedSup { weights, default_weight: rat(1, 1) },
            QuasiNorm::LimSup,
        ];
        for field in [ScalarField::Real, ScalarField::Complex] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..120 {
                let f = sample_fn_element(&mut rng, &carrier, &points, field);
                let g = sample_fn_element(&mut rng, &carrier, &points, field);
                let r = sample_scalar(&mut rng, field);
                for norm in &norms {
                    let nf = quasi_norm(norm, &f).expect_finite().clone();
                    let ng = quasi_norm(norm, &g).expect_finite().clone();
                    // (1) involution-invariance
                    assert_eq!(quasi_norm(norm, &f.conj()).expect_finite(), &nf);
                    // (2) subadditivity
                    let sum = quasi_norm(norm, &f.add(&g).unwrap()).expect_finite().clone();
                    assert!(sum <= nf.clone() + ng.clone(), "{norm}: triangle");
                    // (3) absolute homogeneity
                    let scaled = quasi_norm(norm, &f.scale(&r)).expect_finite().clone();
                    assert_eq!(scaled, nf.clone() * r.abs(), "{norm}: homogeneity");
                    // (4) submultiplicativity
                    let prod = quasi_norm(norm, &f.mul(&g).unwrap()).expect_finite().clone();
                    assert!(prod <= nf * ng, "{norm}: submultiplicative");
                }
            }
        }
    }

    #[test]
    fn broken_norm_violates_triangle() {
        let one = FnElement::one(&nat());
        let sum = quasi_norm(&QuasiNorm::SupSquared, &one.add(&one).unwrap());
        let parts = quasi_norm(&QuasiNorm::SupSquared, &one).expect_finite().clone()
            + quasi_norm(&QuasiNorm::SupSquared, &one).expect_finite().clone();
        assert!(sum.expect_finite() > &parts);
    }

    #[test]
    fn rho_one_at_least_one_for_builtins() {
        let carrier = nat();
        assert!(QuasiNorm::SupNorm.unit_norm_at_least_one(&carrier));
        assert!(QuasiNorm::ScaledSup(rat(3, 1)).unit_norm_at_least_one(&carrier));
        assert!(QuasiNorm::LimSup.unit_norm_at_least_one(&carrier));
        // a scaled-sup below one is flagged rather than silently accepted
        assert!(!QuasiNorm::ScaledSup(rat(1, 3)).unit_norm_at_least_one(&carrier));
    }

    #[test]
    fn bounded_part_keeps_everything_and_products_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let carrier = nat();
        let points: Vec<PointLabel> = (0u64..4).map(PointLabel::Nat).collect();
        let sample: Vec<FnElement> = (0..40)
            .map(|_| sample_fn_element(&mut rng, &carrier, &points, ScalarField::Real))
            .collect();
        let bounded = bounded_part(&sample, &QuasiNorm::SupNorm);
        assert_eq!(bounded.len(), sample.len());
    }
}
