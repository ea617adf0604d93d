//! Carriers (point universes) and the normal-form symbolic set calculus.
//!
//! A carrier is either a finite explicit list of points, the symbolic
//! naturals (any natural can be named on demand, plus finitely many extra
//! symbolic points), or an uncountable universe with finitely many named
//! witnesses and an unnamed remainder that no countable named family
//! exhausts. Subsets are kept in a unique normal form: a finite base of
//! labels taken positively, or its complement.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A point of a carrier. Naturals order first, then symbolic names, then the
/// free point adjoined by spectra; the order makes every listing
/// reproducible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLabel {
    Nat(u64),
    Sym(String),
    /// The free (non-principal) point of a spectrum carrier.
    Free,
}

impl PointLabel {
    pub fn sym(s: impl Into<String>) -> Self {
        PointLabel::Sym(s.into())
    }
}

impl From<u64> for PointLabel {
    fn from(n: u64) -> Self {
        PointLabel::Nat(n)
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Nat(n) => write!(f, "{n}"),
            PointLabel::Sym(s) => write!(f, "{s}"),
            PointLabel::Free => write!(f, "∞"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CarrierKind {
    /// Every point is named; nothing else exists.
    FiniteExplicit,
    /// The naturals, symbolically: every `Nat(n)` is a valid label, the named
    /// set is just the finite prefix a session has touched. Extra symbolic
    /// points (a sequence limit, a spectrum's free point) may be adjoined.
    CountableNat,
    /// Finitely many named witnesses plus an uncountable unnamed remainder
    /// not exhausted by any countable named family.
    UncountableOmega,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct CarrierData {
    kind: CarrierKind,
    /// All named points. For `FiniteExplicit` this is the whole carrier; for
    /// `CountableNat` it is the touched prefix plus adjoined symbols; for
    /// `UncountableOmega` the named witnesses.
    named: BTreeSet<PointLabel>,
}

/// An immutable point universe, cheap to clone and share.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Carrier(Arc<CarrierData>);

impl Carrier {
    pub fn finite<I, L>(points: I) -> Result<Carrier>
    where
        I: IntoIterator<Item = L>,
        L: Into<PointLabel>,
    {
        let mut named = BTreeSet::new();
        let mut count = 0usize;
        for p in points {
            let label = p.into();
            if matches!(label, PointLabel::Free) {
                return Err(Error::Document("the free point cannot be a base carrier point".into()));
            }
            if !named.insert(label.clone()) {
                return Err(Error::Document(format!("duplicate point label `{label}`")));
            }
            count += 1;
        }
        if count == 0 {
            return Err(Error::Document("a finite carrier needs at least one point".into()));
        }
        Ok(Carrier(Arc::new(CarrierData { kind: CarrierKind::FiniteExplicit, named })))
    }

    /// The symbolic naturals. `named_prefix` is the prefix a session cares to
    /// display; `extra` adjoins symbolic points such as a sequence limit.
    pub fn naturals(named_prefix: u64, extra: impl IntoIterator<Item = PointLabel>) -> Carrier {
        let mut named: BTreeSet<PointLabel> = (0..named_prefix).map(PointLabel::Nat).collect();
        named.extend(extra);
        Carrier(Arc::new(CarrierData { kind: CarrierKind::CountableNat, named }))
    }

    pub fn omega(named: impl IntoIterator<Item = PointLabel>) -> Carrier {
        let named: BTreeSet<PointLabel> = named.into_iter().collect();
        Carrier(Arc::new(CarrierData { kind: CarrierKind::UncountableOmega, named }))
    }

    /// Internal constructor for spectrum carriers (same kind, free point
    /// adjoined to the named set).
    pub(crate) fn with_free_point(&self) -> Carrier {
        let mut named = self.0.named.clone();
        named.insert(PointLabel::Free);
        Carrier(Arc::new(CarrierData { kind: self.0.kind, named }))
    }

    pub fn kind(&self) -> CarrierKind {
        self.0.kind
    }

    pub fn is_finite(&self) -> bool {
        self.0.kind == CarrierKind::FiniteExplicit
    }

    /// Named points in canonical order.
    pub fn named_points(&self) -> impl Iterator<Item = &PointLabel> {
        self.0.named.iter()
    }

    pub fn named_count(&self) -> usize {
        self.0.named.len()
    }

    pub fn has_free_point(&self) -> bool {
        self.0.named.contains(&PointLabel::Free)
    }

    /// Whether `label` denotes a point of this carrier.
    pub fn is_valid_label(&self, label: &PointLabel) -> bool {
        match self.0.kind {
            CarrierKind::FiniteExplicit | CarrierKind::UncountableOmega => {
                self.0.named.contains(label)
            }
            // any natural can be named on demand
            CarrierKind::CountableNat => {
                matches!(label, PointLabel::Nat(_)) || self.0.named.contains(label)
            }
        }
    }

    pub fn check_label(&self, label: &PointLabel) -> Result<()> {
        if self.is_valid_label(label) {
            Ok(())
        } else {
            Err(Error::UnknownPoint { label: label.to_string(), carrier: self.to_string() })
        }
    }

    pub(crate) fn check_same(&self, other: &Carrier) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!("{self} vs {other}")))
        }
    }

    /// A fresh label outside the named set; the "generic point" used by
    /// membership-table oracles on infinite carriers.
    pub fn fresh_point(&self) -> Option<PointLabel> {
        match self.0.kind {
            CarrierKind::FiniteExplicit => None,
            CarrierKind::CountableNat => {
                let next = self
                    .0
                    .named
                    .iter()
                    .filter_map(|l| match l {
                        PointLabel::Nat(n) => Some(*n + 1),
                        _ => None,
                    })
                    .max()
                    .unwrap_or(0);
                Some(PointLabel::Nat(next))
            }
            CarrierKind::UncountableOmega => None,
        }
    }

    /// Empty set in normal form.
    pub fn empty_set(&self) -> SymbolicSet {
        SymbolicSet { carrier: self.clone(), polarity: Polarity::Positive, base: BTreeSet::new() }
    }

    /// The whole carrier in normal form.
    pub fn full_set(&self) -> SymbolicSet {
        if self.is_finite() {
            SymbolicSet {
                carrier: self.clone(),
                polarity: Polarity::Positive,
                base: self.0.named.clone(),
            }
        } else {
            SymbolicSet { carrier: self.clone(), polarity: Polarity::Co, base: BTreeSet::new() }
        }
    }

    pub fn singleton(&self, label: impl Into<PointLabel>) -> Result<SymbolicSet> {
        self.positive_set([label.into()])
    }

    pub fn positive_set<I, L>(&self, labels: I) -> Result<SymbolicSet>
    where
        I: IntoIterator<Item = L>,
        L: Into<PointLabel>,
    {
        let mut base = BTreeSet::new();
        for l in labels {
            let label = l.into();
            self.check_label(&label)?;
            base.insert(label);
        }
        Ok(SymbolicSet { carrier: self.clone(), polarity: Polarity::Positive, base })
    }

    /// The complement of a finite named base: carrier minus `labels`.
    pub fn co_set<I, L>(&self, labels: I) -> Result<SymbolicSet>
    where
        I: IntoIterator<Item = L>,
        L: Into<PointLabel>,
    {
        Ok(self.positive_set(labels)?.complement())
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let named: Vec<String> = self.0.named.iter().map(|p| p.to_string()).collect();
        match self.0.kind {
            CarrierKind::FiniteExplicit => write!(f, "{{{}}}", named.join(", ")),
            CarrierKind::CountableNat => {
                let extras: Vec<String> = self
                    .0
                    .named
                    .iter()
                    .filter(|l| !matches!(l, PointLabel::Nat(_)))
                    .map(|p| p.to_string())
                    .collect();
                if extras.is_empty() {
                    write!(f, "ℕ")
                } else {
                    write!(f, "ℕ ∪ {{{}}}", extras.join(", "))
                }
            }
            CarrierKind::UncountableOmega => write!(f, "Ω ⊇ {{{}}}", named.join(", ")),
        }
    }
}

/// Polarity of a normal form: the set equals its base, or the carrier minus
/// its base. On an infinite carrier `Co` reads cofinite (naturals) or
/// co-countable (Ω, where the finite base names the countable set's touched
/// part).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Co,
}

/// A subset of a carrier in unique normal form: finite base, positive or
/// complemented. Finite carriers only ever use the positive form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicSet {
    carrier: Carrier,
    polarity: Polarity,
    base: BTreeSet<PointLabel>,
}

impl SymbolicSet {
    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    pub fn is_co(&self) -> bool {
        self.polarity == Polarity::Co
    }

    /// Base labels in canonical order.
    pub fn base(&self) -> impl Iterator<Item = &PointLabel> {
        self.base.iter()
    }

    pub fn base_contains(&self, label: &PointLabel) -> bool {
        self.base.contains(label)
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        match self.polarity {
            Polarity::Positive => self.base.is_empty(),
            // a Co form only exists on infinite carriers, where it is never empty
            Polarity::Co => false,
        }
    }

    /// Cardinality when the set is finite, `None` for co-sets.
    pub fn finite_size(&self) -> Option<usize> {
        match self.polarity {
            Polarity::Positive => Some(self.base.len()),
            Polarity::Co => None,
        }
    }

    pub fn member(&self, label: &PointLabel) -> Result<bool> {
        self.carrier.check_label(label)?;
        Ok(match self.polarity {
            Polarity::Positive => self.base.contains(label),
            Polarity::Co => !self.base.contains(label),
        })
    }

    pub fn complement(&self) -> SymbolicSet {
        if self.carrier.is_finite() {
            let base = self
                .carrier
                .named_points()
                .filter(|p| !self.base.contains(p))
                .cloned()
                .collect();
            return SymbolicSet {
                carrier: self.carrier.clone(),
                polarity: Polarity::Positive,
                base,
            };
        }
        SymbolicSet {
            carrier: self.carrier.clone(),
            polarity: match self.polarity {
                Polarity::Positive => Polarity::Co,
                Polarity::Co => Polarity::Positive,
            },
            base: self.base.clone(),
        }
    }

    pub fn union(&self, other: &SymbolicSet) -> Result<SymbolicSet> {
        self.carrier.check_same(&other.carrier)?;
        use Polarity::*;
        let (polarity, base) = match (self.polarity, other.polarity) {
            (Positive, Positive) => (Positive, self.base.union(&other.base).cloned().collect()),
            (Positive, Co) => (Co, other.base.difference(&self.base).cloned().collect()),
            (Co, Positive) => (Co, self.base.difference(&other.base).cloned().collect()),
            (Co, Co) => (Co, self.base.intersection(&other.base).cloned().collect()),
        };
        Ok(SymbolicSet { carrier: self.carrier.clone(), polarity, base })
    }

    pub fn intersect(&self, other: &SymbolicSet) -> Result<SymbolicSet> {
        self.carrier.check_same(&other.carrier)?;
        use Polarity::*;
        let (polarity, base) = match (self.polarity, other.polarity) {
            (Positive, Positive) => {
                (Positive, self.base.intersection(&other.base).cloned().collect())
            }
            (Positive, Co) => (Positive, self.base.difference(&other.base).cloned().collect()),
            (Co, Positive) => (Positive, other.base.difference(&self.base).cloned().collect()),
            (Co, Co) => (Co, self.base.union(&other.base).cloned().collect()),
        };
        Ok(SymbolicSet { carrier: self.carrier.clone(), polarity, base })
    }

    pub fn difference(&self, other: &SymbolicSet) -> Result<SymbolicSet> {
        self.intersect(&other.complement())
    }

    pub fn is_subset_of(&self, other: &SymbolicSet) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint_from(&self, other: &SymbolicSet) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.base.iter().map(|p| p.to_string()).collect();
        match self.polarity {
            Polarity::Positive => write!(f, "{{{}}}", items.join(", ")),
            Polarity::Co => write!(f, "co{{{}}}", items.join(", ")),
        }
    }
}

/// A boolean expression over symbolic sets, normalized by [`normalize`].
#[derive(Debug, Clone)]
pub enum SetExpr {
    Leaf(SymbolicSet),
    Complement(Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersection(Box<SetExpr>, Box<SetExpr>),
}

impl SetExpr {
    pub fn leaf(set: SymbolicSet) -> Self {
        SetExpr::Leaf(set)
    }

    pub fn complement(self) -> Self {
        SetExpr::Complement(Box::new(self))
    }

    pub fn union(self, other: SetExpr) -> Self {
        SetExpr::Union(Box::new(self), Box::new(other))
    }

    pub fn intersection(self, other: SetExpr) -> Self {
        SetExpr::Intersection(Box::new(self), Box::new(other))
    }
}

/// Evaluates a boolean expression to its unique normal form. Mixed carriers
/// among the leaves are rejected.
pub fn normalize(expr: &SetExpr) -> Result<SymbolicSet> {
    match expr {
        SetExpr::Leaf(s) => Ok(s.clone()),
        SetExpr::Complement(e) => Ok(normalize(e)?.complement()),
        SetExpr::Union(a, b) => normalize(a)?.union(&normalize(b)?),
        SetExpr::Intersection(a, b) => normalize(a)?.intersect(&normalize(b)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> Carrier {
        Carrier::naturals(0, [])
    }

    #[test]
    fn complement_on_naturals() {
        let e = nat().positive_set([2u64, 5]).unwrap();
        let c = e.complement();
        assert!(c.is_co());
        assert_eq!(c, nat().co_set([2u64, 5]).unwrap());
        assert_eq!(c.complement(), e);
    }

    #[test]
    fn union_positive_with_co() {
        // union(Positive{1}, Co{1,3}) on ℕ → Co{3}
        let a = nat().positive_set([1u64]).unwrap();
        let b = nat().co_set([1u64, 3]).unwrap();
        assert_eq!(a.union(&b).unwrap(), nat().co_set([3u64]).unwrap());
    }

    #[test]
    fn intersect_two_cosets() {
        let a = nat().co_set([1u64]).unwrap();
        let b = nat().co_set([2u64]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), nat().co_set([1u64, 2]).unwrap());
    }

    #[test]
    fn membership() {
        let co = nat().co_set([1u64, 2]).unwrap();
        assert!(co.member(&PointLabel::Nat(3)).unwrap());
        assert!(!co.member(&PointLabel::Nat(1)).unwrap());
        let single = nat().positive_set([7u64]).unwrap();
        assert!(single.member(&PointLabel::Nat(7)).unwrap());
    }

    #[test]
    fn unknown_point_rejected() {
        let x = Carrier::finite(["a", "b"].map(PointLabel::sym)).unwrap();
        let e = x.singleton(PointLabel::sym("a")).unwrap();
        assert!(matches!(e.member(&PointLabel::sym("z")), Err(Error::UnknownPoint { .. })));
        assert!(x.positive_set([PointLabel::sym("z")]).is_err());
    }

    #[test]
    fn finite_carrier_stays_positive() {
        let x = Carrier::finite(1u64..=4).unwrap();
        let e = x.positive_set([1u64, 2]).unwrap();
        let c = e.complement();
        assert!(c.is_positive());
        assert_eq!(c, x.positive_set([3u64, 4]).unwrap());
    }

    #[test]
    fn mixed_carriers_rejected() {
        let a = nat().positive_set([1u64]).unwrap();
        let b = Carrier::naturals(5, []).positive_set([1u64]).unwrap();
        assert!(matches!(a.union(&b), Err(Error::CarrierMismatch(_))));
    }

    #[test]
    fn normalize_expression() {
        let e = SetExpr::leaf(nat().positive_set([1u64]).unwrap())
            .union(SetExpr::leaf(nat().co_set([1u64, 3]).unwrap()));
        assert_eq!(normalize(&e).unwrap(), nat().co_set([3u64]).unwrap());
        // idempotent: normalizing a leaf of the result is the result
        let again = normalize(&SetExpr::leaf(normalize(&e).unwrap())).unwrap();
        assert_eq!(again, nat().co_set([3u64]).unwrap());
    }
}
