//! Topologies on the carrier, their Borel Boolean algebras, halos in the
//! spectrum, and the halo-cover compactness criterion with an independent
//! compactness oracle.
//!
//! Three space kinds are classified: finite topologies given by their open
//! family, the cofinite topology on the naturals (T1 but not Hausdorff — it
//! exercises the hypothesis boundary), and a convergent sequence ℕ ∪ {ω}.
//! Neighbourhood bases are classified per kind; the infinite intersections
//! defining halos are never enumerated.

use std::fmt;

use crate::algebra::AlgebraModel;
use crate::carrier::{Carrier, CarrierKind, PointLabel, SymbolicSet};
use crate::error::{Error, Result};
use crate::function::FnElement;
use crate::spectrum::{spectrum_of, Spectrum};

/// A finite topological space: the open family, closed under unions and
/// intersections (the constructor closes whatever generating family it is
/// given).
#[derive(Debug, Clone)]
pub struct FiniteTopology {
    carrier: Carrier,
    opens: Vec<SymbolicSet>,
}

impl FiniteTopology {
    pub fn new(carrier: &Carrier, generating: Vec<SymbolicSet>) -> Result<FiniteTopology> {
        if !carrier.is_finite() {
            return Err(Error::UnsupportedModel("finite topology needs a finite carrier".into()));
        }
        for o in &generating {
            carrier.check_same(o.carrier())?;
        }
        let mut opens = generating;
        opens.push(carrier.empty_set());
        opens.push(carrier.full_set());
        opens.sort_by_key(set_key);
        opens.dedup();
        // close under pairwise union and intersection to a fixpoint
        loop {
            let mut fresh = Vec::new();
            for i in 0..opens.len() {
                for j in i + 1..opens.len() {
                    for candidate in
                        [opens[i].union(&opens[j])?, opens[i].intersect(&opens[j])?]
                    {
                        if !opens.contains(&candidate) && !fresh.contains(&candidate) {
                            fresh.push(candidate);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            opens.extend(fresh);
            opens.sort_by_key(set_key);
            opens.dedup();
        }
        Ok(FiniteTopology { carrier: carrier.clone(), opens })
    }

    pub fn opens(&self) -> &[SymbolicSet] {
        &self.opens
    }

    pub fn is_open(&self, set: &SymbolicSet) -> bool {
        self.opens.contains(set)
    }

    /// The smallest open set containing `x`.
    pub fn minimal_open(&self, x: &PointLabel) -> Result<SymbolicSet> {
        let mut out = self.carrier.full_set();
        for o in &self.opens {
            if o.member(x)? {
                out = out.intersect(o)?;
            }
        }
        Ok(out)
    }
}

fn set_key(s: &SymbolicSet) -> (bool, usize, Vec<PointLabel>) {
    (s.is_co(), s.base_len(), s.base().cloned().collect())
}

/// The supported space kinds.
#[derive(Debug, Clone)]
pub enum TopSpace {
    Finite(FiniteTopology),
    /// Cofinite topology on the naturals: opens are ∅ and the cofinite sets.
    CofiniteNat { carrier: Carrier },
    /// ℕ ∪ {ω}: every set of naturals is open, neighbourhoods of ω are the
    /// cofinite sets containing it.
    ConvergentSeq { carrier: Carrier, limit: PointLabel },
}

impl TopSpace {
    pub fn finite(carrier: &Carrier, generating: Vec<SymbolicSet>) -> Result<TopSpace> {
        Ok(TopSpace::Finite(FiniteTopology::new(carrier, generating)?))
    }

    pub fn cofinite_nat(carrier: &Carrier) -> Result<TopSpace> {
        if carrier.kind() != CarrierKind::CountableNat
            || carrier.named_points().any(|p| !matches!(p, PointLabel::Nat(_)))
        {
            return Err(Error::UnsupportedModel(
                "the cofinite topology lives on the plain naturals".into(),
            ));
        }
        Ok(TopSpace::CofiniteNat { carrier: carrier.clone() })
    }

    pub fn convergent_seq(carrier: &Carrier) -> Result<TopSpace> {
        if carrier.kind() != CarrierKind::CountableNat {
            return Err(Error::UnsupportedModel(
                "a convergent sequence needs the naturals plus one limit point".into(),
            ));
        }
        let extras: Vec<&PointLabel> = carrier
            .named_points()
            .filter(|p| !matches!(p, PointLabel::Nat(_)))
            .collect();
        match extras.as_slice() {
            [limit] => Ok(TopSpace::ConvergentSeq { carrier: carrier.clone(), limit: (*limit).clone() }),
            _ => Err(Error::UnsupportedModel(
                "declare exactly one non-natural point to act as the sequence limit".into(),
            )),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            TopSpace::Finite(t) => &t.carrier,
            TopSpace::CofiniteNat { carrier } => carrier,
            TopSpace::ConvergentSeq { carrier, .. } => carrier,
        }
    }

    pub fn is_t1(&self) -> bool {
        match self {
            TopSpace::Finite(t) => t
                .carrier
                .named_points()
                .all(|p| t.is_open(&t.carrier.singleton(p.clone()).expect("named"))),
            TopSpace::CofiniteNat { .. } | TopSpace::ConvergentSeq { .. } => true,
        }
    }

    pub fn is_hausdorff(&self) -> bool {
        match self {
            // a finite space is Hausdorff exactly when it is discrete
            TopSpace::Finite(_) => self.is_t1(),
            TopSpace::CofiniteNat { .. } => false,
            TopSpace::ConvergentSeq { .. } => true,
        }
    }

    /// Openness in the space itself (not the spectrum).
    pub fn is_open(&self, set: &SymbolicSet) -> Result<bool> {
        self.carrier().check_same(set.carrier())?;
        Ok(match self {
            TopSpace::Finite(t) => t.is_open(set),
            TopSpace::CofiniteNat { .. } => set.is_empty() || set.is_co(),
            TopSpace::ConvergentSeq { limit, .. } => !set.member(limit)? || set.is_co(),
        })
    }

    /// The Borel Boolean algebra the engine can represent: the generated
    /// algebra of the open family on a finite space, the finite–cofinite
    /// algebra on the symbolic ones. (The full σ-algebra of the two infinite
    /// kinds would have a non-classifiable spectrum; only this finitely
    /// accessible fragment appears.)
    pub fn borel_algebra(&self) -> Result<AlgebraModel> {
        match self {
            TopSpace::Finite(t) => AlgebraModel::for_carrier(&t.carrier, t.opens.clone()),
            TopSpace::CofiniteNat { carrier } | TopSpace::ConvergentSeq { carrier, .. } => {
                AlgebraModel::for_carrier(carrier, vec![])
            }
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Ok(spectrum_of(&self.borel_algebra()?))
    }

    /// The halo of `x`: the intersection over the (classified) neighbourhood
    /// base of the clopen closures in the spectrum.
    pub fn halo(&self, spectrum: &Spectrum, x: &PointLabel) -> Result<Halo> {
        self.carrier().check_label(x)?;
        let set = match self {
            TopSpace::Finite(t) => spectrum.tilde(&t.minimal_open(x)?)?,
            TopSpace::CofiniteNat { .. } => {
                // every cofinite tilde contains the free point, and the
                // intersection over sets omitting each other point leaves x
                spectrum.carrier().positive_set([x.clone(), PointLabel::Free])?
            }
            TopSpace::ConvergentSeq { limit, .. } => {
                if x == limit {
                    spectrum.carrier().positive_set([limit.clone(), PointLabel::Free])?
                } else {
                    spectrum.carrier().singleton(x.clone())?
                }
            }
        };
        debug_assert!(set.member(&spectrum.label_of_point(&spectrum.embed(x)?))?);
        Ok(Halo { point: x.clone(), set })
    }

    pub fn describe(&self) -> String {
        match self {
            TopSpace::Finite(t) => format!("finite topology with {} opens", t.opens.len()),
            TopSpace::CofiniteNat { .. } => "cofinite topology on ℕ".into(),
            TopSpace::ConvergentSeq { limit, .. } => {
                format!("convergent sequence ℕ ∪ {{{limit}}}")
            }
        }
    }
}

impl fmt::Display for TopSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// The halo of a point, as a normal-form subset of the spectrum carrier.
#[derive(Debug, Clone)]
pub struct Halo {
    pub point: PointLabel,
    pub set: SymbolicSet,
}

/// Verdict of the open-halo equivalence at one point.
#[derive(Debug, Clone)]
pub struct OpenHaloReport {
    pub point: PointLabel,
    pub singleton_open: bool,
    pub halo_open: bool,
    pub equivalent: bool,
    /// Points against which halo disjointness was verified.
    pub disjoint_checked: usize,
}

/// Checks `h(x)` open ⇔ `{x}` open, plus pairwise halo disjointness, on a
/// Hausdorff space. The cofinite naturals are refused: their halos all share
/// the free point and the proposition's hypothesis fails.
pub fn check_open_halo(space: &TopSpace, spectrum: &Spectrum, x: &PointLabel) -> Result<OpenHaloReport> {
    if !space.is_hausdorff() {
        return Err(Error::NotHausdorff(format!(
            "{space}: halo disjointness needs Hausdorff; the check is skipped"
        )));
    }
    let singleton_open = space.is_open(&space.carrier().singleton(x.clone())?)?;
    let halo = space.halo(spectrum, x)?;
    let halo_open = spectrum.is_open(&halo.set)?;
    let mut others: Vec<PointLabel> = space
        .carrier()
        .named_points()
        .filter(|p| *p != x && **p != PointLabel::Free)
        .cloned()
        .collect();
    if space.carrier().kind() == CarrierKind::CountableNat {
        others.extend((0u64..6).map(PointLabel::Nat).filter(|p| p != x));
        others.sort();
        others.dedup();
    }
    let mut disjoint_checked = 0;
    for y in &others {
        let other = space.halo(spectrum, y)?;
        if !halo.set.is_disjoint_from(&other.set)? {
            return Err(Error::NotHausdorff(format!(
                "halos of {x} and {y} overlap on a Hausdorff space"
            )));
        }
        disjoint_checked += 1;
    }
    Ok(OpenHaloReport {
        point: x.clone(),
        singleton_open,
        halo_open,
        equivalent: singleton_open == halo_open,
        disjoint_checked,
    })
}

/// The union of halos over a subspace, in a containment-decidable form.
#[derive(Debug, Clone)]
enum HaloUnion {
    /// Finite spaces: the literal union over the spectrum carrier.
    Explicit(SymbolicSet),
    /// Symbolic spaces: halos contribute the points of `y` themselves plus,
    /// under the listed condition, the free point.
    Classified { y: SymbolicSet, includes_free: bool },
}

impl HaloUnion {
    /// Whether the halo union covers `c` (a spectrum-carrier normal form);
    /// returns a missing spectrum label otherwise.
    fn covers(&self, c: &SymbolicSet) -> Result<(bool, Option<PointLabel>)> {
        match self {
            HaloUnion::Explicit(h) => {
                let missing = c.difference(h)?;
                if missing.is_empty() {
                    Ok((true, None))
                } else {
                    let label = missing.base().next().cloned();
                    Ok((false, label))
                }
            }
            HaloUnion::Classified { y, includes_free } => {
                if c.is_positive() {
                    for p in c.base() {
                        if *p == PointLabel::Free {
                            if !includes_free {
                                return Ok((false, Some(PointLabel::Free)));
                            }
                        } else if !y.member(p)? {
                            return Ok((false, Some(p.clone())));
                        }
                    }
                    Ok((true, None))
                } else {
                    // C is cofinite in the spectrum: it contains the free
                    // point unless excluded, and all but finitely many
                    // principal points
                    if !c.base_contains(&PointLabel::Free) && !includes_free {
                        return Ok((false, Some(PointLabel::Free)));
                    }
                    if y.is_co() {
                        // principals outside C's base must lie in y: their
                        // complement base must be inside C's base
                        if let Some(stray) = y.base().find(|p| !c.base_contains(p)) {
                            // y misses `stray`, but C contains it
                            return Ok((false, Some((*stray).clone())));
                        }
                        Ok((true, None))
                    } else {
                        // y is finite but C is infinite: some principal escapes
                        let max = c
                            .base()
                            .chain(y.base())
                            .filter_map(|p| match p {
                                PointLabel::Nat(n) => Some(*n),
                                _ => None,
                            })
                            .max()
                            .unwrap_or(0);
                        Ok((false, Some(PointLabel::Nat(max + 1))))
                    }
                }
            }
        }
    }
}

/// The halo-cover compactness verdict for a Borel subspace, cross-checked
/// against the kind's independent compactness oracle.
#[derive(Debug, Clone)]
pub struct RobinsonReport {
    pub subspace: SymbolicSet,
    /// `closure(Y)` in the spectrum.
    pub closure: SymbolicSet,
    pub covered_by_halos: bool,
    /// A spectrum label in the closure missed by every halo, when not covered.
    pub missing: Option<PointLabel>,
    pub oracle_compact: bool,
    pub oracle_note: String,
    pub agrees: bool,
    /// The cofinite naturals report the halo side for information only: the
    /// space is not Hausdorff, though the criterion itself still holds on T1.
    pub informational: bool,
}

/// Decides compactness of `y` by the halo-cover criterion and by direct
/// subcover reasoning, and reports both.
pub fn robinson_check(space: &TopSpace, spectrum: &Spectrum, y: &SymbolicSet) -> Result<RobinsonReport> {
    space.carrier().check_same(y.carrier())?;
    let closure = spectrum.closure(&spectrum.embed_set(y)?)?;
    let halos = match space {
        TopSpace::Finite(t) => {
            let mut union = spectrum.carrier().empty_set();
            for p in t.carrier.named_points() {
                if y.member(p)? {
                    union = union.union(&space.halo(spectrum, p)?.set)?;
                }
            }
            HaloUnion::Explicit(union)
        }
        TopSpace::CofiniteNat { .. } => {
            HaloUnion::Classified { y: y.clone(), includes_free: !y.is_empty() }
        }
        TopSpace::ConvergentSeq { limit, .. } => {
            HaloUnion::Classified { y: y.clone(), includes_free: y.member(limit)? }
        }
    };
    let (covered_by_halos, missing) = halos.covers(&closure)?;
    let (oracle_compact, oracle_note) = compactness_oracle(space, y)?;
    Ok(RobinsonReport {
        subspace: y.clone(),
        closure,
        covered_by_halos,
        missing,
        oracle_compact,
        oracle_note,
        agrees: covered_by_halos == oracle_compact,
        informational: matches!(space, TopSpace::CofiniteNat { .. }),
    })
}

/// Direct compactness decision per space kind: a constructive subcover on a
/// finite space, the finite-or-contains-the-limit classification on the
/// convergent sequence, and unconditional compactness under the cofinite
/// topology.
fn compactness_oracle(space: &TopSpace, y: &SymbolicSet) -> Result<(bool, String)> {
    match space {
        TopSpace::Finite(t) => {
            // greedy subcover from the maximal open cover: pick the smallest
            // open around each point; finitely many opens exist, so every
            // cover admits this finite refinement
            let mut chosen: Vec<SymbolicSet> = Vec::new();
            let mut covered = t.carrier.empty_set();
            for p in t.carrier.named_points() {
                if y.member(p)? && !covered.member(p)? {
                    let open = t.minimal_open(p)?;
                    covered = covered.union(&open)?;
                    chosen.push(open);
                }
            }
            Ok((true, format!("finite subcover of size {} found", chosen.len())))
        }
        TopSpace::CofiniteNat { .. } => Ok((
            true,
            "every subspace of the cofinite topology is compact: any open already \
             covers all but finitely many points"
                .into(),
        )),
        TopSpace::ConvergentSeq { limit, .. } => {
            let compact = y.finite_size().is_some() || y.member(limit)?;
            let note = if compact {
                if y.finite_size().is_some() {
                    "finite subspaces are compact".to_string()
                } else {
                    format!("the subspace contains the limit {limit}: a neighbourhood of it \
                             is cofinite, finitely many singletons finish the cover")
                }
            } else {
                "an infinite set of isolated points without the limit has no finite \
                 subcover by singletons"
                    .to_string()
            };
            Ok((compact, note))
        }
    }
}

/// Measurability of the induced point map versus level sets of the images.
#[derive(Debug, Clone)]
pub struct MeasurabilityReport {
    pub measurable: bool,
    /// A level set outside the Borel algebra, when not measurable.
    pub witness: Option<SymbolicSet>,
    pub level_sets_checked: usize,
}

/// Both routes of the measurability criterion on a finite space: every level
/// set of every image lies in the Borel algebra iff the induced point map
/// into the spectrum is measurable (preimages of spectrum points are Borel).
pub fn measurability_check(space: &TopSpace, images: &[FnElement]) -> Result<MeasurabilityReport> {
    let TopSpace::Finite(t) = space else {
        return Err(Error::UnsupportedModel(
            "the measurability criterion is implemented for finite topologies".into(),
        ));
    };
    let model = space.borel_algebra()?;
    let borel = model.generated();
    let mut measurable = true;
    let mut witness = None;
    let mut checked = 0;
    for f in images {
        t.carrier.check_same(f.carrier())?;
        for (_, level) in f.level_sets() {
            checked += 1;
            if !borel.contains(&level)? {
                measurable = false;
                witness.get_or_insert(level);
            }
        }
    }
    // the induced point map: preimages of spectrum points are the cells of
    // the image-value partition; they must all be Borel
    let cells = crate::algebra::FiniteAlgebra::generate(
        &t.carrier,
        images
            .iter()
            .flat_map(|f| f.level_sets().into_iter().map(|(_, s)| s))
            .collect(),
    )?;
    let point_map_measurable =
        cells.atoms().iter().map(|cell| borel.contains(cell)).collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
    assert_eq!(measurable, point_map_measurable, "the two measurability routes agree");
    Ok(MeasurabilityReport { measurable, witness, level_sets_checked: checked })
}
