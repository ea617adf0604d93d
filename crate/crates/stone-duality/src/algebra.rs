//! Finitely generated Boolean set algebras (atom partitions) and the three
//! built-in Σ models: a finitely generated algebra on a finite carrier, the
//! finite–cofinite algebra on the naturals, and the countable/co-countable
//! σ-algebra on Ω.
//!
//! σ-closure is never computed generically. The two symbolic models are the
//! ones where the closure is exactly representable by the normal-form
//! calculus, and completeness is decided per model, not structurally.

use std::collections::BTreeMap;
use std::fmt;

use crate::carrier::{Carrier, CarrierKind, PointLabel, SymbolicSet};
use crate::error::{Error, Result};

/// A finitely generated Boolean set algebra, stored as its atom partition.
/// Members are exactly the unions of atoms.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    carrier: Carrier,
    generators: Vec<SymbolicSet>,
    atoms: Vec<SymbolicSet>,
}

impl FiniteAlgebra {
    /// Builds the algebra generated by `generators`: atoms are the nonempty
    /// cells of the membership-vector partition. On an infinite carrier
    /// exactly one atom — the generic one — has co polarity.
    pub fn generate(carrier: &Carrier, generators: Vec<SymbolicSet>) -> Result<FiniteAlgebra> {
        for g in &generators {
            carrier.check_same(g.carrier())?;
        }
        // the points any generator mentions; on a finite carrier, all points
        let mut support: Vec<PointLabel> = if carrier.is_finite() {
            carrier.named_points().cloned().collect()
        } else {
            let mut s: Vec<PointLabel> =
                generators.iter().flat_map(|g| g.base().cloned()).collect();
            s.sort();
            s.dedup();
            s
        };
        support.sort();

        // group support points by their generator membership vector
        let mut cells: BTreeMap<Vec<bool>, Vec<PointLabel>> = BTreeMap::new();
        for p in &support {
            let vector: Vec<bool> =
                generators.iter().map(|g| g.member(p).expect("support point")).collect();
            cells.entry(vector).or_default().push(p.clone());
        }

        let mut atoms = Vec::new();
        if carrier.is_finite() {
            for points in cells.values() {
                atoms.push(carrier.positive_set(points.iter().cloned())?);
            }
        } else {
            // the generic vector: membership of a point outside every base
            let generic: Vec<bool> = generators.iter().map(|g| g.is_co()).collect();
            let mut outside_generic = Vec::new();
            for (vector, points) in &cells {
                if *vector == generic {
                    continue; // these points live in the generic atom
                }
                outside_generic.extend(points.iter().cloned());
                atoms.push(carrier.positive_set(points.iter().cloned())?);
            }
            atoms.push(carrier.co_set(outside_generic)?);
        }
        atoms.sort_by_key(|a| (a.is_co(), a.base().next().cloned()));
        Ok(FiniteAlgebra { carrier: carrier.clone(), generators, atoms })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn generators(&self) -> &[SymbolicSet] {
        &self.generators
    }

    /// Atoms in canonical order: finite cells first by least element, the
    /// generic atom last.
    pub fn atoms(&self) -> &[SymbolicSet] {
        &self.atoms
    }

    /// The atom containing `label`.
    pub fn atom_of(&self, label: &PointLabel) -> Result<&SymbolicSet> {
        self.carrier.check_label(label)?;
        self.atoms
            .iter()
            .find(|a| a.member(label).unwrap_or(false))
            .ok_or_else(|| Error::UnknownPoint {
                label: label.to_string(),
                carrier: self.carrier.to_string(),
            })
    }

    /// Whether `set` is a member, i.e. a union of atoms.
    pub fn contains(&self, set: &SymbolicSet) -> Result<bool> {
        self.carrier.check_same(set.carrier())?;
        // union of every atom meeting the set; membership means recovering it
        let mut covered = self.carrier.empty_set();
        for atom in &self.atoms {
            if !atom.is_disjoint_from(set)? {
                covered = covered.union(atom)?;
            }
        }
        Ok(covered == *set)
    }

    /// All members (unions of atoms); only sensible for small atom counts.
    pub fn members(&self) -> Result<Vec<SymbolicSet>> {
        let n = self.atoms.len();
        assert!(n <= 16, "member enumeration is for small algebras");
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let mut m = self.carrier.empty_set();
            for (i, atom) in self.atoms.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    m = m.union(atom)?;
                }
            }
            out.push(m);
        }
        out.sort_by_key(|s| (s.is_co(), s.base_len(), s.base().cloned().collect::<Vec<_>>()));
        out.dedup();
        Ok(out)
    }
}

/// Which Σ a model document denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Σ = the finitely generated algebra itself, on a finite carrier.
    FiniteExplicit,
    /// Σ = all finite and cofinite subsets of the naturals (a Boolean
    /// algebra; every normal-form set is a member).
    FiniteCofinite,
    /// Σ = countable/co-countable subsets of Ω (a σ-algebra; a normal form
    /// names the touched part of a countable set or its complement).
    CountableCocountable,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::FiniteExplicit => write!(f, "finite-explicit"),
            ModelKind::FiniteCofinite => write!(f, "finite-cofinite(ℕ)"),
            ModelKind::CountableCocountable => write!(f, "countable-cocountable(Ω)"),
        }
    }
}

/// A carrier together with the Σ it supports and a finitely generated
/// sub-picture used for atom listings and sampling.
#[derive(Debug, Clone)]
pub struct AlgebraModel {
    kind: ModelKind,
    algebra: FiniteAlgebra,
}

impl AlgebraModel {
    /// Builds the model a carrier naturally supports: a finite carrier hosts
    /// the generated algebra itself, the naturals host finite–cofinite, Ω
    /// hosts countable/co-countable.
    pub fn for_carrier(carrier: &Carrier, generators: Vec<SymbolicSet>) -> Result<AlgebraModel> {
        let kind = match carrier.kind() {
            CarrierKind::FiniteExplicit => ModelKind::FiniteExplicit,
            CarrierKind::CountableNat => ModelKind::FiniteCofinite,
            CarrierKind::UncountableOmega => ModelKind::CountableCocountable,
        };
        let algebra = FiniteAlgebra::generate(carrier, generators)?;
        Ok(AlgebraModel { kind, algebra })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn carrier(&self) -> &Carrier {
        self.algebra.carrier()
    }

    /// The finitely generated sub-picture (all of Σ only in the finite case).
    pub fn generated(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    /// Σ-membership. On the symbolic models every normal form is a member;
    /// on a finite carrier membership means being a union of atoms.
    pub fn sigma_contains(&self, set: &SymbolicSet) -> Result<bool> {
        self.carrier().check_same(set.carrier())?;
        match self.kind {
            ModelKind::FiniteExplicit => self.algebra.contains(set),
            ModelKind::FiniteCofinite | ModelKind::CountableCocountable => Ok(true),
        }
    }

    /// Whether Σ contains every named singleton.
    pub fn has_singletons(&self) -> bool {
        match self.kind {
            ModelKind::FiniteExplicit => self
                .carrier()
                .named_points()
                .all(|p| self.algebra.atom_of(p).map(|a| a.finite_size() == Some(1)).unwrap_or(false)),
            ModelKind::FiniteCofinite | ModelKind::CountableCocountable => true,
        }
    }

    /// Decides closure under arbitrary unions. Finite algebras are complete;
    /// both symbolic models are not, and the report carries the witness the
    /// model can name.
    pub fn is_complete(&self) -> CompletenessReport {
        match self.kind {
            ModelKind::FiniteExplicit => CompletenessReport { complete: true, witness: None },
            ModelKind::FiniteCofinite => CompletenessReport {
                complete: false,
                witness: Some(CompletenessWitness {
                    symbolic: false,
                    description: "the union of the singleton members {0}, {2}, {4}, … over the \
                                  evens is neither finite nor cofinite, so it has no normal form \
                                  and lies outside the algebra"
                        .into(),
                }),
            },
            ModelKind::CountableCocountable => CompletenessReport {
                complete: false,
                witness: Some(CompletenessWitness {
                    symbolic: true,
                    description: "splitting the unnamed remainder into two uncountable halves \
                                  gives a union of singletons that is neither countable nor \
                                  co-countable; no such half can be named, so the witness is \
                                  symbolic"
                        .into(),
                }),
            },
        }
    }
}

/// Outcome of the completeness decision.
#[derive(Debug, Clone)]
pub struct CompletenessReport {
    pub complete: bool,
    pub witness: Option<CompletenessWitness>,
}

/// Description of an infinite union of members that escapes the algebra.
/// `symbolic` marks witnesses that exist by classification but cannot be
/// named (the Ω model).
#[derive(Debug, Clone)]
pub struct CompletenessWitness {
    pub symbolic: bool,
    pub description: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn four_point_two_generators() {
        // gens {1,2},{2,3} on {1,2,3,4} → atoms {1},{2},{3},{4}
        let x = Carrier::finite(1u64..=4).unwrap();
        let gens = vec![x.positive_set([1u64, 2]).unwrap(), x.positive_set([2u64, 3]).unwrap()];
        let alg = FiniteAlgebra::generate(&x, gens).unwrap();
        let atoms: Vec<_> = alg.atoms().to_vec();
        assert_eq!(atoms.len(), 4);
        for n in 1u64..=4 {
            assert!(atoms.contains(&x.singleton(n).unwrap()));
        }
    }

    #[test]
    fn no_generators_single_atom() {
        let x = Carrier::finite(1u64..=3).unwrap();
        let alg = FiniteAlgebra::generate(&x, vec![]).unwrap();
        assert_eq!(alg.atoms(), &[x.full_set()]);

        let nat = Carrier::naturals(0, []);
        let alg = FiniteAlgebra::generate(&nat, vec![]).unwrap();
        assert_eq!(alg.atoms(), &[nat.full_set()]);
    }

    #[test]
    fn naturals_singleton_generators() {
        // gens {0},{1} on ℕ → atoms {0},{1},co{0,1}
        let nat = Carrier::naturals(0, []);
        let gens = vec![nat.singleton(0u64).unwrap(), nat.singleton(1u64).unwrap()];
        let alg = FiniteAlgebra::generate(&nat, gens).unwrap();
        assert_eq!(
            alg.atoms(),
            &[
                nat.singleton(0u64).unwrap(),
                nat.singleton(1u64).unwrap(),
                nat.co_set([0u64, 1]).unwrap()
            ]
        );
    }

    #[test]
    fn generic_atom_absorbs_unmarked_points() {
        // a point mentioned only inside a co-generator sits in the finite cell
        let nat = Carrier::naturals(0, []);
        let alg = FiniteAlgebra::generate(&nat, vec![nat.co_set([1u64]).unwrap()]).unwrap();
        assert_eq!(alg.atoms(), &[nat.singleton(1u64).unwrap(), nat.co_set([1u64]).unwrap()]);
    }

    #[test]
    fn contains_union_of_atoms() {
        let x = Carrier::finite(1u64..=4).unwrap();
        let gens = vec![x.singleton(1u64).unwrap(), x.singleton(2u64).unwrap()];
        let alg = FiniteAlgebra::generate(&x, gens).unwrap();
        // atoms {1},{2},{3,4}: {1,3} splits the atom {3,4}
        assert!(alg.contains(&x.positive_set([1u64, 2]).unwrap()).unwrap());
        assert!(!alg.contains(&x.positive_set([1u64, 3]).unwrap()).unwrap());
        assert!(alg.contains(&x.full_set()).unwrap());
        assert!(alg.contains(&x.empty_set()).unwrap());
    }

    #[test]
    fn contains_on_cofinite_model_picture() {
        // finitely many singleton generators on ℕ; members of the picture
        let nat = Carrier::naturals(0, []);
        let gens = (0u64..3).map(|n| nat.singleton(n).unwrap()).collect();
        let alg = FiniteAlgebra::generate(&nat, gens).unwrap();
        assert!(alg.contains(&nat.positive_set([0u64, 1]).unwrap()).unwrap());
        assert!(alg.contains(&nat.co_set(Vec::<PointLabel>::new()).unwrap()).unwrap());
        assert!(!alg.contains(&nat.positive_set([5u64]).unwrap()).unwrap());
    }

    #[test]
    fn partition_property() {
        let x = Carrier::finite(1u64..=6).unwrap();
        let gens =
            vec![x.positive_set([1u64, 2, 3]).unwrap(), x.positive_set([3u64, 4]).unwrap()];
        let alg = FiniteAlgebra::generate(&x, gens).unwrap();
        let mut union = x.empty_set();
        for (i, a) in alg.atoms().iter().enumerate() {
            assert!(!a.is_empty());
            union = union.union(a).unwrap();
            for b in alg.atoms().iter().skip(i + 1) {
                assert!(a.is_disjoint_from(b).unwrap());
            }
        }
        assert_eq!(union, x.full_set());
        // every generator is a union of atoms
        for g in alg.generators() {
            assert!(alg.contains(g).unwrap());
        }
    }

    #[test]
    fn refinement_under_new_generator() {
        let x = Carrier::finite(1u64..=5).unwrap();
        let g1 = x.positive_set([1u64, 2, 3]).unwrap();
        let g2 = x.positive_set([2u64, 4]).unwrap();
        let coarse = FiniteAlgebra::generate(&x, vec![g1.clone()]).unwrap();
        let fine = FiniteAlgebra::generate(&x, vec![g1, g2]).unwrap();
        for new_atom in fine.atoms() {
            assert!(
                coarse.atoms().iter().any(|old| new_atom.is_subset_of(old).unwrap()),
                "every refined atom sits inside an old atom"
            );
        }
    }

    /// Brute-force Boolean closure oracle: bitsets over a small finite
    /// carrier, closed under complement, union, intersection.
    pub(crate) fn brute_force_closure(universe: usize, gens: &[u32]) -> BTreeSet<u32> {
        let full: u32 = if universe == 32 { u32::MAX } else { (1 << universe) - 1 };
        let mut closure: BTreeSet<u32> = gens.iter().copied().collect();
        closure.insert(0);
        closure.insert(full);
        loop {
            let snapshot: Vec<u32> = closure.iter().copied().collect();
            let before = closure.len();
            for &a in &snapshot {
                closure.insert(full & !a);
                for &b in &snapshot {
                    closure.insert(a | b);
                    closure.insert(a & b);
                }
            }
            if closure.len() == before {
                return closure;
            }
        }
    }

    #[test]
    fn atoms_match_brute_force_closure() {
        // gens {1,2},{2,3} on 4 points: closure is all 16 subsets
        let x = Carrier::finite(0u64..4).unwrap();
        let gens = vec![x.positive_set([0u64, 1]).unwrap(), x.positive_set([1u64, 2]).unwrap()];
        let alg = FiniteAlgebra::generate(&x, gens.clone()).unwrap();

        let to_mask = |s: &SymbolicSet| -> u32 {
            let mut m = 0;
            for p in s.base() {
                if let PointLabel::Nat(n) = p {
                    m |= 1 << n;
                }
            }
            m
        };
        let oracle = brute_force_closure(4, &gens.iter().map(&to_mask).collect::<Vec<_>>());
        assert_eq!(oracle.len(), 16);
        let members: BTreeSet<u32> = alg.members().unwrap().iter().map(&to_mask).collect();
        assert_eq!(members, oracle);
    }
}
