//! Property tests for the normal-form set calculus: Boolean laws checked
//! against membership-table oracles (all named points plus one fresh generic
//! point beyond every base), and the normalization homomorphism checked
//! against bitset semantics on a small explicit universe.

use proptest::prelude::*;

use num::{BigInt, BigRational, Zero};
use stone_duality::algebra::FiniteAlgebra;
use stone_duality::carrier::{normalize, Carrier, PointLabel, SetExpr, SymbolicSet};
use stone_duality::measure::Measure;

fn nat() -> Carrier {
    Carrier::naturals(0, [])
}

fn arb_nat_set() -> impl Strategy<Value = SymbolicSet> {
    (prop::collection::btree_set(0u64..10, 0..5), any::<bool>()).prop_map(|(base, co)| {
        let carrier = nat();
        if co {
            carrier.co_set(base).unwrap()
        } else {
            carrier.positive_set(base).unwrap()
        }
    })
}

/// Membership table over the named points 0..12 plus one generic point
/// beyond every base mentioned in the inputs.
fn table(set: &SymbolicSet) -> Vec<bool> {
    let mut rows: Vec<bool> =
        (0u64..12).map(|n| set.member(&PointLabel::Nat(n)).unwrap()).collect();
    rows.push(set.member(&PointLabel::Nat(1_000_000)).unwrap());
    rows
}

proptest! {
    #[test]
    fn double_complement_is_identity(e in arb_nat_set()) {
        prop_assert_eq!(e.complement().complement(), e);
    }

    #[test]
    fn de_morgan_laws(e in arb_nat_set(), f in arb_nat_set()) {
        let lhs = e.union(&f).unwrap().complement();
        let rhs = e.complement().intersect(&f.complement()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(table(&lhs), table(&rhs));

        let lhs = e.intersect(&f).unwrap().complement();
        let rhs = e.complement().union(&f.complement()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
    }

    #[test]
    fn union_and_intersection_membership(e in arb_nat_set(), f in arb_nat_set()) {
        let union = e.union(&f).unwrap();
        let meet = e.intersect(&f).unwrap();
        for n in (0u64..12).chain([999_983]) {
            let p = PointLabel::Nat(n);
            prop_assert_eq!(
                union.member(&p).unwrap(),
                e.member(&p).unwrap() || f.member(&p).unwrap()
            );
            prop_assert_eq!(
                meet.member(&p).unwrap(),
                e.member(&p).unwrap() && f.member(&p).unwrap()
            );
        }
    }

    #[test]
    fn subset_and_disjointness_agree_with_membership(e in arb_nat_set(), f in arb_nat_set()) {
        if e.is_subset_of(&f).unwrap() {
            for n in 0u64..12 {
                let p = PointLabel::Nat(n);
                prop_assert!(!e.member(&p).unwrap() || f.member(&p).unwrap());
            }
        }
        if e.is_disjoint_from(&f).unwrap() {
            for n in 0u64..12 {
                let p = PointLabel::Nat(n);
                prop_assert!(!(e.member(&p).unwrap() && f.member(&p).unwrap()));
            }
        }
    }
}

/// Expressions over leaves of a 5-point universe, with bitset semantics as
/// the oracle.
#[derive(Debug, Clone)]
enum Expr {
    Leaf(u32),
    Not(Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = (0u32..32).prop_map(Expr::Leaf);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Not(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Or(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::And(Box::new(a), Box::new(b))),
        ]
    })
}

fn eval_mask(e: &Expr) -> u32 {
    const FULL: u32 = 0b11111;
    match e {
        Expr::Leaf(m) => m & FULL,
        Expr::Not(a) => FULL & !eval_mask(a),
        Expr::Or(a, b) => eval_mask(a) | eval_mask(b),
        Expr::And(a, b) => eval_mask(a) & eval_mask(b),
    }
}

fn to_set_expr(carrier: &Carrier, e: &Expr) -> SetExpr {
    match e {
        Expr::Leaf(m) => SetExpr::leaf(
            carrier.positive_set((0u64..5).filter(|k| m & (1 << k) != 0)).unwrap(),
        ),
        Expr::Not(a) => to_set_expr(carrier, a).complement(),
        Expr::Or(a, b) => to_set_expr(carrier, a).union(to_set_expr(carrier, b)),
        Expr::And(a, b) => to_set_expr(carrier, a).intersection(to_set_expr(carrier, b)),
    }
}

proptest! {
    /// normalize is a homomorphism from free Boolean expressions onto normal
    /// forms: its result has exactly the bitset-evaluated membership.
    #[test]
    fn normalize_matches_bitset_semantics(e in arb_expr()) {
        let carrier = Carrier::finite(0u64..5).unwrap();
        let normal = normalize(&to_set_expr(&carrier, &e)).unwrap();
        let expected = eval_mask(&e);
        for k in 0u64..5 {
            prop_assert_eq!(
                normal.member(&PointLabel::Nat(k)).unwrap(),
                expected & (1 << k) != 0
            );
        }
        // idempotence: a normal form normalizes to itself
        prop_assert_eq!(normalize(&SetExpr::leaf(normal.clone())).unwrap(), normal);
    }

    /// Adding a generator only refines the atom partition.
    #[test]
    fn refinement_is_monotone(
        masks in prop::collection::vec(0u32..64, 1..5),
        extra in 0u32..64,
    ) {
        let carrier = Carrier::finite(0u64..6).unwrap();
        let to_set = |m: u32| {
            carrier.positive_set((0u64..6).filter(|k| m & (1 << k) != 0)).unwrap()
        };
        let gens: Vec<SymbolicSet> = masks.iter().map(|&m| to_set(m)).collect();
        let coarse = FiniteAlgebra::generate(&carrier, gens.clone()).unwrap();
        let mut finer_gens = gens;
        finer_gens.push(to_set(extra));
        let fine = FiniteAlgebra::generate(&carrier, finer_gens).unwrap();
        for atom in fine.atoms() {
            prop_assert!(
                coarse.atoms().iter().any(|old| atom.is_subset_of(old).unwrap()),
                "atom {} not inside any coarse atom",
                atom
            );
        }
    }

    /// Measures are additive on disjoint pairs, exactly.
    #[test]
    fn measure_additivity(
        e in arb_nat_set(),
        f in arb_nat_set(),
        masses in prop::collection::vec((0u64..8, 0i64..5), 0..6),
        diffuse_num in 0i64..4,
    ) {
        let carrier = nat();
        let mut atomic = std::collections::BTreeMap::new();
        for (p, m) in masses {
            atomic.insert(PointLabel::Nat(p), BigRational::new(BigInt::from(m), BigInt::from(3)));
        }
        let mu = Measure::new(
            &carrier,
            atomic,
            BigRational::new(BigInt::from(diffuse_num), BigInt::from(2)),
        ).unwrap();
        let disjoint = f.difference(&e).unwrap();
        let lhs = mu.evaluate(&e.union(&disjoint).unwrap()).unwrap();
        let rhs = mu.evaluate(&e).unwrap() + mu.evaluate(&disjoint).unwrap();
        prop_assert_eq!(lhs, rhs);
        // and the empty set always gets zero
        prop_assert!(mu.evaluate(&carrier.empty_set()).unwrap().is_zero());
    }
}
