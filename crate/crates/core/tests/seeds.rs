use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use plabica::plabic::Family;
use plabica::poly::{Laurent, RationalExpr};
use plabica::seeds::{express_plucker, GrassmannPoint, MutationSearch, Seed};
use plabica::subsets::{all_k_subsets, frozen_right_label, superpotential_label, DihedralElement, KSubset};
use plabica::Error;

fn s(n: usize, e: &[usize]) -> KSubset {
    KSubset::new(n, e.iter().copied()).unwrap()
}

fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

#[test]
fn plucker_basics() {
    let p = GrassmannPoint::from_matrix(2, 4, int_matrix(&[&[1, 0, 0, 3], &[0, 1, 0, 5]])).unwrap();
    assert_eq!(p.plucker(&s(4, &[1, 2])).unwrap(), BigRational::one());
    assert!(p.plucker(&s(4, &[1, 3])).unwrap().is_zero());
    assert!(p.plucker(&s(4, &[1])).is_err());
    assert!(GrassmannPoint::from_matrix(2, 4, int_matrix(&[&[1, 0, 0, 3]])).is_err());
}

#[test]
fn classical_plucker_relation() {
    for seed in 0..20 {
        let p = GrassmannPoint::random(2, 4, seed, &[]).unwrap();
        let m = |a: usize, b: usize| p.plucker(&s(4, &[a, b])).unwrap();
        assert_eq!(m(1, 3) * m(2, 4), m(1, 2) * m(3, 4) + m(1, 4) * m(2, 3));
    }
}

#[test]
fn random_points_are_normalised() {
    for (k, n) in [(2, 5), (3, 7)] {
        let p = GrassmannPoint::random(k, n, 7, &[]).unwrap();
        assert_eq!(p.plucker(&frozen_right_label(n as i64, k, n)).unwrap(), BigRational::one());
        for i in 1..=n as i64 {
            assert!(!p.plucker(&frozen_right_label(i, k, n)).unwrap().is_zero());
        }
        let entries: BTreeSet<String> = p.matrix()[1..].iter().flatten().map(|x| x.to_string()).collect();
        assert!(entries
            .iter()
            .all(|x| x.parse::<i64>().map(|v| (-9..=9).contains(&v)).unwrap_or(false)));
    }
}

#[test]
fn initial_seed() {
    let g = Family::Ch.build(3, 6).unwrap();
    let seed = Seed::from_graph(&g).unwrap();
    assert_eq!(seed.variables().len(), 10);
    let ones: Vec<_> = seed.variables().iter().filter(|(_, v)| **v == RationalExpr::one()).collect();
    assert_eq!(ones.len(), 1);
    assert_eq!(*ones[0].0, frozen_right_label(6, 3, 6));
    let frozen: BTreeSet<KSubset> = seed.quiver().vertices().iter().filter(|(_, &f)| f).map(|(l, _)| *l).collect();
    let expected: BTreeSet<KSubset> = (1..=6).map(|i| frozen_right_label(i, 3, 6)).collect();
    assert_eq!(frozen, expected);
    let sigma = DihedralElement::sigma(6);
    let rotated = Seed::from_graph(&g.dihedral_act(&sigma)).unwrap();
    let moved: BTreeSet<KSubset> = seed.right_labels().iter().map(|l| sigma.apply(l)).collect();
    assert_eq!(rotated.right_labels(), moved);
}

#[test]
fn seed_mutation_is_an_involution() {
    let g = Family::Ch.build(3, 6).unwrap();
    let seed = Seed::from_graph(&g).unwrap();
    for i in g.mutable_labels().unwrap() {
        let j = i.complement();
        let once = seed.mutate(&j).unwrap();
        let new = seed.exchanged_label(&j).unwrap();
        assert_eq!(g.mutate(&i).unwrap().1.complement(), new);
        let twice = once.mutate(&new).unwrap();
        assert_eq!(twice.right_labels(), seed.right_labels());
        for (l, v) in seed.variables() {
            assert_eq!(twice.var(l).unwrap(), v);
        }
    }
    assert!(matches!(seed.mutate(&frozen_right_label(2, 3, 6)), Err(Error::Frozen(_))));
}

#[test]
fn express_existing_label_is_its_symbol() {
    let g = Family::Rec.build(3, 6).unwrap();
    for j in g.right_labels().unwrap().iter() {
        let e = express_plucker(&g, j, 0).unwrap();
        if *j == frozen_right_label(6, 3, 6) {
            assert_eq!(e, RationalExpr::one());
        } else {
            assert_eq!(e, RationalExpr::from(Laurent::p(*j)));
        }
    }
    assert!(express_plucker(&g, &s(6, &[1, 2]), 5).is_err());
}

#[test]
fn budget_exhaustion_is_reported() {
    let g = Family::Rec.build(3, 6).unwrap();
    let far = all_k_subsets(6, 3)
        .into_iter()
        .find(|j| !g.right_labels().unwrap().contains(j))
        .unwrap();
    assert!(matches!(express_plucker(&g, &far, 0), Err(Error::Budget(_))));
    assert_eq!(Error::Budget(String::new()).exit_code(), 3);
}

/// The three mutations f21, f11, f22 of G^ch_{3,6} produce J_3^+ and agree with the search.
#[test]
fn j3_plus_by_three_mutations() {
    let gg = Family::Ch.build_with_grid(3, 6).unwrap();
    let labels = gg.grid_labels().unwrap();
    let mut g = gg.graph.clone();
    let mut seed = Seed::from_graph(&g).unwrap();
    let mut last = None;
    for pos in [(2, 1), (1, 1), (2, 2)] {
        let (h, new) = g.mutate(&labels[&pos]).unwrap();
        seed = seed.mutate_to(&labels[&pos].complement(), &new.complement()).unwrap();
        g = h;
        last = Some(new.complement());
    }
    let j3 = superpotential_label(3, 3, 6);
    assert_eq!(last, Some(j3));
    let direct = express_plucker(&gg.graph, &j3, 10).unwrap();
    assert_eq!(seed.var(&j3).unwrap(), &direct);
    let initial = Seed::from_graph(&gg.graph).unwrap();
    let avoid: Vec<KSubset> = initial.right_labels().into_iter().collect();
    for t in 0..20 {
        let p = GrassmannPoint::random(3, 6, 500 + t, &avoid).unwrap();
        assert_eq!(
            direct.eval(&p.valuation(BigRational::one())).unwrap(),
            p.plucker(&j3).unwrap()
        );
    }
}

#[test]
fn every_plucker_coordinate_is_a_positive_laurent_polynomial() {
    for fam in Family::ALL {
        for (k, n) in [(2, 5), (3, 6)] {
            let g = fam.build(k, n).unwrap();
            let targets: BTreeSet<KSubset> = all_k_subsets(n, n - k).into_iter().collect();
            let exprs = MutationSearch::new(&g).unwrap().express(&targets, 20).unwrap();
            let avoid: Vec<KSubset> = g.right_labels().unwrap().iter().copied().collect();
            let points: Vec<_> = (0..20).map(|t| GrassmannPoint::random(k, n, t, &avoid).unwrap()).collect();
            for (j, e) in &exprs {
                let l = e.as_laurent().unwrap_or_else(|| panic!("{fam}({k},{n}) p{j} = {e}"));
                assert!(l.positive_coefficients(), "{e}");
                for p in &points {
                    assert_eq!(e.eval(&p.valuation(BigRational::one())).unwrap(), p.plucker(j).unwrap());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Any mutation walk from G^ch_{2,5} produces positive Laurent polynomials
    /// that coincide with the breadth-first expressions.
    #[test]
    fn walks_are_positive_and_path_independent(steps in proptest::collection::vec(0usize..8, 1..10)) {
        let root = Family::Ch.build(2, 5).unwrap();
        let mut g = root.clone();
        let mut seed = Seed::from_graph(&g).unwrap();
        for step in steps {
            let labels = g.mutable_labels().unwrap();
            let i = labels[step % labels.len()];
            let (h, new) = g.mutate(&i).unwrap();
            seed = seed.mutate_to(&i.complement(), &new.complement()).unwrap();
            g = h;
        }
        for (j, e) in seed.variables() {
            let l = e.as_laurent();
            prop_assert!(l.is_some() && l.unwrap().positive_coefficients(), "{}", e);
            prop_assert_eq!(e, &express_plucker(&root, j, 20).unwrap());
        }
    }
}
