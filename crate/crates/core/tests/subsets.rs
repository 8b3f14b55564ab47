use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use plabica::subsets::{
    all_k_subsets, cyclic_interval, frozen_label, frozen_right_label, is_maximal_wsc, is_weakly_separated,
    preserves_weak_separation, DihedralElement, KSubset, LabelCollection,
};
use plabica::Error;

fn s(n: usize, e: &[usize]) -> KSubset {
    KSubset::new(n, e.iter().copied()).unwrap()
}

#[test]
fn interval_examples() {
    assert_eq!(cyclic_interval(2, 4, 6).unwrap(), s(6, &[2, 3, 4]));
    assert_eq!(cyclic_interval(5, 2, 6).unwrap(), s(6, &[5, 6, 1, 2]));
    assert_eq!(cyclic_interval(1, 1, 5).unwrap(), s(5, &[1]));
    assert!(matches!(cyclic_interval(0, 2, 5), Err(Error::OutOfRange(_))));
    assert!(matches!(cyclic_interval(1, 6, 5), Err(Error::OutOfRange(_))));
}

#[test]
fn weak_separation_examples() {
    assert!(!is_weakly_separated(&s(4, &[1, 3]), &s(4, &[2, 4])).unwrap());
    assert!(is_weakly_separated(&s(4, &[1, 2]), &s(4, &[2, 3])).unwrap());
    assert!(is_weakly_separated(&s(4, &[1, 2]), &s(5, &[2, 3])).is_err());
    assert!(is_weakly_separated(&s(5, &[1, 2]), &s(5, &[2, 3, 4])).is_err());
    let frozen: Vec<KSubset> = (1..=6).map(|i| frozen_label(i, 3, 6)).collect();
    for (a, b) in frozen.iter().tuple_combinations() {
        assert!(is_weakly_separated(a, b).unwrap(), "{a} {b}");
    }
}

#[test]
fn maximality_examples() {
    let frozen = LabelCollection::new(4, 2, (1..=4).map(|i| frozen_label(i, 2, 4))).unwrap();
    assert!(!is_maximal_wsc(&frozen));
    let mut with_square: Vec<KSubset> = frozen.iter().copied().collect();
    with_square.push(s(4, &[1, 3]));
    assert!(is_maximal_wsc(&LabelCollection::new(4, 2, with_square.clone()).unwrap()));
    with_square.push(s(4, &[2, 4]));
    assert!(!is_maximal_wsc(&LabelCollection::new(4, 2, with_square).unwrap()));
}

#[test]
fn dihedral_examples() {
    let sigma = DihedralElement::sigma(6);
    assert_eq!(sigma.apply(&s(6, &[1, 2, 4])), s(6, &[2, 3, 5]));
    assert_eq!(DihedralElement::tau(4).apply(&s(4, &[1, 2])), s(4, &[1, 4]));
    for (k, n) in [(2, 5), (3, 7), (4, 8)] {
        for i in 1..=n as i64 {
            for m in -3..=3 {
                let jm = |i: i64| frozen_right_label(i, k, n);
                assert_eq!(DihedralElement::rotation(n, m).apply(&jm(i)), jm(i + m));
            }
        }
    }
}

#[test]
fn transposition_does_not_preserve() {
    assert!(!preserves_weak_separation(&[3, 2, 1, 4, 5], 2).unwrap());
    assert!(preserves_weak_separation(&[1, 1, 2, 3, 4], 2).is_err());
    for g in DihedralElement::all(5) {
        assert!(preserves_weak_separation(&g.as_permutation(), 2).unwrap());
    }
}

#[test]
fn preserving_permutations_are_dihedral_for_n7() {
    let n = 7;
    let dihedral: BTreeSet<Vec<usize>> = DihedralElement::all(n).iter().map(|g| g.as_permutation()).collect();
    for k in 2..=n - 2 {
        let preserving: BTreeSet<Vec<usize>> = (1..=n)
            .permutations(n)
            .filter(|p| preserves_weak_separation(p, k).unwrap())
            .collect();
        assert_eq!(preserving, dihedral, "k = {k}");
    }
}

#[test]
fn dihedral_group_has_order_2n() {
    for n in 4..=9 {
        let all: BTreeSet<DihedralElement> = DihedralElement::all(n).into_iter().collect();
        assert_eq!(all.len(), 2 * n);
        let perms: BTreeSet<Vec<usize>> = all.iter().map(|g| g.as_permutation()).collect();
        assert_eq!(perms.len(), 2 * n);
        for g in &all {
            for h in &all {
                let gh: Vec<usize> = h.as_permutation().iter().map(|&x| g.apply_point(x)).collect();
                assert_eq!(g.compose(h).as_permutation(), gh);
            }
        }
    }
}

#[test]
fn collection_json_is_sorted() {
    let c = LabelCollection::new(4, 2, [s(4, &[3, 4]), s(4, &[1, 2])]).unwrap();
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v, serde_json::json!({"n": 4, "k": 2, "labels": [[1, 2], [3, 4]]}));
    let back: LabelCollection = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
}

fn subset_pair() -> impl Strategy<Value = (KSubset, KSubset)> {
    (4usize..=9)
        .prop_flat_map(|n| (Just(n), 2..=n - 2))
        .prop_flat_map(|(n, k)| {
            let pick = move || proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), k);
            (Just(n), pick(), pick())
        })
        .prop_map(|(n, a, b)| (KSubset::new(n, a).unwrap(), KSubset::new(n, b).unwrap()))
}

fn element(n: usize) -> impl Strategy<Value = DihedralElement> {
    (0..n as i64, any::<bool>()).prop_map(move |(s, r)| {
        if r {
            DihedralElement::reflection(n, s)
        } else {
            DihedralElement::rotation(n, s)
        }
    })
}

proptest! {
    #[test]
    fn weak_separation_symmetric_and_complement_invariant((i, j) in subset_pair()) {
        let ij = is_weakly_separated(&i, &j).unwrap();
        prop_assert_eq!(ij, is_weakly_separated(&j, &i).unwrap());
        if i.complement().len() == j.complement().len() {
            prop_assert_eq!(ij, is_weakly_separated(&i.complement(), &j.complement()).unwrap());
        }
    }

    #[test]
    fn dihedral_action_preserves_weak_separation(
        ((i, j), seed) in subset_pair().prop_flat_map(|p| { let n = p.0.n(); (Just(p), element(n)) })
    ) {
        prop_assert_eq!(
            is_weakly_separated(&i, &j).unwrap(),
            is_weakly_separated(&seed.apply(&i), &seed.apply(&j)).unwrap()
        );
    }

    #[test]
    fn action_is_a_group_action(
        (i, g, h) in (4usize..=9).prop_flat_map(|n| {
            (proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 2), element(n), element(n))
                .prop_map(move |(e, g, h)| (KSubset::new(n, e).unwrap(), g, h))
        })
    ) {
        prop_assert_eq!(g.apply(&h.apply(&i)), g.compose(&h).apply(&i));
        prop_assert_eq!(DihedralElement::identity(i.n()).apply(&i), i);
        prop_assert_eq!(g.inverse().apply(&g.apply(&i)), i);
    }
}

#[test]
fn k_subset_enumeration() {
    assert_eq!(all_k_subsets(6, 3).len(), 20);
    assert_eq!(all_k_subsets(5, 2).first(), Some(&s(5, &[1, 2])));
}
