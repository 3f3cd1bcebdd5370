use std::collections::BTreeSet;

use latdiff_core::enumerate::all_maps;
use latdiff_core::harness::catalog;
use latdiff_core::{
    check_property, check_weight, collect_ops_with, count_ops, enumerate_ops, CountQuery,
    EnumerationOptions, Lattice, Operator, Property, Strategy as Search, Weight,
};
use proptest::prelude::*;

fn small_lattices() -> Vec<Lattice> {
    catalog(false)
        .into_iter()
        .map(|e| e.lattice)
        .filter(|l| l.size() <= 5)
        .collect()
}

fn lattice_and_map() -> impl Strategy<Value = (Lattice, Operator)> {
    let lattices: Vec<Lattice> = catalog(false).into_iter().map(|e| e.lattice).collect();
    proptest::sample::select(lattices).prop_flat_map(|l| {
        let n = l.size();
        proptest::collection::vec(0..n, n)
            .prop_map(move |image| (l.clone(), Operator::new(image).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn weight_minus_one_and_zero_agree((l, d) in lattice_and_map()) {
        let zero = check_weight(&l, &d, Weight::Zero).unwrap();
        prop_assert_eq!(check_weight(&l, &d, Weight::MinusOne).unwrap(), zero);
        if zero {
            prop_assert!(check_property(&l, &d, Property::Decreasing).unwrap());
            prop_assert!(check_weight(&l, &d, Weight::One).unwrap());
        }
    }

    #[test]
    fn derivations_are_decreasing_members((l, d) in lattice_and_map()) {
        let one = check_weight(&l, &d, Weight::One).unwrap();
        let dec = check_property(&l, &d, Property::Decreasing).unwrap();
        prop_assert_eq!(check_weight(&l, &d, Weight::Zero).unwrap(), one && dec);
    }

    #[test]
    fn isotone_members_are_meet_homomorphisms((l, d) in lattice_and_map()) {
        if check_weight(&l, &d, Weight::One).unwrap() {
            prop_assert_eq!(
                check_property(&l, &d, Property::Isotone).unwrap(),
                check_property(&l, &d, Property::MeetHomomorphism).unwrap()
            );
        }
    }

    #[test]
    fn membership_matches_the_kernel((l, d) in lattice_and_map()) {
        let mut q = CountQuery::new(&l, Weight::One);
        for x in l.elements() {
            q = q.fix(x, d.apply(x));
        }
        let member = check_weight(&l, &d, Weight::One).unwrap();
        prop_assert_eq!(count_ops(&q).unwrap(), u128::from(member));
    }
}

#[test]
fn pruned_and_unpruned_agree_up_to_five_elements() {
    let unpruned = EnumerationOptions {
        strategy: Search::Unpruned,
        ..Default::default()
    };
    for l in small_lattices() {
        for w in Weight::ALL {
            let q = CountQuery::new(&l, w);
            let a = collect_ops_with(&q, EnumerationOptions::default()).unwrap();
            let b = collect_ops_with(&q, unpruned).unwrap();
            assert_eq!(a, b, "size {} weight {w}", l.size());
            let direct: Vec<Operator> = all_maps(l.size())
                .filter(|d| check_weight(&l, d, w).unwrap())
                .collect();
            assert_eq!(a, direct);
        }
        let top = l.top();
        let q = CountQuery::new(&l, Weight::One)
            .fix(top, l.bottom())
            .at_least(l.bottom(), top);
        assert_eq!(
            collect_ops_with(&q, EnumerationOptions::default()).unwrap(),
            collect_ops_with(&q, unpruned).unwrap()
        );
    }
}

#[test]
fn emission_is_strictly_increasing() {
    for l in small_lattices() {
        let mut prev: Option<Operator> = None;
        let mut emit = |d: &Operator| {
            if let Some(p) = &prev {
                assert!(p < d, "{p} then {d}");
            }
            prev = Some(d.clone());
        };
        let q = CountQuery::new(&l, Weight::One);
        enumerate_ops(&q, EnumerationOptions::default(), Some(&mut emit)).unwrap();
    }
}

#[test]
fn lattice_tables_satisfy_the_axioms() {
    for e in catalog(true) {
        let l = &e.lattice;
        l.validate().unwrap();
        let tops: BTreeSet<_> = l.elements().map(|x| l.join(x, l.top())).collect();
        assert_eq!(tops, BTreeSet::from([l.top()]));
    }
}
