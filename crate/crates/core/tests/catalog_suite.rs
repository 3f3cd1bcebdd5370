use latdiff_core::harness::{
    catalog, verify_characterizations, verify_decreasing_characterization,
    verify_distributivity_characterization, verify_supporting_lemmas, verify_trivial_boundary,
    verify_weight_equivalence, EquivalenceMode,
};
use latdiff_core::VerificationReport;

fn assert_pass(name: &str, r: VerificationReport) {
    assert!(r.passed(), "{name}: {r}\n{:#?}", r.notes);
}

#[test]
fn every_check_passes_on_the_default_catalog() {
    for e in catalog(false) {
        let l = &e.lattice;
        assert_pass(
            &e.name,
            verify_weight_equivalence(l, EquivalenceMode::Auto).unwrap(),
        );
        assert_pass(&e.name, verify_decreasing_characterization(l).unwrap());
        assert_pass(&e.name, verify_distributivity_characterization(l).unwrap());
        assert_pass(&e.name, verify_characterizations(l).unwrap());
        assert_pass(&e.name, verify_supporting_lemmas(l).unwrap());
        assert_pass(&e.name, verify_trivial_boundary(l).unwrap());
    }
}

#[test]
fn slow_catalog_entries_pass() {
    for e in catalog(true)
        .into_iter()
        .filter(|e| ["L_7", "L_8", "M_6"].contains(&e.name.as_str()))
    {
        let l = &e.lattice;
        assert_pass(
            &e.name,
            verify_weight_equivalence(l, EquivalenceMode::Auto).unwrap(),
        );
        assert_pass(&e.name, verify_decreasing_characterization(l).unwrap());
        assert_pass(&e.name, verify_supporting_lemmas(l).unwrap());
        assert_pass(&e.name, verify_trivial_boundary(l).unwrap());
    }
}

#[test]
fn reports_are_deterministic() {
    let l = latdiff_core::Lattice::quasi_antichain(4).unwrap();
    let a = verify_weight_equivalence(&l, EquivalenceMode::Auto).unwrap();
    let b = verify_weight_equivalence(&l, EquivalenceMode::Auto).unwrap();
    assert_eq!(a, b);
}
