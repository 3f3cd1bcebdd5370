//! Literal counterexamples and the small-lattice boundary.

use crate::enumerate::{all_maps, count_ops, CountQuery};
use crate::family::{make_named, OperatorFamily};
use crate::lattice::{Element, Lattice};
use crate::operator::{
    check_weight, floor_below_top_image, modify_at_top, saturate_below_top_image, Operator, Weight,
};

use super::{describe, map_count, Checker, HarnessError, VerificationReport};

/// On a chain with `a < b < c`: swap `a` and `c`, fix everything else.
fn chain_swap_witness(l: &Lattice) -> Option<Operator> {
    let els: Vec<Element> = l.elements().collect();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                if a != b && b != c && l.le(a, b) && l.le(b, c) {
                    let image = l
                        .elements()
                        .map(|x| {
                            if x == a {
                                c
                            } else if x == c {
                                a
                            } else {
                                x
                            }
                        })
                        .collect();
                    return Some(Operator::from_image_unchecked(image));
                }
            }
        }
    }
    None
}

/// For incomparable `a, b`: `x ↦ a` when `x <= a`, otherwise `b`.
fn incomparable_pair_witness(l: &Lattice) -> Option<Operator> {
    for a in l.elements() {
        for b in l.elements() {
            if !l.le(a, b) && !l.le(b, a) {
                let image = l
                    .elements()
                    .map(|x| if l.le(x, a) { a } else { b })
                    .collect();
                return Some(Operator::from_image_unchecked(image));
            }
        }
    }
    None
}

/// A map that is not a difference operator, for any lattice with at least
/// three elements.
pub(crate) fn boundary_witness(l: &Lattice) -> Option<Operator> {
    if l.is_chain() {
        chain_swap_witness(l)
    } else {
        incomparable_pair_witness(l)
    }
}

fn member(l: &Lattice, d: &Operator) -> Result<bool, HarnessError> {
    Ok(check_weight(l, d, Weight::One)?)
}

/// Builds each named counterexample literally and checks it is rejected;
/// `Φ_a` and `Φ_b` must be accepted.
pub fn verify_counterexamples() -> Result<VerificationReport, HarnessError> {
    let mut c = Checker::new("counterexamples", "M_2, M_3, L_3");
    let m2 = Lattice::quasi_antichain(2)?;
    let m3 = Lattice::quasi_antichain(3)?;
    let l3 = Lattice::chain(3)?;

    let b1 = m3.atoms()[0];
    let meet_b1 = Operator::new(m3.elements().map(|x| m3.meet(x, b1)).collect())?;
    c.expect(
        check_weight(&m3, &meet_b1, Weight::Zero)?,
        &meet_b1,
        "x ∧ b1 should be a derivation on M_3",
    );

    let rejected: Vec<(&str, &Lattice, Operator)> = vec![
        (
            "Theta on M_2",
            &m2,
            make_named(&m2, OperatorFamily::ThetaM2Counterexample)?,
        ),
        (
            "psi_(b1) on M_3",
            &m3,
            make_named(&m3, OperatorFamily::Psi { value: b1 })?,
        ),
        (
            "end swap on L_3",
            &l3,
            chain_swap_witness(&l3).expect("three-chain"),
        ),
        (
            "incomparable-pair map on M_2",
            &m2,
            incomparable_pair_witness(&m2).expect("M_2"),
        ),
        (
            "C_(0) modified to the top on L_3",
            &l3,
            modify_at_top(&l3, &Operator::constant(3, l3.bottom())?, l3.top())?,
        ),
        (
            "D from x ∧ b1 on M_3",
            &m3,
            saturate_below_top_image(&m3, &meet_b1),
        ),
        (
            "floor of x ∧ b1 on M_3",
            &m3,
            floor_below_top_image(&m3, &meet_b1),
        ),
    ];
    let accepted: Vec<(&str, &Lattice, Operator)> = vec![
        ("Phi_a on M_2", &m2, make_named(&m2, OperatorFamily::PhiA)?),
        ("Phi_b on M_2", &m2, make_named(&m2, OperatorFamily::PhiB)?),
    ];

    let mut ok = 0u128;
    for (name, l, d) in &rejected {
        let is_member = member(l, d)?;
        c.note(format!(
            "{}: {name} [{d}]",
            if is_member {
                "WRONGLY ACCEPTED"
            } else {
                "rejected"
            }
        ));
        c.expect(!is_member, d, name);
        ok += u128::from(!is_member);
    }
    for (name, l, d) in &accepted {
        let is_member = member(l, d)?;
        c.note(format!(
            "{}: {name} [{d}]",
            if is_member {
                "accepted"
            } else {
                "WRONGLY REJECTED"
            }
        ));
        c.expect(is_member, d, name);
        ok += u128::from(is_member);
    }
    c.headline((rejected.len() + accepted.len()) as u128, ok);
    Ok(c.finish())
}

/// Every map is a difference operator exactly when `|L| <= 2`.
pub fn verify_trivial_boundary(l: &Lattice) -> Result<VerificationReport, HarnessError> {
    let n = l.size();
    let mut c = Checker::new("trivial-boundary", describe(l));
    let all = map_count(n) as u128;
    let counted = count_ops(&CountQuery::new(l, Weight::One))?;
    if n <= 2 {
        for d in all_maps(n) {
            c.expect(
                member(l, &d)?,
                &d,
                "map on a lattice with at most two elements rejected",
            );
        }
        c.count("difference operators vs all maps", all, counted);
    } else {
        match boundary_witness(l) {
            Some(w) => {
                c.note(format!("witness [{w}]"));
                if member(l, &w)? {
                    c.fail_with(w, "boundary witness accepted");
                }
            }
            None => c.note("no witness constructed"),
        }
        c.expect(
            counted < all,
            &Operator::identity(n),
            "every map accepted on |L| >= 3",
        );
        c.note(format!("{counted} of {all} maps are difference operators"));
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog;

    #[test]
    fn counterexamples_pass() {
        let r = verify_counterexamples().unwrap();
        assert!(r.passed(), "{r}: {:?}", r.notes);
        assert_eq!(r.counts, Some((9, 9)));
        assert_eq!(
            r.notes.iter().filter(|n| n.starts_with("rejected")).count(),
            7
        );
        assert_eq!(
            r.notes.iter().filter(|n| n.starts_with("accepted")).count(),
            2
        );
    }

    #[test]
    fn literal_images() {
        let m2 = Lattice::quasi_antichain(2).unwrap();
        assert_eq!(
            incomparable_pair_witness(&m2).unwrap().image(),
            &[1, 1, 2, 2]
        );
        let l3 = Lattice::chain(3).unwrap();
        assert_eq!(chain_swap_witness(&l3).unwrap().image(), &[2, 1, 0]);
        let m3 = Lattice::quasi_antichain(3).unwrap();
        let d = Operator::new(vec![0, 1, 0, 0, 1]).unwrap();
        assert_eq!(saturate_below_top_image(&m3, &d).image(), &[0, 1, 4, 4, 4]);
        assert_eq!(floor_below_top_image(&m3, &d).image(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn boundary_on_catalog() {
        for e in catalog(false) {
            let r = verify_trivial_boundary(&e.lattice).unwrap();
            assert!(r.passed(), "{}: {r} {:?}", e.name, r.notes);
        }
        let r = verify_trivial_boundary(&Lattice::chain(2).unwrap()).unwrap();
        assert_eq!(r.counts, Some((4, 4)));
    }
}
