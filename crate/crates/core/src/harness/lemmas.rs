//! Pointwise lemmas about difference operators on quasi-antichains and
//! chains, checked over every member of a given operator set.

use std::collections::BTreeSet;

use crate::enumerate::{collect_ops, CountQuery};
use crate::lattice::{Element, Lattice};
use crate::operator::{modify_at_top, Operator, Weight};

use super::{describe, Checker, HarnessError, VerificationReport};

/// Enumerates the difference operators on `l` and checks the lemmas that
/// apply to its shape.
pub fn verify_supporting_lemmas(l: &Lattice) -> Result<VerificationReport, HarnessError> {
    let members = collect_ops(&CountQuery::new(l, Weight::One))?;
    supporting_lemmas_on(l, &members)
}

/// Checks the lemmas against a caller-supplied operator set, so that a
/// corrupted set can be shown to fail.
pub fn supporting_lemmas_on(
    l: &Lattice,
    members: &[Operator],
) -> Result<VerificationReport, HarnessError> {
    for d in members {
        d.ensure_bound_to(l)?;
    }
    let mut c = Checker::new("supporting-lemmas", describe(l));
    if l.is_quasi_antichain() {
        quasi_lemmas(l, members, &mut c);
    } else if l.is_chain() && l.size() >= 3 {
        chain_lemmas(l, members, &mut c)?;
    } else {
        c.note("no shape-specific lemmas apply");
    }
    c.headline(members.len() as u128, members.len() as u128);
    Ok(c.finish())
}

fn quasi_lemmas(l: &Lattice, members: &[Operator], c: &mut Checker) {
    let (bot, top) = (l.bottom(), l.top());
    let atoms = l.atoms();
    let is_atom = |x: Element| x != bot && x != top;
    let big = l.size() >= 5;
    let (mut top_slice, mut atom_slice) = (0, 0);

    for d in members {
        let img = d.image();
        let d0 = img[bot];
        if d0 == top {
            top_slice += 1;
            for (i, &u) in atoms.iter().enumerate() {
                for &v in &atoms[i + 1..] {
                    c.expect(
                        img[u] != img[v] || img[u] == top,
                        d,
                        "d(0)=1: distinct atoms share a non-top image",
                    );
                }
            }
            let atom_valued: Vec<Element> =
                atoms.iter().copied().filter(|&x| is_atom(img[x])).collect();
            if big {
                c.expect(
                    atom_valued.len() < 3,
                    d,
                    "d(0)=1: three atoms with atom images",
                );
            }
            c.expect(
                atom_valued.len() <= 2,
                d,
                "d(0)=1: more than two atom-valued atoms",
            );
            c.expect(
                atoms.iter().all(|&x| img[x] == top || is_atom(img[x])),
                d,
                "d(0)=1: an atom not sent to the top or an atom",
            );
        } else if is_atom(d0) {
            atom_slice += 1;
            let a = d0;
            for &x in atoms.iter().filter(|&&x| x != a) {
                c.expect(img[x] == a || img[x] == top, d, "d(0)=a: d(x) ∉ {a, 1}");
            }
            let to_top = atoms.iter().filter(|&&x| img[x] == top).count();
            c.expect(to_top <= 1, d, "d(0)=a: two atoms sent to the top");
            c.expect(
                img[a] == bot || img[a] == a,
                d,
                "d(0)=a: d(d(0)) ∉ {0, d(0)}",
            );
            if img[a] == bot {
                c.expect(
                    img[top] != a && img[top] != top,
                    d,
                    "d(0)=a, d(a)=0: d(1) ∈ {a, 1}",
                );
            }
            if l.elements().filter(|&x| x != top).all(|x| img[x] == a) {
                c.expect(
                    img[top] == bot || img[top] == a,
                    d,
                    "d constant a below 1: d(1) ∉ {0, a}",
                );
            }
            if big {
                c.expect(
                    l.elements()
                        .filter(|&x| x != a && x != top)
                        .all(|x| img[x] == a),
                    d,
                    "|M|>=5, d(0)=a: some d(x) ≠ a off {a, 1}",
                );
                c.expect(
                    img[top] == bot || img[top] == a,
                    d,
                    "|M|>=5, d(0)=a: d(1) ∉ {0, a}",
                );
            }
        }
    }
    c.note(format!("d(0)=1 operators checked: {top_slice}"));
    c.note(format!("atom-valued d(0) operators checked: {atom_slice}"));
}

fn chain_lemmas(l: &Lattice, members: &[Operator], c: &mut Checker) -> Result<(), HarnessError> {
    let n = l.size();
    let top = l.top();
    let below = n - 2;
    let set: BTreeSet<&Operator> = members.iter().collect();

    // Members with d(a_{n-2}) >= a_{n-2}.
    for d in members.iter().filter(|d| d.apply(below) >= below) {
        c.expect(
            (0..top).all(|x| x <= d.apply(x)),
            d,
            "d(a_{n-2}) >= a_{n-2}: some x < 1 with d(x) < x",
        );
        let d1 = modify_at_top(l, d, top)?;
        c.expect(set.contains(&d1), &d1, "d member but d^1 not");
        if d.apply(top) == top {
            for u in l.elements() {
                let du = modify_at_top(l, d, u)?;
                c.expect(set.contains(&du), &du, "d^1 member but d^u not");
            }
        }
    }

    // Restriction to the chain below the top.
    let sub = Lattice::chain(n - 1)?;
    let sub_members = collect_ops(&CountQuery::new(&sub, Weight::One))?;
    let lhs: BTreeSet<Operator> = members
        .iter()
        .filter(|d| {
            let (d1, db) = (d.apply(top), d.apply(below));
            d1 != top && d1 <= db && db < below
        })
        .cloned()
        .collect();
    let mut rhs = BTreeSet::new();
    for r in sub_members.iter().filter(|r| r.apply(below) < below) {
        for u in 0..=r.apply(below) {
            let mut image = r.image().to_vec();
            image.push(u);
            rhs.insert(Operator::new(image)?);
        }
    }
    c.same_set("restriction pairing with the shorter chain", &lhs, &rhs);
    Ok(())
}
