//! Quasi-antichain classification: the brute-forced operator set against
//! the materialised family unions, slice by slice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::enumerate::{collect_ops, CountQuery};
use crate::family::{make_named, OperatorFamily};
use crate::formulas::{quasi_slice_formulas, quasi_total, Count, QUASI_TOTAL_M2};
use crate::lattice::{Element, Lattice};
use crate::operator::{modify_at_top, Operator, Weight};

use super::{Checker, HarnessError, VerificationReport};

/// Published difference-operator counts on `M_{n-2}` for `n = 4..11`.
pub const QUASI_TABLE: [(u32, Count); 8] = [
    (4, 36),
    (5, 59),
    (6, 133),
    (7, 275),
    (8, 538),
    (9, 1027),
    (10, 1959),
    (11, 3791),
];

/// An operator together with the family expression that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedOperator {
    pub label: String,
    pub operator: Operator,
}

impl fmt::Display for NamedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = [{}]", self.label, self.operator)
    }
}

struct Builder<'a> {
    l: &'a Lattice,
    out: Vec<NamedOperator>,
}

impl<'a> Builder<'a> {
    fn push(&mut self, fam: OperatorFamily) -> Result<Operator, HarnessError> {
        let op = make_named(self.l, fam)?;
        self.out.push(NamedOperator {
            label: fam.to_string(),
            operator: op.clone(),
        });
        Ok(op)
    }

    /// Pushes `fam` modified at the top to `u`.
    fn push_mod(&mut self, fam: OperatorFamily, u: Element) -> Result<(), HarnessError> {
        let op = modify_at_top(self.l, &make_named(self.l, fam)?, u)?;
        self.out.push(NamedOperator {
            label: format!("{fam}^{u}"),
            operator: op,
        });
        Ok(())
    }
}

/// Family members with `d(0) = 1`.
fn top_slice_families(l: &Lattice) -> Result<Vec<NamedOperator>, HarnessError> {
    let atoms = l.atoms();
    let (bot, top) = (l.bottom(), l.top());
    let mut b = Builder { l, out: Vec::new() };
    let c_top = OperatorFamily::Constant { value: top };
    b.push(c_top)?;
    // d(1) = 0
    b.push_mod(c_top, bot)?;
    for &u in &atoms {
        for &v in &atoms {
            if u != v {
                b.push(OperatorFamily::Theta { u, v })?;
            }
        }
    }
    for (i, &u) in atoms.iter().enumerate() {
        for &v in &atoms[i + 1..] {
            b.push(OperatorFamily::Alpha { u, v })?;
        }
    }
    // d(1) = b, an atom
    for &bb in &atoms {
        b.push_mod(c_top, bb)?;
        for &u in atoms.iter().filter(|&&u| u != bb) {
            for &v in atoms.iter().filter(|&&v| v != u) {
                b.push(OperatorFamily::Eta { b: bb, u, v })?;
            }
            b.push(OperatorFamily::Beta { b: bb, u })?;
        }
        if atoms.len() >= 3 {
            let rest: Vec<Element> = atoms.iter().copied().filter(|&u| u != bb).collect();
            for (i, &u) in rest.iter().enumerate() {
                for &v in &rest[i + 1..] {
                    b.push(OperatorFamily::Gamma { b: bb, u, v })?;
                }
            }
        }
    }
    Ok(b.out)
}

/// Family members with `d(0) = a` for the atom `a`.
fn atom_slice_families(l: &Lattice, a: Element) -> Result<Vec<NamedOperator>, HarnessError> {
    let bot = l.bottom();
    let mut b = Builder { l, out: Vec::new() };
    let c_a = OperatorFamily::Constant { value: a };
    b.push(c_a)?;
    b.push_mod(c_a, bot)?;
    b.push(OperatorFamily::Lambda { atom: a })?;
    if l.size() == 4 {
        let other = l.atoms().into_iter().find(|&x| x != a).expect("two atoms");
        let psi = OperatorFamily::Psi { value: a };
        b.push(psi)?;
        for u in [bot, a, other] {
            b.push_mod(psi, u)?;
        }
        let phi = if a == l.atoms()[0] {
            OperatorFamily::PhiA
        } else {
            OperatorFamily::PhiB
        };
        b.push(phi)?;
        b.push_mod(phi, bot)?;
    }
    Ok(b.out)
}

/// Every labelled family operator that applies to `l`.
///
/// Constants, `τ` and `ψ` on any lattice; on a quasi-antichain also the
/// families making up the `d(0) = 1` and atom-valued slices.
pub fn classification_families(l: &Lattice) -> Result<Vec<NamedOperator>, HarnessError> {
    let mut b = Builder { l, out: Vec::new() };
    for a in l.elements() {
        b.push(OperatorFamily::Constant { value: a })?;
    }
    if l.size() >= 2 {
        for a in l.elements() {
            b.push(OperatorFamily::Tau { value: a })?;
        }
    }
    for a in l.elements() {
        b.push(OperatorFamily::Psi { value: a })?;
    }
    let mut out = b.out;
    if l.is_quasi_antichain() {
        let mut seen: BTreeSet<String> = out.iter().map(|n| n.label.clone()).collect();
        let mut extra = top_slice_families(l)?;
        for a in l.atoms() {
            extra.extend(atom_slice_families(l, a)?);
        }
        for n in extra {
            if seen.insert(n.label.clone()) {
                out.push(n);
            }
        }
    }
    Ok(out)
}

fn as_set(named: &[NamedOperator]) -> BTreeSet<Operator> {
    named.iter().map(|n| n.operator.clone()).collect()
}

/// Groups by family kind (label up to the first parenthesis) and notes how
/// many operators of each kind are shared with another kind.
fn membership_matrix(named: &[NamedOperator]) -> Vec<String> {
    let kind = |label: &str| -> String {
        let base = label.split('(').next().unwrap_or(label);
        if label.contains('^') {
            format!("{base}^u")
        } else {
            base.to_string()
        }
    };
    let mut kinds_of: BTreeMap<&Operator, BTreeSet<String>> = BTreeMap::new();
    for n in named {
        kinds_of
            .entry(&n.operator)
            .or_default()
            .insert(kind(&n.label));
    }
    let mut rows: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for n in named {
        let row = rows.entry(kind(&n.label)).or_default();
        row.0 += 1;
        if kinds_of[&n.operator].len() > 1 {
            row.1 += 1;
        }
    }
    rows.into_iter()
        .map(|(k, (total, shared))| format!("family {k}: {total} materialised, {shared} shared"))
        .collect()
}

/// Brute-forces the difference operators on `M_{n-2}`, `4 <= n <= 7`, and
/// checks every `d(0)` slice against its family union and the slice counts.
pub fn verify_quasi_classification(n: u32) -> Result<VerificationReport, HarnessError> {
    if !(4..=7).contains(&n) {
        return Err(HarnessError::OutOfRange {
            check: "quasi classification",
            reason: format!("n = {n}; the exhaustive check covers 4 <= n <= 7"),
        });
    }
    let l = Lattice::quasi_antichain(n as usize - 2)?;
    let (bot, top) = (l.bottom(), l.top());
    let atoms = l.atoms();
    let mut c = Checker::new("classification", format!("M_{}", n - 2));

    let members = collect_ops(&CountQuery::new(&l, Weight::One))?;
    let derivations: BTreeSet<Operator> = collect_ops(&CountQuery::new(&l, Weight::Zero))?
        .into_iter()
        .collect();
    let slice = |v: Element| -> BTreeSet<Operator> {
        members
            .iter()
            .filter(|d| d.apply(bot) == v)
            .cloned()
            .collect()
    };

    let bottom_slice = slice(bot);
    c.same_set("d(0)=0 slice vs derivations", &bottom_slice, &derivations);

    let top_named = top_slice_families(&l)?;
    let top_slice = slice(top);
    c.same_set(
        "d(0)=1 slice vs family union",
        &top_slice,
        &as_set(&top_named),
    );
    for row in membership_matrix(&top_named) {
        c.note(row);
    }

    let mut atom_total = 0;
    let mut atom_sizes = Vec::new();
    for &a in &atoms {
        let named = atom_slice_families(&l, a)?;
        let s = slice(a);
        c.same_set(
            &format!("d(0)={} slice vs family union", l.label(a)),
            &s,
            &as_set(&named),
        );
        atom_total += s.len() as Count;
        atom_sizes.push(s.len() as Count);
    }

    let both_top = top_slice.iter().filter(|d| d.apply(top) == top).count() as Count;
    let top_to_bottom = top_slice.iter().filter(|d| d.apply(top) == bot).count() as Count;
    let top_to_atom = top_slice.len() as Count - both_top - top_to_bottom;
    let observed = [
        bottom_slice.len() as Count,
        both_top,
        top_to_atom,
        top_to_bottom,
        atom_total,
    ];
    c.note(format!(
        "slices {} + {} + {} + {} + {}",
        observed[0], observed[1], observed[2], observed[3], observed[4]
    ));
    let total = members.len() as Count;
    if n == 4 {
        c.count("d(0)=0 slice", 9, observed[0]);
        c.count("d(0)=1 slice", 9, top_slice.len() as Count);
        for (&a, &size) in atoms.iter().zip(&atom_sizes) {
            c.count(&format!("d(0)={} slice", l.label(a)), 9, size);
        }
        c.headline(QUASI_TOTAL_M2, total);
    } else {
        let expected = quasi_slice_formulas(n)?.as_array();
        let names = [
            "d(0)=0",
            "d(0)=d(1)=1",
            "d(0)=1, d(1) atom",
            "d(0)=1, d(1)=0",
            "d(0) atom",
        ];
        for i in 0..5 {
            c.count(names[i], expected[i], observed[i]);
        }
        c.headline(quasi_total(n)?, total);
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_closed_form() {
        for &(n, v) in &QUASI_TABLE[1..] {
            assert_eq!(quasi_total(n).unwrap(), v);
        }
        assert_eq!(QUASI_TABLE[0].1, QUASI_TOTAL_M2);
    }

    #[test]
    fn classification_m2_and_m3() {
        let r = verify_quasi_classification(4).unwrap();
        assert!(r.passed(), "{r}: {:?}", r.notes);
        assert_eq!(r.counts, Some((36, 36)));
        let r = verify_quasi_classification(5).unwrap();
        assert!(r.passed(), "{r}: {:?}", r.notes);
        assert!(
            r.notes.iter().any(|n| n == "slices 21 + 1 + 18 + 10 + 9"),
            "{:?}",
            r.notes
        );
        assert_eq!(r.counts, Some((59, 59)));
    }

    #[test]
    fn out_of_range() {
        assert!(verify_quasi_classification(3).is_err());
        assert!(verify_quasi_classification(8).is_err());
    }

    #[test]
    fn families_on_m2_include_phi() {
        let m2 = Lattice::quasi_antichain(2).unwrap();
        let fams = classification_families(&m2).unwrap();
        let phi_a = fams.iter().find(|n| n.label == "phi_a").unwrap();
        assert_eq!(phi_a.operator.image(), &[1, 0, 3, 2]);
        let labels: BTreeSet<&str> = fams.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels.len(), fams.len());
    }

    #[test]
    fn overlaps_are_reported() {
        let m3 = Lattice::quasi_antichain(3).unwrap();
        let rows = membership_matrix(&top_slice_families(&m3).unwrap());
        assert!(rows
            .iter()
            .any(|r| r.starts_with("family beta:") && !r.ends_with(" 0 shared")));
    }
}
