//! Weight equivalence, the decreasing and distributivity characterizations,
//! and the pointwise/structural consequences for difference operators.

use std::collections::BTreeSet;

use crate::enumerate::{all_maps, collect_ops, maps_within, CountQuery};
use crate::family::{make_named, OperatorFamily};
use crate::lattice::{Element, Lattice};
use crate::operator::{check_weight, has_property, modify_at_top, Operator, Property, Weight};

use super::{
    describe, map_count, sample_maps, Checker, HarnessError, VerificationReport,
    EXHAUSTIVE_MAP_LIMIT, SAMPLE_COUNT, SAMPLE_SEED,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    /// Walk every map; error if `n^n` exceeds the exhaustive budget.
    Exhaustive,
    /// Uniform random maps from a fixed seed.
    Sampled { samples: usize, seed: u64 },
    /// Exhaustive when within budget, otherwise the default sample.
    Auto,
}

impl EquivalenceMode {
    pub fn default_sample() -> Self {
        EquivalenceMode::Sampled {
            samples: SAMPLE_COUNT,
            seed: SAMPLE_SEED,
        }
    }
}

fn weight_ops(l: &Lattice, w: Weight) -> Result<BTreeSet<Operator>, HarnessError> {
    Ok(collect_ops(&CountQuery::new(l, w))?.into_iter().collect())
}

fn is_member(l: &Lattice, d: &Operator, w: Weight) -> bool {
    check_weight(l, d, w).expect("operator bound to lattice")
}

/// Weight −1 operators coincide with derivations, and all of them are
/// decreasing.
pub fn verify_weight_equivalence(
    l: &Lattice,
    mode: EquivalenceMode,
) -> Result<VerificationReport, HarnessError> {
    let n = l.size();
    let maps = map_count(n);
    let mode = match mode {
        EquivalenceMode::Auto if maps <= EXHAUSTIVE_MAP_LIMIT => EquivalenceMode::Exhaustive,
        EquivalenceMode::Auto => EquivalenceMode::default_sample(),
        EquivalenceMode::Exhaustive if maps > EXHAUSTIVE_MAP_LIMIT => {
            return Err(HarnessError::Budget {
                check: "weight equivalence",
                maps,
                limit: EXHAUSTIVE_MAP_LIMIT,
            })
        }
        m => m,
    };

    let mut c = Checker::new("weight-equivalence", describe(l));
    let source: Box<dyn Iterator<Item = Operator>> = match mode {
        EquivalenceMode::Exhaustive => {
            c.note(format!("exhaustive over {maps} maps"));
            Box::new(all_maps(n))
        }
        EquivalenceMode::Sampled { samples, seed } => {
            c.note(format!("sampled {samples} maps, seed {seed:#x}"));
            Box::new(sample_maps(n, samples, seed))
        }
        EquivalenceMode::Auto => unreachable!(),
    };
    let mut minus_one = BTreeSet::new();
    let mut zero = BTreeSet::new();
    for d in source {
        let m1 = is_member(l, &d, Weight::MinusOne);
        if m1 {
            c.expect(
                has_property(l, &d, Property::Decreasing),
                &d,
                "weight -1 but not decreasing",
            );
            minus_one.insert(d.clone());
        }
        if is_member(l, &d, Weight::Zero) {
            zero.insert(d);
        }
    }
    c.same_set("weight -1 vs weight 0 (walked maps)", &minus_one, &zero);

    // The pruned enumerator yields both sets exactly at any catalog size.
    let minus_one = weight_ops(l, Weight::MinusOne)?;
    let zero = weight_ops(l, Weight::Zero)?;
    c.same_set("weight -1 vs weight 0 (enumerated)", &minus_one, &zero);
    c.headline(zero.len() as u128, minus_one.len() as u128);
    Ok(c.finish())
}

/// Derivations are exactly the decreasing difference operators.
pub fn verify_decreasing_characterization(l: &Lattice) -> Result<VerificationReport, HarnessError> {
    let mut c = Checker::new("decreasing-characterization", describe(l));
    let derivations = weight_ops(l, Weight::Zero)?;
    let decreasing: BTreeSet<Operator> = weight_ops(l, Weight::One)?
        .into_iter()
        .filter(|d| has_property(l, d, Property::Decreasing))
        .collect();
    c.same_set(
        "derivations vs decreasing difference operators",
        &derivations,
        &decreasing,
    );
    c.headline(derivations.len() as u128, decreasing.len() as u128);
    Ok(c.finish())
}

/// `L` is distributive iff every `ψ_(a)` is a difference operator.
pub fn verify_distributivity_characterization(
    l: &Lattice,
) -> Result<VerificationReport, HarnessError> {
    let mut c = Checker::new("distributivity", describe(l));
    let distributive = l.is_distributive();
    let mut failing_psi = None;
    for a in l.elements() {
        let psi = make_named(l, OperatorFamily::Psi { value: a })?;
        if !is_member(l, &psi, Weight::One) {
            failing_psi = Some((a, psi));
            break;
        }
    }
    let all_psi = failing_psi.is_none();
    c.note(format!(
        "distributive={distributive} all_psi_members={all_psi}"
    ));
    if let Some((a, psi)) = &failing_psi {
        c.note(format!(
            "psi_({}) = [{psi}] is not a difference operator",
            l.label(*a)
        ));
    }
    if distributive != all_psi {
        match failing_psi {
            Some((_, psi)) => c.fail_with(psi, "distributive lattice with a failing psi"),
            None => c.headline(u128::from(distributive), u128::from(all_psi)),
        }
    }
    Ok(c.finish())
}

/// The single-operator consequences for difference operators and the
/// characterizations on bounded lattices and chains.
pub fn verify_characterizations(l: &Lattice) -> Result<VerificationReport, HarnessError> {
    let mut c = Checker::new("characterizations", describe(l));
    let n = l.size();
    let (bot, top) = (l.bottom(), l.top());
    let members = weight_ops(l, Weight::One)?;

    for d in &members {
        let img = d.image();
        let isotone = has_property(l, d, Property::Isotone);
        let meet_hom = has_property(l, d, Property::MeetHomomorphism);
        c.expect(isotone == meet_hom, d, "isotone <=> meet-homomorphism");
        let join_hom = has_property(l, d, Property::JoinHomomorphism);
        let lattice_hom = has_property(l, d, Property::LatticeHomomorphism);
        c.expect(
            join_hom == lattice_hom,
            d,
            "join-homomorphism <=> lattice homomorphism",
        );
        let idempotent = has_property(l, d, Property::Idempotent);
        let fixes_meets = l.elements().all(|x| {
            l.elements().all(|y| {
                let m = l.meet(img[x], img[y]);
                img[m] == m
            })
        });
        c.expect(
            idempotent == fixes_meets,
            d,
            "idempotent <=> d(d(x)∧d(y)) = d(x)∧d(y)",
        );

        // Pointwise consequences relative to d(1) and d(0).
        let d1 = img[top];
        for x in l.elements() {
            if l.le(x, d1) {
                c.expect(l.le(x, img[x]), d, "x <= d(1) implies x <= d(x)");
                for y in l.elements() {
                    if l.le(x, y) && l.le(y, d1) {
                        c.expect(
                            l.le(img[x], img[y]),
                            d,
                            "x <= y <= d(1) implies d(x) <= d(y)",
                        );
                    }
                }
            }
            if l.le(d1, x) {
                c.expect(l.le(d1, img[x]), d, "d(1) <= x implies d(1) <= d(x)");
            }
            let xd = l.join(x, img[x]);
            if l.le(xd, img[bot]) {
                c.expect(xd == img[bot], d, "x∨d(x) <= d(0) implies equality");
            }
        }
    }

    // Increasing maps: membership <=> meet-homomorphism.
    let up_sets: Vec<Vec<Element>> = l
        .elements()
        .map(|x| l.elements().filter(|&y| l.le(x, y)).collect())
        .collect();
    let mut increasing = 0u128;
    for d in maps_within(up_sets) {
        increasing += 1;
        let member = members.contains(&d);
        c.expect(
            member == has_property(l, &d, Property::MeetHomomorphism),
            &d,
            "increasing: member <=> meet-homomorphism",
        );
    }
    c.note(format!("increasing maps checked: {increasing}"));

    // d(0) = d(1) = 1 forces the constant top map.
    let top_const = Operator::constant(n, top)?;
    let both_top: BTreeSet<Operator> = members
        .iter()
        .filter(|d| d.apply(bot) == top && d.apply(top) == top)
        .cloned()
        .collect();
    c.same_set(
        "d(0)=d(1)=1 members vs {C_(1)}",
        &both_top,
        &BTreeSet::from([top_const]),
    );
    let mut fixed = vec![l.elements().collect::<Vec<_>>(); n];
    fixed[bot] = vec![top];
    fixed[top] = vec![top];
    let brute: BTreeSet<Operator> = maps_within(fixed)
        .filter(|d| is_member(l, d, Weight::One))
        .collect();
    c.same_set("d(0)=d(1)=1 by brute force", &both_top, &brute);

    if l.is_chain() && n >= 2 {
        // d(0) = 1 on a chain: exactly the tau family.
        let taus: BTreeSet<Operator> = l
            .elements()
            .map(|a| make_named(l, OperatorFamily::Tau { value: a }))
            .collect::<Result<_, _>>()?;
        let bottom_to_top: BTreeSet<Operator> = members
            .iter()
            .filter(|d| d.apply(bot) == top)
            .cloned()
            .collect();
        c.same_set("chain d(0)=1 members vs tau family", &bottom_to_top, &taus);

        // d(1) = 1 on a chain: member <=> increasing and isotone.
        let mut cands = vec![l.elements().collect::<Vec<_>>(); n];
        cands[top] = vec![top];
        if map_count(n) / n as u64 <= super::EXHAUSTIVE_MAP_LIMIT {
            for d in maps_within(cands) {
                let rhs = has_property(l, &d, Property::Increasing)
                    && has_property(l, &d, Property::Isotone);
                c.expect(
                    is_member(l, &d, Weight::One) == rhs,
                    &d,
                    "chain with d(1)=1: member <=> increasing and isotone",
                );
            }
        } else {
            c.note("chain d(1)=1 characterization skipped: beyond exhaustive budget");
        }

        // d^u stays a member for u <= d(1).
        for d in &members {
            for u in l.elements().filter(|&u| l.le(u, d.apply(top))) {
                let du = modify_at_top(l, d, u)?;
                c.expect(members.contains(&du), &du, "d^u with u <= d(1) is a member");
            }
        }
    }
    c.headline(members.len() as u128, members.len() as u128);
    Ok(c.finish())
}
