//! Mechanical checks of the structural, classification and counting results
//! on a fixed desk-scale catalog of lattices.
//!
//! Every `verify_*` function returns a [`VerificationReport`]. A failing report
//! always carries either a witness operator (the lexicographically smallest
//! one found) or an `(expected, observed)` count pair.

mod chains;
mod counterexamples;
mod lemmas;
mod quasi;
mod weights;

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::enumerate::EnumerateError;
use crate::family::FamilyError;
use crate::formulas::{Count, FormulaError};
use crate::lattice::{Lattice, LatticeError};
use crate::operator::{Operator, OperatorError};

pub use chains::{verify_chain_counts, CHAIN_TABLE};
pub use counterexamples::{verify_counterexamples, verify_trivial_boundary};
pub use lemmas::{supporting_lemmas_on, verify_supporting_lemmas};
pub use quasi::{classification_families, verify_quasi_classification, NamedOperator, QUASI_TABLE};
pub use weights::{
    verify_characterizations, verify_decreasing_characterization,
    verify_distributivity_characterization, verify_weight_equivalence, EquivalenceMode,
};

/// Seed of the uniform map sampler. Part of the reproducibility contract.
pub const SAMPLE_SEED: u64 = 0x1A77;
/// Number of maps drawn in sample mode.
pub const SAMPLE_COUNT: usize = 100_000;
/// Largest `n^n` walked map-by-map before switching to sampling.
pub const EXHAUSTIVE_MAP_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{check}: {reason}")]
    OutOfRange { check: &'static str, reason: String },
    #[error("{check}: {maps} maps exceed the exhaustive budget of {limit}; use sample mode")]
    Budget {
        check: &'static str,
        maps: u64,
        limit: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check_id: String,
    pub lattice_desc: String,
    pub status: Status,
    pub witness: Option<Operator>,
    /// Headline `(expected, observed)` counts; on failure, the first mismatch.
    pub counts: Option<(Count, Count)>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.status, self.check_id, self.lattice_desc
        )?;
        if let Some((e, o)) = self.counts {
            write!(f, " expected={e} observed={o}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness=[{w}]")?;
        }
        Ok(())
    }
}

/// Accumulates sub-checks into one report.
#[derive(Debug)]
pub(crate) struct Checker {
    report: VerificationReport,
    count_failed: bool,
}

impl Checker {
    pub(crate) fn new(check_id: &str, lattice_desc: impl Into<String>) -> Self {
        Self {
            report: VerificationReport {
                check_id: check_id.to_string(),
                lattice_desc: lattice_desc.into(),
                status: Status::Pass,
                witness: None,
                counts: None,
                notes: Vec::new(),
            },
            count_failed: false,
        }
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    /// Records a failing operator; the smallest witness wins.
    pub(crate) fn fail_with(&mut self, witness: Operator, why: impl Into<String>) {
        self.report.status = Status::Fail;
        self.report
            .notes
            .push(format!("FAIL {}: [{witness}]", why.into()));
        match &self.report.witness {
            Some(w) if *w <= witness => {}
            _ => self.report.witness = Some(witness),
        }
    }

    /// Fails unless `holds`, blaming `witness`.
    pub(crate) fn expect(&mut self, holds: bool, witness: &Operator, why: &str) {
        if !holds {
            self.fail_with(witness.clone(), why);
        }
    }

    /// Compares an expected count with an observed one.
    pub(crate) fn count(&mut self, what: &str, expected: Count, observed: Count) {
        if expected == observed {
            self.report.notes.push(format!("{what}: {observed}"));
            if !self.count_failed && self.report.counts.is_none() {
                self.report.counts = Some((expected, observed));
            }
        } else {
            self.report.status = Status::Fail;
            self.report.notes.push(format!(
                "FAIL {what}: expected {expected}, observed {observed}"
            ));
            if !self.count_failed {
                self.report.counts = Some((expected, observed));
                self.count_failed = true;
            }
        }
    }

    /// Sets the headline counts shown on a passing report.
    pub(crate) fn headline(&mut self, expected: Count, observed: Count) {
        if !self.count_failed {
            self.report.counts = Some((expected, observed));
        }
        if expected != observed {
            self.report.status = Status::Fail;
            self.count_failed = true;
        }
    }

    /// Exact set equality; the smallest operator in the symmetric difference
    /// becomes the witness.
    pub(crate) fn same_set(
        &mut self,
        what: &str,
        lhs: &BTreeSet<Operator>,
        rhs: &BTreeSet<Operator>,
    ) {
        let only_lhs = lhs.difference(rhs).next();
        let only_rhs = rhs.difference(lhs).next();
        match (only_lhs, only_rhs) {
            (None, None) => self.note(format!("{what}: equal ({} operators)", lhs.len())),
            (a, b) => {
                let w = match (a, b) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                };
                self.fail_with(
                    w.clone(),
                    format!("{what}: sets differ ({} vs {})", lhs.len(), rhs.len()),
                );
            }
        }
    }

    pub(crate) fn finish(self) -> VerificationReport {
        self.report
    }
}

/// Compares two operator sets as a standalone report.
pub fn compare_operator_sets<'a>(
    check_id: &str,
    lattice_desc: &str,
    lhs: impl IntoIterator<Item = &'a Operator>,
    rhs: impl IntoIterator<Item = &'a Operator>,
) -> VerificationReport {
    let lhs: BTreeSet<Operator> = lhs.into_iter().cloned().collect();
    let rhs: BTreeSet<Operator> = rhs.into_iter().cloned().collect();
    let mut c = Checker::new(check_id, lattice_desc);
    c.same_set("set equality", &lhs, &rhs);
    c.finish()
}

/// A named member of the test catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub lattice: Lattice,
}

/// Chains `L_1..L_6`, quasi-antichains `M_2..M_5`, `N_5` and `B_3`; with
/// `slow`, also `L_7`, `L_8` and `M_6`.
pub fn catalog(slow: bool) -> Vec<CatalogEntry> {
    let max_chain = if slow { 8 } else { 6 };
    let max_atoms = if slow { 6 } else { 5 };
    let mut out = Vec::new();
    for n in 1..=max_chain {
        out.push(CatalogEntry {
            name: format!("L_{n}"),
            lattice: Lattice::chain(n).expect("chain"),
        });
    }
    for m in 2..=max_atoms {
        out.push(CatalogEntry {
            name: format!("M_{m}"),
            lattice: Lattice::quasi_antichain(m).expect("quasi-antichain"),
        });
    }
    out.push(CatalogEntry {
        name: "N_5".into(),
        lattice: Lattice::pentagon(),
    });
    out.push(CatalogEntry {
        name: "B_3".into(),
        lattice: Lattice::boolean_cube(3).expect("cube"),
    });
    out
}

/// A short description used in reports when no catalog name is known.
pub fn describe(l: &Lattice) -> String {
    use crate::lattice::Shape;
    match l.shape() {
        Shape::Chain => format!("L_{}", l.size()),
        Shape::QuasiAntichain => format!("M_{}", l.size() - 2),
        Shape::Other => format!("lattice(n={})", l.size()),
    }
}

/// `n^n`, saturating.
pub(crate) fn map_count(n: usize) -> u64 {
    (n as u64).checked_pow(n as u32).unwrap_or(u64::MAX)
}

/// Uniform random self-maps of an `n`-element set from a fixed seed.
pub fn sample_maps(n: usize, samples: usize, seed: u64) -> impl Iterator<Item = Operator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(move |_| {
        let image = (0..n).map(|_| rng.gen_range(0..n)).collect();
        Operator::from_image_unchecked(image)
    })
}
