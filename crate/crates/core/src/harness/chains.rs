//! Chain counts: the closed form, the per-top-image counts and the recurrence.

use crate::enumerate::{count_ops, CountQuery};
use crate::formulas::{catalan, chain_total, omega_recurrence, omega_top_formula, Count};
use crate::lattice::Lattice;
use crate::operator::Weight;

use super::{Checker, HarnessError, VerificationReport};

/// Published difference-operator counts on `L_1..L_10`.
pub const CHAIN_TABLE: [Count; 10] = [1, 4, 17, 73, 316, 1379, 6065, 26870, 119848, 537877];

/// Largest chain on which brute mode runs by default.
const BRUTE_LIMIT: usize = 8;

/// Checks the chain total for `L_n` against the table, the per-top-image
/// formula for every `j`, and the recurrence. In brute mode every count is
/// also enumerated.
pub fn verify_chain_counts(n: usize, brute: bool) -> Result<VerificationReport, HarnessError> {
    if n == 0 {
        return Err(HarnessError::OutOfRange {
            check: "chain counts",
            reason: "n must be at least 1".into(),
        });
    }
    if brute && n > BRUTE_LIMIT {
        return Err(HarnessError::OutOfRange {
            check: "chain counts",
            reason: format!("brute mode is limited to n <= {BRUTE_LIMIT}"),
        });
    }
    let nn = n as u32;
    let mut c = Checker::new("chain-counts", format!("L_{n}"));
    let total = chain_total(nn)?;
    let cn = catalan(nn)?;
    if let Some(&expected) = CHAIN_TABLE.get(n - 1) {
        c.count("formula vs table", expected, total);
    } else {
        c.note("beyond the published table; formula only");
    }

    let mut omega = Vec::with_capacity(n);
    for j in 0..nn {
        omega.push(omega_top_formula(nn, j)?);
    }
    // Top-image identities.
    c.count("omega_{n-1}", cn, omega[n - 1]);
    if n >= 2 {
        c.count("omega_{n-2}", cn, omega[n - 2]);
    }
    if n >= 3 {
        c.count("omega_{n-3}", cn + catalan(nn - 1)?, omega[n - 3]);
        for j in 0..=(nn - 3) {
            c.count(
                &format!("omega_{j} formula vs recurrence"),
                omega[j as usize],
                omega_recurrence(nn, j)?,
            );
        }
    }
    c.count("sum of omega_j vs total", total, omega.iter().sum());

    if brute {
        let l = Lattice::chain(n)?;
        let top = l.top();
        let mut seen = 0;
        for (j, &expected) in omega.iter().enumerate() {
            let q = CountQuery::new(&l, Weight::One).fix(top, j);
            let observed = count_ops(&q)?;
            seen += observed;
            c.count(&format!("omega_{j} brute"), expected, observed);
            if n >= 2 {
                // Top sent to a_j, the element below the top kept at or above itself.
                let q = CountQuery::new(&l, Weight::One)
                    .fix(top, j)
                    .at_least(n - 2, n - 2);
                c.count(&format!("|A_{j}| brute"), cn, count_ops(&q)?);
            }
        }
        let all = count_ops(&CountQuery::new(&l, Weight::One))?;
        c.count("sum of brute omega_j vs brute total", all, seen);
        c.headline(total, all);
    } else {
        c.headline(total, total);
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_counts_brute_small() {
        for n in 1..=5 {
            let r = verify_chain_counts(n, true).unwrap();
            assert!(r.passed(), "{r}: {:?}", r.notes);
            assert_eq!(r.counts, Some((CHAIN_TABLE[n - 1], CHAIN_TABLE[n - 1])));
        }
    }

    #[test]
    fn chain_counts_formula_only() {
        let r = verify_chain_counts(7, false).unwrap();
        assert!(r.passed());
        assert_eq!(r.counts, Some((6065, 6065)));
        assert!(verify_chain_counts(15, false).unwrap().passed());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(verify_chain_counts(0, false).is_err());
        assert!(verify_chain_counts(9, true).is_err());
    }
}
