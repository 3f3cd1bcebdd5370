//! Fixtures shared by the benchmarks.

use latdiff_core::{Lattice, Operator};

pub fn chain(n: usize) -> Lattice {
    Lattice::chain(n).expect("chain")
}

pub fn quasi(atoms: usize) -> Lattice {
    Lattice::quasi_antichain(atoms).expect("quasi-antichain")
}

/// A mix of members and non-members of the right size for `l`.
pub fn probe_operators(l: &Lattice) -> Vec<Operator> {
    let n = l.size();
    let mut out = vec![Operator::identity(n)];
    for v in l.elements() {
        out.push(Operator::constant(n, v).expect("in range"));
    }
    out.push(Operator::new((0..n).rev().collect()).expect("in range"));
    out
}
