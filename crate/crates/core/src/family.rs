//! Named operator families.
//!
//! Each constructor transcribes a case definition literally; side conditions
//! are checked up front and reported by name.

use std::fmt;

use thiserror::Error;

use crate::lattice::{Element, Lattice};
use crate::operator::Operator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family} requires {required}")]
    ShapeMismatch {
        family: &'static str,
        required: &'static str,
    },
    #[error("{family}: side condition violated: {condition}")]
    SideCondition {
        family: &'static str,
        condition: &'static str,
    },
    #[error("{family}: parameter {element} out of range for a lattice of size {size}")]
    OutOfRange {
        family: &'static str,
        element: usize,
        size: usize,
    },
}

/// A named operator family together with its element parameters.
///
/// On a quasi-antichain "atom" means an element other than the bounds. On
/// `M_2` the two atoms `a < b` are taken in index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorFamily {
    /// `C_(a)(x) = a`.
    Constant { value: Element },
    /// `τ^(a)`: the top goes to `a`, everything else to the top.
    Tau { value: Element },
    /// `ψ_(a)(x) = x ∨ a`.
    Psi { value: Element },
    /// `λ_a`: `a` and the top go to `0`, everything else to `a`.
    Lambda { atom: Element },
    /// `η_{u→v}`: top to `b`, `u` to `v`, everything else to the top.
    Eta { b: Element, u: Element, v: Element },
    /// `β_b`: `u` and the top go to `b`, everything else to the top.
    Beta { b: Element, u: Element },
    /// `γ^{u↔v}`: top to `b`, `u` and `v` swapped, everything else to the top.
    Gamma { b: Element, u: Element, v: Element },
    /// `θ_{u→v}`: top to `0`, `u` to `v`, everything else to the top.
    Theta { u: Element, v: Element },
    /// `α^{u↔v}`: top to `0`, `u` and `v` swapped, everything else to the top.
    Alpha { u: Element, v: Element },
    /// `Φ_a` on `M_2`: `(0, a, b, 1) ↦ (a, 0, 1, b)`.
    PhiA,
    /// `Φ_b` on `M_2`: `(0, a, b, 1) ↦ (b, 1, 0, a)`.
    PhiB,
    /// `Θ` on `M_2`: `(0, a, b, 1) ↦ (a, 0, a, b)`; not a difference operator.
    ThetaM2Counterexample,
}

impl OperatorFamily {
    pub fn kind(&self) -> &'static str {
        match self {
            OperatorFamily::Constant { .. } => "constant",
            OperatorFamily::Tau { .. } => "tau",
            OperatorFamily::Psi { .. } => "psi",
            OperatorFamily::Lambda { .. } => "lambda",
            OperatorFamily::Eta { .. } => "eta",
            OperatorFamily::Beta { .. } => "beta",
            OperatorFamily::Gamma { .. } => "gamma",
            OperatorFamily::Theta { .. } => "theta",
            OperatorFamily::Alpha { .. } => "alpha",
            OperatorFamily::PhiA => "phi_a",
            OperatorFamily::PhiB => "phi_b",
            OperatorFamily::ThetaM2Counterexample => "theta_m2_counterexample",
        }
    }

    fn params(&self) -> Vec<Element> {
        match *self {
            OperatorFamily::Constant { value }
            | OperatorFamily::Tau { value }
            | OperatorFamily::Psi { value } => vec![value],
            OperatorFamily::Lambda { atom } => vec![atom],
            OperatorFamily::Eta { b, u, v } | OperatorFamily::Gamma { b, u, v } => vec![b, u, v],
            OperatorFamily::Beta { b, u } => vec![b, u],
            OperatorFamily::Theta { u, v } | OperatorFamily::Alpha { u, v } => vec![u, v],
            OperatorFamily::PhiA | OperatorFamily::PhiB | OperatorFamily::ThetaM2Counterexample => {
                vec![]
            }
        }
    }
}

impl fmt::Display for OperatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            return f.write_str(self.kind());
        }
        let joined: Vec<String> = params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.kind(), joined.join(","))
    }
}

fn side(family: &'static str, ok: bool, condition: &'static str) -> Result<(), FamilyError> {
    if ok {
        Ok(())
    } else {
        Err(FamilyError::SideCondition { family, condition })
    }
}

fn require_quasi(l: &Lattice, family: &'static str) -> Result<(), FamilyError> {
    if l.is_quasi_antichain() {
        Ok(())
    } else {
        Err(FamilyError::ShapeMismatch {
            family,
            required: "a quasi-antichain with at least four elements",
        })
    }
}

fn require_m2(l: &Lattice, family: &'static str) -> Result<(Element, Element), FamilyError> {
    if l.size() == 4 && l.is_quasi_antichain() {
        let atoms = l.atoms();
        Ok((atoms[0], atoms[1]))
    } else {
        Err(FamilyError::ShapeMismatch {
            family,
            required: "the four-element quasi-antichain M_2",
        })
    }
}

/// Materialises a named family on `l`.
pub fn make_named(l: &Lattice, fam: OperatorFamily) -> Result<Operator, FamilyError> {
    let family = fam.kind();
    for p in fam.params() {
        if p >= l.size() {
            return Err(FamilyError::OutOfRange {
                family,
                element: p,
                size: l.size(),
            });
        }
    }
    let (bot, top) = (l.bottom(), l.top());
    let is_atom = |x: Element| x != bot && x != top;
    let build = |f: &dyn Fn(Element) -> Element| {
        Operator::from_image_unchecked(l.elements().map(f).collect())
    };

    let op = match fam {
        OperatorFamily::Constant { value } => build(&|_| value),
        OperatorFamily::Tau { value } => {
            side(
                family,
                l.size() >= 2,
                "the lattice has at least two elements",
            )?;
            build(&|x| if x == top { value } else { top })
        }
        OperatorFamily::Psi { value } => build(&|x| l.join(x, value)),
        OperatorFamily::Lambda { atom } => {
            require_quasi(l, family)?;
            side(family, is_atom(atom), "a ∈ M∖{0,1}")?;
            build(&|x| if x == atom || x == top { bot } else { atom })
        }
        OperatorFamily::Eta { b, u, v } => {
            require_quasi(l, family)?;
            side(family, is_atom(b), "b ∈ M∖{0,1}")?;
            side(family, is_atom(u) && u != b, "u ∈ M∖{0,b,1}")?;
            side(family, is_atom(v) && v != u, "v ∈ M∖{0,u,1}")?;
            build(&|x| {
                if x == top {
                    b
                } else if x == u {
                    v
                } else {
                    top
                }
            })
        }
        OperatorFamily::Beta { b, u } => {
            require_quasi(l, family)?;
            side(family, is_atom(b), "b ∈ M∖{0,1}")?;
            side(family, is_atom(u) && u != b, "u ∈ M∖{0,b,1}")?;
            build(&|x| if x == u || x == top { b } else { top })
        }
        OperatorFamily::Gamma { b, u, v } => {
            require_quasi(l, family)?;
            side(family, l.size() >= 5, "|M| >= 5")?;
            side(
                family,
                is_atom(b) && is_atom(u) && is_atom(v) && b != u && b != v && u != v,
                "b, u, v mutually distinct in M∖{0,1}",
            )?;
            build(&|x| {
                if x == top {
                    b
                } else if x == u {
                    v
                } else if x == v {
                    u
                } else {
                    top
                }
            })
        }
        OperatorFamily::Theta { u, v } => {
            require_quasi(l, family)?;
            side(
                family,
                is_atom(u) && is_atom(v) && u != v,
                "u, v ∈ M∖{0,1} with u ≠ v",
            )?;
            build(&|x| {
                if x == top {
                    bot
                } else if x == u {
                    v
                } else {
                    top
                }
            })
        }
        OperatorFamily::Alpha { u, v } => {
            require_quasi(l, family)?;
            side(
                family,
                is_atom(u) && is_atom(v) && u != v,
                "u, v ∈ M∖{0,1} with u ≠ v",
            )?;
            build(&|x| {
                if x == top {
                    bot
                } else if x == u {
                    v
                } else if x == v {
                    u
                } else {
                    top
                }
            })
        }
        OperatorFamily::PhiA => {
            let (a, b) = require_m2(l, family)?;
            m2_matrix(l, a, b, [a, bot, top, b])
        }
        OperatorFamily::PhiB => {
            let (a, b) = require_m2(l, family)?;
            m2_matrix(l, a, b, [b, top, bot, a])
        }
        OperatorFamily::ThetaM2Counterexample => {
            let (a, b) = require_m2(l, family)?;
            m2_matrix(l, a, b, [a, bot, a, b])
        }
    };
    Ok(op)
}

/// An operator on `M_2` given by its values on `(0, a, b, 1)`.
fn m2_matrix(l: &Lattice, a: Element, b: Element, values: [Element; 4]) -> Operator {
    let mut image = vec![0; 4];
    for (x, v) in [l.bottom(), a, b, l.top()].into_iter().zip(values) {
        image[x] = v;
    }
    Operator::from_image_unchecked(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{check_weight, Weight};

    #[test]
    fn eta_on_m3() {
        let m3 = Lattice::quasi_antichain(3).unwrap();
        let eta = make_named(&m3, OperatorFamily::Eta { b: 1, u: 2, v: 3 }).unwrap();
        assert_eq!(eta.image(), &[4, 4, 3, 4, 1]);
    }

    #[test]
    fn m2_matrices() {
        let m2 = Lattice::quasi_antichain(2).unwrap();
        assert_eq!(
            make_named(&m2, OperatorFamily::PhiA).unwrap().image(),
            &[1, 0, 3, 2]
        );
        assert_eq!(
            make_named(&m2, OperatorFamily::PhiB).unwrap().image(),
            &[2, 3, 0, 1]
        );
        let theta = make_named(&m2, OperatorFamily::ThetaM2Counterexample).unwrap();
        assert_eq!(theta.image(), &[1, 0, 1, 2]);
        assert!(!check_weight(&m2, &theta, Weight::One).unwrap());

        let m3 = Lattice::quasi_antichain(3).unwrap();
        assert!(matches!(
            make_named(&m3, OperatorFamily::PhiA),
            Err(FamilyError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn constant_on_chain() {
        let l4 = Lattice::chain(4).unwrap();
        let c = make_named(&l4, OperatorFamily::Constant { value: 2 }).unwrap();
        assert_eq!(c.image(), &[2, 2, 2, 2]);
    }

    #[test]
    fn side_conditions_are_named() {
        let m3 = Lattice::quasi_antichain(3).unwrap();
        match make_named(&m3, OperatorFamily::Eta { b: 1, u: 1, v: 2 }) {
            Err(FamilyError::SideCondition { condition, .. }) => {
                assert_eq!(condition, "u ∈ M∖{0,b,1}")
            }
            other => panic!("{other:?}"),
        }
        let m2 = Lattice::quasi_antichain(2).unwrap();
        assert!(matches!(
            make_named(&m2, OperatorFamily::Gamma { b: 1, u: 2, v: 1 }),
            Err(FamilyError::SideCondition {
                condition: "|M| >= 5",
                ..
            })
        ));
        let l4 = Lattice::chain(4).unwrap();
        assert!(matches!(
            make_named(&l4, OperatorFamily::Lambda { atom: 1 }),
            Err(FamilyError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            make_named(&l4, OperatorFamily::Constant { value: 9 }),
            Err(FamilyError::OutOfRange { .. })
        ));
        let l1 = Lattice::chain(1).unwrap();
        assert!(make_named(&l1, OperatorFamily::Tau { value: 0 }).is_err());
    }

    #[test]
    fn quasi_families_are_difference_operators() {
        for m in 2..=5 {
            let l = Lattice::quasi_antichain(m).unwrap();
            let atoms = l.atoms();
            let mut fams = vec![];
            for &a in &atoms {
                fams.push(OperatorFamily::Lambda { atom: a });
                for &u in &atoms {
                    if u == a {
                        continue;
                    }
                    fams.push(OperatorFamily::Beta { b: a, u });
                    fams.push(OperatorFamily::Theta { u: a, v: u });
                    fams.push(OperatorFamily::Alpha { u: a, v: u });
                    for &v in &atoms {
                        if v != u {
                            fams.push(OperatorFamily::Eta { b: a, u, v });
                        }
                        if v != u && v != a && m >= 3 {
                            fams.push(OperatorFamily::Gamma { b: a, u, v });
                        }
                    }
                }
            }
            for fam in fams {
                let d = make_named(&l, fam).unwrap();
                assert!(check_weight(&l, &d, Weight::One).unwrap(), "{fam} on M_{m}");
            }
        }
    }

    #[test]
    fn display_names() {
        assert_eq!(
            OperatorFamily::Theta { u: 1, v: 2 }.to_string(),
            "theta(1,2)"
        );
        assert_eq!(OperatorFamily::PhiA.to_string(), "phi_a");
    }
}
