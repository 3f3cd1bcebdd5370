//! Difference operators, derivations and weight −1 operators on finite lattices.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: bounded finite lattices as meet/join tables, plus the
//!   standard families (chains, quasi-antichains, `N_5`, Boolean cubes).
//! - [`operator`]: self-maps, the three weight identities and the structural
//!   predicates; the derived constructions `d^u`, `D` and `𝔇`.
//! - [`family`]: named operator families.
//! - [`enumerate`]: pruned exhaustive search with constraints.
//! - [`formulas`]: closed-form counts in checked 128-bit arithmetic.
//! - [`harness`]: machine checks of the classification and counting results.
//! - [`io`]: plain-text lattice and operator files.

pub mod enumerate;
pub mod family;
pub mod formulas;
pub mod harness;
pub mod io;
pub mod lattice;
pub mod operator;

pub use enumerate::{
    collect_ops, collect_ops_with, count_ops, enumerate_ops, Budget, CountQuery, CountReport,
    EnumerateError, EnumerationOptions, Method, Partitioning, Strategy,
};
pub use family::{make_named, FamilyError, OperatorFamily};
pub use formulas::{Count, FormulaError};
pub use harness::{Status, VerificationReport};
pub use lattice::{Element, Lattice, LatticeError, PosetSpec, Shape};
pub use operator::{
    chain_floor, chain_saturate, check_property, check_weight, modify_at_top, Operator,
    OperatorError, Property, Weight,
};
