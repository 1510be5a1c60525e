//! Equivalence checking for data constraints.
//!
//! A data constraint is a small loop-free program of assignments, assertions
//! and conditionals over table attributes. This crate parses such programs,
//! encodes each one as a first-order formula over the attributes, and decides
//! whether two constraints accept exactly the same records. The decision runs
//! three stages in order:
//!
//! 1. [`divergence`] tries to build a record that one constraint accepts and
//!    the other rejects (refutes equivalence cheaply).
//! 2. [`isomorphism`] canonicalizes both formulas and compares their codes
//!    (proves equivalence cheaply).
//! 3. [`smt`] hands the remaining pairs to an external SMT-LIB2 solver.
//!
//! [`repo`] builds repository tooling (clustering, searching, corpus
//! generation) on top of [`decide`].

pub mod decide;
pub mod divergence;
pub mod isomorphism;
pub mod lang;
pub mod repo;
pub mod semantics;
pub mod smt;
pub mod symbolic;

pub use decide::{decide, decide_reps, DecideError, Outcome, Stage, StageConfig, Verdict};
pub use lang::{
    evaluate, oracle_equivalent, parse, typecheck, Constraint, DomainSpec, Interpretation, Schema,
    TypedConstraint, Value, ValueType,
};
pub use symbolic::{encode, SymbolicCondition, SymbolicTerm};
