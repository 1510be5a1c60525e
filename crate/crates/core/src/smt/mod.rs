//! SMT stage: encodes `¬(φ1 ↔ φ2)` in SMT-LIB2 over bit-vectors,
//! floating point and strings, and runs an external solver on it.
//!
//! Integers are `(_ BitVec 64)` with signed comparisons, floats are
//! `(_ FloatingPoint 11 53)` with round-to-nearest-even, strings use the
//! string theory. The encoding agrees bit for bit with
//! [`crate::semantics`].

mod emit;
pub mod sexpr;
mod solver;

use thiserror::Error;

use crate::lang::{Interpretation, ValueType};

pub use emit::{emit, literal, sort_name};
pub use solver::{parse_response, parse_value, solve, SolverConfig, DEFAULT_SOLVER, DEFAULT_TIMEOUT_MS, SOLVER_ENV};

/// Width of the integer sort.
pub const INT_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmtScript {
    pub text: String,
    /// Data variable, SMT symbol and type, in schema order.
    pub var_map: Vec<(String, String, ValueType)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverResult {
    Unsat,
    /// The model binds every declared variable.
    Sat(Interpretation),
    Unknown(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("solver unavailable: {0}")]
    Unavailable(String),
    #[error("solver protocol error: {0}")]
    Protocol(String),
}
