//! The data-constraint language: values, schemas, syntax tree, parser,
//! printer, type checker, concrete interpreter and the brute-force
//! equivalence oracle.

mod ast;
mod eval;
mod interp;
mod lexer;
mod oracle;
mod parser;
mod printer;
mod typecheck;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use indexmap::IndexMap;
use thiserror::Error;

pub use ast::{ArithOp, BoolExpr, BoolExprKind, CmpOp, Constraint, Expr, ExprKind, Span, Stmt, StrPred};
pub use eval::{evaluate, eval_bool_expr, eval_expr};
pub use interp::Interpretation;
pub use oracle::{
    oracle_equivalent, oracle_equivalent_capped, DomainSpec, Interpretations, OracleError, OracleOutcome, DEFAULT_ORACLE_CAP,
};
pub use parser::{parse, ParseError};
pub use printer::{print_constraint, print_source};
pub use typecheck::{typecheck, TypeError, TypedConstraint};

/// Sort of a data or user variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueType {
    Int,
    Float,
    Str,
}

impl ValueType {
    pub fn keyword(self) -> &'static str {
        match self {
            ValueType::Int => "int",
            ValueType::Float => "float",
            ValueType::Str => "str",
        }
    }

    /// Value assigned to variables that nothing else constrains.
    pub fn default_value(self) -> Value {
        match self {
            ValueType::Int => Value::Int(0),
            ValueType::Float => Value::Float(0.0),
            ValueType::Str => Value::Str(String::new()),
        }
    }
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A concrete value: 64-bit two's-complement integer, IEEE-754 binary64
/// float, or string.
///
/// Equality, ordering and hashing are structural: floats compare by bit
/// pattern, so `NaN == NaN` here and `0.0 != -0.0`. Use
/// [`crate::semantics`] for the language-level comparison operators.
#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Float(f64),
    Str(String),
}

impl Value {
    pub fn ty(&self) -> ValueType {
        match self {
            Value::Int(_) => ValueType::Int,
            Value::Float(_) => ValueType::Float,
            Value::Str(_) => ValueType::Str,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_float(&self) -> Option<f64> {
        match self {
            Value::Float(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Str(s) => Some(s),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Int(_) => 0,
            Value::Float(_) => 1,
            Value::Str(_) => 2,
        }
    }

    /// Literal text in `.dc` syntax.
    pub fn to_source(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => format_float(*v),
            Value::Str(s) => format!("'{s}'"),
        }
    }
}

/// Formats a float so that it re-lexes as a float literal and round-trips
/// bit-exactly.
pub(crate) fn format_float(v: f64) -> String {
    let s = format!("{v:?}");
    if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Float(a), Value::Float(b)) => a.to_bits().cmp(&b.to_bits()),
            (Value::Str(a), Value::Str(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Value::Int(v) => v.hash(state),
            Value::Float(v) => v.to_bits().hash(state),
            Value::Str(s) => s.hash(state),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_source())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("data variable `{0}` declared twice")]
    Duplicate(String),
    #[error("data variable `{0}` must have the form <table>.<attr>")]
    BadName(String),
}

/// Declared data variables and their types, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schema {
    entries: IndexMap<String, ValueType>,
}

impl Schema {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, ty: ValueType) -> Result<(), SchemaError> {
        if !is_dotted(name) {
            return Err(SchemaError::BadName(name.to_string()));
        }
        if self.entries.contains_key(name) {
            return Err(SchemaError::Duplicate(name.to_string()));
        }
        self.entries.insert(name.to_string(), ty);
        Ok(())
    }

    pub fn from_pairs<'a>(
        pairs: impl IntoIterator<Item = (&'a str, ValueType)>,
    ) -> Result<Self, SchemaError> {
        let mut schema = Schema::new();
        for (name, ty) in pairs {
            schema.declare(name, ty)?;
        }
        Ok(schema)
    }

    pub fn get(&self, name: &str) -> Option<ValueType> {
        self.entries.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ValueType)> + '_ {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when both schemas declare the same variables with the same
    /// types, regardless of declaration order.
    pub fn same_variables(&self, other: &Schema) -> bool {
        self.len() == other.len() && self.iter().all(|(name, ty)| other.get(name) == Some(ty))
    }

    /// Order-independent key identifying the declared variable set.
    pub fn fingerprint(&self) -> String {
        let mut items: Vec<String> = self.iter().map(|(n, t)| format!("{t} {n}")).collect();
        items.sort();
        items.join(";")
    }
}

pub(crate) fn is_dotted(name: &str) -> bool {
    let mut parts = name.split('.');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => is_ident(a) && is_ident(b),
        _ => false,
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_rejects_duplicates_and_bad_names() {
        let mut s = Schema::new();
        s.declare("t.a", ValueType::Int).unwrap();
        assert_eq!(s.declare("t.a", ValueType::Str), Err(SchemaError::Duplicate("t.a".into())));
        assert_eq!(s.declare("a", ValueType::Int), Err(SchemaError::BadName("a".into())));
        assert_eq!(s.declare("t.a.b", ValueType::Int), Err(SchemaError::BadName("t.a.b".into())));
    }

    #[test]
    fn same_variables_ignores_order() {
        let a = Schema::from_pairs([("t.a", ValueType::Int), ("t.b", ValueType::Str)]).unwrap();
        let b = Schema::from_pairs([("t.b", ValueType::Str), ("t.a", ValueType::Int)]).unwrap();
        let c = Schema::from_pairs([("t.b", ValueType::Int), ("t.a", ValueType::Int)]).unwrap();
        assert!(a.same_variables(&b));
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert!(!a.same_variables(&c));
    }

    #[test]
    fn float_values_compare_by_bits() {
        assert_eq!(Value::Float(f64::NAN), Value::Float(f64::NAN));
        assert_ne!(Value::Float(0.0), Value::Float(-0.0));
        assert_eq!(format_float(1.0), "1.0");
        assert_eq!(format_float(1e300), "1e300");
        assert_eq!(format_float(-0.0), "-0.0");
    }
}
