//! Symbolic representations of data constraints.
//!
//! [`encode`] turns a typed constraint into a quantifier-free formula over
//! its data variables in two stages: symbolic evaluation eliminates user
//! variables and control flow ([`eval`]), then negation normalization
//! pushes negations down until they only sit above string predicates
//! ([`normalize_negations`]).

pub mod eval;
mod nnf;

use std::collections::BTreeSet;
use std::fmt;

use crate::lang::{ArithOp, CmpOp, Interpretation, StrPred, TypedConstraint, Value, ValueType};
use crate::semantics;

pub use eval::{encode_stage1, eval_bool, eval_statement, EnvKey, SymbolicState};
pub use nnf::normalize_negations;

/// A term over data variables and literals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicTerm {
    DataVar { name: String, ty: ValueType },
    Literal(Value),
    Compound(ArithOp, Box<SymbolicTerm>, Box<SymbolicTerm>),
}

impl SymbolicTerm {
    pub fn var(name: &str, ty: ValueType) -> Self {
        SymbolicTerm::DataVar { name: name.to_string(), ty }
    }

    pub fn lit(v: Value) -> Self {
        SymbolicTerm::Literal(v)
    }

    pub fn int(v: i64) -> Self {
        SymbolicTerm::Literal(Value::Int(v))
    }

    pub fn str(s: &str) -> Self {
        SymbolicTerm::Literal(Value::Str(s.to_string()))
    }

    pub fn compound(op: ArithOp, l: SymbolicTerm, r: SymbolicTerm) -> Self {
        SymbolicTerm::Compound(op, Box::new(l), Box::new(r))
    }

    pub fn ty(&self) -> ValueType {
        match self {
            SymbolicTerm::DataVar { ty, .. } => *ty,
            SymbolicTerm::Literal(v) => v.ty(),
            SymbolicTerm::Compound(_, l, _) => l.ty(),
        }
    }

    /// Value under `interp`, or `None` if a variable is unbound.
    pub fn value(&self, interp: &Interpretation) -> Option<Value> {
        match self {
            SymbolicTerm::DataVar { name, .. } => interp.get(name).cloned(),
            SymbolicTerm::Literal(v) => Some(v.clone()),
            SymbolicTerm::Compound(op, l, r) => Some(semantics::arith(*op, &l.value(interp)?, &r.value(interp)?)),
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            SymbolicTerm::DataVar { name, .. } => {
                out.insert(name);
            }
            SymbolicTerm::Literal(_) => {}
            SymbolicTerm::Compound(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            SymbolicTerm::DataVar { name, .. } => name == var,
            SymbolicTerm::Literal(_) => false,
            SymbolicTerm::Compound(_, l, r) => l.mentions(var) || r.mentions(var),
        }
    }

    fn fmt_nested(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if matches!(self, SymbolicTerm::Compound(..)) {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for SymbolicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicTerm::DataVar { name, .. } => f.write_str(name),
            SymbolicTerm::Literal(v) => write!(f, "{v}"),
            SymbolicTerm::Compound(op, l, r) => {
                l.fmt_nested(f)?;
                write!(f, " {} ", op.symbol())?;
                r.fmt_nested(f)
            }
        }
    }
}

/// A quantifier-free formula over data variables.
///
/// Build compound conditions through [`SymbolicCondition::and_all`],
/// [`SymbolicCondition::or_all`] and [`SymbolicCondition::negate`]; they
/// flatten nested connectives of the same kind and remove `True`/`False`
/// children, so `And`/`Or` always have at least two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicCondition {
    True,
    False,
    AtomCmp(CmpOp, SymbolicTerm, SymbolicTerm),
    AtomStr(StrPred, SymbolicTerm, SymbolicTerm),
    Not(Box<SymbolicCondition>),
    And(Vec<SymbolicCondition>),
    Or(Vec<SymbolicCondition>),
}

impl SymbolicCondition {
    pub fn cmp(op: CmpOp, l: SymbolicTerm, r: SymbolicTerm) -> Self {
        SymbolicCondition::AtomCmp(op, l, r)
    }

    pub fn pred(p: StrPred, l: SymbolicTerm, r: SymbolicTerm) -> Self {
        SymbolicCondition::AtomStr(p, l, r)
    }

    pub fn and_all(children: impl IntoIterator<Item = SymbolicCondition>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                SymbolicCondition::True => {}
                SymbolicCondition::False => return SymbolicCondition::False,
                SymbolicCondition::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => SymbolicCondition::True,
            1 => out.pop().unwrap(),
            _ => SymbolicCondition::And(out),
        }
    }

    pub fn or_all(children: impl IntoIterator<Item = SymbolicCondition>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                SymbolicCondition::False => {}
                SymbolicCondition::True => return SymbolicCondition::True,
                SymbolicCondition::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => SymbolicCondition::False,
            1 => out.pop().unwrap(),
            _ => SymbolicCondition::Or(out),
        }
    }

    /// Wraps in `Not` without pushing it inward; constants are folded.
    pub fn negate(self) -> Self {
        match self {
            SymbolicCondition::True => SymbolicCondition::False,
            SymbolicCondition::False => SymbolicCondition::True,
            other => SymbolicCondition::Not(Box::new(other)),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            SymbolicCondition::AtomCmp(..)
                | SymbolicCondition::AtomStr(..)
                | SymbolicCondition::True
                | SymbolicCondition::False
        )
    }

    /// Atoms, and `Not` directly above a string atom, count as literals of
    /// the formula.
    pub fn is_literal(&self) -> bool {
        match self {
            SymbolicCondition::Not(inner) => matches!(**inner, SymbolicCondition::AtomStr(..)),
            other => other.is_atomic(),
        }
    }

    pub fn children(&self) -> &[SymbolicCondition] {
        match self {
            SymbolicCondition::And(c) | SymbolicCondition::Or(c) => c,
            SymbolicCondition::Not(inner) => std::slice::from_ref(inner),
            _ => &[],
        }
    }

    /// Truth value under `interp`, or `None` if a variable is unbound.
    pub fn eval(&self, interp: &Interpretation) -> Option<bool> {
        Some(match self {
            SymbolicCondition::True => true,
            SymbolicCondition::False => false,
            SymbolicCondition::AtomCmp(op, l, r) => semantics::compare(*op, &l.value(interp)?, &r.value(interp)?),
            SymbolicCondition::AtomStr(p, l, r) => semantics::pred(*p, &l.value(interp)?, &r.value(interp)?),
            SymbolicCondition::Not(inner) => !inner.eval(interp)?,
            SymbolicCondition::And(cs) => {
                for c in cs {
                    if !c.eval(interp)? {
                        return Some(false);
                    }
                }
                true
            }
            SymbolicCondition::Or(cs) => {
                for c in cs {
                    if c.eval(interp)? {
                        return Some(true);
                    }
                }
                false
            }
        })
    }

    /// `I ⊨ φ` for a total interpretation.
    ///
    /// # Panics
    ///
    /// If `interp` leaves a variable of the formula unbound.
    pub fn sat(&self, interp: &Interpretation) -> bool {
        self.eval(interp).expect("sat() requires an interpretation binding every variable")
    }

    /// Condition size: atoms count one, `Not` adds one, connectives sum
    /// their children.
    pub fn size(&self) -> usize {
        match self {
            SymbolicCondition::Not(inner) => 1 + inner.size(),
            SymbolicCondition::And(cs) | SymbolicCondition::Or(cs) => cs.iter().map(Self::size).sum(),
            _ => 1,
        }
    }

    /// Parse-tree height; literals (see [`Self::is_literal`]) have height 1.
    pub fn height(&self) -> usize {
        if self.is_literal() {
            return 1;
        }
        1 + self.children().iter().map(Self::height).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            SymbolicCondition::AtomCmp(_, l, r) | SymbolicCondition::AtomStr(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            other => other.children().iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// True when every `Not` sits directly above a string atom.
    pub fn negations_only_on_string_atoms(&self) -> bool {
        match self {
            SymbolicCondition::Not(inner) => matches!(**inner, SymbolicCondition::AtomStr(..)),
            other => other.children().iter().all(Self::negations_only_on_string_atoms),
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if matches!(self, SymbolicCondition::And(_) | SymbolicCondition::Or(_)) {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for SymbolicCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicCondition::True => f.write_str("true"),
            SymbolicCondition::False => f.write_str("false"),
            SymbolicCondition::AtomCmp(op, l, r) => write!(f, "{l} {} {r}", op.math_symbol()),
            SymbolicCondition::AtomStr(p, l, r) => write!(f, "{}({l}, {r})", p.name()),
            SymbolicCondition::Not(inner) => {
                f.write_str("¬")?;
                if matches!(**inner, SymbolicCondition::AtomStr(..) | SymbolicCondition::Not(_) | SymbolicCondition::True | SymbolicCondition::False) {
                    write!(f, "{inner}")
                } else {
                    write!(f, "({inner})")
                }
            }
            SymbolicCondition::And(cs) | SymbolicCondition::Or(cs) => {
                let sep = if matches!(self, SymbolicCondition::And(_)) { " ∧ " } else { " ∨ " };
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    c.fmt_child(f)?;
                }
                Ok(())
            }
        }
    }
}

/// Symbolic representation of a constraint: symbolic evaluation followed by
/// negation normalization.
pub fn encode(c: &TypedConstraint) -> SymbolicCondition {
    normalize_negations(&encode_stage1(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(name: &str) -> SymbolicCondition {
        SymbolicCondition::cmp(CmpOp::Gt, SymbolicTerm::var(name, ValueType::Int), SymbolicTerm::int(0))
    }

    #[test]
    fn connectives_flatten_and_fold_constants() {
        let c = SymbolicCondition::and_all([a("t.a"), SymbolicCondition::True, SymbolicCondition::and_all([a("t.b"), a("t.c")])]);
        assert_eq!(c, SymbolicCondition::And(vec![a("t.a"), a("t.b"), a("t.c")]));
        assert_eq!(SymbolicCondition::and_all([a("t.a"), SymbolicCondition::True]), a("t.a"));
        assert_eq!(SymbolicCondition::or_all([a("t.a"), SymbolicCondition::True]), SymbolicCondition::True);
        assert_eq!(SymbolicCondition::and_all([a("t.a"), SymbolicCondition::False]), SymbolicCondition::False);
        assert_eq!(SymbolicCondition::or_all(Vec::new()), SymbolicCondition::False);
    }

    #[test]
    fn display_uses_math_notation() {
        let ty = SymbolicTerm::var("t.ty", ValueType::Str);
        let phi_c = SymbolicCondition::pred(StrPred::Contains, ty, SymbolicTerm::str("IN"));
        let f = SymbolicCondition::and_all([
            SymbolicCondition::or_all([a("t.in"), phi_c.clone().negate()]),
            SymbolicCondition::cmp(
                CmpOp::Ne,
                SymbolicTerm::compound(
                    ArithOp::Mul,
                    SymbolicTerm::compound(ArithOp::Add, SymbolicTerm::var("t.a", ValueType::Int), SymbolicTerm::int(1)),
                    SymbolicTerm::int(2),
                ),
                SymbolicTerm::int(0),
            ),
        ]);
        assert_eq!(f.to_string(), "(t.in > 0 ∨ ¬contains(t.ty, 'IN')) ∧ (t.a + 1) * 2 ≠ 0");
    }

    #[test]
    fn height_and_size() {
        let ty = SymbolicTerm::var("t.ty", ValueType::Str);
        let phi_c = SymbolicCondition::pred(StrPred::Contains, ty, SymbolicTerm::str("IN"));
        let f = SymbolicCondition::or_all([
            SymbolicCondition::and_all([a("t.in"), phi_c.clone()]),
            SymbolicCondition::and_all([a("t.out"), phi_c.negate()]),
        ]);
        assert_eq!(f.height(), 3);
        assert_eq!(f.size(), 5);
    }
}
