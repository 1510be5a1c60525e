//! Isomorphism analysis: proves equivalence by comparing canonical forms.
//!
//! A representation becomes a tree whose nodes are either commutative
//! ([`CanonicalTree::Tree`], children unordered) or ordered
//! ([`CanonicalTree::Leaf`]). The canonical code is an AHU-style encoding
//! that sorts the children of commutative nodes only, so two formulas get the
//! same code exactly when one can be obtained from the other by reordering
//! commutative operands.

use std::fmt;

use crate::lang::{ArithOp, CmpOp, StrPred, Value, ValueType};
use crate::symbolic::{SymbolicCondition, SymbolicTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalTree {
    Tree { label: String, children: Vec<CanonicalTree> },
    Leaf { label: String, children: Vec<CanonicalTree> },
    Atom(String),
}

impl CanonicalTree {
    fn tree(label: &str, children: Vec<CanonicalTree>) -> Self {
        CanonicalTree::Tree { label: label.to_string(), children }
    }

    fn leaf(label: &str, children: Vec<CanonicalTree>) -> Self {
        CanonicalTree::Leaf { label: label.to_string(), children }
    }

    pub fn label(&self) -> &str {
        match self {
            CanonicalTree::Tree { label, .. } | CanonicalTree::Leaf { label, .. } => label,
            CanonicalTree::Atom(label) => label,
        }
    }

    pub fn children(&self) -> &[CanonicalTree] {
        match self {
            CanonicalTree::Tree { children, .. } | CanonicalTree::Leaf { children, .. } => children,
            CanonicalTree::Atom(_) => &[],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(Self::node_count).sum::<usize>()
    }

    /// S-expression dump; commutative nodes use braces and list their
    /// children in canonical order.
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        self.write_sexpr(&mut out);
        out
    }

    fn write_sexpr(&self, out: &mut String) {
        match self {
            CanonicalTree::Atom(label) => out.push_str(label),
            CanonicalTree::Leaf { label, children } => {
                out.push('(');
                out.push_str(label);
                for c in children {
                    out.push(' ');
                    c.write_sexpr(out);
                }
                out.push(')');
            }
            CanonicalTree::Tree { label, children } => {
                let mut sorted: Vec<(CanonicalCode, &CanonicalTree)> =
                    children.iter().map(|c| (canonical_code(c), c)).collect();
                sorted.sort_by(|a, b| a.0.cmp(&b.0));
                out.push('{');
                out.push_str(label);
                for (_, c) in sorted {
                    out.push(' ');
                    c.write_sexpr(out);
                }
                out.push('}');
            }
        }
    }
}

impl fmt::Display for CanonicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

/// Injective encoding of a canonical tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    /// Code of a representation.
    pub fn of(phi: &SymbolicCondition) -> Self {
        canonical_code(&build_tree(phi))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Canonical tree of a representation.
///
/// `<` and `≤` are rewritten to `>` and `≥` with swapped operands, so
/// `a < b` and `b > a` share a tree. Integer sums and products are
/// flattened across nested applications of the same operator.
pub fn build_tree(phi: &SymbolicCondition) -> CanonicalTree {
    match phi {
        SymbolicCondition::True => CanonicalTree::Atom("true".into()),
        SymbolicCondition::False => CanonicalTree::Atom("false".into()),
        SymbolicCondition::And(cs) => CanonicalTree::tree("∧", cs.iter().map(build_tree).collect()),
        SymbolicCondition::Or(cs) => CanonicalTree::tree("∨", cs.iter().map(build_tree).collect()),
        SymbolicCondition::Not(inner) => CanonicalTree::leaf("¬", vec![build_tree(inner)]),
        SymbolicCondition::AtomCmp(op, l, r) => {
            let (l, r) = (term_tree(l), term_tree(r));
            match op {
                CmpOp::Eq | CmpOp::Ne => CanonicalTree::tree(op.math_symbol(), vec![l, r]),
                CmpOp::Gt | CmpOp::Ge => CanonicalTree::leaf(op.math_symbol(), vec![l, r]),
                CmpOp::Lt | CmpOp::Le => CanonicalTree::leaf(op.swap().math_symbol(), vec![r, l]),
            }
        }
        SymbolicCondition::AtomStr(p, l, r) => {
            let children = vec![term_tree(l), term_tree(r)];
            match p {
                StrPred::Equals => CanonicalTree::tree(p.name(), children),
                _ => CanonicalTree::leaf(p.name(), children),
            }
        }
    }
}

fn term_tree(t: &SymbolicTerm) -> CanonicalTree {
    match t {
        SymbolicTerm::DataVar { name, .. } => CanonicalTree::Atom(format!("var:{name}")),
        SymbolicTerm::Literal(v) => CanonicalTree::Atom(literal_label(v)),
        SymbolicTerm::Compound(op, l, r) => match op {
            ArithOp::Add | ArithOp::Mul if t.ty() == ValueType::Int => {
                let mut operands = Vec::new();
                flatten(*op, t, &mut operands);
                CanonicalTree::tree(op.symbol(), operands.into_iter().map(term_tree).collect())
            }
            // Float addition and multiplication commute but do not associate.
            ArithOp::Add | ArithOp::Mul => CanonicalTree::tree(op.symbol(), vec![term_tree(l), term_tree(r)]),
            ArithOp::Sub => CanonicalTree::leaf("−", vec![term_tree(l), term_tree(r)]),
            ArithOp::Div => CanonicalTree::leaf("÷", vec![term_tree(l), term_tree(r)]),
        },
    }
}

fn flatten<'a>(op: ArithOp, t: &'a SymbolicTerm, out: &mut Vec<&'a SymbolicTerm>) {
    match t {
        SymbolicTerm::Compound(o, l, r) if *o == op => {
            flatten(op, l, out);
            flatten(op, r, out);
        }
        other => out.push(other),
    }
}

fn literal_label(v: &Value) -> String {
    match v {
        Value::Int(i) => format!("int:{i}"),
        Value::Float(f) => format!("float:{:016x}", f.to_bits()),
        Value::Str(s) => format!("str:{s}"),
    }
}

/// Bottom-up encoding: `(` kind length `:` label children `)`, where the
/// children of commutative nodes are sorted.
pub fn canonical_code(t: &CanonicalTree) -> CanonicalCode {
    let mut out = Vec::new();
    encode_into(t, &mut out);
    CanonicalCode(out)
}

fn encode_into(t: &CanonicalTree, out: &mut Vec<u8>) {
    let (kind, label) = match t {
        CanonicalTree::Tree { label, .. } => (b'T', label),
        CanonicalTree::Leaf { label, .. } => (b'L', label),
        CanonicalTree::Atom(label) => (b'A', label),
    };
    out.push(b'(');
    out.push(kind);
    out.extend_from_slice(label.len().to_string().as_bytes());
    out.push(b':');
    out.extend_from_slice(label.as_bytes());
    match t {
        CanonicalTree::Tree { children, .. } => {
            let mut codes: Vec<Vec<u8>> = children.iter().map(|c| canonical_code(c).0).collect();
            codes.sort_unstable();
            for c in codes {
                out.extend_from_slice(&c);
            }
        }
        CanonicalTree::Leaf { children, .. } => {
            for c in children {
                encode_into(c, out);
            }
        }
        CanonicalTree::Atom(_) => {}
    }
    out.push(b')');
}

/// True when the canonical codes coincide, which implies equivalence.
pub fn isomorphic(phi1: &SymbolicCondition, phi2: &SymbolicCondition) -> bool {
    CanonicalCode::of(phi1) == CanonicalCode::of(phi2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: &str) -> SymbolicTerm {
        SymbolicTerm::var(n, ValueType::Int)
    }

    fn cmp(op: CmpOp, l: SymbolicTerm, r: SymbolicTerm) -> SymbolicCondition {
        SymbolicCondition::cmp(op, l, r)
    }

    #[test]
    fn less_than_becomes_swapped_greater_than() {
        let t = build_tree(&cmp(CmpOp::Lt, var("t.a"), var("t.b")));
        assert_eq!(t.to_sexpr(), "(> var:t.b var:t.a)");
        assert!(isomorphic(&cmp(CmpOp::Lt, var("t.a"), var("t.b")), &cmp(CmpOp::Gt, var("t.b"), var("t.a"))));
        assert!(isomorphic(&cmp(CmpOp::Le, var("t.a"), var("t.b")), &cmp(CmpOp::Ge, var("t.b"), var("t.a"))));
        assert!(!isomorphic(&cmp(CmpOp::Gt, var("t.a"), var("t.b")), &cmp(CmpOp::Gt, var("t.b"), var("t.a"))));
    }

    #[test]
    fn sums_flatten() {
        let sum = SymbolicTerm::compound(
            ArithOp::Add,
            SymbolicTerm::compound(ArithOp::Add, var("t.x"), var("t.y")),
            var("t.z"),
        );
        let t = term_tree(&sum);
        assert_eq!(t, CanonicalTree::tree("+", vec![
            CanonicalTree::Atom("var:t.x".into()),
            CanonicalTree::Atom("var:t.y".into()),
            CanonicalTree::Atom("var:t.z".into()),
        ]));
        let other = SymbolicTerm::compound(
            ArithOp::Add,
            var("t.z"),
            SymbolicTerm::compound(ArithOp::Add, var("t.y"), var("t.x")),
        );
        assert_eq!(canonical_code(&t), canonical_code(&term_tree(&other)));
    }

    #[test]
    fn subtraction_is_ordered() {
        let a = SymbolicTerm::compound(ArithOp::Sub, var("t.x"), var("t.y"));
        let b = SymbolicTerm::compound(ArithOp::Sub, var("t.y"), var("t.x"));
        assert_ne!(canonical_code(&term_tree(&a)), canonical_code(&term_tree(&b)));
    }

    #[test]
    fn conjunction_order_is_irrelevant() {
        let a = cmp(CmpOp::Gt, var("t.a"), SymbolicTerm::int(0));
        let b = cmp(CmpOp::Ne, var("t.b"), SymbolicTerm::int(1));
        let ab = SymbolicCondition::and_all([a.clone(), b.clone()]);
        let ba = SymbolicCondition::and_all([b, a]);
        assert!(isomorphic(&ab, &ba));
        assert!(!isomorphic(&ab, &SymbolicCondition::or_all([ab.children()[0].clone(), ab.children()[1].clone()])));
    }

    #[test]
    fn literal_types_are_distinguished() {
        let i = term_tree(&SymbolicTerm::int(1));
        let f = term_tree(&SymbolicTerm::lit(Value::Float(1.0)));
        let s = term_tree(&SymbolicTerm::str("1"));
        assert_ne!(i, f);
        assert_ne!(i, s);
    }

    #[test]
    fn codes_are_injective_on_labels() {
        let a = CanonicalTree::tree("∧", vec![CanonicalTree::Atom("ab".into()), CanonicalTree::Atom("c".into())]);
        let b = CanonicalTree::tree("∧", vec![CanonicalTree::Atom("a".into()), CanonicalTree::Atom("bc".into())]);
        assert_ne!(canonical_code(&a), canonical_code(&b));
    }
}
