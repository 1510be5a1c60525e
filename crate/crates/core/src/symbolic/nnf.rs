use super::SymbolicCondition;

/// Pushes negations inward (De Morgan), replaces a negated comparison by the
/// complementary comparison, and drops double negations. Negations survive
/// only directly above string predicates.
pub fn normalize_negations(phi: &SymbolicCondition) -> SymbolicCondition {
    push(phi, false)
}

fn push(phi: &SymbolicCondition, negated: bool) -> SymbolicCondition {
    match phi {
        SymbolicCondition::True | SymbolicCondition::False => {
            let value = matches!(phi, SymbolicCondition::True) != negated;
            if value {
                SymbolicCondition::True
            } else {
                SymbolicCondition::False
            }
        }
        SymbolicCondition::AtomCmp(op, l, r) => {
            let op = if negated { op.negate() } else { *op };
            SymbolicCondition::AtomCmp(op, l.clone(), r.clone())
        }
        SymbolicCondition::AtomStr(..) => {
            if negated {
                SymbolicCondition::Not(Box::new(phi.clone()))
            } else {
                phi.clone()
            }
        }
        SymbolicCondition::Not(inner) => push(inner, !negated),
        SymbolicCondition::And(cs) => {
            let children = cs.iter().map(|c| push(c, negated));
            if negated {
                SymbolicCondition::or_all(children)
            } else {
                SymbolicCondition::and_all(children)
            }
        }
        SymbolicCondition::Or(cs) => {
            let children = cs.iter().map(|c| push(c, negated));
            if negated {
                SymbolicCondition::and_all(children)
            } else {
                SymbolicCondition::or_all(children)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{CmpOp, StrPred, ValueType};
    use crate::symbolic::SymbolicTerm;

    fn var(n: &str) -> SymbolicTerm {
        SymbolicTerm::var(n, ValueType::Int)
    }

    fn contains_in() -> SymbolicCondition {
        SymbolicCondition::pred(StrPred::Contains, SymbolicTerm::var("t.ty", ValueType::Str), SymbolicTerm::str("IN"))
    }

    #[test]
    fn negated_comparison_flips_operator() {
        let phi = SymbolicCondition::cmp(CmpOp::Ge, var("t.a"), var("t.b")).negate();
        assert_eq!(normalize_negations(&phi), SymbolicCondition::cmp(CmpOp::Lt, var("t.a"), var("t.b")));
    }

    #[test]
    fn double_negation_removed() {
        let phi = contains_in().negate().negate();
        assert_eq!(normalize_negations(&phi), contains_in());
    }

    #[test]
    fn de_morgan_over_string_literal() {
        // ¬(φ₂ ∧ φ₄) with φ₄ = ¬contains(..)
        let phi2 = SymbolicCondition::cmp(CmpOp::Eq, var("t.x"), var("t.old"));
        let phi = SymbolicCondition::and_all([phi2, contains_in().negate()]).negate();
        let expected = SymbolicCondition::or_all([
            SymbolicCondition::cmp(CmpOp::Ne, var("t.x"), var("t.old")),
            contains_in(),
        ]);
        assert_eq!(normalize_negations(&phi), expected);
    }

    #[test]
    fn result_keeps_negations_on_string_atoms_only() {
        let phi = SymbolicCondition::or_all([
            SymbolicCondition::and_all([contains_in(), SymbolicCondition::cmp(CmpOp::Lt, var("t.a"), var("t.b"))]),
            contains_in().negate(),
        ])
        .negate();
        let out = normalize_negations(&phi);
        assert!(out.negations_only_on_string_atoms());
        assert!(out.size() <= phi.size() + 3);
    }
}
