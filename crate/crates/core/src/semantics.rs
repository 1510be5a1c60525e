//! Concrete operator semantics shared by the interpreter, the symbolic
//! satisfaction check and the witness search.
//!
//! These definitions match the SMT-LIB encoding in [`crate::smt`] bit for
//! bit:
//!
//! * integers are 64-bit two's complement; `+ - *` wrap; `/` is `bvsdiv`
//!   (truncating, `x / 0` is `-1` for `x >= 0` and `1` otherwise,
//!   `MIN / -1` is `MIN`); comparisons are signed.
//! * floats are binary64 with round-to-nearest-even. `>`, `<` and `==` are
//!   the IEEE predicates; `>=` is defined as `not (a < b)` and `<=` as
//!   `not (a > b)`, so that negating any comparison yields another
//!   comparison even when NaN is involved.
//! * strings compare lexicographically by code point.
//!   `prefixOf(s, p)` holds when `s` starts with `p`, `suffixOf(s, p)` when
//!   `s` ends with `p`, `contains(s, p)` when `p` occurs in `s`, and
//!   `equals` is string equality.

use std::cmp::Ordering;

use crate::lang::{ArithOp, CmpOp, StrPred, Value};

pub fn bv_sdiv(a: i64, b: i64) -> i64 {
    if b == 0 {
        if a >= 0 {
            -1
        } else {
            1
        }
    } else {
        a.wrapping_div(b)
    }
}

/// Applies an arithmetic operator. Operands must have the same numeric type.
pub fn arith(op: ArithOp, a: &Value, b: &Value) -> Value {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Value::Int(match op {
            ArithOp::Add => x.wrapping_add(*y),
            ArithOp::Sub => x.wrapping_sub(*y),
            ArithOp::Mul => x.wrapping_mul(*y),
            ArithOp::Div => bv_sdiv(*x, *y),
        }),
        (Value::Float(x), Value::Float(y)) => Value::Float(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x / y,
        }),
        _ => panic!("ill-typed arithmetic: {a} {} {b}", op.symbol()),
    }
}

// Float >= is not-less-than, so NaN >= x holds.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn compare(op: CmpOp, a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => ordered(op, x.cmp(y)),
        (Value::Str(x), Value::Str(y)) => ordered(op, cmp_code_points(x, y)),
        (Value::Float(x), Value::Float(y)) => match op {
            CmpOp::Gt => x > y,
            CmpOp::Lt => x < y,
            CmpOp::Ge => !(x < y),
            CmpOp::Le => !(x > y),
            CmpOp::Eq => x == y,
            CmpOp::Ne => x != y,
        },
        _ => panic!("ill-typed comparison: {a} {} {b}", op.symbol()),
    }
}

fn ordered(op: CmpOp, ord: Ordering) -> bool {
    match op {
        CmpOp::Gt => ord == Ordering::Greater,
        CmpOp::Lt => ord == Ordering::Less,
        CmpOp::Ge => ord != Ordering::Less,
        CmpOp::Le => ord != Ordering::Greater,
        CmpOp::Eq => ord == Ordering::Equal,
        CmpOp::Ne => ord != Ordering::Equal,
    }
}

fn cmp_code_points(a: &str, b: &str) -> Ordering {
    a.chars().cmp(b.chars())
}

pub fn string_pred(p: StrPred, s: &str, arg: &str) -> bool {
    match p {
        StrPred::PrefixOf => s.starts_with(arg),
        StrPred::SuffixOf => s.ends_with(arg),
        StrPred::Contains => s.contains(arg),
        StrPred::Equals => s == arg,
    }
}

pub fn pred(p: StrPred, a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Str(s), Value::Str(arg)) => string_pred(p, s, arg),
        _ => panic!("ill-typed string predicate {}({a}, {b})", p.name()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_is_totalized_like_bvsdiv() {
        assert_eq!(bv_sdiv(7, 0), -1);
        assert_eq!(bv_sdiv(0, 0), -1);
        assert_eq!(bv_sdiv(-7, 0), 1);
        assert_eq!(bv_sdiv(i64::MIN, -1), i64::MIN);
        assert_eq!(bv_sdiv(-7, 2), -3);
        assert_eq!(bv_sdiv(7, -2), -3);
    }

    #[test]
    fn negated_comparisons_are_complements() {
        let floats = [f64::NAN, -0.0, 0.0, 1.0, f64::INFINITY, f64::NEG_INFINITY];
        for op in CmpOp::ALL {
            for a in floats {
                for b in floats {
                    let (a, b) = (Value::Float(a), Value::Float(b));
                    assert_eq!(compare(op, &a, &b), !compare(op.negate(), &a, &b));
                    assert_eq!(compare(op, &a, &b), compare(op.swap(), &b, &a));
                }
            }
            for a in -2..=2 {
                for b in -2..=2 {
                    let (a, b) = (Value::Int(a), Value::Int(b));
                    assert_eq!(compare(op, &a, &b), !compare(op.negate(), &a, &b));
                    assert_eq!(compare(op, &a, &b), compare(op.swap(), &b, &a));
                }
            }
        }
    }

    #[test]
    fn string_predicates_take_subject_first() {
        assert!(string_pred(StrPred::PrefixOf, "INX", "IN"));
        assert!(!string_pred(StrPred::PrefixOf, "IN", "INX"));
        assert!(string_pred(StrPred::SuffixOf, "XIN", "IN"));
        assert!(string_pred(StrPred::Contains, "XINY", "IN"));
        assert!(string_pred(StrPred::Equals, "IN", "IN"));
        assert!(compare(CmpOp::Lt, &Value::Str("I".into()), &Value::Str("IN".into())));
    }
}
