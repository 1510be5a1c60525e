//! The interpreter and the solver must agree on every operator, bit for bit.

mod common;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use eqdac::lang::{ArithOp, CmpOp, StrPred};
use eqdac::semantics;
use eqdac::smt::{emit, solve, SolverConfig, SolverResult};
use eqdac::{decide, evaluate, Outcome, Schema, StageConfig, SymbolicCondition as C, SymbolicTerm as T, Value};

const INTS: [i64; 9] = [i64::MIN, i64::MIN + 1, -7, -1, 0, 1, 3, 7, i64::MAX];
const FLOATS: [f64; 11] =
    [f64::NEG_INFINITY, -2.5, -1.0, -0.0, 0.0, 5e-324, 0.1, 1.0, 3.0, f64::INFINITY, f64::NAN];
const STRS: [&str; 7] = ["", "I", "N", "IN", "NI", "a\"b", "\u{e9}\\"];

fn lit(v: &Value) -> T {
    T::lit(v.clone())
}

/// A formula over literals only that holds iff `got` is exactly `want`.
fn same_value(got: T, want: &Value) -> C {
    match want {
        Value::Float(f) if f.is_nan() => C::cmp(CmpOp::Ne, got.clone(), got),
        Value::Float(f) if *f == 0.0 => {
            // Distinguish the zeros through the sign of 1/x.
            let one = T::lit(Value::Float(1.0));
            C::and_all([
                C::cmp(CmpOp::Eq, got.clone(), T::lit(Value::Float(0.0))),
                C::cmp(
                    CmpOp::Eq,
                    T::compound(ArithOp::Div, one.clone(), got),
                    T::compound(ArithOp::Div, one, lit(want)),
                ),
            ])
        }
        _ => C::cmp(CmpOp::Eq, got, lit(want)),
    }
}

/// Batches ground facts into one query each: the solver must find every
/// fact valid.
fn assert_all_valid(facts: Vec<(String, C)>) {
    let schema = Schema::new();
    let cfg = SolverConfig::default();
    for chunk in facts.chunks(40) {
        let conj = C::And(chunk.iter().map(|(_, c)| c.clone()).collect());
        match solve(&emit(&conj, &C::True, &schema), &cfg).unwrap() {
            SolverResult::Unsat => {}
            other => {
                for (name, c) in chunk {
                    let r = solve(&emit(c, &C::True, &schema), &cfg).unwrap();
                    assert_eq!(r, SolverResult::Unsat, "solver disagrees on {name}");
                }
                panic!("batch failed but no single fact did: {other:?}");
            }
        }
    }
}

#[test]
fn arithmetic_agrees_with_solver() {
    if !solver_available() {
        return;
    }
    let mut facts = Vec::new();
    for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div] {
        for a in INTS {
            for b in INTS {
                let (x, y) = (Value::Int(a), Value::Int(b));
                let want = semantics::arith(op, &x, &y);
                facts.push((format!("{a} {} {b}", op.symbol()), same_value(T::compound(op, lit(&x), lit(&y)), &want)));
            }
        }
        for a in FLOATS {
            for b in FLOATS {
                let (x, y) = (Value::Float(a), Value::Float(b));
                let want = semantics::arith(op, &x, &y);
                facts.push((format!("{a:?} {} {b:?}", op.symbol()), same_value(T::compound(op, lit(&x), lit(&y)), &want)));
            }
        }
    }
    assert_all_valid(facts);
}

#[test]
fn comparisons_and_predicates_agree_with_solver() {
    if !solver_available() {
        return;
    }
    let mut facts = Vec::new();
    let mut push = |name: String, atom: C, holds: bool| {
        facts.push((name, if holds { atom } else { atom.negate() }));
    };
    for op in CmpOp::ALL {
        for a in INTS {
            for b in INTS {
                let (x, y) = (Value::Int(a), Value::Int(b));
                push(format!("{a} {} {b}", op.symbol()), C::cmp(op, lit(&x), lit(&y)), semantics::compare(op, &x, &y));
            }
        }
        for a in FLOATS {
            for b in FLOATS {
                let (x, y) = (Value::Float(a), Value::Float(b));
                push(format!("{a:?} {} {b:?}", op.symbol()), C::cmp(op, lit(&x), lit(&y)), semantics::compare(op, &x, &y));
            }
        }
        for a in STRS {
            for b in STRS {
                let (x, y) = (Value::Str(a.into()), Value::Str(b.into()));
                push(format!("{a:?} {} {b:?}", op.symbol()), C::cmp(op, lit(&x), lit(&y)), semantics::compare(op, &x, &y));
            }
        }
    }
    for p in StrPred::ALL {
        for a in STRS {
            for b in STRS {
                let (x, y) = (Value::Str(a.into()), Value::Str(b.into()));
                let atom = C::pred(p, lit(&x), lit(&y));
                push(format!("{}({a:?}, {b:?})", p.name()), atom, semantics::pred(p, &x, &y));
            }
        }
    }
    assert_all_valid(facts);
}

#[test]
fn solver_models_distinguish_single_operator_constraints() {
    if !solver_available() {
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = StageConfig::smt_only();
    let ops = ["+", "-", "*", "/"];
    let cmps = [">", "<", ">=", "<=", "==", "!="];
    let preds = ["prefixOf", "suffixOf", "contains", "equals"];
    for i in 0..60 {
        let (a, b) = match i % 3 {
            0 => {
                let mk = |rng: &mut ChaCha8Rng| {
                    format!(
                        "int t.x; int t.y; int t.z; assert(t.x {} t.y {} t.z);",
                        ops.choose(rng).unwrap(),
                        cmps.choose(rng).unwrap()
                    )
                };
                (mk(&mut rng), mk(&mut rng))
            }
            1 => {
                let mk = |rng: &mut ChaCha8Rng| {
                    format!(
                        "float t.x; float t.y; assert(t.x {} t.y {} {:?});",
                        ["+", "-"].choose(rng).unwrap(),
                        cmps.choose(rng).unwrap(),
                        [0.0, 1.0, 0.5].choose(rng).unwrap()
                    )
                };
                (mk(&mut rng), mk(&mut rng))
            }
            _ => {
                let mk = |rng: &mut ChaCha8Rng| {
                    let neg = if rng.gen_bool(0.5) { "not " } else { "" };
                    format!("str t.s; str t.u; assert({neg}{}(t.s, t.u));", preds.choose(rng).unwrap())
                };
                (mk(&mut rng), mk(&mut rng))
            }
        };
        let (c1, c2) = (typed(&a), typed(&b));
        let v = decide(&c1, &c2, &cfg).unwrap();
        match &v.outcome {
            Outcome::NotEquivalent(m) => {
                assert_ne!(evaluate(&c1, m), evaluate(&c2, m), "{a} / {b} at {m}");
                assert_ne!(reference_eval(&c1, m), reference_eval(&c2, m));
            }
            Outcome::Equivalent => {
                assert!(brute_force_counterexample(&c1, &c2, &small_domain()).is_none(), "{a} / {b}");
            }
            Outcome::Unknown(r) => panic!("{a} / {b}: {r}"),
        }
    }
}
