//! Test-only reference semantics, written independently of the library's
//! interpreter, plus a brute-force equivalence oracle built on it.

#![allow(dead_code)]

pub mod trees;

use std::collections::HashMap;
use std::path::PathBuf;

use eqdac::lang::{ArithOp, BoolExpr, BoolExprKind, CmpOp, Expr, ExprKind, Stmt, StrPred};
use eqdac::{parse, typecheck, DomainSpec, Interpretation, Schema, TypedConstraint, Value, ValueType};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> TypedConstraint {
    typed(&std::fs::read_to_string(fixture(name)).unwrap())
}

pub fn typed(src: &str) -> TypedConstraint {
    let (s, c) = parse(src).unwrap_or_else(|e| panic!("{e}\n{src}"));
    typecheck(&s, &c).unwrap_or_else(|e| panic!("{e}\n{src}"))
}

pub fn solver_available() -> bool {
    let cmd = std::env::var("EQDAC_SOLVER").unwrap_or_else(|_| "z3 -in".into());
    let mut parts = cmd.split_whitespace();
    let Some(prog) = parts.next() else { return false };
    std::process::Command::new(prog)
        .arg("-version")
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()
        .is_ok()
}

#[derive(Clone, Debug, PartialEq)]
enum V {
    I(i64),
    F(f64),
    S(String),
}

fn sdiv(a: i64, b: i64) -> i64 {
    // Truncating division on 128 bits, then reduced mod 2^64.
    match b {
        0 if a < 0 => 1,
        0 => -1,
        _ => ((a as i128) / (b as i128)) as i64,
    }
}

fn arith(op: ArithOp, a: V, b: V) -> V {
    match (a, b) {
        (V::I(x), V::I(y)) => {
            let (x, y) = (x as i128, y as i128);
            let r = match op {
                ArithOp::Add => x + y,
                ArithOp::Sub => x - y,
                ArithOp::Mul => x.wrapping_mul(y),
                ArithOp::Div => return V::I(sdiv(x as i64, y as i64)),
            };
            V::I(r as i64)
        }
        (V::F(x), V::F(y)) => V::F(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x / y,
        }),
        other => panic!("ill-typed {other:?}"),
    }
}

fn compare(op: CmpOp, a: V, b: V) -> bool {
    use std::cmp::Ordering::*;
    let ord = match (&a, &b) {
        (V::I(x), V::I(y)) => Some(x.cmp(y)),
        (V::S(x), V::S(y)) => Some(x.chars().cmp(y.chars())),
        (V::F(x), V::F(y)) => x.partial_cmp(y),
        _ => panic!("ill-typed"),
    };
    match (op, ord) {
        (CmpOp::Eq, o) => o == Some(Equal),
        (CmpOp::Ne, o) => o != Some(Equal),
        (CmpOp::Gt, o) => o == Some(Greater),
        (CmpOp::Lt, o) => o == Some(Less),
        // Unordered float operands satisfy both non-strict comparisons.
        (CmpOp::Ge, o) => o != Some(Less),
        (CmpOp::Le, o) => o != Some(Greater),
    }
}

fn pred(p: StrPred, a: V, b: V) -> bool {
    let (V::S(s), V::S(t)) = (a, b) else { panic!("ill-typed") };
    match p {
        StrPred::PrefixOf => s.starts_with(&t),
        StrPred::SuffixOf => s.ends_with(&t),
        StrPred::Contains => s.contains(&t),
        StrPred::Equals => s == t,
    }
}

fn to_v(v: &Value) -> V {
    match v {
        Value::Int(i) => V::I(*i),
        Value::Float(f) => V::F(*f),
        Value::Str(s) => V::S(s.clone()),
    }
}

struct Run<'a> {
    data: &'a Interpretation,
    users: HashMap<String, V>,
}

impl Run<'_> {
    fn expr(&self, e: &Expr) -> V {
        match &e.kind {
            ExprKind::Lit(v) => to_v(v),
            ExprKind::DataVar(n) => to_v(self.data.get(n).expect("bound")),
            ExprKind::UserVar(n) => self.users[n].clone(),
            ExprKind::Binary(op, l, r) => arith(*op, self.expr(l), self.expr(r)),
        }
    }

    fn cond(&self, b: &BoolExpr) -> bool {
        match &b.kind {
            BoolExprKind::Cmp(op, l, r) => compare(*op, self.expr(l), self.expr(r)),
            BoolExprKind::Pred(p, l, r) => pred(*p, self.expr(l), self.expr(r)),
            BoolExprKind::And(l, r) => self.cond(l) & self.cond(r),
            BoolExprKind::Or(l, r) => self.cond(l) | self.cond(r),
            BoolExprKind::Not(x) => !self.cond(x),
            BoolExprKind::Ite(c, t, e) => (self.cond(c) && self.cond(t)) || (!self.cond(c) && self.cond(e)),
        }
    }

    fn block(&mut self, stmts: &[Stmt]) -> bool {
        let mut ok = true;
        for s in stmts {
            match s {
                Stmt::Assign { name, expr, .. } => {
                    let v = self.expr(expr);
                    self.users.insert(name.clone(), v);
                }
                Stmt::Assert { cond, .. } => ok &= self.cond(cond),
                Stmt::If { cond, then_branch, else_branch, .. } => {
                    ok &= if self.cond(cond) { self.block(then_branch) } else { self.block(else_branch) };
                }
            }
        }
        ok
    }
}

/// Reference model check: every assertion on the executed path holds.
pub fn reference_eval(c: &TypedConstraint, i: &Interpretation) -> bool {
    Run { data: i, users: HashMap::new() }.block(&c.constraint().stmts)
}

pub fn domain_values(d: &DomainSpec, ty: ValueType) -> Vec<Value> {
    match ty {
        ValueType::Int => d.int_values.iter().map(|v| Value::Int(*v)).collect(),
        ValueType::Float => d.float_values.iter().map(|v| Value::Float(*v)).collect(),
        ValueType::Str => {
            let mut all = vec![String::new()];
            let mut frontier = vec![String::new()];
            for _ in 0..d.str_max_len {
                frontier = frontier.iter().flat_map(|p| d.str_alphabet.iter().map(move |c| format!("{p}{c}"))).collect();
                all.extend(frontier.iter().cloned());
            }
            for s in &d.extra_strings {
                if !all.contains(s) {
                    all.push(s.clone());
                }
            }
            all.into_iter().map(Value::Str).collect()
        }
    }
}

/// Every total interpretation of `schema` over `d`.
pub fn all_interpretations(schema: &Schema, d: &DomainSpec) -> Vec<Interpretation> {
    let mut out = vec![Interpretation::new()];
    for (name, ty) in schema.iter() {
        let vals = domain_values(d, ty);
        out = out.into_iter().flat_map(|i| vals.iter().map(move |v| i.clone().with(name, v.clone()))).collect();
    }
    out
}

/// First interpretation in `d` on which the constraints differ, if any.
pub fn brute_force_counterexample(c1: &TypedConstraint, c2: &TypedConstraint, d: &DomainSpec) -> Option<Interpretation> {
    all_interpretations(c1.schema(), d).into_iter().find(|i| reference_eval(c1, i) != reference_eval(c2, i))
}

/// `d` extended with every value of `w`, so the witness is enumerated.
pub fn extend_domain(d: &DomainSpec, w: &Interpretation) -> DomainSpec {
    let mut d = d.clone();
    for (_, v) in w.iter() {
        match v {
            Value::Int(i) if !d.int_values.contains(i) => d.int_values.push(*i),
            Value::Float(f) if !d.float_values.iter().any(|g| g.to_bits() == f.to_bits()) => d.float_values.push(*f),
            Value::Str(s) if !d.extra_strings.contains(s) => d.extra_strings.push(s.clone()),
            _ => {}
        }
    }
    d
}

/// Small domain used by the randomized suites.
pub fn small_domain() -> DomainSpec {
    DomainSpec {
        int_values: vec![-2, -1, 0, 1, 2],
        float_values: vec![-1.0, 0.0, 0.5, 1.0],
        str_alphabet: vec!['I', 'N'],
        str_max_len: 2,
        extra_strings: Vec::new(),
    }
}
