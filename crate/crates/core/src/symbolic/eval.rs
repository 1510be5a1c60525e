//! Symbolic evaluation: runs a constraint over symbolic values, replacing
//! user variables by guarded terms and accumulating assertions into a
//! single property.

use std::collections::BTreeMap;

use super::{SymbolicCondition, SymbolicTerm};
use crate::lang::{BoolExpr, BoolExprKind, Expr, ExprKind, Schema, Stmt, TypedConstraint, Value};

/// Guarded values of an expression: each term holds under its guard, and
/// guards of one set are mutually exclusive.
pub type Pairs = Vec<(SymbolicTerm, SymbolicCondition)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnvKey {
    Data(String),
    User(String),
    Lit(Value),
    /// A compound expression free of user variables, keyed by its term.
    Expr(SymbolicTerm),
}

impl EnvKey {
    fn is_user(&self) -> bool {
        matches!(self, EnvKey::User(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicState {
    pub env: BTreeMap<EnvKey, Pairs>,
    pub property: SymbolicCondition,
}

impl Default for SymbolicState {
    fn default() -> Self {
        SymbolicState { env: BTreeMap::new(), property: SymbolicCondition::True }
    }
}

impl SymbolicState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn user(&self, name: &str) -> Option<&Pairs> {
        self.env.get(&EnvKey::User(name.to_string()))
    }
}

/// Property at the exit of the constraint, before negation normalization.
pub fn encode_stage1(c: &TypedConstraint) -> SymbolicCondition {
    let mut state = SymbolicState::new();
    for stmt in &c.constraint().stmts {
        state = eval_statement(state, stmt, c.schema());
    }
    state.property
}

pub fn eval_statement(mut state: SymbolicState, stmt: &Stmt, schema: &Schema) -> SymbolicState {
    match stmt {
        Stmt::Assign { name, expr, .. } => {
            let pairs = eval_expr(&mut state.env, expr, schema);
            state.env.insert(EnvKey::User(name.clone()), pairs);
            state
        }
        Stmt::Assert { cond, .. } => {
            let phi = eval_bool(&mut state.env, cond, schema);
            state.property = SymbolicCondition::and_all([state.property, phi]);
            state
        }
        Stmt::If { cond, then_branch, else_branch, .. } => {
            let gamma = eval_bool(&mut state.env, cond, schema);
            let run = |stmts: &[Stmt]| {
                let start = SymbolicState { env: state.env.clone(), property: SymbolicCondition::True };
                stmts.iter().fold(start, |st, s| eval_statement(st, s, schema))
            };
            let s1 = run(then_branch);
            let s2 = run(else_branch);
            let joined = if s1.property == s2.property {
                s1.property.clone()
            } else {
                SymbolicCondition::or_all([
                    SymbolicCondition::and_all([s1.property.clone(), gamma.clone()]),
                    SymbolicCondition::and_all([s2.property.clone(), gamma.clone().negate()]),
                ])
            };
            SymbolicState {
                env: merge_env(s1.env, s2.env, &gamma),
                property: SymbolicCondition::and_all([state.property, joined]),
            }
        }
    }
}

fn merge_env(
    mut e1: BTreeMap<EnvKey, Pairs>,
    mut e2: BTreeMap<EnvKey, Pairs>,
    gamma: &SymbolicCondition,
) -> BTreeMap<EnvKey, Pairs> {
    let mut out = BTreeMap::new();
    let keys: Vec<EnvKey> = e1.keys().chain(e2.keys()).cloned().collect();
    for key in keys {
        if out.contains_key(&key) {
            continue;
        }
        match (e1.remove(&key), e2.remove(&key)) {
            (Some(a), Some(b)) if a == b => {
                out.insert(key, a);
            }
            (Some(a), Some(b)) => {
                let not_gamma = gamma.clone().negate();
                let merged = guard_all(a, gamma).into_iter().chain(guard_all(b, &not_gamma)).collect();
                out.insert(key, merged);
            }
            // Variables bound on one path only are dead after the join.
            (Some(p), None) | (None, Some(p)) if !key.is_user() => {
                out.insert(key, p);
            }
            _ => {}
        }
    }
    out
}

fn guard_all(pairs: Pairs, gamma: &SymbolicCondition) -> Pairs {
    pairs
        .into_iter()
        .map(|(t, g)| (t, SymbolicCondition::and_all([g, gamma.clone()])))
        .filter(|(_, g)| *g != SymbolicCondition::False)
        .collect()
}

/// Guarded terms of an arithmetic expression.
pub fn eval_expr(env: &mut BTreeMap<EnvKey, Pairs>, expr: &Expr, schema: &Schema) -> Pairs {
    match &expr.kind {
        ExprKind::Lit(v) => env
            .entry(EnvKey::Lit(v.clone()))
            .or_insert_with(|| vec![(SymbolicTerm::Literal(v.clone()), SymbolicCondition::True)])
            .clone(),
        ExprKind::DataVar(name) => {
            let ty = schema.get(name).unwrap_or_else(|| panic!("undeclared data variable `{name}`"));
            env.entry(EnvKey::Data(name.clone()))
                .or_insert_with(|| vec![(SymbolicTerm::var(name, ty), SymbolicCondition::True)])
                .clone()
        }
        ExprKind::UserVar(name) => env
            .get(&EnvKey::User(name.clone()))
            .cloned()
            .unwrap_or_else(|| panic!("user variable `{name}` read before assignment")),
        ExprKind::Binary(op, l, r) => {
            let left = eval_expr(env, l, schema);
            let right = eval_expr(env, r, schema);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for (t1, g1) in &left {
                for (t2, g2) in &right {
                    let g = SymbolicCondition::and_all([g1.clone(), g2.clone()]);
                    if g != SymbolicCondition::False {
                        out.push((SymbolicTerm::compound(*op, t1.clone(), t2.clone()), g));
                    }
                }
            }
            if expr.is_pure() {
                if let [(term, SymbolicCondition::True)] = out.as_slice() {
                    env.entry(EnvKey::Expr(term.clone())).or_insert_with(|| out.clone());
                }
            }
            out
        }
    }
}

/// Condition equivalent to a boolean expression under `env`.
pub fn eval_bool(env: &mut BTreeMap<EnvKey, Pairs>, b: &BoolExpr, schema: &Schema) -> SymbolicCondition {
    match &b.kind {
        BoolExprKind::Cmp(op, l, r) => {
            combine(env, l, r, schema, |t1, t2| SymbolicCondition::AtomCmp(*op, t1, t2))
        }
        BoolExprKind::Pred(p, l, r) => {
            combine(env, l, r, schema, |t1, t2| SymbolicCondition::AtomStr(*p, t1, t2))
        }
        BoolExprKind::And(l, r) => {
            let a = eval_bool(env, l, schema);
            let b = eval_bool(env, r, schema);
            SymbolicCondition::and_all([a, b])
        }
        BoolExprKind::Or(l, r) => {
            let a = eval_bool(env, l, schema);
            let b = eval_bool(env, r, schema);
            SymbolicCondition::or_all([a, b])
        }
        BoolExprKind::Not(inner) => eval_bool(env, inner, schema).negate(),
        BoolExprKind::Ite(c, t, e) => {
            let g0 = eval_bool(env, c, schema);
            let g1 = eval_bool(env, t, schema);
            let g2 = eval_bool(env, e, schema);
            SymbolicCondition::or_all([
                SymbolicCondition::and_all([g1, g0.clone()]),
                SymbolicCondition::and_all([g2, g0.negate()]),
            ])
        }
    }
}

fn combine(
    env: &mut BTreeMap<EnvKey, Pairs>,
    l: &Expr,
    r: &Expr,
    schema: &Schema,
    atom: impl Fn(SymbolicTerm, SymbolicTerm) -> SymbolicCondition,
) -> SymbolicCondition {
    let left = eval_expr(env, l, schema);
    let right = eval_expr(env, r, schema);
    let mut disjuncts = Vec::with_capacity(left.len() * right.len());
    for (t1, g1) in &left {
        for (t2, g2) in &right {
            disjuncts.push(SymbolicCondition::and_all([atom(t1.clone(), t2.clone()), g1.clone(), g2.clone()]));
        }
    }
    SymbolicCondition::or_all(disjuncts)
}
