use std::collections::HashMap;

use super::ast::{BoolExpr, BoolExprKind, Expr, ExprKind, Stmt};
use super::{Interpretation, TypedConstraint, Value};
use crate::semantics;

type UserEnv = HashMap<String, Value>;

/// Decides `I ⊨ c`: runs the statements in order and reports whether every
/// executed assertion holds.
///
/// # Panics
///
/// If `interp` does not bind a data variable the constraint reads.
pub fn evaluate(c: &TypedConstraint, interp: &Interpretation) -> bool {
    let mut env = UserEnv::new();
    exec(&c.constraint().stmts, &mut env, interp)
}

fn exec(stmts: &[Stmt], env: &mut UserEnv, interp: &Interpretation) -> bool {
    for stmt in stmts {
        match stmt {
            Stmt::Assign { name, expr, .. } => {
                let v = eval_expr(expr, env, interp);
                env.insert(name.clone(), v);
            }
            Stmt::Assert { cond, .. } => {
                if !eval_bool_expr(cond, env, interp) {
                    return false;
                }
            }
            Stmt::If { cond, then_branch, else_branch, .. } => {
                let branch = if eval_bool_expr(cond, env, interp) { then_branch } else { else_branch };
                if !exec(branch, env, interp) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn eval_expr(expr: &Expr, env: &HashMap<String, Value>, interp: &Interpretation) -> Value {
    match &expr.kind {
        ExprKind::Lit(v) => v.clone(),
        ExprKind::DataVar(name) => interp
            .get(name)
            .cloned()
            .unwrap_or_else(|| panic!("interpretation does not bind `{name}`")),
        ExprKind::UserVar(name) => env
            .get(name)
            .cloned()
            .unwrap_or_else(|| panic!("user variable `{name}` read before assignment")),
        ExprKind::Binary(op, l, r) => {
            let a = eval_expr(l, env, interp);
            let b = eval_expr(r, env, interp);
            semantics::arith(*op, &a, &b)
        }
    }
}

pub fn eval_bool_expr(b: &BoolExpr, env: &HashMap<String, Value>, interp: &Interpretation) -> bool {
    match &b.kind {
        BoolExprKind::Cmp(op, l, r) => {
            semantics::compare(*op, &eval_expr(l, env, interp), &eval_expr(r, env, interp))
        }
        BoolExprKind::Pred(p, l, r) => semantics::pred(*p, &eval_expr(l, env, interp), &eval_expr(r, env, interp)),
        BoolExprKind::And(l, r) => eval_bool_expr(l, env, interp) && eval_bool_expr(r, env, interp),
        BoolExprKind::Or(l, r) => eval_bool_expr(l, env, interp) || eval_bool_expr(r, env, interp),
        BoolExprKind::Not(inner) => !eval_bool_expr(inner, env, interp),
        BoolExprKind::Ite(c, t, e) => {
            if eval_bool_expr(c, env, interp) {
                eval_bool_expr(t, env, interp)
            } else {
                eval_bool_expr(e, env, interp)
            }
        }
    }
}
