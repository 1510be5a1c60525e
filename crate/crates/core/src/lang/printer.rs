use std::fmt::Write;

use super::ast::{BoolExpr, BoolExprKind, Constraint, Expr, ExprKind, Stmt};
use super::Schema;

/// Prints a complete `.dc` document: the schema header followed by the
/// statements. The output parses back to an identical tree.
pub fn print_source(schema: &Schema, constraint: &Constraint) -> String {
    let mut out = String::new();
    for (name, ty) in schema.iter() {
        let _ = writeln!(out, "{ty} {name};");
    }
    out.push_str(&print_constraint(constraint));
    out
}

pub fn print_constraint(constraint: &Constraint) -> String {
    let mut out = String::new();
    for stmt in &constraint.stmts {
        print_stmt(&mut out, stmt, 0);
    }
    out
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("    ");
    }
}

fn print_stmt(out: &mut String, stmt: &Stmt, depth: usize) {
    indent(out, depth);
    match stmt {
        Stmt::Assign { name, expr, .. } => {
            let _ = writeln!(out, "{name} = {};", expr_to_string(expr));
        }
        Stmt::Assert { cond, .. } => {
            let _ = writeln!(out, "assert({});", bool_to_string(cond));
        }
        Stmt::If { cond, then_branch, else_branch, .. } => {
            let _ = writeln!(out, "if ({}) {{", bool_to_string(cond));
            for s in then_branch {
                print_stmt(out, s, depth + 1);
            }
            indent(out, depth);
            if else_branch.is_empty() {
                out.push_str("}\n");
            } else {
                out.push_str("} else {\n");
                for s in else_branch {
                    print_stmt(out, s, depth + 1);
                }
                indent(out, depth);
                out.push_str("}\n");
            }
        }
    }
}

pub(crate) fn expr_to_string(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr);
    out
}

fn write_expr(out: &mut String, expr: &Expr) {
    match &expr.kind {
        ExprKind::Lit(v) => out.push_str(&v.to_source()),
        ExprKind::DataVar(n) | ExprKind::UserVar(n) => out.push_str(n),
        ExprKind::Binary(op, l, r) => {
            let prec = op.precedence();
            let wrap_l = matches!(&l.kind, ExprKind::Binary(lop, ..) if lop.precedence() < prec);
            let wrap_r = matches!(&r.kind, ExprKind::Binary(rop, ..) if rop.precedence() <= prec);
            write_wrapped(out, l, wrap_l);
            let _ = write!(out, " {} ", op.symbol());
            write_wrapped(out, r, wrap_r);
        }
    }
}

fn write_wrapped(out: &mut String, expr: &Expr, wrap: bool) {
    if wrap {
        out.push('(');
        write_expr(out, expr);
        out.push(')');
    } else {
        write_expr(out, expr);
    }
}

pub(crate) fn bool_to_string(b: &BoolExpr) -> String {
    let mut out = String::new();
    write_bool(&mut out, b);
    out
}

// 0 = or, 1 = and, 2 = unary/primary
fn bool_level(b: &BoolExpr) -> u8 {
    match b.kind {
        BoolExprKind::Or(..) => 0,
        BoolExprKind::And(..) => 1,
        _ => 2,
    }
}

fn write_bool_wrapped(out: &mut String, b: &BoolExpr, wrap: bool) {
    if wrap {
        out.push('(');
        write_bool(out, b);
        out.push(')');
    } else {
        write_bool(out, b);
    }
}

fn write_bool(out: &mut String, b: &BoolExpr) {
    match &b.kind {
        BoolExprKind::Cmp(op, l, r) => {
            write_expr(out, l);
            let _ = write!(out, " {} ", op.symbol());
            write_expr(out, r);
        }
        BoolExprKind::Pred(p, l, r) => {
            let _ = write!(out, "{}(", p.name());
            write_expr(out, l);
            out.push_str(", ");
            write_expr(out, r);
            out.push(')');
        }
        BoolExprKind::Or(l, r) => {
            write_bool_wrapped(out, l, false);
            out.push_str(" or ");
            write_bool_wrapped(out, r, bool_level(r) == 0);
        }
        BoolExprKind::And(l, r) => {
            write_bool_wrapped(out, l, bool_level(l) < 1);
            out.push_str(" and ");
            write_bool_wrapped(out, r, bool_level(r) <= 1);
        }
        BoolExprKind::Not(inner) => {
            out.push_str("not ");
            write_bool_wrapped(out, inner, bool_level(inner) < 2);
        }
        BoolExprKind::Ite(c, t, e) => {
            out.push_str("ite(");
            write_bool(out, c);
            out.push_str(", ");
            write_bool(out, t);
            out.push_str(", ");
            write_bool(out, e);
            out.push(')');
        }
    }
}
