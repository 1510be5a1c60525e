use std::collections::BTreeMap;

use thiserror::Error;

use super::ast::{BoolExpr, BoolExprKind, Constraint, Expr, ExprKind, Span, Stmt};
use super::{Schema, ValueType};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct TypeError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl TypeError {
    fn new(span: Span, message: impl Into<String>) -> Self {
        TypeError { line: span.line, col: span.col, message: message.into() }
    }
}

/// A constraint that passed [`typecheck`] against its schema.
///
/// Every data variable is declared, every user variable is assigned on all
/// paths before it is read, and all operators are applied to operands of
/// matching types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedConstraint {
    schema: Schema,
    constraint: Constraint,
}

impl TypedConstraint {
    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn node_count(&self) -> usize {
        self.constraint.node_count()
    }
}

pub fn typecheck(schema: &Schema, constraint: &Constraint) -> Result<TypedConstraint, TypeError> {
    let checker = Checker { schema };
    let mut env = BTreeMap::new();
    checker.stmts(&constraint.stmts, &mut env)?;
    Ok(TypedConstraint { schema: schema.clone(), constraint: constraint.clone() })
}

type Env = BTreeMap<String, ValueType>;

struct Checker<'a> {
    schema: &'a Schema,
}

impl Checker<'_> {
    fn stmts(&self, stmts: &[Stmt], env: &mut Env) -> Result<(), TypeError> {
        for s in stmts {
            self.stmt(s, env)?;
        }
        Ok(())
    }

    fn stmt(&self, stmt: &Stmt, env: &mut Env) -> Result<(), TypeError> {
        match stmt {
            Stmt::Assign { name, expr, .. } => {
                let ty = self.expr(expr, env)?;
                env.insert(name.clone(), ty);
            }
            Stmt::Assert { cond, .. } => self.bool_expr(cond, env)?,
            Stmt::If { cond, then_branch, else_branch, span } => {
                self.condition(cond, env, *span)?;
                let mut then_env = env.clone();
                let mut else_env = env.clone();
                self.stmts(then_branch, &mut then_env)?;
                self.stmts(else_branch, &mut else_env)?;
                // Only variables bound with one type on both paths survive.
                *env = then_env
                    .into_iter()
                    .filter(|(name, ty)| else_env.get(name) == Some(ty))
                    .collect();
            }
        }
        Ok(())
    }

    fn condition(&self, cond: &BoolExpr, env: &Env, span: Span) -> Result<(), TypeError> {
        if !cond.is_atomic_condition() {
            return Err(TypeError::new(span, "branch conditions must be a single comparison or string predicate"));
        }
        self.bool_expr(cond, env)
    }

    fn bool_expr(&self, b: &BoolExpr, env: &Env) -> Result<(), TypeError> {
        match &b.kind {
            BoolExprKind::Cmp(op, l, r) => {
                let lt = self.expr(l, env)?;
                let rt = self.expr(r, env)?;
                if lt != rt {
                    return Err(TypeError::new(
                        b.span,
                        format!("cannot compare {lt} with {rt} using `{}`", op.symbol()),
                    ));
                }
                Ok(())
            }
            BoolExprKind::Pred(p, l, r) => {
                for e in [l, r] {
                    let t = self.expr(e, env)?;
                    if t != ValueType::Str {
                        return Err(TypeError::new(
                            e.span,
                            format!("`{}` expects str operands, found {t}", p.name()),
                        ));
                    }
                }
                Ok(())
            }
            BoolExprKind::And(l, r) | BoolExprKind::Or(l, r) => {
                self.bool_expr(l, env)?;
                self.bool_expr(r, env)
            }
            BoolExprKind::Not(inner) => self.bool_expr(inner, env),
            BoolExprKind::Ite(c, t, e) => {
                self.condition(c, env, b.span)?;
                self.bool_expr(t, env)?;
                self.bool_expr(e, env)
            }
        }
    }

    fn expr(&self, e: &Expr, env: &Env) -> Result<ValueType, TypeError> {
        match &e.kind {
            ExprKind::Lit(v) => Ok(v.ty()),
            ExprKind::DataVar(name) => self
                .schema
                .get(name)
                .ok_or_else(|| TypeError::new(e.span, format!("data variable `{name}` is not declared"))),
            ExprKind::UserVar(name) => env
                .get(name)
                .copied()
                .ok_or_else(|| TypeError::new(e.span, format!("`{name}` is used before it is assigned"))),
            ExprKind::Binary(op, l, r) => {
                let lt = self.expr(l, env)?;
                let rt = self.expr(r, env)?;
                if lt != rt {
                    return Err(TypeError::new(
                        e.span,
                        format!("operands of `{}` have different types ({lt}, {rt})", op.symbol()),
                    ));
                }
                if lt == ValueType::Str {
                    return Err(TypeError::new(e.span, format!("arithmetic `{}` on strings", op.symbol())));
                }
                Ok(lt)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn check(src: &str) -> Result<TypedConstraint, TypeError> {
        let (schema, c) = parse(src).unwrap();
        typecheck(&schema, &c)
    }

    #[test]
    fn user_variable_resolved_on_both_branches() {
        let src = "int t.iid; int t.oid; str t.ty; int t.out; int t.new; int t.in; int t.old;
            assert(t.iid != 0); assert(t.oid != 0);
            if (not contains(t.ty, 'IN')) { cash = t.out + t.new; } else { cash = t.new - t.in; }
            assert(cash == t.old);";
        assert!(check(src).is_ok());
    }

    #[test]
    fn rejects_ill_typed_programs() {
        let e = check("str t.ty; assert(t.ty > 1);").unwrap_err();
        assert!(e.message.contains("cannot compare"), "{e}");
        let e = check("int t.a; assert(x > 0);").unwrap_err();
        assert!(e.message.contains("before it is assigned"), "{e}");
        assert!(check("str t.a; assert(t.a + t.a == 'x');").is_err());
        assert!(check("int t.a; assert(contains(t.a, 'x'));").is_err());
        assert!(check("int t.a; float t.f; assert(t.a + t.f > 0);").is_err());
        assert!(check("int t.a; assert(t.b > 0);").is_err());
    }

    #[test]
    fn one_sided_assignment_is_not_definite() {
        let src = "int t.a; if (t.a > 0) { x = 1; } else { y = 2; } assert(x > 0);";
        assert!(check(src).is_err());
        let src = "int t.a; if (t.a > 0) { x = 1; } else { x = 'a'; } assert(x > 0);";
        assert!(check(src).is_err());
        let src = "int t.a; x = 0; if (t.a > 0) { x = 1; } assert(x > 0);";
        assert!(check(src).is_ok());
    }

    #[test]
    fn branch_condition_must_be_atomic() {
        use super::super::ast::{BoolExpr, CmpOp, Expr, Stmt};
        use super::super::Value;
        let schema = Schema::from_pairs([("t.a", ValueType::Int)]).unwrap();
        let atom = BoolExpr::cmp(CmpOp::Gt, Expr::data("t.a"), Expr::lit(Value::Int(0)));
        let cond = BoolExpr::and(atom.clone(), atom.clone());
        let c = Constraint::new(vec![Stmt::if_else(cond, vec![], vec![Stmt::assert(atom)])]);
        assert!(typecheck(&schema, &c).is_err());
    }
}
