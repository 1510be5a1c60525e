//! Random constraints and semantics-preserving rewrites, used by the corpus
//! generator and the randomized test suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::lang::{
    ArithOp, BoolExpr, BoolExprKind, CmpOp, Constraint, Expr, ExprKind, Schema, Stmt, StrPred, Value, ValueType,
};

const INT_LITERALS: &[i64] = &[-2, -1, 0, 1, 2, 3];
const FLOAT_LITERALS: &[f64] = &[-1.0, 0.0, 0.5, 1.0];
const STR_LITERALS: &[&str] = &["", "I", "N", "IN", "NI", "II"];

/// Which value types a random schema may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeMix {
    pub floats: bool,
    pub strings: bool,
}

impl Default for TypeMix {
    fn default() -> Self {
        TypeMix { floats: true, strings: true }
    }
}

/// A schema of `1..=max_vars` variables named `t.v0, t.v1, ...`.
pub fn random_schema<R: Rng>(rng: &mut R, max_vars: usize, mix: TypeMix) -> Schema {
    let n = rng.gen_range(1..=max_vars.max(1));
    let mut types = vec![ValueType::Int];
    if mix.floats {
        types.push(ValueType::Float);
    }
    if mix.strings {
        types.push(ValueType::Str);
    }
    let mut schema = Schema::new();
    for i in 0..n {
        // Integers are the common case; the first variable is always one.
        let ty = if i == 0 || rng.gen_bool(0.5) { ValueType::Int } else { *types.choose(rng).unwrap() };
        schema.declare(&format!("t.v{i}"), ty).unwrap();
    }
    schema
}

/// A well-typed random constraint over `schema` with at most `max_nodes`
/// syntax-tree nodes and at least one assertion.
pub fn random_constraint<R: Rng>(rng: &mut R, schema: &Schema, max_nodes: usize) -> Constraint {
    let mut g = Gen { rng, schema, users: Vec::new(), fresh: 0 };
    loop {
        let mut stmts: Vec<Stmt> = Vec::new();
        let mut size = 0;
        let mut misses = 0;
        g.users.clear();
        while misses < 4 {
            let saved = g.users.clone();
            let s = g.stmt(2);
            if size + s.node_count() <= max_nodes {
                size += s.node_count();
                stmts.push(s);
                if g.rng.gen_bool(0.25) {
                    break;
                }
            } else {
                g.users = saved;
                misses += 1;
            }
        }
        if stmts.iter().any(has_assert) {
            return Constraint::new(stmts);
        }
    }
}

fn has_assert(s: &Stmt) -> bool {
    match s {
        Stmt::Assert { .. } => true,
        Stmt::Assign { .. } => false,
        Stmt::If { then_branch, else_branch, .. } => then_branch.iter().chain(else_branch).any(has_assert),
    }
}

struct Gen<'a, R> {
    rng: &'a mut R,
    schema: &'a Schema,
    users: Vec<(String, ValueType)>,
    fresh: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn types(&self) -> Vec<ValueType> {
        let mut out: Vec<ValueType> = self.schema.iter().map(|(_, t)| t).collect();
        out.sort();
        out.dedup();
        out
    }

    fn pick_type(&mut self) -> ValueType {
        let types = self.types();
        *types.choose(self.rng).unwrap()
    }

    fn fresh_user(&mut self) -> String {
        self.fresh += 1;
        format!("u{}", self.fresh)
    }

    fn stmt(&mut self, depth: u32) -> Stmt {
        match self.rng.gen_range(0..10) {
            0..=1 => {
                let ty = self.pick_type();
                let e = self.expr(ty, 2);
                let name = self.fresh_user();
                self.users.push((name.clone(), ty));
                Stmt::assign(&name, e)
            }
            2..=3 if depth > 0 => {
                let cond = self.atomic(true);
                let before = self.users.clone();
                let shared = self.rng.gen_bool(0.6).then(|| (self.fresh_user(), self.pick_type()));
                let branch = |g: &mut Self| {
                    g.users = before.clone();
                    let mut stmts = Vec::new();
                    if let Some((name, ty)) = &shared {
                        let e = g.expr(*ty, 1);
                        stmts.push(Stmt::assign(name, e));
                    }
                    if g.rng.gen_bool(0.7) {
                        stmts.push(g.stmt(depth - 1));
                    }
                    stmts
                };
                let then_branch = branch(self);
                let else_branch = branch(self);
                self.users = before;
                if let Some((name, ty)) = shared {
                    self.users.push((name, ty));
                }
                Stmt::if_else(cond, then_branch, else_branch)
            }
            _ => Stmt::assert(self.bool_expr(2)),
        }
    }

    fn bool_expr(&mut self, depth: u32) -> BoolExpr {
        if depth == 0 {
            return self.atomic(false);
        }
        match self.rng.gen_range(0..10) {
            0 => BoolExpr::and(self.bool_expr(depth - 1), self.bool_expr(depth - 1)),
            1 => BoolExpr::or(self.bool_expr(depth - 1), self.bool_expr(depth - 1)),
            2 => BoolExpr::not(self.bool_expr(depth - 1)),
            3 => BoolExpr::ite(self.atomic(true), self.bool_expr(depth - 1), self.bool_expr(depth - 1)),
            _ => self.atomic(false),
        }
    }

    /// A comparison or string predicate, sometimes negated.
    fn atomic(&mut self, negatable: bool) -> BoolExpr {
        let has_str = self.types().contains(&ValueType::Str);
        let atom = if has_str && self.rng.gen_bool(0.3) {
            let p = *StrPred::ALL.choose(self.rng).unwrap();
            let l = self.expr(ValueType::Str, 0);
            let r = self.expr(ValueType::Str, 0);
            BoolExpr::pred(p, l, r)
        } else {
            let ty = self.pick_type();
            let op = *CmpOp::ALL.choose(self.rng).unwrap();
            let l = self.expr(ty, 1);
            let r = self.expr(ty, 1);
            BoolExpr::cmp(op, l, r)
        };
        if negatable && self.rng.gen_bool(0.3) {
            BoolExpr::not(atom)
        } else {
            atom
        }
    }

    fn expr(&mut self, ty: ValueType, depth: u32) -> Expr {
        if depth > 0 && ty != ValueType::Str && self.rng.gen_bool(0.35) {
            let op = match self.rng.gen_range(0..10) {
                0..=3 => ArithOp::Add,
                4..=6 => ArithOp::Sub,
                7..=8 => ArithOp::Mul,
                _ => ArithOp::Div,
            };
            let l = self.expr(ty, depth - 1);
            let r = self.expr(ty, depth - 1);
            return Expr::binary(op, l, r);
        }
        let vars: Vec<String> = self.schema.iter().filter(|(_, t)| *t == ty).map(|(n, _)| n.to_string()).collect();
        let users: Vec<String> = self.users.iter().filter(|(_, t)| *t == ty).map(|(n, _)| n.clone()).collect();
        let roll = self.rng.gen_range(0..10);
        if roll < 5 && !vars.is_empty() {
            Expr::data(vars.choose(self.rng).unwrap())
        } else if roll < 7 && !users.is_empty() {
            Expr::user(users.choose(self.rng).unwrap())
        } else {
            Expr::lit(random_literal(self.rng, ty))
        }
    }
}

pub fn random_literal<R: Rng>(rng: &mut R, ty: ValueType) -> Value {
    match ty {
        ValueType::Int => Value::Int(*INT_LITERALS.choose(rng).unwrap()),
        ValueType::Float => Value::Float(*FLOAT_LITERALS.choose(rng).unwrap()),
        ValueType::Str => Value::Str(STR_LITERALS.choose(rng).unwrap().to_string()),
    }
}

/// Semantics-preserving rewrites, each applied independently with
/// probability one half.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Shuffle top-level statements that do not depend on each other.
    PermuteIndependent,
    /// `if (c) {A} else {B}` to `if (not c) {B} else {A}`.
    SwapBranches,
    /// Swap the operands of `and` / `or`.
    CommuteLogic,
    /// Swap the operands of integer `+` / `*`.
    CommuteArith,
    /// Rename every user variable.
    RenameUsers,
    /// `a < b` to `b > a` and similar.
    FlipComparisons,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::PermuteIndependent,
        Mutation::SwapBranches,
        Mutation::CommuteLogic,
        Mutation::CommuteArith,
        Mutation::RenameUsers,
        Mutation::FlipComparisons,
    ];
}

/// Applies a random selection of [`Mutation`]s (at least one).
pub fn mutate_equivalent<R: Rng>(rng: &mut R, c: &Constraint, schema: &Schema) -> Constraint {
    let mut picked: Vec<Mutation> = Mutation::ALL.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if picked.is_empty() {
        picked.push(*Mutation::ALL.choose(rng).unwrap());
    }
    let mut out = c.clone();
    for m in picked {
        out = apply_mutation(rng, &out, schema, m);
    }
    out
}

pub fn apply_mutation<R: Rng>(rng: &mut R, c: &Constraint, schema: &Schema, m: Mutation) -> Constraint {
    let mut out = c.clone();
    match m {
        Mutation::PermuteIndependent => permute_independent(rng, &mut out.stmts),
        Mutation::RenameUsers => {
            let tag = rng.gen_range(0..1000);
            for s in &mut out.stmts {
                rename_stmt(s, &|n: &str| format!("{n}_r{tag}"));
            }
        }
        _ => {
            for s in &mut out.stmts {
                rewrite_stmt(rng, s, schema, m);
            }
        }
    }
    out
}

/// Moves assertions past each other. Only asserts free of user variables
/// are moved, so reads are never reordered before the writes they need.
fn permute_independent<R: Rng>(rng: &mut R, stmts: &mut [Stmt]) {
    let movable: Vec<usize> = stmts.iter().enumerate().filter(|(_, s)| is_pure_stmt(s)).map(|(i, _)| i).collect();
    let mut moved: Vec<Stmt> = movable.iter().map(|&i| stmts[i].clone()).collect();
    moved.shuffle(rng);
    for (slot, s) in movable.into_iter().zip(moved) {
        stmts[slot] = s;
    }
}

/// True for statements that neither read nor write user variables.
pub fn is_pure_stmt(s: &Stmt) -> bool {
    match s {
        Stmt::Assign { .. } => false,
        Stmt::Assert { cond, .. } => bool_is_pure(cond),
        Stmt::If { cond, then_branch, else_branch, .. } => {
            bool_is_pure(cond) && then_branch.iter().chain(else_branch).all(is_pure_stmt)
        }
    }
}

fn bool_is_pure(b: &BoolExpr) -> bool {
    match &b.kind {
        BoolExprKind::Cmp(_, l, r) | BoolExprKind::Pred(_, l, r) => l.is_pure() && r.is_pure(),
        BoolExprKind::And(l, r) | BoolExprKind::Or(l, r) => bool_is_pure(l) && bool_is_pure(r),
        BoolExprKind::Not(i) => bool_is_pure(i),
        BoolExprKind::Ite(c, t, e) => bool_is_pure(c) && bool_is_pure(t) && bool_is_pure(e),
    }
}

fn rename_stmt(s: &mut Stmt, f: &dyn Fn(&str) -> String) {
    match s {
        Stmt::Assign { name, expr, .. } => {
            *name = f(name);
            rename_expr(expr, f);
        }
        Stmt::Assert { cond, .. } => rename_bool(cond, f),
        Stmt::If { cond, then_branch, else_branch, .. } => {
            rename_bool(cond, f);
            then_branch.iter_mut().chain(else_branch.iter_mut()).for_each(|s| rename_stmt(s, f));
        }
    }
}

fn rename_bool(b: &mut BoolExpr, f: &dyn Fn(&str) -> String) {
    match &mut b.kind {
        BoolExprKind::Cmp(_, l, r) | BoolExprKind::Pred(_, l, r) => {
            rename_expr(l, f);
            rename_expr(r, f);
        }
        BoolExprKind::And(l, r) | BoolExprKind::Or(l, r) => {
            rename_bool(l, f);
            rename_bool(r, f);
        }
        BoolExprKind::Not(i) => rename_bool(i, f),
        BoolExprKind::Ite(c, t, e) => {
            rename_bool(c, f);
            rename_bool(t, f);
            rename_bool(e, f);
        }
    }
}

fn rename_expr(e: &mut Expr, f: &dyn Fn(&str) -> String) {
    match &mut e.kind {
        ExprKind::UserVar(name) => *name = f(name),
        ExprKind::Binary(_, l, r) => {
            rename_expr(l, f);
            rename_expr(r, f);
        }
        _ => {}
    }
}

fn rewrite_stmt<R: Rng>(rng: &mut R, s: &mut Stmt, schema: &Schema, m: Mutation) {
    match s {
        Stmt::Assign { expr, .. } => rewrite_expr(rng, expr, schema, m),
        Stmt::Assert { cond, .. } => rewrite_bool(rng, cond, schema, m),
        Stmt::If { cond, then_branch, else_branch, .. } => {
            rewrite_bool(rng, cond, schema, m);
            for s in then_branch.iter_mut().chain(else_branch.iter_mut()) {
                rewrite_stmt(rng, s, schema, m);
            }
            if m == Mutation::SwapBranches && rng.gen_bool(0.7) {
                std::mem::swap(then_branch, else_branch);
                *cond = negate_condition(cond);
            }
        }
    }
}

/// `not c`, or `c` when the condition is already negated.
pub fn negate_condition(c: &BoolExpr) -> BoolExpr {
    match &c.kind {
        BoolExprKind::Not(inner) => (**inner).clone(),
        _ => BoolExpr::not(c.clone()),
    }
}

fn rewrite_bool<R: Rng>(rng: &mut R, b: &mut BoolExpr, schema: &Schema, m: Mutation) {
    match &mut b.kind {
        BoolExprKind::Cmp(op, l, r) => {
            rewrite_expr(rng, l, schema, m);
            rewrite_expr(rng, r, schema, m);
            if m == Mutation::FlipComparisons && rng.gen_bool(0.7) {
                *op = op.swap();
                std::mem::swap(l, r);
            }
        }
        BoolExprKind::Pred(_, l, r) => {
            rewrite_expr(rng, l, schema, m);
            rewrite_expr(rng, r, schema, m);
        }
        BoolExprKind::And(l, r) | BoolExprKind::Or(l, r) => {
            rewrite_bool(rng, l, schema, m);
            rewrite_bool(rng, r, schema, m);
            if m == Mutation::CommuteLogic && rng.gen_bool(0.7) {
                std::mem::swap(l, r);
            }
        }
        BoolExprKind::Not(i) => rewrite_bool(rng, i, schema, m),
        BoolExprKind::Ite(c, t, e) => {
            rewrite_bool(rng, c, schema, m);
            rewrite_bool(rng, t, schema, m);
            rewrite_bool(rng, e, schema, m);
            if m == Mutation::SwapBranches && rng.gen_bool(0.7) {
                std::mem::swap(t, e);
                **c = negate_condition(c);
            }
        }
    }
}

fn rewrite_expr<R: Rng>(rng: &mut R, e: &mut Expr, schema: &Schema, m: Mutation) {
    if let ExprKind::Binary(op, l, r) = &mut e.kind {
        rewrite_expr(rng, l, schema, m);
        rewrite_expr(rng, r, schema, m);
        let commutes = matches!(op, ArithOp::Add | ArithOp::Mul);
        if m == Mutation::CommuteArith && commutes && is_int(l, schema) && rng.gen_bool(0.7) {
            std::mem::swap(l, r);
        }
    }
}

fn is_int(e: &Expr, schema: &Schema) -> bool {
    match &e.kind {
        ExprKind::Lit(v) => v.ty() == ValueType::Int,
        ExprKind::DataVar(n) => schema.get(n) == Some(ValueType::Int),
        // User variables carry no declared type here; only commute when the
        // other side settles it.
        ExprKind::UserVar(_) => false,
        ExprKind::Binary(_, l, r) => is_int(l, schema) || is_int(r, schema),
    }
}

/// Small edits that usually change the meaning: replace one literal,
/// comparison operator or string predicate.
pub fn perturb<R: Rng>(rng: &mut R, c: &Constraint) -> Constraint {
    let mut out = c.clone();
    let mut sites = Vec::new();
    for s in &mut out.stmts {
        sites_stmt(s, &mut sites);
    }
    if sites.is_empty() {
        return out;
    }
    let i = rng.gen_range(0..sites.len());
    match &mut sites[i] {
        Site::Op(op) => **op = *CmpOp::ALL.choose(rng).unwrap(),
        Site::Pred(p) => **p = *StrPred::ALL.choose(rng).unwrap(),
        Site::Lit(v) => **v = random_literal(rng, v.ty()),
    }
    drop(sites);
    out
}

enum Site<'a> {
    Op(&'a mut CmpOp),
    Pred(&'a mut StrPred),
    Lit(&'a mut Value),
}

fn sites_stmt<'a>(s: &'a mut Stmt, out: &mut Vec<Site<'a>>) {
    match s {
        Stmt::Assign { expr, .. } => sites_expr(expr, out),
        Stmt::Assert { cond, .. } => sites_bool(cond, out),
        Stmt::If { cond, then_branch, else_branch, .. } => {
            sites_bool(cond, out);
            for s in then_branch.iter_mut().chain(else_branch.iter_mut()) {
                sites_stmt(s, out);
            }
        }
    }
}

fn sites_bool<'a>(b: &'a mut BoolExpr, out: &mut Vec<Site<'a>>) {
    match &mut b.kind {
        BoolExprKind::Cmp(op, l, r) => {
            out.push(Site::Op(op));
            sites_expr(l, out);
            sites_expr(r, out);
        }
        BoolExprKind::Pred(p, l, r) => {
            out.push(Site::Pred(p));
            sites_expr(l, out);
            sites_expr(r, out);
        }
        BoolExprKind::And(l, r) | BoolExprKind::Or(l, r) => {
            sites_bool(l, out);
            sites_bool(r, out);
        }
        BoolExprKind::Not(i) => sites_bool(i, out),
        BoolExprKind::Ite(c, t, e) => {
            sites_bool(c, out);
            sites_bool(t, out);
            sites_bool(e, out);
        }
    }
}

fn sites_expr<'a>(e: &'a mut Expr, out: &mut Vec<Site<'a>>) {
    match &mut e.kind {
        ExprKind::Lit(v) => out.push(Site::Lit(v)),
        ExprKind::Binary(_, l, r) => {
            sites_expr(l, out);
            sites_expr(r, out);
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{oracle_equivalent, typecheck, DomainSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_constraints_typecheck_and_respect_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let schema = random_schema(&mut rng, 4, TypeMix::default());
            let c = random_constraint(&mut rng, &schema, 40);
            assert!(c.node_count() <= 40);
            typecheck(&schema, &c).unwrap_or_else(|e| panic!("{e}\n{}", crate::lang::print_source(&schema, &c)));
        }
    }

    #[test]
    fn mutations_preserve_semantics() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let domain = DomainSpec { str_alphabet: vec!['I', 'N'], ..DomainSpec::default() };
        for _ in 0..150 {
            let schema = random_schema(&mut rng, 3, TypeMix::default());
            let c = random_constraint(&mut rng, &schema, 30);
            let m = mutate_equivalent(&mut rng, &c, &schema);
            let a = typecheck(&schema, &c).unwrap();
            let b = typecheck(&schema, &m).unwrap();
            assert!(oracle_equivalent(&a, &b, &domain).unwrap().is_equivalent());
        }
    }
}
