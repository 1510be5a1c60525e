use std::fmt;

use super::Value;

/// Source location (1-based line and column) of a syntax node.
///
/// Spans never take part in structural equality: two trees parsed from
/// differently formatted sources compare equal when their shapes agree.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Self {
        Span { line, col }
    }
}

impl PartialEq for Span {
    fn eq(&self, _other: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        }
    }

    pub(crate) fn precedence(self) -> u8 {
        match self {
            ArithOp::Add | ArithOp::Sub => 1,
            ArithOp::Mul | ArithOp::Div => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Gt,
    Lt,
    Ge,
    Le,
    Eq,
    Ne,
}

impl CmpOp {
    pub const ALL: [CmpOp; 6] = [CmpOp::Gt, CmpOp::Lt, CmpOp::Ge, CmpOp::Le, CmpOp::Eq, CmpOp::Ne];

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Gt => ">",
            CmpOp::Lt => "<",
            CmpOp::Ge => ">=",
            CmpOp::Le => "<=",
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
        }
    }

    /// Mathematical notation used by the formula printers.
    pub fn math_symbol(self) -> &'static str {
        match self {
            CmpOp::Gt => ">",
            CmpOp::Lt => "<",
            CmpOp::Ge => "≥",
            CmpOp::Le => "≤",
            CmpOp::Eq => "=",
            CmpOp::Ne => "≠",
        }
    }

    /// The operator `op'` with `¬(a op b) ⟺ a op' b`.
    pub fn negate(self) -> CmpOp {
        match self {
            CmpOp::Gt => CmpOp::Le,
            CmpOp::Le => CmpOp::Gt,
            CmpOp::Lt => CmpOp::Ge,
            CmpOp::Ge => CmpOp::Lt,
            CmpOp::Eq => CmpOp::Ne,
            CmpOp::Ne => CmpOp::Eq,
        }
    }

    /// The operator `op'` with `a op b ⟺ b op' a`.
    pub fn swap(self) -> CmpOp {
        match self {
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Ge => CmpOp::Le,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Eq => CmpOp::Eq,
            CmpOp::Ne => CmpOp::Ne,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrPred {
    PrefixOf,
    SuffixOf,
    Contains,
    Equals,
}

impl StrPred {
    pub const ALL: [StrPred; 4] = [StrPred::PrefixOf, StrPred::SuffixOf, StrPred::Contains, StrPred::Equals];

    pub fn name(self) -> &'static str {
        match self {
            StrPred::PrefixOf => "prefixOf",
            StrPred::SuffixOf => "suffixOf",
            StrPred::Contains => "contains",
            StrPred::Equals => "equals",
        }
    }

    pub fn from_name(name: &str) -> Option<StrPred> {
        StrPred::ALL.into_iter().find(|p| p.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Lit(Value),
    /// `<table>.<attr>`
    DataVar(String),
    /// A plain identifier bound by an earlier assignment.
    UserVar(String),
    Binary(ArithOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn lit(v: Value) -> Self {
        Expr::new(ExprKind::Lit(v), Span::default())
    }

    pub fn data(name: &str) -> Self {
        Expr::new(ExprKind::DataVar(name.to_string()), Span::default())
    }

    pub fn user(name: &str) -> Self {
        Expr::new(ExprKind::UserVar(name.to_string()), Span::default())
    }

    pub fn binary(op: ArithOp, l: Expr, r: Expr) -> Self {
        Expr::new(ExprKind::Binary(op, Box::new(l), Box::new(r)), Span::default())
    }

    pub fn node_count(&self) -> usize {
        match &self.kind {
            ExprKind::Binary(_, l, r) => 1 + l.node_count() + r.node_count(),
            _ => 1,
        }
    }

    /// True when the expression mentions no user-defined variable.
    pub fn is_pure(&self) -> bool {
        match &self.kind {
            ExprKind::Lit(_) | ExprKind::DataVar(_) => true,
            ExprKind::UserVar(_) => false,
            ExprKind::Binary(_, l, r) => l.is_pure() && r.is_pure(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoolExprKind {
    Cmp(CmpOp, Expr, Expr),
    Pred(StrPred, Expr, Expr),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Not(Box<BoolExpr>),
    /// `ite(cond, then, else)`; `cond` is an atomic condition.
    Ite(Box<BoolExpr>, Box<BoolExpr>, Box<BoolExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolExpr {
    pub kind: BoolExprKind,
    pub span: Span,
}

impl BoolExpr {
    pub fn new(kind: BoolExprKind, span: Span) -> Self {
        BoolExpr { kind, span }
    }

    pub fn cmp(op: CmpOp, l: Expr, r: Expr) -> Self {
        BoolExpr::new(BoolExprKind::Cmp(op, l, r), Span::default())
    }

    pub fn pred(p: StrPred, l: Expr, r: Expr) -> Self {
        BoolExpr::new(BoolExprKind::Pred(p, l, r), Span::default())
    }

    pub fn and(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::new(BoolExprKind::And(Box::new(l), Box::new(r)), Span::default())
    }

    pub fn or(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::new(BoolExprKind::Or(Box::new(l), Box::new(r)), Span::default())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(b: BoolExpr) -> Self {
        BoolExpr::new(BoolExprKind::Not(Box::new(b)), Span::default())
    }

    pub fn ite(c: BoolExpr, t: BoolExpr, e: BoolExpr) -> Self {
        BoolExpr::new(BoolExprKind::Ite(Box::new(c), Box::new(t), Box::new(e)), Span::default())
    }

    /// Atomic conditions are comparisons and string predicates, optionally
    /// under `not`.
    pub fn is_atomic_condition(&self) -> bool {
        match &self.kind {
            BoolExprKind::Cmp(..) | BoolExprKind::Pred(..) => true,
            BoolExprKind::Not(inner) => inner.is_atomic_condition(),
            _ => false,
        }
    }

    pub fn node_count(&self) -> usize {
        match &self.kind {
            BoolExprKind::Cmp(_, l, r) | BoolExprKind::Pred(_, l, r) => 1 + l.node_count() + r.node_count(),
            BoolExprKind::And(l, r) | BoolExprKind::Or(l, r) => 1 + l.node_count() + r.node_count(),
            BoolExprKind::Not(b) => 1 + b.node_count(),
            BoolExprKind::Ite(c, t, e) => 1 + c.node_count() + t.node_count() + e.node_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Assign { name: String, expr: Expr, span: Span },
    Assert { cond: BoolExpr, span: Span },
    If { cond: BoolExpr, then_branch: Vec<Stmt>, else_branch: Vec<Stmt>, span: Span },
}

impl Stmt {
    pub fn assign(name: &str, expr: Expr) -> Self {
        Stmt::Assign { name: name.to_string(), expr, span: Span::default() }
    }

    pub fn assert(cond: BoolExpr) -> Self {
        Stmt::Assert { cond, span: Span::default() }
    }

    pub fn if_else(cond: BoolExpr, then_branch: Vec<Stmt>, else_branch: Vec<Stmt>) -> Self {
        Stmt::If { cond, then_branch, else_branch, span: Span::default() }
    }

    pub fn span(&self) -> Span {
        match self {
            Stmt::Assign { span, .. } | Stmt::Assert { span, .. } | Stmt::If { span, .. } => *span,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Stmt::Assign { expr, .. } => 1 + expr.node_count(),
            Stmt::Assert { cond, .. } => 1 + cond.node_count(),
            Stmt::If { cond, then_branch, else_branch, .. } => {
                1 + cond.node_count()
                    + then_branch.iter().map(Stmt::node_count).sum::<usize>()
                    + else_branch.iter().map(Stmt::node_count).sum::<usize>()
            }
        }
    }
}

/// A parsed data constraint: statements executed in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraint {
    pub stmts: Vec<Stmt>,
}

impl Constraint {
    pub fn new(stmts: Vec<Stmt>) -> Self {
        Constraint { stmts }
    }

    /// Number of syntax-tree nodes (statements, boolean and arithmetic
    /// expressions).
    pub fn node_count(&self) -> usize {
        self.stmts.iter().map(Stmt::node_count).sum()
    }
}
