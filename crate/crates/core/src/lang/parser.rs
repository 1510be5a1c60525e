//! Recursive-descent parser for the `.dc` format.
//!
//! ```text
//! file  := decl* stmt*
//! decl  := ('int' | 'float' | 'str') dotted ';'
//! stmt  := ident '=' expr ';' | 'assert' '(' bexpr ')' ';'
//!        | 'if' '(' atom ')' block ('else' block)?
//! block := '{' stmt* '}'
//! bexpr := bexpr 'or' bexpr | bexpr 'and' bexpr | 'not' bexpr
//!        | 'ite' '(' atom ',' bexpr ',' bexpr ')' | cmp | '(' bexpr ')'
//! atom  := 'not'* cmp
//! cmp   := expr ('>'|'<'|'>='|'<='|'=='|'!=') expr | pred '(' expr ',' expr ')'
//! expr  := literal | dotted | ident | '(' expr ')' | expr ('+'|'-'|'*'|'/') expr
//! ```
//!
//! `and` binds tighter than `or`; `*` and `/` bind tighter than `+` and `-`;
//! all binary operators associate to the left.

use thiserror::Error;

use super::ast::{ArithOp, BoolExpr, BoolExprKind, CmpOp, Constraint, Expr, ExprKind, Span, Stmt, StrPred};
use super::lexer::{tokenize, Tok, Token};
use super::{Schema, Value, ValueType};

const KEYWORDS: &[&str] = &[
    "int", "float", "str", "assert", "if", "else", "and", "or", "not", "ite", "prefixOf", "suffixOf", "contains",
    "equals",
];

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(span: Span, message: impl Into<String>) -> Self {
        ParseError { line: span.line, col: span.col, message: message.into() }
    }
}

type PResult<T> = Result<T, ParseError>;

/// Parses a `.dc` source into its schema header and statement list.
pub fn parse(source: &str) -> Result<(Schema, Constraint), ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0 };
    let schema = p.header()?;
    let mut stmts = Vec::new();
    while !p.at(&Tok::Eof) {
        stmts.push(p.stmt()?);
    }
    Ok((schema, Constraint::new(stmts)))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn at(&self, tok: &Tok) -> bool {
        self.peek() == tok
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::new(self.span(), format!("expected {expected}, found {}", self.peek().describe())))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if self.at(&tok) {
            Ok(self.advance().span)
        } else {
            self.error(&tok.describe())
        }
    }

    fn header(&mut self) -> PResult<Schema> {
        let mut schema = Schema::new();
        loop {
            let ty = match self.peek() {
                Tok::Ident(s) if s == "int" => ValueType::Int,
                Tok::Ident(s) if s == "float" => ValueType::Float,
                Tok::Ident(s) if s == "str" => ValueType::Str,
                _ => break,
            };
            self.advance();
            let span = self.span();
            let name = match self.advance().tok {
                Tok::Dotted(name) => name,
                other => {
                    return Err(ParseError::new(
                        span,
                        format!("expected data variable `<table>.<attr>`, found {}", other.describe()),
                    ))
                }
            };
            schema.declare(&name, ty).map_err(|e| ParseError::new(span, e.to_string()))?;
            self.expect(Tok::Semi)?;
        }
        Ok(schema)
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let span = self.span();
        if self.at_keyword("assert") {
            self.advance();
            self.expect(Tok::LParen)?;
            let cond = self.bexpr()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::Semi)?;
            return Ok(Stmt::Assert { cond, span });
        }
        if self.at_keyword("if") {
            self.advance();
            self.expect(Tok::LParen)?;
            let cond = self.atom()?;
            self.expect(Tok::RParen)?;
            let then_branch = self.block()?;
            let else_branch = if self.at_keyword("else") {
                self.advance();
                self.block()?
            } else {
                Vec::new()
            };
            return Ok(Stmt::If { cond, then_branch, else_branch, span });
        }
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.advance();
                self.expect(Tok::Assign)?;
                let expr = self.expr()?;
                self.expect(Tok::Semi)?;
                Ok(Stmt::Assign { name, expr, span })
            }
            Tok::Ident(name) if ["int", "float", "str"].contains(&name.as_str()) => Err(ParseError::new(
                span,
                "declarations must precede all statements",
            )),
            _ => self.error("a statement"),
        }
    }

    /// A braced statement list, or a single statement without braces.
    fn block(&mut self) -> PResult<Vec<Stmt>> {
        if !self.at(&Tok::LBrace) {
            return Ok(vec![self.stmt()?]);
        }
        self.advance();
        let mut stmts = Vec::new();
        while !self.at(&Tok::RBrace) {
            if self.at(&Tok::Eof) {
                return self.error("`}`");
            }
            stmts.push(self.stmt()?);
        }
        self.advance();
        Ok(stmts)
    }

    fn atom(&mut self) -> PResult<BoolExpr> {
        let span = self.span();
        if self.at_keyword("not") {
            self.advance();
            let inner = self.atom()?;
            return Ok(BoolExpr::new(BoolExprKind::Not(Box::new(inner)), span));
        }
        self.cmp()
    }

    fn bexpr(&mut self) -> PResult<BoolExpr> {
        let mut lhs = self.conj()?;
        while self.at_keyword("or") {
            let span = self.advance().span;
            let rhs = self.conj()?;
            lhs = BoolExpr::new(BoolExprKind::Or(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> PResult<BoolExpr> {
        let mut lhs = self.unary()?;
        while self.at_keyword("and") {
            let span = self.advance().span;
            let rhs = self.unary()?;
            lhs = BoolExpr::new(BoolExprKind::And(Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<BoolExpr> {
        let span = self.span();
        if self.at_keyword("not") {
            self.advance();
            let inner = self.unary()?;
            return Ok(BoolExpr::new(BoolExprKind::Not(Box::new(inner)), span));
        }
        if self.at_keyword("ite") {
            self.advance();
            self.expect(Tok::LParen)?;
            let c = self.atom()?;
            self.expect(Tok::Comma)?;
            let t = self.bexpr()?;
            self.expect(Tok::Comma)?;
            let e = self.bexpr()?;
            self.expect(Tok::RParen)?;
            return Ok(BoolExpr::new(BoolExprKind::Ite(Box::new(c), Box::new(t), Box::new(e)), span));
        }
        if self.at(&Tok::LParen) {
            // `(` opens either an arithmetic operand of a comparison or a
            // parenthesized boolean expression; try the comparison first.
            let saved = self.pos;
            match self.cmp() {
                Ok(c) => return Ok(c),
                Err(cmp_err) => {
                    self.pos = saved;
                    self.advance();
                    return match self.bexpr() {
                        Ok(inner) => {
                            self.expect(Tok::RParen)?;
                            Ok(inner)
                        }
                        Err(inner_err) => Err(furthest(cmp_err, inner_err)),
                    };
                }
            }
        }
        self.cmp()
    }

    fn cmp(&mut self) -> PResult<BoolExpr> {
        let span = self.span();
        if let Tok::Ident(name) = self.peek().clone() {
            if self.peek_at(1) == &Tok::LParen {
                let Some(pred) = StrPred::from_name(&name) else {
                    return Err(ParseError::new(span, format!("unsupported predicate `{name}`")));
                };
                self.advance();
                self.advance();
                let l = self.expr()?;
                self.expect(Tok::Comma)?;
                let r = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(BoolExpr::new(BoolExprKind::Pred(pred, l, r), span));
            }
        }
        let l = self.expr()?;
        let op = match self.peek() {
            Tok::Gt => CmpOp::Gt,
            Tok::Lt => CmpOp::Lt,
            Tok::Ge => CmpOp::Ge,
            Tok::Le => CmpOp::Le,
            Tok::EqEq => CmpOp::Eq,
            Tok::Ne => CmpOp::Ne,
            _ => return self.error("a comparison operator"),
        };
        let op_span = self.advance().span;
        let r = self.expr()?;
        Ok(BoolExpr::new(BoolExprKind::Cmp(op, l, r), op_span))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => ArithOp::Add,
                Tok::Minus => ArithOp::Sub,
                _ => break,
            };
            let span = self.advance().span;
            let rhs = self.term()?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.primary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => ArithOp::Mul,
                Tok::Slash => ArithOp::Div,
                _ => break,
            };
            let span = self.advance().span;
            let rhs = self.primary()?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(text) => {
                self.advance();
                int_literal(&text, span)
            }
            Tok::Float(text) => {
                self.advance();
                float_literal(&text, span)
            }
            Tok::Minus => match self.peek_at(1).clone() {
                Tok::Int(text) => {
                    self.advance();
                    self.advance();
                    int_literal(&format!("-{text}"), span)
                }
                Tok::Float(text) => {
                    self.advance();
                    self.advance();
                    float_literal(&format!("-{text}"), span)
                }
                _ => self.error("an expression"),
            },
            Tok::Str(s) => {
                self.advance();
                Ok(Expr::new(ExprKind::Lit(Value::Str(s)), span))
            }
            Tok::Dotted(name) => {
                self.advance();
                Ok(Expr::new(ExprKind::DataVar(name), span))
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                if self.peek_at(1) == &Tok::LParen {
                    return Err(ParseError::new(span, format!("unsupported function `{name}`")));
                }
                self.advance();
                Ok(Expr::new(ExprKind::UserVar(name), span))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => self.error("an expression"),
        }
    }
}

fn furthest(a: ParseError, b: ParseError) -> ParseError {
    if (b.line, b.col) >= (a.line, a.col) {
        b
    } else {
        a
    }
}

fn int_literal(text: &str, span: Span) -> PResult<Expr> {
    text.parse::<i64>()
        .map(|v| Expr::new(ExprKind::Lit(Value::Int(v)), span))
        .map_err(|_| ParseError::new(span, format!("integer literal `{text}` does not fit in 64 bits")))
}

fn float_literal(text: &str, span: Span) -> PResult<Expr> {
    text.parse::<f64>()
        .map(|v| Expr::new(ExprKind::Lit(Value::Float(v)), span))
        .map_err(|_| ParseError::new(span, format!("bad float literal `{text}`")))
}
