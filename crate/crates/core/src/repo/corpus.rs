//! Deterministic synthetic corpora with known equivalence classes.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::random::{apply_mutation, negate_condition, Mutation};
use crate::lang::{
    evaluate, print_source, typecheck, ArithOp, BoolExpr, CmpOp, Constraint, Expr, Interpretation, Schema, Stmt,
    StrPred, Value, ValueType,
};

const NUMERIC: [&str; 4] = ["t.a", "t.b", "t.c", "t.d"];
const RELATIONAL: [&str; 4] = ["t.id", "t.pid", "ut.oid", "ut.iid"];
const TY_VALUES: [&str; 4] = ["IN", "OUT", "INV", "x"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub source: String,
    /// Ground-truth equivalence class.
    pub cluster: usize,
    /// True for the variant whose equivalence to the rest of its class is
    /// relational (only the solver can confirm it).
    pub relational: bool,
}

/// Variables shared by every generated constraint.
pub fn corpus_schema() -> Schema {
    let mut s = Schema::new();
    for name in NUMERIC.iter().chain(&RELATIONAL).chain(&["t.tag"]) {
        s.declare(name, ValueType::Int).unwrap();
    }
    s.declare("t.ty", ValueType::Str).unwrap();
    s
}

/// `bases` mutually non-equivalent constraints, each followed by
/// `variants - 1` equivalent rewrites. Every fifth base uses a relational
/// pattern whose second variant pivots on a different attribute.
pub fn generate_corpus(seed: u64, bases: usize, variants: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let schema = corpus_schema();
    let mut out = Vec::with_capacity(bases * variants);
    for b in 0..bases {
        let relational = b % 5 == 4;
        let tag = vec![Stmt::assert(BoolExpr::cmp(CmpOp::Ne, Expr::data("t.tag"), Expr::lit(Value::Int(b as i64))))];
        let blocks = if relational {
            let mut vars = RELATIONAL;
            vars.shuffle(&mut rng);
            vec![tag, relational_block(vars, false)]
        } else {
            let mut blocks = random_blocks(&mut rng, &schema, b);
            let at = rng.gen_range(0..=blocks.len());
            blocks.insert(at, tag);
            blocks
        };
        for v in 0..variants.max(1) {
            let mut bl = blocks.clone();
            let pivoted = relational && v == 1;
            if pivoted {
                bl[1] = relational_block(extract_vars(&blocks[1]), true);
            }
            let c = if v == 0 { Constraint::new(bl.concat()) } else { mutate_blocks(&mut rng, bl, &schema) };
            out.push(CorpusEntry {
                id: format!("b{b:03}v{v}"),
                source: print_source(&schema, &c),
                cluster: b,
                relational: pivoted,
            });
        }
    }
    out
}

/// Writes one `.dc` file per entry plus `labels.json` mapping ids to
/// ground-truth classes.
pub fn write_corpus(dir: &Path, entries: &[CorpusEntry]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for e in entries {
        std::fs::write(dir.join(format!("{}.dc", e.id)), &e.source)?;
    }
    let labels: serde_json::Map<String, serde_json::Value> =
        entries.iter().map(|e| (e.id.clone(), json!({"cluster": e.cluster, "relational": e.relational}))).collect();
    std::fs::write(dir.join("labels.json"), serde_json::to_string_pretty(&labels)?)
}

fn mutate_blocks(rng: &mut ChaCha8Rng, mut blocks: Vec<Vec<Stmt>>, schema: &Schema) -> Constraint {
    let mut changed = false;
    if rng.gen_bool(0.5) {
        blocks.shuffle(rng);
        changed = true;
    }
    let mut c = Constraint::new(blocks.concat());
    for m in Mutation::ALL {
        if m != Mutation::PermuteIndependent && (rng.gen_bool(0.5) || (!changed && m == Mutation::FlipComparisons)) {
            c = apply_mutation(rng, &c, schema, m);
            changed = true;
        }
    }
    c
}

/// `A != B`, `C != D` and `{A, B} = {C, D}`, written as a case split on
/// `A == C`, or on `A == D` when `pivot_on_d` is set.
fn relational_block(v: [&str; 4], pivot_on_d: bool) -> Vec<Stmt> {
    let [a, b, c, d] = v.map(Expr::data);
    let eq = |x: &Expr, y: &Expr| BoolExpr::cmp(CmpOp::Eq, x.clone(), y.clone());
    let ne = |x: &Expr, y: &Expr| Stmt::assert(BoolExpr::cmp(CmpOp::Ne, x.clone(), y.clone()));
    let a_ = |x: BoolExpr| Stmt::assert(x);
    if pivot_on_d {
        vec![
            Stmt::if_else(eq(&a, &d), vec![a_(eq(&c, &b))], vec![a_(eq(&a, &c)), a_(eq(&b, &d))]),
            ne(&d, &c),
            ne(&b, &a),
        ]
    } else {
        vec![
            ne(&a, &b),
            ne(&c, &d),
            Stmt::if_else(eq(&a, &c), vec![a_(eq(&b, &d))], vec![a_(eq(&a, &d)), a_(eq(&b, &c))]),
        ]
    }
}

fn extract_vars(block: &[Stmt]) -> [&'static str; 4] {
    let name_of = |s: &Stmt, left: bool| -> &'static str {
        let Stmt::Assert { cond, .. } = s else { unreachable!() };
        let crate::lang::BoolExprKind::Cmp(_, l, r) = &cond.kind else { unreachable!() };
        let e = if left { l } else { r };
        let crate::lang::ExprKind::DataVar(n) = &e.kind else { unreachable!() };
        RELATIONAL.iter().find(|v| *v == n).unwrap()
    };
    [name_of(&block[0], true), name_of(&block[0], false), name_of(&block[1], true), name_of(&block[1], false)]
}

/// Two to four blocks that all hold under one random interpretation, so the
/// base stays satisfiable whatever value `t.tag` takes.
fn random_blocks(rng: &mut ChaCha8Rng, schema: &Schema, base: usize) -> Vec<Vec<Stmt>> {
    let mut seed = Interpretation::new();
    for name in NUMERIC.iter().chain(&RELATIONAL).chain(&["t.tag"]) {
        seed.insert(*name, Value::Int(rng.gen_range(-3..=3)));
    }
    seed.insert("t.ty", Value::Str(TY_VALUES.choose(rng).unwrap().to_string()));
    let n = rng.gen_range(2..=4);
    let mut blocks = Vec::new();
    let mut user = 0;
    while blocks.len() < n {
        user += 1;
        let block = random_block(rng, &format!("x{base}_{user}"));
        let Ok(typed) = typecheck(schema, &Constraint::new(block.clone())) else { continue };
        if evaluate(&typed, &seed) {
            blocks.push(block);
        }
    }
    blocks
}

fn num(rng: &mut ChaCha8Rng) -> Expr {
    if rng.gen_bool(0.75) {
        Expr::data(NUMERIC.choose(rng).unwrap())
    } else {
        Expr::lit(Value::Int(rng.gen_range(-2..=4)))
    }
}

fn sum(rng: &mut ChaCha8Rng) -> Expr {
    if rng.gen_bool(0.3) {
        let op = *[ArithOp::Add, ArithOp::Mul, ArithOp::Sub].choose(rng).unwrap();
        Expr::binary(op, Expr::data(NUMERIC.choose(rng).unwrap()), num(rng))
    } else {
        num(rng)
    }
}

fn comparison(rng: &mut ChaCha8Rng) -> BoolExpr {
    let op = *CmpOp::ALL.choose(rng).unwrap();
    BoolExpr::cmp(op, Expr::data(NUMERIC.choose(rng).unwrap()), sum(rng))
}

fn condition(rng: &mut ChaCha8Rng) -> BoolExpr {
    let c = if rng.gen_bool(0.4) {
        let p = *[StrPred::Contains, StrPred::PrefixOf, StrPred::SuffixOf].choose(rng).unwrap();
        BoolExpr::pred(p, Expr::data("t.ty"), Expr::lit(Value::Str(TY_VALUES.choose(rng).unwrap().to_string())))
    } else {
        comparison(rng)
    };
    if rng.gen_bool(0.3) {
        negate_condition(&c)
    } else {
        c
    }
}

fn random_block(rng: &mut ChaCha8Rng, user: &str) -> Vec<Stmt> {
    match rng.gen_range(0..5) {
        0 => vec![Stmt::assert(comparison(rng))],
        1 => {
            let (l, r) = (comparison(rng), condition(rng));
            let b = if rng.gen_bool(0.5) { BoolExpr::and(l, r) } else { BoolExpr::or(l, r) };
            vec![Stmt::assert(b)]
        }
        2 => {
            let cond = condition(rng);
            let (p, q) = (comparison(rng), comparison(rng));
            vec![Stmt::if_else(cond, vec![Stmt::assert(p)], vec![Stmt::assert(q)])]
        }
        3 => {
            let cond = condition(rng);
            let x = Expr::data(NUMERIC.choose(rng).unwrap());
            let y = num(rng);
            let z = Expr::data(NUMERIC.choose(rng).unwrap());
            let op = *[CmpOp::Eq, CmpOp::Ge, CmpOp::Lt, CmpOp::Ne].choose(rng).unwrap();
            vec![
                Stmt::if_else(
                    cond,
                    vec![Stmt::assign(user, Expr::binary(ArithOp::Add, x.clone(), y.clone()))],
                    vec![Stmt::assign(user, Expr::binary(ArithOp::Sub, x, y))],
                ),
                Stmt::assert(BoolExpr::cmp(op, Expr::user(user), z)),
            ]
        }
        _ => {
            let s = TY_VALUES.choose(rng).unwrap().to_string();
            vec![
                Stmt::assign(user, Expr::lit(Value::Str(s))),
                Stmt::if_else(
                    BoolExpr::pred(StrPred::Contains, Expr::data("t.ty"), Expr::user(user)),
                    vec![Stmt::assert(comparison(rng))],
                    vec![Stmt::assert(comparison(rng))],
                ),
            ]
        }
    }
}

/// Two equivalent constraints of about `nodes` syntax-tree nodes each,
/// built from independent blocks over fresh variables.
pub fn ladder_pair(nodes: usize, seed: u64) -> (Schema, Constraint, Constraint) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut schema = Schema::new();
    let mut stmts: Vec<Stmt> = Vec::new();
    let mut k = 0;
    let size = |s: &[Stmt]| s.iter().map(Stmt::node_count).sum::<usize>();
    while size(&stmts) + 4 <= nodes {
        let [a, b, c, s] = ["a", "b", "c", "s"].map(|p| format!("t.{p}{k}"));
        for v in [&a, &b, &c] {
            schema.declare(v, ValueType::Int).unwrap();
        }
        schema.declare(&s, ValueType::Str).unwrap();
        let user = format!("u{k}");
        let block = vec![
            Stmt::if_else(
                BoolExpr::not(BoolExpr::pred(StrPred::Contains, Expr::data(&s), Expr::lit(Value::Str("IN".into())))),
                vec![Stmt::assign(&user, Expr::binary(ArithOp::Add, Expr::data(&a), Expr::data(&b)))],
                vec![Stmt::assign(&user, Expr::binary(ArithOp::Sub, Expr::data(&a), Expr::data(&b)))],
            ),
            Stmt::assert(BoolExpr::cmp(CmpOp::Gt, Expr::user(&user), Expr::data(&c))),
            Stmt::assert(BoolExpr::or(
                BoolExpr::cmp(CmpOp::Ne, Expr::data(&a), Expr::lit(Value::Int(k))),
                BoolExpr::cmp(CmpOp::Lt, Expr::data(&c), Expr::lit(Value::Int(2))),
            )),
        ];
        if size(&stmts) + size(&block) <= nodes {
            stmts.extend(block);
        } else {
            stmts.push(Stmt::assert(BoolExpr::cmp(CmpOp::Gt, Expr::data(&a), Expr::lit(Value::Int(k)))));
        }
        k += 1;
    }
    let c1 = Constraint::new(stmts);
    let mut c2 = c1.clone();
    for m in Mutation::ALL {
        c2 = apply_mutation(&mut rng, &c2, &schema, m);
    }
    (schema, c1, c2)
}
