//! Divergence analysis: refutes equivalence by building an interpretation
//! on which two representations disagree.
//!
//! The search is greedy. One formula is driven towards `false` and the
//! other towards `true` while sharing a single growing partial
//! interpretation. Conjunctions that must hold (and disjunctions that must
//! fail) are explored completely; otherwise only the clause with the
//! highest degrees of freedom is explored. Candidates are always checked
//! against both formulas before they are reported.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::lang::{CmpOp, Interpretation, Schema, StrPred, Value, ValueType};
use crate::semantics;
use crate::symbolic::{SymbolicCondition, SymbolicTerm};

/// Characters tried, in order, when a fresh string character is needed.
pub const WITNESS_ALPHABET: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// Lexical tokens of a formula: data variables that are not arithmetic
/// operands, literals, and comparison operators / string predicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LexicalProfile {
    pub data_vars: BTreeSet<String>,
    pub literals: BTreeSet<Value>,
    pub operators: BTreeSet<&'static str>,
}

impl LexicalProfile {
    pub fn of(phi: &SymbolicCondition) -> Self {
        let mut p = LexicalProfile::default();
        p.collect(phi);
        p
    }

    fn collect(&mut self, phi: &SymbolicCondition) {
        match phi {
            SymbolicCondition::AtomCmp(op, l, r) => {
                self.operators.insert(op.math_symbol());
                self.operand(l);
                self.operand(r);
            }
            SymbolicCondition::AtomStr(p, l, r) => {
                self.operators.insert(p.name());
                self.operand(l);
                self.operand(r);
            }
            other => other.children().iter().for_each(|c| self.collect(c)),
        }
    }

    fn operand(&mut self, t: &SymbolicTerm) {
        match t {
            SymbolicTerm::DataVar { name, .. } => {
                self.data_vars.insert(name.clone());
            }
            _ => self.literals_in(t),
        }
    }

    fn literals_in(&mut self, t: &SymbolicTerm) {
        match t {
            SymbolicTerm::Literal(v) => {
                self.literals.insert(v.clone());
            }
            SymbolicTerm::DataVar { .. } => {}
            SymbolicTerm::Compound(_, l, r) => {
                self.literals_in(l);
                self.literals_in(r);
            }
        }
    }

    /// Number of tokens of `self` missing from `other`, summed over the three
    /// token classes.
    pub fn unique_against(&self, other: &LexicalProfile) -> u64 {
        let vars = self.data_vars.difference(&other.data_vars).count();
        let lits = self.literals.difference(&other.literals).count();
        let ops = self.operators.difference(&other.operators).count();
        (vars + lits + ops) as u64
    }
}

/// Degrees of freedom of `clause` with respect to the other formula:
/// its unique lexical tokens divided by its height.
pub fn degrees_of_freedom(clause: &SymbolicCondition, other: &SymbolicCondition) -> Ratio<u64> {
    dof_against(clause, &LexicalProfile::of(other))
}

fn dof_against(clause: &SymbolicCondition, other: &LexicalProfile) -> Ratio<u64> {
    Ratio::new(LexicalProfile::of(clause).unique_against(other), clause.height() as u64)
}

/// Partial interpretation and success flag shared by one search attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploreState {
    pub partial: Interpretation,
    pub status: bool,
    /// Alternative clauses that may still be tried after a failed choice.
    pub retries: usize,
}

/// Retry budget of a fresh [`ExploreState`]; keeps exploration linear in
/// the formula size.
pub const RETRY_BUDGET: usize = 32;

impl Default for ExploreState {
    fn default() -> Self {
        ExploreState { partial: Interpretation::new(), status: true, retries: RETRY_BUDGET }
    }
}

/// Drives `phi` (a clause of `self_rep`) towards truth value `tv`, binding
/// free variables in `st.partial`. `other` is the profile of the opposite
/// representation, used to rank clauses.
pub fn explore(phi: &SymbolicCondition, other: &LexicalProfile, tv: bool, st: &mut ExploreState) {
    if !st.status {
        return;
    }
    match phi {
        SymbolicCondition::Not(inner) => explore(inner, other, !tv, st),
        _ if phi.is_atomic() => {
            if has_free_vars(phi, &st.partial) {
                match concretize(phi, &st.partial, tv) {
                    Ok(bindings) => {
                        for (name, value) in bindings {
                            st.partial.insert(name, value);
                        }
                    }
                    Err(Infeasible) => st.status = false,
                }
            } else {
                st.status = phi.eval(&st.partial) == Some(tv);
            }
        }
        SymbolicCondition::And(cs) | SymbolicCondition::Or(cs) => {
            let is_and = matches!(phi, SymbolicCondition::And(_));
            if is_and == tv {
                for c in cs {
                    explore(c, other, tv, st);
                }
            } else {
                // Clauses already fixed by the partial interpretation settle
                // the choice or are skipped.
                let mut open: Vec<(Ratio<u64>, &SymbolicCondition)> = Vec::new();
                for c in cs {
                    if has_free_vars(c, &st.partial) {
                        open.push((dof_against(c, other), c));
                    } else if c.eval(&st.partial) == Some(tv) {
                        return;
                    }
                }
                // Highest degrees of freedom first; leftmost wins ties.
                open.sort_by_key(|&(df, _)| std::cmp::Reverse(df));
                let Some(((_, first), rest)) = open.split_first() else {
                    st.status = false;
                    return;
                };
                let snapshot = st.partial.clone();
                explore(first, other, tv, st);
                for (_, c) in rest {
                    if st.status || st.retries == 0 {
                        break;
                    }
                    st.retries -= 1;
                    st.partial = snapshot.clone();
                    st.status = true;
                    explore(c, other, tv, st);
                }
            }
        }
        _ => unreachable!("every condition is atomic, a negation or a connective"),
    }
}

fn has_free_vars(phi: &SymbolicCondition, partial: &Interpretation) -> bool {
    phi.vars().iter().any(|v| !partial.contains(v))
}

/// The lightweight strategy cannot make the atom take the requested value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Infeasible;

/// New bindings, for variables of `atom` not bound in `partial`, that make
/// `atom` evaluate to `tv`.
///
/// One free variable standing alone on one side of the atom is solved for
/// ("pivot"); the remaining free variables are set to their type's default.
/// Every candidate is checked before it is returned.
pub fn concretize(
    atom: &SymbolicCondition,
    partial: &Interpretation,
    tv: bool,
) -> Result<Vec<(String, Value)>, Infeasible> {
    let (l, r) = match atom {
        SymbolicCondition::AtomCmp(_, l, r) | SymbolicCondition::AtomStr(_, l, r) => (l, r),
        SymbolicCondition::Not(inner) => return concretize(inner, partial, !tv),
        _ => return Err(Infeasible),
    };
    let mut free: Vec<(String, ValueType)> = Vec::new();
    collect_free(l, partial, &mut free);
    collect_free(r, partial, &mut free);

    for left_is_pivot in [true, false] {
        let (pivot_side, other_side) = if left_is_pivot { (l, r) } else { (r, l) };
        let SymbolicTerm::DataVar { name, .. } = pivot_side else { continue };
        if partial.contains(name) || other_side.mentions(name) {
            continue;
        }
        let mut trial = partial.clone();
        bind_defaults(&free, name, &mut trial);
        let Some(c) = other_side.value(&trial) else { continue };
        for candidate in pivot_candidates(atom, left_is_pivot, &c, tv) {
            trial.insert(name.clone(), candidate);
            if atom.eval(&trial) == Some(tv) {
                return Ok(new_bindings(&free, &trial));
            }
        }
    }

    let mut trial = partial.clone();
    bind_defaults(&free, "", &mut trial);
    if atom.eval(&trial) == Some(tv) {
        return Ok(new_bindings(&free, &trial));
    }
    // No pivot worked: vary one free variable at a time over a few probes.
    let mut literals = Vec::new();
    collect_literals(l, &mut literals);
    collect_literals(r, &mut literals);
    for (name, ty) in &free {
        for v in probes(*ty, &literals) {
            trial.insert(name.clone(), v);
            if atom.eval(&trial) == Some(tv) {
                return Ok(new_bindings(&free, &trial));
            }
        }
        trial.insert(name.clone(), ty.default_value());
    }
    Err(Infeasible)
}

fn collect_literals(t: &SymbolicTerm, out: &mut Vec<Value>) {
    match t {
        SymbolicTerm::Literal(v) => out.push(v.clone()),
        SymbolicTerm::DataVar { .. } => {}
        SymbolicTerm::Compound(_, a, b) => {
            collect_literals(a, out);
            collect_literals(b, out);
        }
    }
}

fn probes(ty: ValueType, literals: &[Value]) -> Vec<Value> {
    let mut out = match ty {
        ValueType::Int => vec![Value::Int(1), Value::Int(-1), Value::Int(2)],
        ValueType::Float => vec![Value::Float(1.0), Value::Float(-1.0), Value::Float(0.5)],
        ValueType::Str => vec![Value::Str("a".into())],
    };
    for lit in literals.iter().filter(|v| v.ty() == ty) {
        out.push(lit.clone());
        if let Value::Int(c) = lit {
            out.extend([Value::Int(c.wrapping_add(1)), Value::Int(c.wrapping_sub(1))]);
        }
    }
    out
}

fn collect_free(t: &SymbolicTerm, partial: &Interpretation, out: &mut Vec<(String, ValueType)>) {
    match t {
        SymbolicTerm::DataVar { name, ty } => {
            if !partial.contains(name) && !out.iter().any(|(n, _)| n == name) {
                out.push((name.clone(), *ty));
            }
        }
        SymbolicTerm::Literal(_) => {}
        SymbolicTerm::Compound(_, a, b) => {
            collect_free(a, partial, out);
            collect_free(b, partial, out);
        }
    }
}

fn bind_defaults(free: &[(String, ValueType)], except: &str, interp: &mut Interpretation) {
    for (name, ty) in free {
        if name != except {
            interp.insert(name.clone(), ty.default_value());
        }
    }
}

fn new_bindings(free: &[(String, ValueType)], interp: &Interpretation) -> Vec<(String, Value)> {
    free.iter().map(|(name, _)| (name.clone(), interp.get(name).cloned().unwrap())).collect()
}

/// Candidate values for the pivot variable `x`, given the ground value `c`
/// of the other side.
fn pivot_candidates(atom: &SymbolicCondition, left_is_pivot: bool, c: &Value, tv: bool) -> Vec<Value> {
    match atom {
        SymbolicCondition::AtomCmp(op, ..) => {
            let op = if tv { *op } else { op.negate() };
            // Rewrite as `x op c`.
            let op = if left_is_pivot { op } else { op.swap() };
            cmp_candidates(op, c).into_iter().collect()
        }
        SymbolicCondition::AtomStr(p, ..) => {
            let Value::Str(c) = c else { return Vec::new() };
            str_candidates(*p, left_is_pivot, c, tv)
        }
        _ => Vec::new(),
    }
}

fn cmp_candidates(op: CmpOp, c: &Value) -> Option<Value> {
    match c {
        Value::Int(c) => {
            let c = *c;
            let v = match op {
                CmpOp::Eq | CmpOp::Ge | CmpOp::Le => Some(c),
                CmpOp::Ne => Some(c.wrapping_add(1)),
                CmpOp::Gt => c.checked_add(1),
                CmpOp::Lt => c.checked_sub(1),
            };
            v.map(Value::Int)
        }
        Value::Float(c) => {
            let c = *c;
            let v = match op {
                CmpOp::Eq | CmpOp::Ge | CmpOp::Le => c,
                CmpOp::Ne if c.is_nan() => 0.0,
                CmpOp::Ne if c == f64::INFINITY => c.next_down(),
                CmpOp::Ne | CmpOp::Gt => c.next_up(),
                CmpOp::Lt => c.next_down(),
            };
            Some(Value::Float(v))
        }
        Value::Str(c) => {
            let v = match op {
                CmpOp::Eq | CmpOp::Ge | CmpOp::Le => c.clone(),
                CmpOp::Ne | CmpOp::Gt => format!("{c}a"),
                CmpOp::Lt => {
                    let mut s = c.clone();
                    s.pop()?;
                    s
                }
            };
            Some(Value::Str(v))
        }
    }
}

fn str_candidates(p: StrPred, left_is_pivot: bool, c: &str, tv: bool) -> Vec<Value> {
    if tv {
        // A string starts with, ends with, contains and equals itself.
        return vec![Value::Str(c.to_string())];
    }
    let fresh = WITNESS_ALPHABET.chars();
    if left_is_pivot {
        // `p(x, c)` false: a one-character string avoiding `c`.
        fresh
            .map(|ch| ch.to_string())
            .find(|s| !semantics::string_pred(p, s, c))
            .map(Value::Str)
            .into_iter()
            .collect()
    } else {
        // `p(c, x)` false: a string longer than `c` cannot occur in it.
        fresh.take(1).map(|ch| Value::Str(format!("{c}{ch}"))).collect()
    }
}

/// Searches for an interpretation distinguishing two representations.
///
/// Tries to make `phi1` false and `phi2` true, then the reverse. The
/// returned interpretation binds every schema variable and has been
/// checked to satisfy exactly one of the formulas.
pub fn divergent(phi1: &SymbolicCondition, phi2: &SymbolicCondition, schema: &Schema) -> Option<Interpretation> {
    let p1 = LexicalProfile::of(phi1);
    let p2 = LexicalProfile::of(phi2);
    for (falsify, falsify_other, satisfy, satisfy_other) in [(phi1, &p2, phi2, &p1), (phi2, &p1, phi1, &p2)] {
        let mut st = ExploreState::default();
        explore(falsify, falsify_other, false, &mut st);
        explore(satisfy, satisfy_other, true, &mut st);
        if !st.status {
            continue;
        }
        let mut witness = st.partial;
        witness.complete(schema);
        if let (Some(a), Some(b)) = (phi1.eval(&witness), phi2.eval(&witness)) {
            if a != b {
                return Some(witness);
            }
        }
    }
    None
}
