use std::fmt::Write as _;

use super::SmtScript;
use crate::lang::{ArithOp, CmpOp, Schema, StrPred, Value, ValueType};
use crate::symbolic::{SymbolicCondition, SymbolicTerm};

pub fn sort_name(ty: ValueType) -> &'static str {
    match ty {
        ValueType::Int => "(_ BitVec 64)",
        ValueType::Float => "(_ FloatingPoint 11 53)",
        ValueType::Str => "String",
    }
}

/// Script asking whether `phi1` and `phi2` can disagree: `unsat` means they
/// are equivalent, a model of `sat` is a distinguishing interpretation.
///
/// Variables are declared as `v0, v1, ...` in schema order.
pub fn emit(phi1: &SymbolicCondition, phi2: &SymbolicCondition, schema: &Schema) -> SmtScript {
    let var_map: Vec<(String, String, ValueType)> =
        schema.iter().enumerate().map(|(i, (name, ty))| (name.to_string(), format!("v{i}"), ty)).collect();
    let mut e = Emitter { var_map: &var_map, out: String::new() };
    e.out.push_str("(set-logic ALL)\n");
    for (name, sym, ty) in &var_map {
        let _ = writeln!(e.out, "(declare-const {sym} {}) ; {name}", sort_name(*ty));
    }
    for (label, phi) in [("b1", phi1), ("b2", phi2)] {
        let _ = write!(e.out, "(define-fun {label} () Bool ");
        e.cond(phi);
        e.out.push_str(")\n");
    }
    e.out.push_str("(assert (not (= b1 b2)))\n(check-sat)\n(get-model)\n");
    SmtScript { text: e.out, var_map }
}

struct Emitter<'a> {
    var_map: &'a [(String, String, ValueType)],
    out: String,
}

impl Emitter<'_> {
    fn cond(&mut self, phi: &SymbolicCondition) {
        match phi {
            SymbolicCondition::True => self.out.push_str("true"),
            SymbolicCondition::False => self.out.push_str("false"),
            SymbolicCondition::Not(inner) => {
                self.out.push_str("(not ");
                self.cond(inner);
                self.out.push(')');
            }
            SymbolicCondition::And(cs) | SymbolicCondition::Or(cs) => {
                self.out.push_str(if matches!(phi, SymbolicCondition::And(_)) { "(and" } else { "(or" });
                for c in cs {
                    self.out.push(' ');
                    self.cond(c);
                }
                self.out.push(')');
            }
            SymbolicCondition::AtomCmp(op, l, r) => self.compare(*op, l, r),
            SymbolicCondition::AtomStr(p, s, arg) => {
                // prefixOf(s, p) holds when s starts with p.
                let (head, first, second) = match p {
                    StrPred::PrefixOf => ("str.prefixof", arg, s),
                    StrPred::SuffixOf => ("str.suffixof", arg, s),
                    StrPred::Contains => ("str.contains", s, arg),
                    StrPred::Equals => ("=", s, arg),
                };
                self.app(head, first, second);
            }
        }
    }

    fn compare(&mut self, op: CmpOp, l: &SymbolicTerm, r: &SymbolicTerm) {
        match l.ty() {
            ValueType::Int => {
                let head = match op {
                    CmpOp::Gt => "bvsgt",
                    CmpOp::Lt => "bvslt",
                    CmpOp::Ge => "bvsge",
                    CmpOp::Le => "bvsle",
                    CmpOp::Eq => "=",
                    CmpOp::Ne => "distinct",
                };
                self.app(head, l, r);
            }
            ValueType::Float => match op {
                CmpOp::Gt => self.app("fp.gt", l, r),
                CmpOp::Lt => self.app("fp.lt", l, r),
                CmpOp::Eq => self.app("fp.eq", l, r),
                // `>=` is `not <`, `<=` is `not >`, `!=` is `not ==`.
                CmpOp::Ge => self.negated_app("fp.lt", l, r),
                CmpOp::Le => self.negated_app("fp.gt", l, r),
                CmpOp::Ne => self.negated_app("fp.eq", l, r),
            },
            ValueType::Str => match op {
                CmpOp::Eq => self.app("=", l, r),
                CmpOp::Ne => self.app("distinct", l, r),
                CmpOp::Lt => self.app("str.<", l, r),
                CmpOp::Le => self.app("str.<=", l, r),
                CmpOp::Gt => self.app("str.<", r, l),
                CmpOp::Ge => self.app("str.<=", r, l),
            },
        }
    }

    fn app(&mut self, head: &str, a: &SymbolicTerm, b: &SymbolicTerm) {
        let _ = write!(self.out, "({head} ");
        self.term(a);
        self.out.push(' ');
        self.term(b);
        self.out.push(')');
    }

    fn negated_app(&mut self, head: &str, a: &SymbolicTerm, b: &SymbolicTerm) {
        self.out.push_str("(not ");
        self.app(head, a, b);
        self.out.push(')');
    }

    fn term(&mut self, t: &SymbolicTerm) {
        match t {
            SymbolicTerm::DataVar { name, .. } => {
                let sym = self
                    .var_map
                    .iter()
                    .find(|(n, _, _)| n == name)
                    .map(|(_, s, _)| s.as_str())
                    .unwrap_or_else(|| panic!("data variable `{name}` is not in the schema"));
                self.out.push_str(sym);
            }
            SymbolicTerm::Literal(v) => self.out.push_str(&literal(v)),
            SymbolicTerm::Compound(op, l, r) => {
                if l.ty() == ValueType::Float {
                    let head = match op {
                        ArithOp::Add => "fp.add",
                        ArithOp::Sub => "fp.sub",
                        ArithOp::Mul => "fp.mul",
                        ArithOp::Div => "fp.div",
                    };
                    let _ = write!(self.out, "({head} RNE ");
                    self.term(l);
                    self.out.push(' ');
                    self.term(r);
                    self.out.push(')');
                } else {
                    let head = match op {
                        ArithOp::Add => "bvadd",
                        ArithOp::Sub => "bvsub",
                        ArithOp::Mul => "bvmul",
                        ArithOp::Div => "bvsdiv",
                    };
                    self.app(head, l, r);
                }
            }
        }
    }
}

/// SMT-LIB literal for a value; floats are bit-exact.
pub fn literal(v: &Value) -> String {
    match v {
        Value::Int(i) => format!("#x{:016x}", *i as u64),
        Value::Float(f) => {
            let bits = f.to_bits();
            format!("(fp #b{} #b{:011b} #b{:052b})", bits >> 63, (bits >> 52) & 0x7ff, bits & ((1 << 52) - 1))
        }
        Value::Str(s) => {
            let mut out = String::from("\"");
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\"\""),
                    ' '..='~' if c != '\\' => out.push(c),
                    _ => {
                        let _ = write!(out, "\\u{{{:x}}}", c as u32);
                    }
                }
            }
            out.push('"');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(literal(&Value::Int(-1)), "#xffffffffffffffff");
        assert_eq!(literal(&Value::Int(1)), "#x0000000000000001");
        assert_eq!(
            literal(&Value::Float(1.0)),
            "(fp #b0 #b01111111111 #b0000000000000000000000000000000000000000000000000000)"
        );
        assert_eq!(literal(&Value::Str("a\"b\\é".into())), "\"a\"\"b\\u{5c}\\u{e9}\"");
    }

    #[test]
    fn script_shape() {
        let schema = Schema::from_pairs([("t.a", ValueType::Int), ("t.s", ValueType::Str)]).unwrap();
        let a = SymbolicTerm::var("t.a", ValueType::Int);
        let phi1 = SymbolicCondition::cmp(CmpOp::Gt, a.clone(), SymbolicTerm::int(0));
        let phi2 = SymbolicCondition::pred(
            StrPred::PrefixOf,
            SymbolicTerm::var("t.s", ValueType::Str),
            SymbolicTerm::str("I"),
        );
        let s = emit(&phi1, &phi2, &schema);
        assert_eq!(
            s.text,
            "(set-logic ALL)\n\
             (declare-const v0 (_ BitVec 64)) ; t.a\n\
             (declare-const v1 String) ; t.s\n\
             (define-fun b1 () Bool (bvsgt v0 #x0000000000000000))\n\
             (define-fun b2 () Bool (str.prefixof \"I\" v1))\n\
             (assert (not (= b1 b2)))\n(check-sat)\n(get-model)\n"
        );
        assert_eq!(s.text.matches("(check-sat)").count(), 1);
    }
}
