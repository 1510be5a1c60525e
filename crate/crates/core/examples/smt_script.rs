//! Emit the SMT-LIB2 query for a pair and, if a solver is installed, run it.

use eqdac::smt::{emit, solve, SolverConfig, SolverResult};
use eqdac::{encode, parse, typecheck};

const A: &str = "int t.a; float t.f; assert(t.a * 2 == t.a + t.a); assert(t.f >= 0.5);";
const B: &str = "int t.a; float t.f; assert(not (t.f < 0.5));";

pub fn run_example() -> Option<SolverResult> {
    let (schema, ca) = parse(A).unwrap();
    let (_, cb) = parse(B).unwrap();
    let pa = encode(&typecheck(&schema, &ca).unwrap());
    let pb = encode(&typecheck(&schema, &cb).unwrap());
    let script = emit(&pa, &pb, &schema);
    print!("{}", script.text);
    match solve(&script, &SolverConfig::default()) {
        Ok(r) => {
            println!("; solver says {r:?}");
            Some(r)
        }
        Err(e) => {
            println!("; {e}");
            None
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
