//! Refute equivalence by constructing a record that only one constraint accepts.

use eqdac::divergence::{degrees_of_freedom, divergent};
use eqdac::{encode, evaluate, parse, typecheck, Interpretation};

const A: &str = "int t.amt; int t.oid; int t.iid; assert(t.amt > 0); assert(t.oid != 0);";
const B: &str = "int t.amt; int t.oid; int t.iid; assert(t.amt > 0); assert(t.iid != 0);";

pub fn run_example() -> Interpretation {
    let (sa, ca) = parse(A).unwrap();
    let (sb, cb) = parse(B).unwrap();
    let (ta, tb) = (typecheck(&sa, &ca).unwrap(), typecheck(&sb, &cb).unwrap());
    let (pa, pb) = (encode(&ta), encode(&tb));
    for clause in pa.children() {
        println!("DF({clause}) = {}", degrees_of_freedom(clause, &pb));
    }
    let w = divergent(&pa, &pb, &sa).expect("a witness exists");
    println!("witness {w}: A={} B={}", evaluate(&ta, &w), evaluate(&tb, &w));
    w
}

#[allow(dead_code)]
fn main() {
    run_example();
}
