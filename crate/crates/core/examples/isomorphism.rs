//! Prove equivalence by comparing canonical codes of the representations.

use eqdac::isomorphism::{build_tree, isomorphic, CanonicalCode};
use eqdac::{encode, parse, typecheck};

const A: &str = "int t.a; int t.b; assert(t.a + t.b < 3 and t.a != 0);";
const B: &str = "int t.a; int t.b; assert(t.a != 0); assert(3 > t.b + t.a);";

pub fn run_example() -> bool {
    let enc = |s: &str| {
        let (schema, c) = parse(s).unwrap();
        encode(&typecheck(&schema, &c).unwrap())
    };
    let (a, b) = (enc(A), enc(B));
    println!("tree A: {}", build_tree(&a));
    println!("tree B: {}", build_tree(&b));
    println!("code length: {} bytes", CanonicalCode::of(&a).len());
    isomorphic(&a, &b)
}

#[allow(dead_code)]
fn main() {
    println!("isomorphic: {}", run_example());
}
