//! Symbolic representation of a constraint: user variables disappear and
//! negations end up on string predicates only.

use eqdac::symbolic::{encode_stage1, normalize_negations};
use eqdac::{parse, typecheck};

const SOURCE: &str = "
str t.ty;
int t.in;
int t.out;
int t.new;
int t.old;
if (not contains(t.ty, 'IN')) {
    cash = t.out + t.new;
} else {
    cash = t.new - t.in;
}
assert(not (cash != t.old));
";

pub fn run_example() -> (String, String) {
    let (schema, c) = parse(SOURCE).unwrap();
    let typed = typecheck(&schema, &c).unwrap();
    let raw = encode_stage1(&typed);
    let nnf = normalize_negations(&raw);
    println!("evaluated:  {raw}");
    println!("normalized: {nnf}");
    (raw.to_string(), nnf.to_string())
}

#[allow(dead_code)]
fn main() {
    run_example();
}
