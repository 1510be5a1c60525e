//! Parse a constraint, type-check it and run it on a record.

use eqdac::{evaluate, parse, typecheck, Interpretation, Value};

const SOURCE: &str = "
str t.ty;
int t.in;
int t.out;
s = 'IN';
if (contains(t.ty, s)) {
    assert(t.in > 0);
} else {
    assert(t.out > 0);
}
";

pub fn run_example() -> Vec<bool> {
    let (schema, c) = parse(SOURCE).expect("parses");
    let typed = typecheck(&schema, &c).expect("type-checks");
    let records = [
        Interpretation::new().with("t.ty", Value::Str("IN".into())).with("t.in", Value::Int(5)).with("t.out", Value::Int(0)),
        Interpretation::new().with("t.ty", Value::Str("OUT".into())).with("t.in", Value::Int(5)).with("t.out", Value::Int(0)),
    ];
    records
        .iter()
        .map(|r| {
            let ok = evaluate(&typed, r);
            println!("{r} -> {}", if ok { "accepted" } else { "rejected" });
            ok
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
