//! The full pipeline on the bundled fixtures, one verdict per pair.

use std::path::Path;

use eqdac::{decide, parse, typecheck, StageConfig, TypedConstraint};

fn load(name: &str) -> TypedConstraint {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let (s, c) = parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    typecheck(&s, &c).unwrap()
}

pub fn run_example() -> Vec<(&'static str, &'static str)> {
    let cfg = StageConfig::all();
    let mut out = Vec::new();
    for (a, b) in [("flow_oid.dc", "flow_iid.dc"), ("balance_direct.dc", "balance_temp.dc"), ("accounts_oid_first.dc", "accounts_iid_first.dc")] {
        let v = decide(&load(a), &load(b), &cfg).unwrap();
        println!("{a} vs {b}: {} by {}", v.outcome.name(), v.stage.name());
        if let Some(w) = v.outcome.witness() {
            println!("  witness {w}");
        }
        out.push((v.outcome.name(), v.stage.name()));
    }
    out
}

#[allow(dead_code)]
fn main() {
    run_example();
}
