//! Look up existing equivalents of a newly written constraint.

use eqdac::repo::{search, Repository};
use eqdac::StageConfig;

const REPO: [(&str, &str); 3] = [
    ("positive", "int t.a; int t.b; assert(t.a > 0);"),
    ("ordered", "int t.a; int t.b; assert(t.a < t.b);"),
    ("positive2", "int t.a; int t.b; if (t.b > 0) { assert(t.a >= 1); } else { assert(0 < t.a); }"),
];

pub fn run_example() -> Vec<String> {
    let repo = Repository::from_sources(REPO.iter().map(|(id, s)| (id.to_string(), s.to_string())).collect());
    let report = search("int t.a; int t.b; assert(not (t.a <= 0));", &repo, &StageConfig::all()).unwrap();
    for m in &report.matches {
        println!("{} ({})", m.id, m.stage.name());
    }
    report.matches.into_iter().map(|m| m.id).collect()
}

#[allow(dead_code)]
fn main() {
    run_example();
}
