//! Cluster a generated corpus and compare against its known classes.

use eqdac::repo::{cluster, generate_corpus, ClusterOptions, Repository};
use eqdac::StageConfig;

pub fn run_example() -> (usize, usize) {
    let corpus = generate_corpus(11, 6, 3);
    let repo = Repository::from_sources(corpus.iter().map(|e| (e.id.clone(), e.source.clone())).collect());
    let report = cluster(&repo, &StageConfig::all(), ClusterOptions::default());
    for c in &report.clusters {
        println!("{}", c.join(" "));
    }
    println!(
        "{} clusters, {} decide calls, {} solver calls, {} ms",
        report.clusters.len(),
        report.decide_calls,
        report.smt_calls,
        report.elapsed.as_millis()
    );
    (report.clusters.len(), report.redundant)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
