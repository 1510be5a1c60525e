use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use super::{Repository, UnionFind};
use crate::decide::{decide_cached, Outcome, StageConfig, Verdict};
use crate::isomorphism::CanonicalCode;
use crate::smt::SolverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterOptions {
    /// Worker threads for pairwise decisions; 0 means one per CPU.
    pub jobs: usize,
    /// Compare each constraint against one member per known cluster instead
    /// of every other constraint.
    pub transitivity_skip: bool,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions { jobs: 0, transitivity_skip: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClusterReport {
    /// Clusters of two or more ids, each in repository order.
    pub clusters: Vec<Vec<String>>,
    pub total: usize,
    pub singletons: usize,
    pub equivalent_pairs: u64,
    pub redundant: usize,
    /// Pairs joined because their canonical codes coincide.
    pub code_merges: usize,
    pub decide_calls: usize,
    pub smt_calls: usize,
    pub unknown: usize,
    /// Calls whose solver could not be started.
    pub solver_unavailable: usize,
    /// Deciding stage of every pairwise call, including `none`.
    pub stages: BTreeMap<&'static str, usize>,
    pub rejected: Vec<(String, String)>,
    pub elapsed: Duration,
}

impl ClusterReport {
    pub fn to_json(&self) -> Json {
        json!({
            "clusters": self.clusters,
            "total": self.total,
            "singletons": self.singletons,
            "equivalent_pairs": self.equivalent_pairs,
            "redundant": self.redundant,
            "code_merges": self.code_merges,
            "decide_calls": self.decide_calls,
            "smt_calls": self.smt_calls,
            "unknown": self.unknown,
            "solver_unavailable": self.solver_unavailable,
            "stages": self.stages,
            "rejected": self.rejected.iter().map(|(id, e)| json!({"id": id, "error": e})).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed.as_secs_f64() * 1000.0,
        })
    }

    /// Clusters as sorted id sets, for order-independent comparison.
    pub fn normalized(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .clusters
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort();
                c
            })
            .collect();
        out.sort();
        out
    }
}

/// Partitions the repository into equivalence classes.
///
/// Only constraints over the same variables are compared. When the
/// isomorphism stage is enabled, constraints with equal canonical codes are
/// merged without a decision call.
pub fn cluster(repo: &Repository, cfg: &StageConfig, opts: ClusterOptions) -> ClusterReport {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool");
    let entries = repo.entries();
    let mut uf = UnionFind::new(entries.len());
    let mut report = ClusterReport { total: entries.len(), rejected: repo.rejected().to_vec(), ..Default::default() };

    let mut by_schema: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        by_schema.entry(e.constraint.schema().fingerprint()).or_default().push(i);
    }

    let decide_pair = |i: usize, j: usize| -> Verdict {
        let (a, b) = (&entries[i], &entries[j]);
        decide_cached(&a.rep, &b.rep, Some((&a.code, &b.code)), (&a.constraint, &b.constraint), cfg)
    };
    let record = |report: &mut ClusterReport, v: &Verdict| {
        report.decide_calls += 1;
        report.smt_calls += usize::from(v.smt_called);
        report.unknown += usize::from(matches!(v.outcome, Outcome::Unknown(_)));
        report.solver_unavailable += usize::from(matches!(v.solver_error, Some(SolverError::Unavailable(_))));
        *report.stages.entry(v.stage.name()).or_default() += 1;
    };

    for members in by_schema.values() {
        let mut heads: Vec<usize> = Vec::new();
        if cfg.isomorphism {
            let mut first_with_code: HashMap<&CanonicalCode, usize> = HashMap::new();
            for &i in members {
                match first_with_code.get(&entries[i].code) {
                    Some(&h) => {
                        uf.union(h, i);
                        report.code_merges += 1;
                    }
                    None => {
                        first_with_code.insert(&entries[i].code, i);
                        heads.push(i);
                    }
                }
            }
        } else {
            heads.clone_from(members);
        }

        if opts.transitivity_skip {
            // Each head is compared with one representative per cluster.
            let mut reps: Vec<usize> = Vec::new();
            for &i in &heads {
                let verdicts: Vec<(usize, Verdict)> = pool.install(|| {
                    reps.par_iter().map(|&r| (r, decide_pair(r, i))).collect()
                });
                let mut joined = false;
                for (r, v) in &verdicts {
                    record(&mut report, v);
                    if !joined && v.outcome.is_equivalent() {
                        uf.union(*r, i);
                        joined = true;
                    }
                }
                if !joined {
                    reps.push(i);
                }
            }
        } else {
            let pairs: Vec<(usize, usize)> =
                (0..heads.len()).flat_map(|a| ((a + 1)..heads.len()).map(move |b| (a, b))).collect();
            let verdicts: Vec<(usize, usize, Verdict)> = pool.install(|| {
                pairs.par_iter().map(|&(a, b)| (heads[a], heads[b], decide_pair(heads[a], heads[b]))).collect()
            });
            for (i, j, v) in &verdicts {
                record(&mut report, v);
                if v.outcome.is_equivalent() {
                    uf.union(*i, *j);
                }
            }
        }
    }

    for group in uf.groups() {
        if group.len() >= 2 {
            let n = group.len() as u64;
            report.equivalent_pairs += n * (n - 1) / 2;
            report.redundant += group.len() - 1;
            report.clusters.push(group.into_iter().map(|i| entries[i].id.clone()).collect());
        } else {
            report.singletons += 1;
        }
    }
    report.elapsed = start.elapsed();
    report
}
