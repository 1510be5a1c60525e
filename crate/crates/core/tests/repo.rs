mod common;

use std::collections::BTreeMap;

use common::*;
use eqdac::repo::{cluster, generate_corpus, search, write_corpus, ClusterOptions, Repository};
use eqdac::{decide, Outcome, StageConfig};

fn corpus_repo(seed: u64, bases: usize, variants: usize) -> Repository {
    let entries = generate_corpus(seed, bases, variants);
    Repository::from_sources(entries.into_iter().map(|e| (e.id, e.source)).collect())
}

fn config() -> StageConfig {
    if solver_available() {
        StageConfig::all()
    } else {
        StageConfig::without_smt()
    }
}

/// Clusters of size two or more from the transitive closure of pairwise
/// equivalence, as sorted id lists.
fn pairwise_closure(repo: &Repository, cfg: &StageConfig) -> Vec<Vec<String>> {
    let es = repo.entries();
    let mut parent: Vec<usize> = (0..es.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if decide(&es[i].constraint, &es[j].constraint, cfg).unwrap().outcome == Outcome::Equivalent {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, e) in es.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(e.id.clone());
    }
    let mut out: Vec<Vec<String>> = groups
        .into_values()
        .filter(|g| g.len() > 1)
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    out.sort();
    out
}

#[test]
fn clusters_match_pairwise_closure_with_and_without_skip() {
    let repo = corpus_repo(7, 5, 3);
    let cfg = config();
    let with_skip = cluster(&repo, &cfg, ClusterOptions::default());
    let without = cluster(&repo, &cfg, ClusterOptions { jobs: 1, transitivity_skip: false });
    assert_eq!(with_skip.normalized(), without.normalized());
    assert_eq!(with_skip.normalized(), pairwise_closure(&repo, &cfg));
    assert!(with_skip.decide_calls <= without.decide_calls);
    assert_eq!(with_skip.total, 15);
}

#[test]
fn each_constraint_is_encoded_once() {
    let repo = corpus_repo(3, 6, 3);
    assert_eq!(repo.encode_calls(), repo.len());
    let _ = cluster(&repo, &StageConfig::without_smt(), ClusterOptions::default());
    assert_eq!(repo.encode_calls(), repo.len());
}

#[test]
fn thread_count_does_not_change_clusters() {
    let repo = corpus_repo(9, 6, 2);
    let cfg = StageConfig::without_smt();
    let one = cluster(&repo, &cfg, ClusterOptions { jobs: 1, transitivity_skip: true });
    let many = cluster(&repo, &cfg, ClusterOptions { jobs: 0, transitivity_skip: true });
    assert_eq!(one.normalized(), many.normalized());
    assert_eq!(one.unknown, many.unknown);
}

#[test]
fn search_finds_cluster_mates() {
    let entries = generate_corpus(5, 4, 3);
    let (query, rest) = entries.split_first().unwrap();
    let repo = Repository::from_sources(rest.iter().map(|e| (e.id.clone(), e.source.clone())).collect());
    let report = search(&query.source, &repo, &config()).unwrap();
    let found: Vec<&str> = report.matches.iter().map(|m| m.id.as_str()).collect();
    for e in rest.iter().filter(|e| e.cluster == query.cluster && !e.relational) {
        assert!(found.contains(&e.id.as_str()), "{} missing from {found:?}", e.id);
    }
    for id in &found {
        let e = rest.iter().find(|e| e.id == *id).unwrap();
        assert_eq!(e.cluster, query.cluster, "{id} wrongly matched");
    }
    assert_eq!(report.candidates, rest.len());
}

#[test]
fn search_rejects_an_unparsable_query() {
    let repo = corpus_repo(1, 2, 1);
    assert!(search("int t.a; assert(t.a >);", &repo, &config()).is_err());
}

#[test]
fn load_dir_lists_bad_files_as_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let entries = generate_corpus(2, 2, 2);
    write_corpus(dir.path(), &entries).unwrap();
    std::fs::write(dir.path().join("broken.dc"), "int t.a; assert(t.b > 0);").unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let repo = Repository::load_dir(dir.path()).unwrap();
    assert_eq!(repo.len(), entries.len());
    assert_eq!(repo.rejected().len(), 1);
    assert_eq!(repo.rejected()[0].0, "broken");
    let report = cluster(&repo, &StageConfig::without_smt(), ClusterOptions::default());
    assert_eq!(report.rejected.len(), 1);
}

#[test]
fn report_json_has_the_documented_fields() {
    let repo = corpus_repo(4, 3, 2);
    let report = cluster(&repo, &StageConfig::without_smt(), ClusterOptions::default());
    let j = report.to_json();
    for key in ["clusters", "total", "singletons", "equivalent_pairs", "redundant", "decide_calls", "smt_calls", "unknown", "stages"] {
        assert!(j.get(key).is_some(), "missing {key}");
    }
    let members: usize = report.clusters.iter().map(Vec::len).sum();
    assert_eq!(report.singletons + members, report.total);
    assert_eq!(report.redundant, members - report.clusters.len());
}
