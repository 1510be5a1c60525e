use rayon::prelude::*;
use thiserror::Error;

use super::Repository;
use crate::decide::{decide_cached, Outcome, Stage, StageConfig, Verdict};
use crate::isomorphism::CanonicalCode;
use crate::lang::{parse, typecheck, ParseError, TypeError};
use crate::smt::SolverError;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("type error: {0}")]
    Type(#[from] TypeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchMatch {
    pub id: String,
    pub stage: Stage,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    /// Equivalent entries in repository order.
    pub matches: Vec<SearchMatch>,
    /// Same-schema entries the query was compared with.
    pub candidates: usize,
    pub smt_calls: usize,
    /// Ids whose comparison ended without a verdict.
    pub unknown: Vec<String>,
    pub solver_unavailable: usize,
}

/// Finds repository entries equivalent to `source`.
pub fn search(source: &str, repo: &Repository, cfg: &StageConfig) -> Result<SearchReport, SearchError> {
    let (schema, c) = parse(source)?;
    let query = typecheck(&schema, &c)?;
    let rep = repo.encode_counted(&query);
    let code = CanonicalCode::of(&rep);
    let results: Vec<(&str, Option<Verdict>)> = repo
        .entries()
        .par_iter()
        .filter(|e| e.constraint.schema().same_variables(&schema))
        .map(|e| {
            if cfg.isomorphism && e.code == code {
                return (e.id.as_str(), None);
            }
            (e.id.as_str(), Some(decide_cached(&rep, &e.rep, Some((&code, &e.code)), (&query, &e.constraint), cfg)))
        })
        .collect();
    let mut report = SearchReport { candidates: results.len(), ..Default::default() };
    for (id, v) in results {
        let Some(v) = v else {
            report.matches.push(SearchMatch { id: id.to_string(), stage: Stage::Isomorphism });
            continue;
        };
        report.smt_calls += usize::from(v.smt_called);
        report.solver_unavailable += usize::from(matches!(v.solver_error, Some(SolverError::Unavailable(_))));
        match v.outcome {
            Outcome::Equivalent => report.matches.push(SearchMatch { id: id.to_string(), stage: v.stage }),
            Outcome::Unknown(_) => report.unknown.push(id.to_string()),
            Outcome::NotEquivalent(_) => {}
        }
    }
    Ok(report)
}
