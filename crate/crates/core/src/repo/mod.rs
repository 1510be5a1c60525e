//! Repository tooling: a cached collection of constraints, equivalence
//! clustering, equivalence search and synthetic corpus generation.

mod cluster;
mod corpus;
pub mod random;
mod search;
mod union_find;

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::isomorphism::CanonicalCode;
use crate::lang::{parse, typecheck, TypedConstraint};
use crate::symbolic::{encode, SymbolicCondition};

pub use cluster::{cluster, ClusterOptions, ClusterReport};
pub use corpus::{corpus_schema, generate_corpus, ladder_pair, write_corpus, CorpusEntry};
pub use search::{search, SearchError, SearchMatch, SearchReport};
pub use union_find::UnionFind;

/// A constraint with its representation and canonical code, computed once.
#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub source: String,
    pub constraint: TypedConstraint,
    pub rep: SymbolicCondition,
    pub code: CanonicalCode,
}

#[derive(Debug, Default)]
pub struct Repository {
    entries: Vec<Entry>,
    rejected: Vec<(String, String)>,
    encode_calls: AtomicUsize,
}

impl Repository {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses, checks and encodes each source in parallel. Sources that fail
    /// to parse or type-check are listed in [`Repository::rejected`].
    pub fn from_sources(sources: Vec<(String, String)>) -> Self {
        let repo = Repository::new();
        let results: Vec<Result<Entry, (String, String)>> =
            sources.into_par_iter().map(|(id, src)| repo.prepare(id, src)).collect();
        let mut repo = repo;
        for r in results {
            match r {
                Ok(e) => repo.entries.push(e),
                Err(rej) => repo.rejected.push(rej),
            }
        }
        repo
    }

    /// Loads every `*.dc` file of `dir`, sorted by file name; ids are the
    /// file stems.
    pub fn load_dir(dir: &Path) -> std::io::Result<Self> {
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "dc"))
            .collect();
        paths.sort();
        let mut sources = Vec::with_capacity(paths.len());
        for p in paths {
            let id = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            sources.push((id, std::fs::read_to_string(&p)?));
        }
        Ok(Repository::from_sources(sources))
    }

    pub fn add(&mut self, id: &str, source: &str) -> Result<(), String> {
        match self.prepare(id.to_string(), source.to_string()) {
            Ok(e) => {
                self.entries.push(e);
                Ok(())
            }
            Err((id, msg)) => {
                self.rejected.push((id, msg.clone()));
                Err(msg)
            }
        }
    }

    fn prepare(&self, id: String, source: String) -> Result<Entry, (String, String)> {
        let (schema, c) = match parse(&source) {
            Ok(x) => x,
            Err(e) => return Err((id, e.to_string())),
        };
        let constraint = match typecheck(&schema, &c) {
            Ok(t) => t,
            Err(e) => return Err((id, e.to_string())),
        };
        let rep = self.encode_counted(&constraint);
        let code = CanonicalCode::of(&rep);
        Ok(Entry { id, source, constraint, rep, code })
    }

    pub(crate) fn encode_counted(&self, c: &TypedConstraint) -> SymbolicCondition {
        self.encode_calls.fetch_add(1, Ordering::Relaxed);
        encode(c)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sources that failed to parse or type-check, with the error message.
    pub fn rejected(&self) -> &[(String, String)] {
        &self.rejected
    }

    /// Number of times a constraint has been encoded through this repository.
    pub fn encode_calls(&self) -> usize {
        self.encode_calls.load(Ordering::Relaxed)
    }
}
