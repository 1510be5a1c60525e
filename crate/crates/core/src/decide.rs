//! The decision procedure: divergence, then isomorphism, then SMT.

use std::time::{Duration, Instant};

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::divergence::divergent;
use crate::isomorphism::CanonicalCode;
use crate::lang::{evaluate, Interpretation, Schema, TypedConstraint};
use crate::smt::{self, SolverConfig, SolverError, SolverResult};
use crate::symbolic::{encode, SymbolicCondition};

/// Which stages run. At least one must be enabled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageConfig {
    pub divergence: bool,
    pub isomorphism: bool,
    pub smt: bool,
    pub solver: SolverConfig,
}

impl Default for StageConfig {
    fn default() -> Self {
        StageConfig { divergence: true, isomorphism: true, smt: true, solver: SolverConfig::default() }
    }
}

impl StageConfig {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn smt_only() -> Self {
        StageConfig { divergence: false, isomorphism: false, ..Self::default() }
    }

    pub fn without_smt() -> Self {
        StageConfig { smt: false, ..Self::default() }
    }

    pub fn with_solver(mut self, solver: SolverConfig) -> Self {
        self.solver = solver;
        self
    }

    pub fn validate(&self) -> Result<(), DecideError> {
        if self.divergence || self.isomorphism || self.smt {
            Ok(())
        } else {
            Err(DecideError::NoStageEnabled)
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DecideError {
    #[error("at least one stage must be enabled")]
    NoStageEnabled,
    #[error("the constraints are declared over different schemas")]
    SchemaMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Equivalent,
    /// Carries an interpretation accepted by exactly one constraint.
    NotEquivalent(Interpretation),
    Unknown(String),
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Equivalent => "equivalent",
            Outcome::NotEquivalent(_) => "not_equivalent",
            Outcome::Unknown(_) => "unknown",
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, Outcome::Equivalent)
    }

    pub fn witness(&self) -> Option<&Interpretation> {
        match self {
            Outcome::NotEquivalent(w) => Some(w),
            _ => None,
        }
    }
}

/// Stage that produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Divergence,
    Isomorphism,
    Smt,
    None,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Divergence => "divergence",
            Stage::Isomorphism => "isomorphism",
            Stage::Smt => "smt",
            Stage::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTimings {
    pub encode: Duration,
    pub divergence: Duration,
    pub isomorphism: Duration,
    pub smt: Duration,
}

impl StageTimings {
    pub fn pre_smt(&self) -> Duration {
        self.encode + self.divergence + self.isomorphism
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stage: Stage,
    pub timings: StageTimings,
    pub smt_called: bool,
    /// Set when the solver could not be run or its output was unreadable.
    pub solver_error: Option<SolverError>,
}

impl Verdict {
    pub fn to_json(&self) -> Json {
        let ms = |d: Duration| d.as_secs_f64() * 1000.0;
        let mut obj = json!({
            "outcome": self.outcome.name(),
            "stage": self.stage.name(),
            "timings_ms": {
                "encode": ms(self.timings.encode),
                "divergence": ms(self.timings.divergence),
                "isomorphism": ms(self.timings.isomorphism),
                "smt": ms(self.timings.smt),
            },
            "smt_called": self.smt_called,
        });
        match &self.outcome {
            Outcome::NotEquivalent(w) => obj["witness"] = w.to_json(),
            Outcome::Unknown(reason) => obj["reason"] = json!(reason),
            Outcome::Equivalent => {}
        }
        obj
    }
}

/// Decides whether two typed constraints accept the same interpretations.
pub fn decide(c1: &TypedConstraint, c2: &TypedConstraint, cfg: &StageConfig) -> Result<Verdict, DecideError> {
    cfg.validate()?;
    if !c1.schema().same_variables(c2.schema()) {
        return Err(DecideError::SchemaMismatch);
    }
    let start = Instant::now();
    let phi1 = encode(c1);
    let phi2 = encode(c2);
    let encode_time = start.elapsed();
    let mut v = run(&phi1, &phi2, c1.schema(), cfg, Some((c1, c2)));
    v.timings.encode = encode_time;
    Ok(v)
}

/// Same pipeline on already encoded representations.
pub fn decide_reps(
    phi1: &SymbolicCondition,
    phi2: &SymbolicCondition,
    schema: &Schema,
    cfg: &StageConfig,
) -> Result<Verdict, DecideError> {
    cfg.validate()?;
    Ok(run(phi1, phi2, schema, cfg, None))
}

/// Like [`decide_reps`], with constraints available for witness checks and
/// canonical codes possibly precomputed.
pub(crate) fn decide_cached(
    phi1: &SymbolicCondition,
    phi2: &SymbolicCondition,
    codes: Option<(&CanonicalCode, &CanonicalCode)>,
    constraints: (&TypedConstraint, &TypedConstraint),
    cfg: &StageConfig,
) -> Verdict {
    run_with_codes(phi1, phi2, codes, constraints.0.schema(), cfg, Some(constraints))
}

fn run(
    phi1: &SymbolicCondition,
    phi2: &SymbolicCondition,
    schema: &Schema,
    cfg: &StageConfig,
    constraints: Option<(&TypedConstraint, &TypedConstraint)>,
) -> Verdict {
    run_with_codes(phi1, phi2, None, schema, cfg, constraints)
}

fn distinguishes(
    w: &Interpretation,
    phi1: &SymbolicCondition,
    phi2: &SymbolicCondition,
    constraints: Option<(&TypedConstraint, &TypedConstraint)>,
) -> bool {
    let reps = matches!((phi1.eval(w), phi2.eval(w)), (Some(a), Some(b)) if a != b);
    reps && constraints.is_none_or(|(c1, c2)| evaluate(c1, w) != evaluate(c2, w))
}

fn run_with_codes(
    phi1: &SymbolicCondition,
    phi2: &SymbolicCondition,
    codes: Option<(&CanonicalCode, &CanonicalCode)>,
    schema: &Schema,
    cfg: &StageConfig,
    constraints: Option<(&TypedConstraint, &TypedConstraint)>,
) -> Verdict {
    let mut v = Verdict {
        outcome: Outcome::Unknown("no enabled stage decided the pair".into()),
        stage: Stage::None,
        timings: StageTimings::default(),
        smt_called: false,
        solver_error: None,
    };

    if cfg.divergence {
        let t = Instant::now();
        let witness = divergent(phi1, phi2, schema).filter(|w| distinguishes(w, phi1, phi2, constraints));
        v.timings.divergence = t.elapsed();
        if let Some(w) = witness {
            v.outcome = Outcome::NotEquivalent(w);
            v.stage = Stage::Divergence;
            return v;
        }
    }

    if cfg.isomorphism {
        let t = Instant::now();
        let same = match codes {
            Some((a, b)) => a == b,
            None => CanonicalCode::of(phi1) == CanonicalCode::of(phi2),
        };
        v.timings.isomorphism = t.elapsed();
        if same {
            v.outcome = Outcome::Equivalent;
            v.stage = Stage::Isomorphism;
            return v;
        }
    }

    if cfg.smt {
        let t = Instant::now();
        let script = smt::emit(phi1, phi2, schema);
        let result = smt::solve(&script, &cfg.solver);
        v.timings.smt = t.elapsed();
        v.smt_called = true;
        match result {
            Ok(SolverResult::Unsat) => {
                v.outcome = Outcome::Equivalent;
                v.stage = Stage::Smt;
            }
            Ok(SolverResult::Sat(model)) => {
                if distinguishes(&model, phi1, phi2, constraints) {
                    v.outcome = Outcome::NotEquivalent(model);
                    v.stage = Stage::Smt;
                } else {
                    v.outcome = Outcome::Unknown(format!("solver model does not distinguish the pair: {model}"));
                }
            }
            Ok(SolverResult::Unknown(reason)) => v.outcome = Outcome::Unknown(reason),
            Err(e) => {
                v.outcome = Outcome::Unknown(e.to_string());
                v.solver_error = Some(e);
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse, typecheck};

    fn typed(src: &str) -> TypedConstraint {
        let (s, c) = parse(src).unwrap();
        typecheck(&s, &c).unwrap()
    }

    #[test]
    fn config_needs_a_stage() {
        let cfg = StageConfig { divergence: false, isomorphism: false, smt: false, ..StageConfig::default() };
        let a = typed("int t.a; assert(t.a > 0);");
        assert_eq!(decide(&a, &a, &cfg), Err(DecideError::NoStageEnabled));
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        let a = typed("int t.a; assert(t.a > 0);");
        let b = typed("int t.b; assert(t.b > 0);");
        assert_eq!(decide(&a, &b, &StageConfig::without_smt()), Err(DecideError::SchemaMismatch));
    }

    #[test]
    fn pre_smt_stages() {
        let a = typed("int t.a; assert(t.a > 0);");
        let b = typed("int t.a; assert(0 < t.a);");
        let c = typed("int t.a; assert(t.a > 1);");
        let cfg = StageConfig::without_smt();
        let v = decide(&a, &b, &cfg).unwrap();
        assert_eq!((v.outcome, v.stage), (Outcome::Equivalent, Stage::Isomorphism));
        let v = decide(&a, &c, &cfg).unwrap();
        assert_eq!(v.stage, Stage::Divergence);
        assert!(!v.smt_called);
        let w = v.outcome.witness().unwrap();
        assert_ne!(evaluate(&a, w), evaluate(&c, w));
    }

    #[test]
    fn divergence_only_on_equivalent_pair_is_unknown() {
        let a = typed("int t.a; assert(t.a > 0);");
        let cfg = StageConfig { isomorphism: false, smt: false, ..StageConfig::default() };
        let v = decide(&a, &a, &cfg).unwrap();
        assert!(matches!(v.outcome, Outcome::Unknown(_)));
        assert_eq!(v.stage, Stage::None);
    }

    #[test]
    fn unavailable_solver_is_unknown_with_error() {
        let a = typed("int t.a; int t.b; assert(t.a + t.b > 0);");
        let b = typed("int t.a; int t.b; assert(t.b + t.a > 0); assert(t.a == t.a);");
        let cfg = StageConfig::all().with_solver(SolverConfig::with_command("/nonexistent/solver"));
        let v = decide(&a, &b, &cfg).unwrap();
        assert!(matches!(v.outcome, Outcome::Unknown(_)));
        assert!(matches!(v.solver_error, Some(SolverError::Unavailable(_))));
        assert_eq!(v.to_json()["outcome"], "unknown");
    }
}
