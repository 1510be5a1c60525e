use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use eqdac::repo::{cluster, generate_corpus, search, write_corpus, ClusterOptions, Repository};
use eqdac::smt::{SolverConfig, SolverError};
use eqdac::{decide, parse, typecheck, Outcome, StageConfig, TypedConstraint};

#[derive(Parser)]
#[command(name = "eqdac", version, about = "Equivalence checking for data constraints")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether two constraint files are equivalent.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        stages: StageFlags,
    },
    /// Partition a directory of constraints into equivalence clusters.
    Cluster {
        dir: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 uses one per CPU.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Decide every pair instead of one per known cluster.
        #[arg(long)]
        no_skip: bool,
        #[command(flatten)]
        stages: StageFlags,
    },
    /// List the constraints in a directory equivalent to a new one.
    Search {
        new: PathBuf,
        dir: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        stages: StageFlags,
    },
    /// Write a synthetic corpus with known equivalence classes.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        bases: usize,
        #[arg(long, default_value_t = 3)]
        variants: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct StageFlags {
    #[arg(long)]
    no_divergence: bool,
    #[arg(long)]
    no_isomorphism: bool,
    #[arg(long)]
    no_smt: bool,
    /// Solver command line; defaults to $EQDAC_SOLVER or `z3 -in`.
    #[arg(long)]
    solver_cmd: Option<String>,
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Also write every SMT-LIB2 script into this directory.
    #[arg(long)]
    dump_smt: Option<PathBuf>,
}

impl StageFlags {
    fn config(&self) -> Result<StageConfig, String> {
        let mut solver = match &self.solver_cmd {
            Some(cmd) => SolverConfig::with_command(cmd),
            None => SolverConfig::default(),
        };
        if let Some(ms) = self.timeout_ms {
            solver = solver.timeout(ms);
        }
        if let Some(dir) = &self.dump_smt {
            std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            solver.dump_dir = Some(dir.clone());
        }
        let cfg = StageConfig {
            divergence: !self.no_divergence,
            isomorphism: !self.no_isomorphism,
            smt: !self.no_smt,
            solver,
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

enum Failure {
    Usage(String),
    Solver(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

fn load(path: &Path) -> Result<TypedConstraint, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (schema, c) = parse(&src).map_err(|e| format!("{}: {e}", path.display()))?;
    typecheck(&schema, &c).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_repo(dir: &Path) -> Result<Repository, String> {
    let repo = Repository::load_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    for (id, err) in repo.rejected() {
        eprintln!("warning: skipping {id}: {err}");
    }
    Ok(repo)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Check { a, b, json, stages } => {
            let cfg = stages.config()?;
            let (c1, c2) = (load(&a)?, load(&b)?);
            let v = decide(&c1, &c2, &cfg).map_err(|e| e.to_string())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&v.to_json()).unwrap());
            } else {
                println!("{} (stage: {})", v.outcome.name(), v.stage.name());
                match &v.outcome {
                    Outcome::NotEquivalent(w) => println!("witness: {w}"),
                    Outcome::Unknown(reason) => println!("reason: {reason}"),
                    Outcome::Equivalent => {}
                }
            }
            if let Some(SolverError::Unavailable(msg)) = v.solver_error {
                return Err(Failure::Solver(msg));
            }
        }
        Cmd::Cluster { dir, out, jobs, no_skip, stages } => {
            let cfg = stages.config()?;
            let repo = load_repo(&dir)?;
            let report = cluster(&repo, &cfg, ClusterOptions { jobs, transitivity_skip: !no_skip });
            let text = serde_json::to_string_pretty(&report.to_json()).unwrap();
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))?,
                None => println!("{text}"),
            }
            if report.solver_unavailable > 0 {
                return Err(Failure::Solver(format!("{} solver calls could not start", report.solver_unavailable)));
            }
        }
        Cmd::Search { new, dir, json, stages } => {
            let cfg = stages.config()?;
            let repo = load_repo(&dir)?;
            let src = std::fs::read_to_string(&new).map_err(|e| format!("{}: {e}", new.display()))?;
            let report = search(&src, &repo, &cfg).map_err(|e| format!("{}: {e}", new.display()))?;
            if json {
                let matches: Vec<_> =
                    report.matches.iter().map(|m| json!({"id": m.id, "stage": m.stage.name()})).collect();
                let out = json!({
                    "matches": matches,
                    "candidates": report.candidates,
                    "smt_calls": report.smt_calls,
                    "unknown": report.unknown,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                for m in &report.matches {
                    println!("{}\t{}", m.id, m.stage.name());
                }
                for id in &report.unknown {
                    println!("{id}\tunknown");
                }
            }
            if report.solver_unavailable > 0 {
                return Err(Failure::Solver(format!("{} solver calls could not start", report.solver_unavailable)));
            }
        }
        Cmd::Gen { seed, bases, variants, out } => {
            let entries = generate_corpus(seed, bases, variants);
            write_corpus(&out, &entries).map_err(|e| format!("{}: {e}", out.display()))?;
            println!("wrote {} constraints to {}", entries.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("error: solver unavailable: {msg}");
            ExitCode::from(2)
        }
    }
}
