use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::Duration;

use wait_timeout::ChildExt;

use super::sexpr::{parse_all, Sexp};
use super::{SmtScript, SolverError, SolverResult};
use crate::lang::{Interpretation, Value, ValueType};

pub const SOLVER_ENV: &str = "EQDAC_SOLVER";
pub const DEFAULT_SOLVER: &str = "z3 -in";
pub const DEFAULT_TIMEOUT_MS: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Program followed by its arguments; the script is written to stdin.
    pub command: Vec<String>,
    pub timeout_ms: u64,
    /// When set, every script is also written to this directory.
    pub dump_dir: Option<PathBuf>,
}

impl Default for SolverConfig {
    /// Reads the command from `EQDAC_SOLVER`, falling back to `z3 -in`.
    fn default() -> Self {
        let cmd = std::env::var(SOLVER_ENV).ok().filter(|s| !s.trim().is_empty());
        SolverConfig::with_command(cmd.as_deref().unwrap_or(DEFAULT_SOLVER))
    }
}

impl SolverConfig {
    pub fn with_command(cmd: &str) -> Self {
        SolverConfig {
            command: cmd.split_whitespace().map(str::to_string).collect(),
            timeout_ms: DEFAULT_TIMEOUT_MS,
            dump_dir: None,
        }
    }

    pub fn timeout(mut self, ms: u64) -> Self {
        self.timeout_ms = ms.max(1);
        self
    }
}

/// Runs the solver on `script` and interprets its answer.
pub fn solve(script: &SmtScript, cfg: &SolverConfig) -> Result<SolverResult, SolverError> {
    if let Some(dir) = &cfg.dump_dir {
        let mut h = DefaultHasher::new();
        script.text.hash(&mut h);
        let path = dir.join(format!("query-{:016x}.smt2", h.finish()));
        std::fs::create_dir_all(dir)
            .and_then(|_| std::fs::write(&path, &script.text))
            .map_err(|e| SolverError::Unavailable(format!("cannot write {}: {e}", path.display())))?;
    }
    let (program, args) = cfg
        .command
        .split_first()
        .ok_or_else(|| SolverError::Unavailable("empty solver command".into()))?;
    let mut child = Command::new(program)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| SolverError::Unavailable(format!("cannot start `{program}`: {e}")))?;

    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut buf = String::new();
        stdout.read_to_string(&mut buf).map(|_| buf)
    });
    {
        let mut stdin = child.stdin.take().expect("piped stdin");
        // A solver that exits early closes the pipe; its output tells why.
        let _ = stdin.write_all(script.text.as_bytes());
    }
    let timeout = Duration::from_millis(cfg.timeout_ms.max(1));
    match child.wait_timeout(timeout) {
        Ok(Some(_)) => {}
        Ok(None) => {
            let _ = child.kill();
            let _ = child.wait();
            let _ = reader.join();
            return Ok(SolverResult::Unknown("timeout".into()));
        }
        Err(e) => return Err(SolverError::Protocol(format!("waiting for solver: {e}"))),
    }
    let output = reader
        .join()
        .map_err(|_| SolverError::Protocol("reader thread panicked".into()))?
        .map_err(|e| SolverError::Protocol(format!("reading solver output: {e}")))?;
    parse_response(&output, script)
}

/// Interprets solver output: a status line followed, for `sat`, by a model.
pub fn parse_response(output: &str, script: &SmtScript) -> Result<SolverResult, SolverError> {
    let exprs = parse_all(output).map_err(SolverError::Protocol)?;
    let mut iter = exprs.iter();
    let status = iter
        .next()
        .and_then(Sexp::as_atom)
        .ok_or_else(|| SolverError::Protocol(format!("no status in solver output: {}", output.trim())))?;
    match status {
        "unsat" => Ok(SolverResult::Unsat),
        "unknown" => Ok(SolverResult::Unknown("solver returned unknown".into())),
        "sat" => {
            let mut model = Interpretation::new();
            for e in iter {
                collect_definitions(e, script, &mut model)?;
            }
            for (name, _, ty) in &script.var_map {
                if !model.contains(name) {
                    model.insert(name.clone(), ty.default_value());
                }
            }
            Ok(SolverResult::Sat(model))
        }
        other => Err(SolverError::Protocol(format!("unexpected solver status `{other}`"))),
    }
}

fn collect_definitions(e: &Sexp, script: &SmtScript, model: &mut Interpretation) -> Result<(), SolverError> {
    let Some(items) = e.as_list() else { return Ok(()) };
    if items.first().and_then(Sexp::as_atom) == Some("error") {
        return Err(SolverError::Protocol(format!("solver error: {e:?}")));
    }
    if items.len() == 5 && items[0].as_atom() == Some("define-fun") {
        let sym = items[1].as_atom().unwrap_or_default();
        if let Some((name, _, ty)) = script.var_map.iter().find(|(_, s, _)| s == sym) {
            let v = parse_value(&items[4], *ty)
                .ok_or_else(|| SolverError::Protocol(format!("cannot read value of {sym}: {:?}", items[4])))?;
            model.insert(name.clone(), v);
        }
        return Ok(());
    }
    for item in items {
        collect_definitions(item, script, model)?;
    }
    Ok(())
}

/// Reads a model value of the given sort.
pub fn parse_value(e: &Sexp, ty: ValueType) -> Option<Value> {
    match ty {
        ValueType::Int => parse_bits(e, 64).map(|b| Value::Int(b as i64)),
        ValueType::Float => parse_float(e).map(Value::Float),
        ValueType::Str => match e {
            Sexp::Str(s) => Some(Value::Str(s.clone())),
            _ => None,
        },
    }
}

/// `#x..`, `#b..` or `(_ bvN w)`, checked against the expected width.
fn parse_bits(e: &Sexp, width: u32) -> Option<u64> {
    match e {
        Sexp::Atom(a) => {
            if let Some(hex) = a.strip_prefix("#x") {
                (hex.len() as u32 * 4 == width).then(|| u64::from_str_radix(hex, 16).ok())?
            } else if let Some(bin) = a.strip_prefix("#b") {
                (bin.len() as u32 == width).then(|| u64::from_str_radix(bin, 2).ok())?
            } else {
                None
            }
        }
        Sexp::List(items) => match items.as_slice() {
            [Sexp::Atom(u), Sexp::Atom(bv), Sexp::Atom(w)] if u == "_" && bv.starts_with("bv") => {
                if w.parse::<u32>().ok()? != width {
                    return None;
                }
                let v: u128 = bv[2..].parse().ok()?;
                (v < (1u128 << width)).then_some(v as u64)
            }
            _ => None,
        },
        Sexp::Str(_) => None,
    }
}

fn parse_float(e: &Sexp) -> Option<f64> {
    let items = e.as_list()?;
    match items {
        [Sexp::Atom(fp), sign, exp, sig] if fp == "fp" => {
            let s = parse_bits(sign, 1)?;
            let x = parse_bits(exp, 11)?;
            let m = parse_bits(sig, 52)?;
            Some(f64::from_bits((s << 63) | (x << 52) | m))
        }
        [Sexp::Atom(u), Sexp::Atom(kind), Sexp::Atom(eb), Sexp::Atom(sb)] if u == "_" && eb == "11" && sb == "53" => {
            match kind.as_str() {
                "+zero" => Some(0.0),
                "-zero" => Some(-0.0),
                "+oo" => Some(f64::INFINITY),
                "-oo" => Some(f64::NEG_INFINITY),
                "NaN" => Some(f64::NAN),
                _ => None,
            }
        }
        _ => None,
    }
}
