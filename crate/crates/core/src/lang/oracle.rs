use thiserror::Error;

use super::{evaluate, Interpretation, Schema, TypedConstraint, Value, ValueType};

pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

/// Finite value domains used to enumerate interpretations.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainSpec {
    pub int_values: Vec<i64>,
    pub float_values: Vec<f64>,
    pub str_alphabet: Vec<char>,
    pub str_max_len: usize,
    /// Strings added to the generated ones (e.g. values of a witness that
    /// fall outside the alphabet).
    pub extra_strings: Vec<String>,
}

impl Default for DomainSpec {
    fn default() -> Self {
        DomainSpec {
            int_values: vec![-2, -1, 0, 1, 2],
            float_values: vec![-1.0, 0.0, 0.5, 1.0],
            str_alphabet: vec!['I', 'N', 'a'],
            str_max_len: 2,
            extra_strings: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("domain has {0} interpretations, above the cap of {1}")]
    DomainTooLarge(u128, u128),
    #[error("the constraints are declared over different schemas")]
    SchemaMismatch,
    #[error("invalid domain: {0}")]
    InvalidDomain(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Equivalent,
    /// First enumerated interpretation on which the constraints disagree.
    Counterexample(Interpretation),
}

impl OracleOutcome {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, OracleOutcome::Equivalent)
    }
}

impl DomainSpec {
    /// All strings over the alphabet up to the maximum length (shortest
    /// first), followed by the extra strings not already present.
    pub fn strings(&self) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..self.str_max_len {
            let mut next = Vec::with_capacity(layer.len() * self.str_alphabet.len());
            for prefix in &layer {
                for &c in &self.str_alphabet {
                    let mut s = prefix.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        for s in &self.extra_strings {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        out
    }

    pub fn values_for(&self, ty: ValueType) -> Vec<Value> {
        match ty {
            ValueType::Int => self.int_values.iter().map(|&v| Value::Int(v)).collect(),
            ValueType::Float => self.float_values.iter().map(|&v| Value::Float(v)).collect(),
            ValueType::Str => self.strings().into_iter().map(Value::Str).collect(),
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.int_values.is_empty() {
            return Err(OracleError::InvalidDomain("intValues is empty"));
        }
        if self.float_values.is_empty() {
            return Err(OracleError::InvalidDomain("floatValues is empty"));
        }
        if self.str_alphabet.is_empty() && self.str_max_len > 0 {
            return Err(OracleError::InvalidDomain("strAlphabet is empty"));
        }
        Ok(())
    }

    /// Number of total interpretations of `schema` over this domain.
    pub fn size_for(&self, schema: &Schema) -> u128 {
        let str_count = self.strings().len() as u128;
        schema
            .iter()
            .map(|(_, ty)| match ty {
                ValueType::Int => self.int_values.len() as u128,
                ValueType::Float => self.float_values.len() as u128,
                ValueType::Str => str_count,
            })
            .fold(1u128, |acc, n| acc.saturating_mul(n))
    }

    /// Every total interpretation of `schema`, in odometer order with the
    /// last declared variable changing fastest.
    pub fn interpretations(&self, schema: &Schema) -> Interpretations {
        let vars: Vec<(String, Vec<Value>)> =
            schema.iter().map(|(name, ty)| (name.to_string(), self.values_for(ty))).collect();
        let done = vars.iter().any(|(_, vals)| vals.is_empty());
        Interpretations { counters: vec![0; vars.len()], vars, done }
    }
}

pub struct Interpretations {
    vars: Vec<(String, Vec<Value>)>,
    counters: Vec<usize>,
    done: bool,
}

impl Iterator for Interpretations {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let current: Interpretation = self
            .vars
            .iter()
            .zip(&self.counters)
            .map(|((name, vals), &i)| (name.clone(), vals[i].clone()))
            .collect();
        let mut pos = self.counters.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.counters[pos] += 1;
            if self.counters[pos] < self.vars[pos].1.len() {
                break;
            }
            self.counters[pos] = 0;
        }
        Some(current)
    }
}

/// Brute-force equivalence over a finite domain, capped at
/// [`DEFAULT_ORACLE_CAP`] interpretations.
pub fn oracle_equivalent(
    c1: &TypedConstraint,
    c2: &TypedConstraint,
    domain: &DomainSpec,
) -> Result<OracleOutcome, OracleError> {
    oracle_equivalent_capped(c1, c2, domain, DEFAULT_ORACLE_CAP)
}

pub fn oracle_equivalent_capped(
    c1: &TypedConstraint,
    c2: &TypedConstraint,
    domain: &DomainSpec,
    cap: u128,
) -> Result<OracleOutcome, OracleError> {
    if !c1.schema().same_variables(c2.schema()) {
        return Err(OracleError::SchemaMismatch);
    }
    domain.validate()?;
    let size = domain.size_for(c1.schema());
    if size > cap {
        return Err(OracleError::DomainTooLarge(size, cap));
    }
    for interp in domain.interpretations(c1.schema()) {
        if evaluate(c1, &interp) != evaluate(c2, &interp) {
            return Ok(OracleOutcome::Counterexample(interp));
        }
    }
    Ok(OracleOutcome::Equivalent)
}
