use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value as Json};

use super::{Schema, Value, ValueType};

/// Assignment of concrete values to data variables.
///
/// A total interpretation binds every variable of its schema; a partial one
/// binds a subset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    bindings: BTreeMap<String, Value>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, value: Value) {
        self.bindings.insert(name.into(), value);
    }

    pub fn with(mut self, name: &str, value: Value) -> Self {
        self.insert(name, value);
        self
    }

    pub fn contains(&self, name: &str) -> bool {
        self.bindings.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> + '_ {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// True when every schema variable is bound to a value of its type.
    pub fn is_total_for(&self, schema: &Schema) -> bool {
        schema.iter().all(|(name, ty)| self.get(name).is_some_and(|v| v.ty() == ty))
    }

    /// Binds every unbound schema variable to its type's default value
    /// (`0`, `0.0` or the empty string).
    pub fn complete(&mut self, schema: &Schema) {
        for (name, ty) in schema.iter() {
            if !self.contains(name) {
                self.insert(name, ty.default_value());
            }
        }
    }

    /// `{"t.a": {"type": "int", "value": "0"}, ...}`; numbers are encoded as
    /// decimal strings so 64-bit integers and non-finite floats survive.
    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        for (name, value) in &self.bindings {
            let text = match value {
                Value::Int(v) => v.to_string(),
                Value::Float(v) => format!("{v:?}"),
                Value::Str(s) => s.clone(),
            };
            map.insert(name.clone(), json!({ "type": value.ty().keyword(), "value": text }));
        }
        Json::Object(map)
    }

    pub fn from_json(json: &Json) -> Result<Self, String> {
        let obj = json.as_object().ok_or("interpretation must be a JSON object")?;
        let mut out = Interpretation::new();
        for (name, entry) in obj {
            let ty = entry.get("type").and_then(Json::as_str).ok_or_else(|| format!("`{name}`: missing type"))?;
            let text = entry.get("value").and_then(Json::as_str).ok_or_else(|| format!("`{name}`: missing value"))?;
            let value = match ty {
                "int" => Value::Int(text.parse().map_err(|_| format!("`{name}`: bad int `{text}`"))?),
                "float" => Value::Float(text.parse().map_err(|_| format!("`{name}`: bad float `{text}`"))?),
                "str" => Value::Str(text.to_string()),
                other => return Err(format!("`{name}`: unknown type `{other}`")),
            };
            out.insert(name.clone(), value);
        }
        Ok(out)
    }
}

impl FromIterator<(String, Value)> for Interpretation {
    fn from_iter<T: IntoIterator<Item = (String, Value)>>(iter: T) -> Self {
        Interpretation { bindings: iter.into_iter().collect() }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (name, value)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name} ↦ {value}")?;
        }
        f.write_str("]")
    }
}

impl ValueType {
    pub fn from_keyword(kw: &str) -> Option<ValueType> {
        match kw {
            "int" => Some(ValueType::Int),
            "float" => Some(ValueType::Float),
            "str" => Some(ValueType::Str),
            _ => None,
        }
    }
}
