use std::path::Path;

use num_complex::Complex64;
use serde_json::{Map, Value};

use ising_lab::complex::{format_complex, format_real};
use ising_lab::output::write_atomic;
use ising_lab::Result;

use crate::Format;

/// A finished single-document report and whether its checks passed.
pub struct Report {
    pub value: Value,
    pub ok: bool,
}

impl Report {
    pub fn new(value: Value, ok: bool) -> Self {
        Report { value, ok }
    }

    pub fn info(value: Value) -> Self {
        Report { value, ok: true }
    }

    pub fn emit(self, format: Format, out: Option<&Path>) -> Result<bool> {
        let text = match format {
            Format::Json => json_text(&self.value)?,
            Format::Table => table_text(&self.value),
        };
        write_or_print(&text, out)?;
        Ok(self.ok)
    }
}

pub fn json_text(value: &Value) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn write_or_print(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Top-level keys in one aligned column; nested values stay compact JSON.
pub fn table_text(value: &Value) -> String {
    let Value::Object(map) = value else {
        return format!("{}\n", scalar(value));
    };
    let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    map.iter()
        .map(|(k, v)| format!("{k:<width$}  {}\n", scalar(v)))
        .collect()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), |f| {
            if n.is_f64() {
                format_real(f)
            } else {
                n.to_string()
            }
        }),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn complex(z: Complex64) -> Value {
    Value::String(format_complex(z))
}

/// `f64` as a JSON number, or `null` when it is not finite.
pub fn real(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
