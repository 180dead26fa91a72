use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use serde_json::ser::Formatter;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub tol: f64,
}

impl Residual {
    pub fn passed(&self) -> bool {
        self.value.abs() <= self.tol
    }
}

/// Everything a command computed, in a form that serializes deterministically.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub residuals: BTreeMap<String, Residual>,
    pub notes: Vec<String>,
    tol_override: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str, tol_override: Option<f64>) -> Self {
        Self {
            command: command.to_string(),
            tol_override,
            ..Default::default()
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(name.to_string(), value.into());
        self
    }

    pub fn output(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(name.to_string(), value.into());
        self
    }

    /// Records `|value|` against `tol`, or against the override if one was given.
    pub fn residual(&mut self, name: &str, value: f64, tol: f64) -> &mut Self {
        let tol = self.tol_override.unwrap_or(tol);
        self.residuals.insert(
            name.to_string(),
            Residual {
                value: value.abs(),
                tol,
            },
        );
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.residuals.values().all(Residual::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &Residual)> {
        self.residuals.iter().filter(|(_, r)| !r.passed())
    }

    fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_value(&self) -> Value {
        let residuals: Map<String, Value> = self
            .residuals
            .iter()
            .map(|(name, r)| {
                let mut entry = Map::new();
                entry.insert("pass".into(), r.passed().into());
                entry.insert("tol".into(), r.tol.into());
                entry.insert("value".into(), r.value.into());
                (name.clone(), Value::Object(entry))
            })
            .collect();
        let mut root = Map::new();
        root.insert("command".into(), self.command.clone().into());
        root.insert(
            "inputs".into(),
            Value::Object(self.inputs.clone().into_iter().collect()),
        );
        root.insert("notes".into(), self.notes.clone().into());
        root.insert(
            "outputs".into(),
            Value::Object(self.outputs.clone().into_iter().collect()),
        );
        root.insert("residuals".into(), Value::Object(residuals));
        root.insert("status".into(), self.status().into());
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        to_json(&self.to_value())
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.status().to_uppercase());
        let width = self
            .inputs
            .keys()
            .chain(self.outputs.keys())
            .chain(self.residuals.keys())
            .map(String::len)
            .max()
            .unwrap_or(0);
        for (name, v) in &self.inputs {
            let _ = writeln!(out, "  input   {name:<width$}  {}", plain(v));
        }
        for (name, v) in &self.outputs {
            let _ = writeln!(out, "  output  {name:<width$}  {}", plain(v));
        }
        for (name, r) in &self.residuals {
            let mark = if r.passed() { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {mark:<6}  {name:<width$}  {:.3e} <= {:.0e}",
                r.value, r.tol
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note    {note}");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e12) {
                format!("{x:e}")
            } else {
                format!("{x}")
            }
        }
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(plain).collect::<Vec<_>>().join(", ")
        ),
        Value::Object(map) => format!(
            "{{{}}}",
            map.iter()
                .map(|(k, v)| format!("{k}: {}", plain(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => other.to_string(),
    }
}

/// Compact JSON with every float written with 17 significant digits.
struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    serde::Serialize::serialize(value, &mut ser)
        .expect("serializing a JSON value into memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
