use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::decide::Property;
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Matrix, Rational};
use crate::system::SystemSextuple;

/// Regression metadata for the witness solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedWitness {
    pub solvable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proper: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
}

/// A named plant with optional regression expectations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub name: String,
    pub description: Option<String>,
    pub system: SystemSextuple,
    pub expected: BTreeMap<Property, bool>,
    pub expected_witness: Option<ExpectedWitness>,
}

const KEYS: [&str; 11] = [
    "name",
    "description",
    "m",
    "A",
    "B",
    "C",
    "D",
    "E",
    "F",
    "expected",
    "expected_witness",
];

fn invalid(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidSystem(format!("field {field}: {msg}"))
}

fn literal(v: &Value, path: &str) -> Result<Rational> {
    let text = match v {
        // arbitrary_precision keeps the literal text, so decimals stay exact
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(invalid(path, format!("expected a number or \"p/q\" string, found {other}"))),
    };
    parse_rational(&text).map_err(|_| invalid(path, format!("cannot read {text:?} as a rational")))
}

/// Rows of a matrix literal; the column count is `None` when there are no rows.
fn matrix_rows(v: &Value, name: &str) -> Result<(Vec<Vec<Rational>>, Option<usize>)> {
    let rows = v
        .as_array()
        .ok_or_else(|| invalid(name, "expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    let mut width = None;
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| invalid(&format!("{name}[{i}]"), "expected an array of entries"))?;
        match width {
            None => width = Some(entries.len()),
            Some(w) if w != entries.len() => {
                return Err(invalid(
                    &format!("{name}[{i}]"),
                    format!("row has {} entries, previous rows have {w}", entries.len()),
                ))
            }
            _ => {}
        }
        let parsed = entries
            .iter()
            .enumerate()
            .map(|(j, e)| literal(e, &format!("{name}[{i}][{j}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Ok((out, width))
}

struct Block {
    rows: Vec<Vec<Rational>>,
    width: Option<usize>,
}

impl Block {
    fn read(obj: &Map<String, Value>, name: &str) -> Result<Option<Block>> {
        obj.get(name)
            .map(|v| matrix_rows(v, name).map(|(rows, width)| Block { rows, width }))
            .transpose()
    }

    fn into_matrix(self, name: &str, rows: usize, cols: usize) -> Result<Matrix> {
        if self.rows.len() != rows {
            return Err(invalid(name, format!("expected {rows} rows, found {}", self.rows.len())));
        }
        if let Some(w) = self.width {
            if w != cols {
                return Err(invalid(name, format!("expected {cols} columns, found {w}")));
            }
        }
        Matrix::from_rows(self.rows, cols).map_err(|e| invalid(name, e))
    }
}

fn required(obj: &Map<String, Value>, name: &str) -> Result<Block> {
    Block::read(obj, name)?.ok_or_else(|| invalid(name, "missing"))
}

/// Parses a system document.
///
/// `A`, `C` and `E` are required. Missing `B`, `D`, `F` are zero blocks whose
/// width comes from the `m` field or from whichever input block is present
/// (`m = 0` when none is).
pub fn parse_system_file(text: &str) -> Result<SystemFile> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Error::InvalidSystem(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidSystem("top level must be an object".into()))?;
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(invalid(k, "unknown field"));
    }
    let name = match obj.get("name") {
        None => "unnamed".to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(invalid("name", "expected a string")),
    };
    let description = match obj.get("description") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(invalid("description", "expected a string")),
    };

    let a = required(obj, "A")?;
    let n = a.rows.len();
    let a = a.into_matrix("A", n, n)?;
    let c = required(obj, "C")?;
    let p = c.rows.len();
    let c = c.into_matrix("C", p, n)?;
    let e = required(obj, "E")?;
    let q = e.rows.len();
    let e = e.into_matrix("E", q, n)?;
    let b = Block::read(obj, "B")?;
    let d = Block::read(obj, "D")?;
    let f = Block::read(obj, "F")?;

    let declared_m = match obj.get("m") {
        None => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| invalid("m", "expected a nonnegative integer"))? as usize,
        ),
    };
    let inferred_m = [&b, &d, &f]
        .into_iter()
        .flatten()
        .find_map(|blk| blk.width);
    let m = match (declared_m, inferred_m) {
        (Some(m), _) => m,
        (None, Some(m)) => m,
        (None, None) => 0,
    };
    let block = |blk: Option<Block>, name: &str, rows: usize| -> Result<Matrix> {
        match blk {
            Some(blk) => blk.into_matrix(name, rows, m),
            None => Ok(Matrix::zeros(rows, m)),
        }
    };
    let b = block(b, "B", n)?;
    let d = block(d, "D", p)?;
    let f = block(f, "F", q)?;
    let system = SystemSextuple::new(a, b, c, d, e, f)?;

    let expected = match obj.get("expected") {
        None => BTreeMap::new(),
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| invalid("expected", e))?,
    };
    let expected_witness = match obj.get("expected_witness") {
        None | Some(Value::Null) => None,
        Some(v) => Some(serde_json::from_value(v.clone()).map_err(|e| invalid("expected_witness", e))?),
    };
    Ok(SystemFile {
        name,
        description,
        system,
        expected,
        expected_witness,
    })
}

fn literal_value(r: &Rational) -> Value {
    if r.is_integer() {
        serde_json::from_str(&r.numer().to_string()).expect("integer literal is valid json")
    } else {
        Value::String(format_rational(r))
    }
}

fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(literal_value).collect()))
            .collect(),
    )
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self> {
        parse_system_file(text)
    }

    pub fn from_system(name: impl Into<String>, system: SystemSextuple) -> Self {
        Self {
            name: name.into(),
            description: None,
            system,
            expected: BTreeMap::new(),
            expected_witness: None,
        }
    }

    /// Canonical document: all six blocks written out, plus `m`.
    pub fn to_value(&self) -> Value {
        let s = &self.system;
        let mut obj = Map::new();
        obj.insert("name".into(), Value::String(self.name.clone()));
        if let Some(d) = &self.description {
            obj.insert("description".into(), Value::String(d.clone()));
        }
        obj.insert("m".into(), Value::from(s.m() as u64));
        for (key, m) in [("A", s.a()), ("B", s.b()), ("C", s.c()), ("D", s.d()), ("E", s.e()), ("F", s.f())] {
            obj.insert(key.into(), matrix_value(m));
        }
        if !self.expected.is_empty() {
            obj.insert(
                "expected".into(),
                serde_json::to_value(&self.expected).expect("property map serializes"),
            );
        }
        if let Some(w) = &self.expected_witness {
            obj.insert("expected_witness".into(), serde_json::to_value(w).expect("plain struct"));
        }
        Value::Object(obj)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("value serializes")
    }
}
