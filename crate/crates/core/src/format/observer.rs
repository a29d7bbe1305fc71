use nalgebra::DMatrix;
use serde_json::Value;

use super::expr::{from_rows, parse_rational_function};
use crate::error::{Error, Result};
use crate::exactlin::parse_rational;
use crate::exactlin::rational::to_f64;
use crate::sim::{realize, StateSpaceRealization};
use crate::witness::RationalFunctionMatrix;

/// An observer given either as a transfer matrix `N(s)` or directly as
/// `(G, H, Q, R)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ObserverSpec {
    Transfer(RationalFunctionMatrix),
    Realization(StateSpaceRealization),
}

impl ObserverSpec {
    /// Realizes a transfer matrix; fails when it is not proper and stable.
    pub fn realization(&self) -> Result<StateSpaceRealization> {
        match self {
            ObserverSpec::Transfer(n) => realize(n),
            ObserverSpec::Realization(r) => Ok(r.clone()),
        }
    }
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidSystem(format!("observer field {field}: {msg}"))
}

fn real_matrix(v: &Value, name: &str) -> Result<Vec<Vec<f64>>> {
    let rows = v.as_array().ok_or_else(|| invalid(name, "expected an array of rows"))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let entries = row
                .as_array()
                .ok_or_else(|| invalid(&format!("{name}[{i}]"), "expected an array"))?;
            entries
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let path = format!("{name}[{i}][{j}]");
                    let text = match e {
                        Value::Number(n) => n.to_string(),
                        Value::String(s) => s.clone(),
                        _ => return Err(invalid(&path, "expected a number")),
                    };
                    parse_rational(&text).map(|r| to_f64(&r)).map_err(|e| invalid(&path, e))
                })
                .collect()
        })
        .collect()
}

fn dmatrix(rows: &[Vec<f64>], nrows: usize, ncols: usize, name: &str) -> Result<DMatrix<f64>> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(invalid(name, format!("expected {nrows}x{ncols}")));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

/// Reads `{"N": [["1/(s+1)"]]}` or `{"G": .., "H": .., "Q": .., "R": ..}`.
/// `G`, `H`, `Q` may be omitted for a memoryless observer.
pub fn parse_observer_file(text: &str) -> Result<ObserverSpec> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidSystem(format!("observer line {} column {}: {e}", e.line(), e.column())))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::InvalidSystem("observer: top level must be an object".into()))?;
    if let Some(n) = obj.get("N") {
        let rows = n.as_array().ok_or_else(|| invalid("N", "expected an array of rows"))?;
        let parsed = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.as_array()
                    .ok_or_else(|| invalid(&format!("N[{i}]"), "expected an array"))?
                    .iter()
                    .enumerate()
                    .map(|(j, e)| {
                        let path = format!("N[{i}][{j}]");
                        let text = match e {
                            Value::String(s) => s.clone(),
                            Value::Number(n) => n.to_string(),
                            _ => return Err(invalid(&path, "expected an expression string")),
                        };
                        parse_rational_function(&text).map_err(|e| invalid(&path, e))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(ObserverSpec::Transfer(from_rows(parsed).map_err(|e| invalid("N", e))?));
    }
    let r = obj.get("R").ok_or_else(|| invalid("R", "missing (give N or R)"))?;
    let r = real_matrix(r, "R")?;
    let q = r.len();
    let p = r.first().map_or(0, Vec::len);
    let g = obj.get("G").map(|v| real_matrix(v, "G")).transpose()?.unwrap_or_default();
    let nu = g.len();
    let read = |name: &str, rows: usize, cols: usize| -> Result<DMatrix<f64>> {
        match obj.get(name) {
            Some(v) => dmatrix(&real_matrix(v, name)?, rows, cols, name),
            None if rows * cols == 0 => Ok(DMatrix::zeros(rows, cols)),
            None => Err(invalid(name, "missing")),
        }
    };
    let realization = StateSpaceRealization::new(
        dmatrix(&g, nu, nu, "G")?,
        read("H", nu, p)?,
        read("Q", q, nu)?,
        dmatrix(&r, q, p, "R")?,
    )?;
    Ok(ObserverSpec::Realization(realization))
}
