//! JSON function files: `{"radius": R, "coeffs": [[x0, x1, x2, x3], ...], "exact": bool}`.
//!
//! `exact` defaults to `true`. Errors name the line and column of a syntax
//! error, or the offending field such as `coeffs[3]`.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::series::Series;

#[derive(Serialize)]
struct SeriesFileRef<'a> {
    radius: f64,
    coeffs: &'a [Quaternion],
    exact: bool,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesFileRef { radius: self.radius(), coeffs: self.coeffs(), exact: self.is_exact() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(d)?;
        series_from_value(&value).map_err(serde::de::Error::custom)
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSeries(msg.into())
}

fn series_from_value(value: &Value) -> Result<Series> {
    let obj = value.as_object().ok_or_else(|| invalid("top level must be an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "radius" | "coeffs" | "exact") {
            return Err(invalid(format!("unknown field `{key}`")));
        }
    }
    let radius = obj
        .get("radius")
        .ok_or_else(|| invalid("missing field `radius`"))?
        .as_f64()
        .ok_or_else(|| invalid("radius: expected a number"))?;
    let exact = match obj.get("exact") {
        None => true,
        Some(v) => v.as_bool().ok_or_else(|| invalid("exact: expected a boolean"))?,
    };
    let raw = obj
        .get("coeffs")
        .ok_or_else(|| invalid("missing field `coeffs`"))?
        .as_array()
        .ok_or_else(|| invalid("coeffs: expected an array"))?;
    let mut coeffs = Vec::with_capacity(raw.len());
    for (n, entry) in raw.iter().enumerate() {
        let parts = entry
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| invalid(format!("coeffs[{n}]: expected an array of 4 numbers, got {entry}")))?;
        let mut x = [0.0; 4];
        for (k, p) in parts.iter().enumerate() {
            x[k] = p
                .as_f64()
                .filter(|v| v.is_finite())
                .ok_or_else(|| invalid(format!("coeffs[{n}][{k}]: expected a finite number, got {p}")))?;
        }
        coeffs.push(Quaternion::from(x));
    }
    Series::new(coeffs, radius, exact)
}

/// Parses a function file from a string.
pub fn parse_series(text: &str) -> Result<Series> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        invalid(format!("JSON syntax error at line {} column {}: {e}", e.line(), e.column()))
    })?;
    series_from_value(&value)
}

/// Reads a function file.
pub fn read_series(path: &Path) -> Result<Series> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_series(&text).map_err(|e| match e {
        Error::InvalidSeries(m) => invalid(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Pretty JSON text of a function file.
pub fn series_to_json(f: &Series) -> String {
    serde_json::to_string_pretty(f).expect("series serialization is infallible")
}
