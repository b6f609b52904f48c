//! JSON and CSV ingestion for curves, points and minimal polynomials.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use heightgap_core::curve::{CurvePoint, WeierstrassCurve};
use heightgap_core::exact::parse_rational;
use heightgap_core::height::AlgebraicNumber;

use crate::CliError;

/// Reads `arg` as a file when one exists at that path, else takes it as inline text.
pub fn load(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::bad(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::bad(format!("invalid JSON: {e}")))
}

/// A JSON integer, or a string "n" or "n/d".
pub fn rational(v: &Value) -> Result<BigRational, CliError> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()).map_err(|e| CliError::bad(e.to_string())),
        Value::String(s) => parse_rational(s).map_err(|e| CliError::bad(format!("{s:?}: {e}"))),
        other => Err(CliError::bad(format!("expected an integer or a \"num/den\" string, got {other}"))),
    }
}

fn integer(v: &Value) -> Result<BigInt, CliError> {
    let q = rational(v)?;
    if !q.is_integer() {
        return Err(CliError::bad(format!("{q} is not an integer")));
    }
    Ok(q.to_integer())
}

/// {"a1":…,"a2":…,"a3":…,"a4":…,"a6":…} (absent keys are 0) or {"A":…,"B":…}.
pub fn parse_curve(text: &str) -> Result<WeierstrassCurve, CliError> {
    let v = json(text)?;
    let obj = v.as_object().ok_or_else(|| CliError::bad("a curve must be a JSON object"))?;
    let get = |k: &str| obj.get(k).map(rational).transpose();
    let curve = if obj.contains_key("A") || obj.contains_key("B") {
        let zero = BigRational::zero();
        WeierstrassCurve::short(get("A")?.unwrap_or(zero.clone()), get("B")?.unwrap_or(zero))
    } else {
        if let Some(k) = obj.keys().find(|k| !["a1", "a2", "a3", "a4", "a6", "label"].contains(&k.as_str())) {
            return Err(CliError::bad(format!("unknown curve key {k:?}")));
        }
        let mut a: [BigRational; 5] = Default::default();
        for (slot, k) in a.iter_mut().zip(["a1", "a2", "a3", "a4", "a6"]) {
            *slot = get(k)?.unwrap_or_default();
        }
        WeierstrassCurve::new(a)
    };
    curve.map_err(|e| CliError::bad(e.to_string()))
}

/// "O" or {"x": "num/den", "y": "num/den"}; the point must lie on the curve.
pub fn parse_point(curve: &WeierstrassCurve, text: &str) -> Result<CurvePoint, CliError> {
    let trimmed = text.trim();
    if trimmed == "O" {
        return Ok(CurvePoint::Infinity);
    }
    match json(trimmed)? {
        Value::String(s) if s == "O" => Ok(CurvePoint::Infinity),
        Value::Object(o) => {
            let x = rational(o.get("x").ok_or_else(|| CliError::bad("point needs \"x\""))?)?;
            let y = rational(o.get("y").ok_or_else(|| CliError::bad("point needs \"y\""))?)?;
            curve.point(x, y).map_err(|e| CliError::bad(e.to_string()))
        }
        other => Err(CliError::bad(format!("a point is \"O\" or {{\"x\", \"y\"}}, got {other}"))),
    }
}

/// JSON array of integer coefficients, constant term first.
pub fn parse_minpoly(text: &str) -> Result<AlgebraicNumber, CliError> {
    let v = json(text)?;
    let arr = v.as_array().ok_or_else(|| CliError::bad("a minimal polynomial is a JSON array"))?;
    let coeffs = arr.iter().map(integer).collect::<Result<Vec<_>, _>>()?;
    AlgebraicNumber::new(coeffs).map_err(|e| CliError::bad(e.to_string()))
}

/// Batch CSV with a header row: label,a1,a2,a3,a4,a6.
pub fn parse_curve_csv(text: &str) -> Result<Vec<(String, WeierstrassCurve)>, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| CliError::bad(format!("CSV row {}: {e}", i + 1)))?;
        if row.len() != 6 {
            return Err(CliError::bad(format!("CSV row {}: expected label,a1,a2,a3,a4,a6", i + 1)));
        }
        let mut a: [BigRational; 5] = Default::default();
        for (slot, field) in a.iter_mut().zip(row.iter().skip(1)) {
            *slot = parse_rational(field).map_err(|e| CliError::bad(format!("CSV row {}: {e}", i + 1)))?;
        }
        let c = WeierstrassCurve::new(a).map_err(|e| CliError::bad(format!("CSV row {}: {e}", i + 1)))?;
        out.push((row[0].to_string(), c));
    }
    Ok(out)
}

pub fn curve_json(c: &WeierstrassCurve) -> Value {
    let [a1, a2, a3, a4, a6] = c.a_invariants();
    serde_json::json!({
        "a1": a1.to_string(), "a2": a2.to_string(), "a3": a3.to_string(),
        "a4": a4.to_string(), "a6": a6.to_string(),
    })
}

pub fn point_json(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Infinity => Value::String("O".into()),
        CurvePoint::Affine { x, y } => serde_json::json!({ "x": x.to_string(), "y": y.to_string() }),
    }
}
