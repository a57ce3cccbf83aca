//! JSON encodings shared by every verb.

use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use nilorbit::scalar::format_rational;
use nilorbit::stratification::IndexSet;
use nilorbit::{Covector, Error, Rational, Vector};

pub const SCHEMA: &str = "nilorbit/1";

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(xs.into_iter().map(rational).collect())
}

pub fn covector(l: &Covector<Rational>) -> Value {
    rationals(l.0.iter())
}

pub fn vector(v: &Vector<Rational>) -> Value {
    rationals(v.0.iter())
}

pub fn index_set(i: &IndexSet) -> Value {
    json!(i.pairs().iter().map(|&(j, k)| [j, k]).collect::<Vec<_>>())
}

/// A float with 17 significant digits; non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format!("{x:.16e}"))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| float(x)).collect())
}

/// Prepends the schema tag to an object.
pub fn document(body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Value::Object(out)
}

pub fn error(e: &Error) -> Value {
    let mut body = Map::new();
    body.insert("kind".into(), json!(e.kind()));
    body.insert("message".into(), json!(e.to_string()));
    let payload = match e {
        Error::ArityMismatch { expected, found } | Error::AlgebraMismatch { expected, found } => {
            json!({"expected": expected, "found": found})
        }
        Error::TriangularityViolation { i, j, k } | Error::JacobiViolation { i, j, k } => {
            json!({"i": i, "j": j, "k": k})
        }
        Error::InconsistentIndexSet { step, reason } => json!({"step": step, "reason": reason}),
        Error::SectionSolveInvariantViolation { step, label, detail } => {
            json!({"step": step, "label": label, "detail": detail})
        }
        Error::OddSize(n) => json!({"size": n}),
        Error::QuadratureBudgetExceeded { requested, achieved } => {
            json!({"requested": float(*requested), "achieved": float(*achieved)})
        }
        _ => Value::Null,
    };
    if !payload.is_null() {
        body.insert("payload".into(), payload);
    }
    document(json!({ "error": body }))
}

pub fn usage_error(kind: &str, message: &str) -> Value {
    document(json!({"error": {"kind": kind, "message": message}}))
}

pub fn render(v: &Value, compact: bool) -> String {
    let mut s = if compact {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    }
    .expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilorbit::scalar::rat;

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(serde_json::to_string(&float(0.1)).unwrap(), "1.0000000000000001e-1");
        assert_eq!(serde_json::to_string(&float(-2.0)).unwrap(), "-2.0000000000000000e+0");
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational(&rat(-3, 6)), json!("-1/2"));
        assert_eq!(document(json!({"a": 1}))["schema"], json!(SCHEMA));
    }

    #[test]
    fn error_payloads() {
        let v = error(&Error::TriangularityViolation { i: 1, j: 2, k: 2 });
        assert_eq!(v["error"]["kind"], json!("TriangularityViolation"));
        assert_eq!(v["error"]["payload"], json!({"i": 1, "j": 2, "k": 2}));
    }
}
