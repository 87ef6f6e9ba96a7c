//! JSON algebra files.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "dim": 2,
//!   "labels": ["x", "y"],
//!   "brackets": { "x,x": { "y": "1" } }
//! }
//! ```
//!
//! Bracket keys are `"a,b"` for `<a, b>`; values map labels to exact
//! rationals `"p"` or `"p/q"`, or are lists of `[label, rational]` pairs,
//! or compact strings such as `"e:2, v0:-1/2"`.
//! Missing brackets are zero.

use std::path::Path;

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::algebra::LeibnizAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};

pub const FORMAT_VERSION: u64 = 1;

fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub fn from_json(text: &str) -> Result<LeibnizAlgebra> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<LeibnizAlgebra> {
    let obj = value.as_object().ok_or_else(|| invalid("top level must be an object"))?;
    for key in obj.keys() {
        if !["format_version", "dim", "labels", "brackets"].contains(&key.as_str()) {
            return Err(invalid(format!("unknown field '{key}'")));
        }
    }
    let version = obj
        .get("format_version")
        .ok_or_else(|| invalid("missing field 'format_version'"))?
        .as_u64()
        .ok_or_else(|| invalid("'format_version' must be a non-negative integer"))?;
    if version != FORMAT_VERSION {
        return Err(invalid(format!("unsupported format_version {version}")));
    }
    let labels: Vec<String> = obj
        .get("labels")
        .ok_or_else(|| invalid("missing field 'labels'"))?
        .as_array()
        .ok_or_else(|| invalid("'labels' must be an array"))?
        .iter()
        .map(|l| {
            let s = l.as_str().ok_or_else(|| invalid("labels must be strings"))?;
            if s.is_empty() || s.contains(',') {
                return Err(invalid(format!("label '{s}' must be nonempty and contain no comma")));
            }
            Ok(s.to_string())
        })
        .collect::<Result<_>>()?;
    let d = labels.len();
    if let Some(dim) = obj.get("dim") {
        let dim = dim.as_u64().ok_or_else(|| invalid("'dim' must be a non-negative integer"))?;
        if dim as usize != d {
            return Err(invalid(format!("'dim' is {dim} but {d} labels are given")));
        }
    } else {
        return Err(invalid("missing field 'dim'"));
    }
    let index = |label: &str| -> Result<usize> {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| invalid(format!("unknown label '{label}'")))
    };
    let mut constants = vec![Rational::zero(); d * d * d];
    let brackets = match obj.get("brackets") {
        None => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => return Err(invalid("'brackets' must be an object")),
    };
    for (key, entry) in &brackets {
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| invalid(format!("bracket key '{key}' must have the form 'a,b'")))?;
        let (i, j) = (index(a)?, index(b)?);
        let terms: Vec<(String, String)> = match entry {
            Value::Object(m) => m
                .iter()
                .map(|(k, v)| Ok((k.clone(), rational_string(v, key)?)))
                .collect::<Result<_>>()?,
            Value::Array(items) => items
                .iter()
                .map(|item| match item.as_array().map(Vec::as_slice) {
                    Some([Value::String(k), v]) => Ok((k.clone(), rational_string(v, key)?)),
                    _ => Err(invalid(format!("bracket '{key}': entries must be [label, rational] pairs"))),
                })
                .collect::<Result<_>>()?,
            Value::String(text) => text
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| match t.rsplit_once(':') {
                    Some((k, v)) => Ok((k.trim().to_string(), v.trim().to_string())),
                    None => Err(invalid(format!("bracket '{key}': term '{t}' must look like label:rational"))),
                })
                .collect::<Result<_>>()?,
            _ => return Err(invalid(format!("bracket '{key}' must be an object, a list or a string"))),
        };
        let mut seen = Vec::new();
        for (label, text) in terms {
            let k = index(&label)?;
            if seen.contains(&k) {
                return Err(invalid(format!("bracket '{key}' lists '{label}' twice")));
            }
            seen.push(k);
            let x = parse_rational(&text)
                .map_err(|_| invalid(format!("bracket '{key}': bad rational '{text}'")))?;
            constants[(i * d + j) * d + k] = x;
        }
    }
    LeibnizAlgebra::new(labels, constants)
}

fn rational_string(v: &Value, key: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        _ => Err(invalid(format!(
            "bracket '{key}': coefficients must be strings like \"3\" or \"-1/2\""
        ))),
    }
}

pub fn to_value(l: &LeibnizAlgebra) -> Value {
    let d = l.dim();
    let labels = l.labels();
    let mut brackets = Map::new();
    for i in 0..d {
        for j in 0..d {
            let v = l.basis_bracket(i, j);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let mut terms = Map::new();
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    terms.insert(labels[k].clone(), Value::String(format_rational(x)));
                }
            }
            brackets.insert(format!("{},{}", labels[i], labels[j]), Value::Object(terms));
        }
    }
    let mut out = Map::new();
    out.insert("format_version".into(), FORMAT_VERSION.into());
    out.insert("dim".into(), d.into());
    out.insert("labels".into(), labels.iter().cloned().map(Value::String).collect());
    out.insert("brackets".into(), Value::Object(brackets));
    Value::Object(out)
}

/// Canonical file text: pretty-printed with a trailing newline.
pub fn to_json(l: &LeibnizAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(l)).expect("values serialize");
    s.push('\n');
    s
}

pub fn load(path: impl AsRef<Path>) -> Result<LeibnizAlgebra> {
    from_json(&std::fs::read_to_string(path)?)
}

pub fn save(l: &LeibnizAlgebra, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json(l))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::sl2::construct_sl22;

    #[test]
    fn round_trip() {
        let l = construct_sl22(&int(1), &int(0));
        let text = to_json(&l);
        let back = from_json(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn reads_pairs_and_fractions() {
        let text = r#"{"format_version": 1, "dim": 2, "labels": ["x", "y"],
            "brackets": {"x,x": [["y", "-3/6"]]}}"#;
        let l = from_json(text).unwrap();
        assert_eq!(l.constant(0, 0, 1), &crate::linalg::rat(-1, 2));
        let compact = r#"{"format_version": 1, "dim": 2, "labels": ["x", "y"],
            "brackets": {"x,x": "x:2, y:-1/2"}}"#;
        let l = from_json(compact).unwrap();
        assert_eq!(l.basis_bracket(0, 0), &[crate::linalg::int(2), crate::linalg::rat(-1, 2)]);
    }

    #[test]
    fn rejects_bad_files() {
        let base = |brackets: &str| {
            format!(r#"{{"format_version": 1, "dim": 2, "labels": ["x", "y"], "brackets": {brackets}}}"#)
        };
        for bad in [
            base(r#"{"x,w": {"y": "1"}}"#),
            base(r#"{"x,x": {"y": "0.5"}}"#),
            base(r#"{"x,x": {"y": 1}}"#),
            base(r#"{"xx": {"y": "1"}}"#),
            r#"{"format_version": 1, "dim": 3, "labels": ["x", "y"]}"#.to_string(),
            r#"{"format_version": 1, "dim": 2, "labels": ["x", "x"]}"#.to_string(),
            r#"{"format_version": 2, "dim": 1, "labels": ["x"]}"#.to_string(),
            r#"{"dim": 1, "labels": ["x"]}"#.to_string(),
        ] {
            assert!(matches!(from_json(&bad), Err(Error::Validation(_))), "{bad}");
        }
        match from_json("{\n  \"dim\": ,\n}") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 10)),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }
}
