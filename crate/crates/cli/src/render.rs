//! Text and CSV renderings of report values. Floats are always written with
//! 17 significant digits so that output can be compared byte for byte.

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;

pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => i.to_string(),
            (_, Some(u), _) => u.to_string(),
            (_, _, Some(f)) => float(f),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Array(_) | Value::Object(_) => unreachable!("flatten handles containers"),
    }
}

/// `(path, value)` leaves of a JSON tree, in document order.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                walk(x, join(k), out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push((path, format!("[{}]", parts.join(" "))));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                walk(x, join(&i.to_string()), out);
            }
        }
        _ => out.push((path, scalar(v))),
    }
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// Generic rendering: pretty JSON, `key: value` lines, or a two-column CSV.
pub fn render<T: Serialize>(value: &T, format: Format) -> Result<String, String> {
    if format == Format::Json {
        let mut s = cstar_core::json::to_json_string(value).map_err(|e| e.to_string())?;
        s.push('\n');
        return Ok(s);
    }
    let tree = serde_json::to_value(value).map_err(|e| e.to_string())?;
    let leaves = flatten(&tree);
    match format {
        Format::Text => Ok(leaves.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()),
        _ => {
            let rows: Vec<Vec<String>> = leaves.into_iter().map(|(k, v)| vec![k, v]).collect();
            csv_table(&["key", "value"], &rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let v = json!({"a": {"b": 1, "c": [1.5, 2]}, "d": [{"e": true}], "f": null});
        let leaves = flatten(&v);
        assert_eq!(
            leaves,
            vec![
                ("a.b".into(), "1".into()),
                ("a.c".into(), "[1.5000000000000000e0 2]".into()),
                ("d.0.e".into(), "true".into()),
                ("f".into(), "null".into()),
            ]
        );
    }

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(float(0.1), "1.0000000000000001e-1");
        assert_eq!(float(f64::INFINITY), "inf");
    }
}
