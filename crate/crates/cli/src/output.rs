//! Plain-text rendering of the JSON results for `--format table`.

use serde_json::{Map, Value};

fn is_rational(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("num") && m.contains_key("den")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(m) if is_rational(m) => {
            let num = scalar(&m["num"]);
            let den = scalar(&m["den"]);
            if den == "1" {
                num
            } else {
                format!("{num}/{den}")
            }
        }
        Value::Object(m) if m.contains_key("num") && m.contains_key("den") => {
            // term rows: pattern (or exponents) and a coefficient
            let mut rest: Vec<String> = m
                .iter()
                .filter(|(k, _)| *k != "num" && *k != "den")
                .map(|(_, v)| scalar(v))
                .collect();
            let mut coeff = Map::new();
            coeff.insert("num".into(), m["num"].clone());
            coeff.insert("den".into(), m["den"].clone());
            rest.push(scalar(&Value::Object(coeff)));
            rest.join("  ")
        }
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            a.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

/// Values printed on their own line inside a list.
fn is_row(v: &Value) -> bool {
    v.is_array() || v.is_object() || v.as_str().is_some_and(|s| s.contains(' '))
}

pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) if !is_rational(m) => {
            let width = m.keys().map(String::len).max().unwrap_or(0);
            for (k, val) in m {
                match val {
                    Value::Array(rows) if rows.iter().any(is_row) => {
                        out.push_str(&format!("{k}:\n"));
                        for r in rows {
                            out.push_str(&format!("  {}\n", scalar(r)));
                        }
                    }
                    _ => out.push_str(&format!("{k:width$}  {}\n", scalar(val))),
                }
            }
        }
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}
