//! Aligned text for `--format table`.

use serde_json::Value;

use crate::run::Report;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        v => v.to_string(),
    }
}

/// `(key, value)` leaves of a JSON tree, keys joined with dots.
fn leaves(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                leaves(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                leaves(&format!("{prefix}[{i}]"), x, out);
            }
        }
        v => out.push((prefix.to_string(), scalar(v))),
    }
}

fn aligned(rows: &[(String, String)]) -> String {
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<w$}  {v}")).collect::<Vec<_>>().join("\n")
}

/// Rows of objects sharing their keys become one table with a header line.
fn grid(rows: &[Value]) -> Option<String> {
    let first = rows.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let m = r.as_object()?;
            (m.len() == keys.len() && m.values().all(|v| !v.is_object() && !v.is_array()))
                .then(|| keys.iter().map(|k| m.get(*k).map_or("-".into(), scalar)).collect())
        })
        .collect::<Option<_>>()?;
    let widths: Vec<usize> = (0..keys.len())
        .map(|i| cells.iter().map(|c| c[i].len()).chain([keys[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |c: Vec<&str>| c.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ");
    let mut out = vec![line(keys.iter().map(|k| k.as_str()).collect())];
    out.extend(cells.iter().map(|c| line(c.iter().map(String::as_str).collect())));
    Some(out.join("\n"))
}

pub fn render(report: &Report) -> String {
    let mut sections = vec![];
    let mut head = vec![("command".to_string(), scalar(&report.command["name"]))];
    let mut body = vec![];
    if let Value::Object(m) = &report.results {
        for (k, v) in m {
            match v {
                Value::String(s) if s.contains('\n') => sections.push(s.clone()),
                Value::Array(xs) => match grid(xs) {
                    Some(t) => sections.push(format!("{k}:\n{t}")),
                    None => leaves(k, v, &mut body),
                },
                v => leaves(k, v, &mut body),
            }
        }
    } else {
        leaves("result", &report.results, &mut body);
    }
    head.extend(body);
    head.push(("inconclusive".into(), report.inconclusive.to_string()));
    head.push(("engine".into(), report.engine_version.clone()));
    head.push(("input".into(), report.input_hash[..16].to_string()));
    head.push(("time".into(), format!("{} ms", report.timing_ms)));
    let mut out = aligned(&head);
    for s in sections {
        out.push_str("\n\n");
        out.push_str(&s);
    }
    out
}
