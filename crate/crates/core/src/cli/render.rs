//! Report output as JSON, plain text or Markdown tables.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Md,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn columns(rows: &[Value]) -> Option<Vec<String>> {
    let first = rows.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    rows.iter()
        .all(|r| r.as_object().is_some_and(|o| o.keys().eq(keys.iter())))
        .then_some(keys)
}

fn table(header: &[String], body: &[Vec<String>], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Md => {
            out += &format!("| {} |\n", header.join(" | "));
            out += &format!("|{}\n", "---|".repeat(header.len()));
            for row in body {
                out += &format!("| {} |\n", row.join(" | "));
            }
        }
        _ => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| body.iter().map(|r| r[i].chars().count()).chain([header[i].chars().count()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out += &line(header);
            for row in body {
                out += &line(row);
            }
        }
    }
    out
}

fn render_value(v: &Value, format: Format) -> String {
    match v {
        Value::Array(rows) => match columns(rows) {
            Some(keys) => {
                let body: Vec<Vec<String>> =
                    rows.iter().map(|r| keys.iter().map(|k| cell(&r[k])).collect()).collect();
                table(&keys, &body, format)
            }
            None => rows.iter().map(|r| cell(r) + "\n").collect(),
        },
        Value::Object(map) => {
            let body: Vec<Vec<String>> = map.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect();
            table(&["field".to_string(), "value".to_string()], &body, format)
        }
        other => cell(other) + "\n",
    }
}

/// Serializes `report` in the requested format, newline terminated.
pub fn render<T: Serialize>(report: &T, format: Format) -> String {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(report).expect("reports serialize to JSON") + "\n"
        }
        _ => render_value(&serde_json::to_value(report).expect("reports serialize to JSON"), format),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn record_tables() {
        let v = json!([{"prime": 3, "level": 1, "count": 99}, {"prime": 5, "level": 1, "count": 725}]);
        assert_eq!(
            render(&v, Format::Md),
            "| count | level | prime |\n|---|---|---|\n| 99 | 1 | 3 |\n| 725 | 1 | 5 |\n"
        );
        assert_eq!(render(&v, Format::Text), "count  level  prime\n99     1      3\n725    1      5\n");
    }

    #[test]
    fn object_rows() {
        let v = json!({"value": "0", "witness": {"weights": [1, 1]}});
        assert_eq!(render(&v, Format::Text), "field    value\nvalue    0\nwitness  {\"weights\":[1,1]}\n");
    }
}
