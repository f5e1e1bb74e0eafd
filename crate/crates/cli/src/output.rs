//! JSON and aligned-table rendering of command results.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize"),
        Format::Table => {
            let mut out = String::new();
            table(v, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string(),
    }
}

fn is_rows(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

fn rows(items: &[Value], out: &mut String) {
    let mut cols: Vec<String> = Vec::new();
    for it in items {
        for k in it.as_object().unwrap().keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> =
        items.iter().map(|it| cols.iter().map(|c| it.get(c).map(scalar).unwrap_or_default()).collect()).collect();
    let width: Vec<usize> =
        cols.iter().enumerate().map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap()).collect();
    let line = |r: &[String]| {
        let s: Vec<String> = r.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        s.join("  ").trim_end().to_string()
    };
    out.push_str(&line(&cols));
    out.push('\n');
    for r in &cells {
        out.push_str(&line(r));
        out.push('\n');
    }
}

fn table(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            let flat: Vec<(&String, &Value)> = map.iter().filter(|(_, x)| !is_rows(x) && !x.is_object()).collect();
            let w = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, x) in &flat {
                out.push_str(&format!("{k:<w$}  {}\n", scalar(x)));
            }
            for (k, x) in map.iter().filter(|(_, x)| is_rows(x) || x.is_object()) {
                out.push_str(&format!("\n[{k}]\n"));
                table(x, out);
            }
        }
        Value::Array(items) if is_rows(v) => rows(items, out),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligned_columns() {
        let v = json!([{"name": "a", "status": "PASS"}, {"name": "longer", "status": "FAIL"}]);
        let t = render(&v, Format::Table);
        assert_eq!(t, "name    status\na       PASS\nlonger  FAIL\n");
    }

    #[test]
    fn nested_sections() {
        let v = json!({"m": 55, "rho": 13, "residues": [1, 2], "orbits": [{"size": 4}]});
        let t = render(&v, Format::Table);
        assert!(t.starts_with("m         55\nresidues  1, 2\nrho       13\n"));
        assert!(t.contains("[orbits]\nsize\n4\n"));
    }
}
