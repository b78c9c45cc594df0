use anyhow::Result;
use serde_json::json;
use symavoid::qsym::Term;

use crate::config::Format;

fn key_text(key: &[usize]) -> String {
    let parts: Vec<String> = key.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// `(basis, key, coefficient)` triples: one per line as text, a CSV table,
/// or nested JSON arrays.
pub fn terms(degree: usize, terms: &[Term], format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => {
            if terms.is_empty() {
                return Ok("0\n".into());
            }
            let mut out = String::new();
            for t in terms {
                out.push_str(&format!("{}{}\t{}\n", t.basis, key_text(&t.key), t.coefficient));
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["basis", "key", "coefficient"])?;
            for t in terms {
                w.write_record([t.basis, &key_text(&t.key), &t.coefficient])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Machine => {
            let rows: Vec<_> = terms.iter().map(|t| json!([t.basis, t.key, t.coefficient])).collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({ "degree": degree, "terms": rows }))?)
        }
    })
}

/// A list of named values, e.g. predicate verdicts.
pub fn fields(fields: &[(&str, String)], format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"])?;
            for (k, v) in fields {
                w.write_record([k, v.as_str()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Machine => {
            let map: serde_json::Map<String, serde_json::Value> = fields
                .iter()
                .map(|(k, v)| {
                    let value = serde_json::from_str(v).unwrap_or_else(|_| json!(v));
                    (k.to_string(), value)
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&map)?)
        }
    })
}
