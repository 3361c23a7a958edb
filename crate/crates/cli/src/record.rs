//! Flat key/value reports shared by the non-verify subcommands.

use serde_json::{Map, Value};

use crate::report::TOOL_VERSION;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One flat record; values are already strings so integers keep full precision.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record(pub Vec<(String, String)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn set_opt(self, key: &str, value: Option<impl ToString>) -> Self {
        match value {
            Some(v) => self.set(key, v),
            None => self,
        }
    }

    fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.0 {
            map.insert(k.clone(), Value::String(v.clone()));
        }
        Value::Object(map)
    }
}

/// Renders a headline record plus optional rows (e.g. scan cells).
pub fn render(format: Format, seed: u64, head: &Record, rows_key: &str, rows: &[Record]) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => {
            let mut map = Map::new();
            map.insert("tool_version".into(), Value::String(TOOL_VERSION.into()));
            map.insert("seed".into(), Value::String(seed.to_string()));
            if let Value::Object(fields) = head.to_json() {
                map.extend(fields);
            }
            if !rows.is_empty() {
                map.insert(
                    rows_key.into(),
                    Value::Array(rows.iter().map(Record::to_json).collect()),
                );
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(map))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let table = if rows.is_empty() {
                std::slice::from_ref(head)
            } else {
                rows
            };
            let header: Vec<&str> = table[0].0.iter().map(|(k, _)| k.as_str()).collect();
            w.write_record(&header)?;
            for r in table {
                w.write_record(r.0.iter().map(|(_, v)| v.as_str()))?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = String::new();
            for (k, v) in &head.0 {
                s.push_str(&format!("{k}: {v}\n"));
            }
            for r in rows {
                let cells: Vec<String> = r.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
                s.push_str(&format!("  {}\n", cells.join(" ")));
            }
            s
        }
    })
}
