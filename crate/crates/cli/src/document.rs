//! The result document written by every command, and its renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::ingest::MatrixDoc;

pub const SCHEMA: &str = "lattice-kit/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

/// One computed quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Item {
    Matrix(MatrixDoc),
    Vector(Vec<f64>),
    Indices(Vec<usize>),
    Number(f64),
    Count(usize),
    Flag(bool),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultDocument {
    pub schema: &'static str,
    pub command: String,
    /// Paths, settings and parsed input matrices.
    pub input: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    pub results: BTreeMap<String, Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl ResultDocument {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            input: BTreeMap::new(),
            metadata: None,
            results: BTreeMap::new(),
            timing_ms: None,
            error: None,
        }
    }

    pub fn echo(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("echoed inputs are serializable");
        self.input.insert(key.to_string(), v);
    }

    pub fn put(&mut self, key: &str, item: Item) {
        self.results.insert(key.to_string(), item);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document is serializable");
        s.push('\n');
        s
    }

    /// One record per line: `key,value` for scalars, `key,i,v₀,v₁,…` for
    /// row `i` of a matrix.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        let mut put = |rec: Vec<String>| w.write_record(&rec).expect("in-memory write");
        put(vec!["schema".into(), self.schema.into()]);
        put(vec!["command".into(), self.command.clone()]);
        if let Some(m) = &self.metadata {
            for (k, v) in [("n", m.n), ("m", m.m), ("d", m.d), ("k", m.k)] {
                put(vec![k.into(), v.to_string()]);
            }
        }
        for (key, item) in &self.results {
            match item {
                Item::Matrix(m) => {
                    for (i, row) in m.row_vecs().iter().enumerate() {
                        let mut rec = vec![key.clone(), i.to_string()];
                        rec.extend(row.iter().map(|v| v.to_string()));
                        put(rec);
                    }
                }
                Item::Vector(v) => {
                    let mut rec = vec![key.clone()];
                    rec.extend(v.iter().map(|x| x.to_string()));
                    put(rec);
                }
                Item::Indices(v) => {
                    let mut rec = vec![key.clone()];
                    rec.extend(v.iter().map(|x| x.to_string()));
                    put(rec);
                }
                other => put(vec![key.clone(), scalar(other)]),
            }
        }
        if let Some(t) = self.timing_ms {
            put(vec!["timing_ms".into(), t.to_string()]);
        }
        if let Some(e) = &self.error {
            put(vec!["error".into(), e.code.clone(), e.message.clone()]);
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 output")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ({})", self.command, self.schema);
        if let Some(m) = &self.metadata {
            let _ = writeln!(out, "n = {}, m = {}, d = {}, k = {}", m.n, m.m, m.d, m.k);
        }
        for (key, item) in &self.results {
            match item {
                Item::Matrix(m) => {
                    let _ = writeln!(out, "\n{key} ({} × {}):", m.rows, m.cols);
                    out.push_str(&grid(&m.row_vecs()));
                }
                Item::Vector(v) => {
                    let _ = writeln!(out, "\n{key}:");
                    out.push_str(&grid(std::slice::from_ref(v)));
                }
                Item::Indices(v) => {
                    let s: Vec<String> = v.iter().map(usize::to_string).collect();
                    let _ = writeln!(out, "{key}: {}", s.join(" "));
                }
                other => {
                    let _ = writeln!(out, "{key}: {}", scalar(other));
                }
            }
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "\ntime: {t:.3} ms");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error [{}]: {}", e.code, e.message);
        }
        out
    }
}

fn scalar(item: &Item) -> String {
    match item {
        Item::Number(v) => v.to_string(),
        Item::Count(v) => v.to_string(),
        Item::Flag(v) => v.to_string(),
        Item::Text(v) => v.clone(),
        Item::Matrix(_) | Item::Vector(_) | Item::Indices(_) => String::new(),
    }
}

fn grid(rows: &[Vec<f64>]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|v| format!("{:.6}", v)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for r in &cells {
        let line: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  {}", line.join("  "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultDocument {
        let mut d = ResultDocument::new("classify");
        d.metadata = Some(Metadata { n: 1, m: 1, d: 1, k: 2 });
        d.put("kind", Item::Text("vector_sublattice".into()));
        d.put("basis", Item::Matrix(MatrixDoc::from_rows(&[vec![0.1, 2.0]])));
        d
    }

    #[test]
    fn json_carries_schema_and_omits_empty_fields() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["metadata"]["k"], 2);
        assert_eq!(v["results"]["basis"]["data"][0], 0.1);
        assert!(v.get("timing_ms").is_none());
        assert!(v.get("error").is_none());
    }

    #[test]
    fn csv_and_table_list_every_result() {
        let csv = sample().to_csv();
        assert!(csv.contains("basis,0,0.1,2\n"));
        assert!(csv.contains("kind,vector_sublattice\n"));
        let table = sample().to_table();
        assert!(table.contains("basis (1 × 2):"));
        assert!(table.contains("0.100000"));
    }
}
