use intlin::{AbGroupInvariants, BigInt, SparseIntMat};
use serde_json::{json, Map, Value};

/// Output of one command: a human-readable text form and a JSON object.
pub struct Report {
    pub text: String,
    pub json: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), json!(1));
        json.insert("command".into(), json!(command));
        Report { text: String::new(), json }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.json.insert(key.into(), v.into());
        self
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    /// Merges `rank` and `torsion` into the top-level object.
    pub fn group(&mut self, g: &AbGroupInvariants) -> &mut Self {
        if let Value::Object(m) = group_json(g) {
            self.json.extend(m);
        }
        self
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(&self.json).expect("JSON maps always serialize")
    }
}

pub fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn group_json(g: &AbGroupInvariants) -> Value {
    json!({ "rank": g.free_rank, "torsion": g.torsion.iter().map(int_json).collect::<Vec<_>>() })
}

pub fn matrix_json(m: &SparseIntMat) -> Value {
    Value::Array(m.to_dense().iter().map(|row| Value::Array(row.iter().map(int_json).collect())).collect())
}

pub fn matrix_text(m: &SparseIntMat) -> String {
    let rows = m.to_dense();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}
