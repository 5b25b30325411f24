use std::collections::BTreeMap;

use serde::Serialize;

/// A finished experiment: named columns, numeric rows, and free-form
/// metadata (config echo, truncation bounds, wall time).
///
/// CSV output carries only the header and rows, so identical configs give
/// byte-identical files; the wall time lives in the JSON metadata alone.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: BTreeMap<String, String>,
}

impl ExperimentReport {
    pub fn new(columns: &[&str]) -> Self {
        ExperimentReport {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn set_meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    /// Column index by name; panics on unknown names (a programming error).
    pub fn column(&self, name: &str) -> usize {
        self.columns
            .iter()
            .position(|c| c == name)
            .unwrap_or_else(|| panic!("no column named {name}"))
    }

    /// Value at (row, column-name).
    pub fn value(&self, row: usize, name: &str) -> f64 {
        self.rows[row][self.column(name)]
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_sig12(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// 12 significant digits; enough for every tolerance in the suite to
/// survive a round-trip through the file.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.is_finite() {
        format!("{v:.11e}")
    } else {
        format!("{v}")
    }
}
