//! Report assembly and rendering.

use serde::Serialize;
use serde_json::Value;

use crate::scenario::{Kind, SCHEMA_VERSION};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub id: String,
    pub kind: Kind,
    pub file: String,
    pub holds: bool,
    pub result: Value,
    pub wall_time_ms: u64,
    #[serde(skip)]
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub all_hold: bool,
    pub reports: Vec<Report>,
}

impl RunReport {
    /// Sorts by scenario id so the output does not depend on scheduling.
    pub fn new(mut reports: Vec<Report>) -> RunReport {
        reports.sort_by(|a, b| a.id.cmp(&b.id));
        RunReport {
            schema_version: SCHEMA_VERSION,
            all_hold: reports.iter().all(|r| r.holds),
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&format!(
                "== {} [{}] {}: {}\n",
                r.id,
                r.kind,
                r.file,
                if r.holds { "HOLDS" } else { "FAILS" }
            ));
            for line in &r.lines {
                out.push_str("   ");
                out.push_str(line);
                out.push('\n');
            }
        }
        let holding = self.reports.iter().filter(|r| r.holds).count();
        out.push_str(&format!("{holding} of {} scenarios hold\n", self.reports.len()));
        out
    }
}

/// Removes every `wall_time_ms` field, for byte comparisons of reports.
pub fn strip_wall_time(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_ms");
            m.values_mut().for_each(strip_wall_time);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_wall_time),
        _ => {}
    }
}

/// Left-aligned columns separated by two spaces, with a dashed rule.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let fmt = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = vec![fmt(headers.to_vec())];
    out.push(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
    out.extend(rows.iter().map(|r| fmt(r.iter().map(String::as_str).collect())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_aligns_columns() {
        let t = table(&["a", "long"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, vec!["a    long", "---  ----", "xyz  1"]);
    }

    #[test]
    fn strip_removes_nested_wall_times() {
        let mut v = json!({"wall_time_ms": 3, "reports": [{"wall_time_ms": 5, "id": "x"}]});
        strip_wall_time(&mut v);
        assert_eq!(v, json!({"reports": [{"id": "x"}]}));
    }
}
