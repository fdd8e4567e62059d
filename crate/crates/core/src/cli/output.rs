//! CSV and JSON writers for command results.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use super::config::RunConfig;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => json!(v),
            Cell::Num(_) => Value::Null,
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

/// Shortest round-trip scientific form; identical input gives identical text.
pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == 0.0 {
        "0".into()
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    /// `(name, unit)`; `1` marks a dimensionless column.
    pub columns: Vec<(&'static str, &'static str)>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Vec<(String, String)>,
    /// Per-row failures, `(row index, message)`.
    pub failures: Vec<(usize, String)>,
}

impl Table {
    pub fn new(columns: Vec<(&'static str, &'static str)>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }
}

pub fn write_csv(w: &mut dyn Write, table: &Table, config: &RunConfig) -> io::Result<()> {
    writeln!(w, "# {TOOL} {VERSION}")?;
    writeln!(w, "# command: {}", config.command.name())?;
    for (k, v) in config.entries() {
        writeln!(w, "# config: {k} = {v}")?;
    }
    for (k, v) in &table.metadata {
        writeln!(w, "# meta: {k} = {v}")?;
    }
    for (row, msg) in &table.failures {
        writeln!(w, "# failed row {row}: {msg}")?;
    }
    let names: Vec<&str> = table.columns.iter().map(|c| c.0).collect();
    let units: Vec<&str> = table.columns.iter().map(|c| c.1).collect();
    writeln!(w, "# units: {}", units.join(","))?;
    writeln!(w, "{}", names.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::csv).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn write_json(w: &mut dyn Write, table: &Table, config: &RunConfig) -> io::Result<()> {
    let cfg: Map<String, Value> = config.entries().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let meta: Map<String, Value> = table.metadata.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let doc = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": config.command.name(),
        "config": cfg,
        "metadata": meta,
        "columns": table.columns.iter().map(|c| c.0).collect::<Vec<_>>(),
        "units": table.columns.iter().map(|c| c.1).collect::<Vec<_>>(),
        "rows": table.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "failures": table.failures.iter().map(|(i, m)| json!({"row": i, "message": m})).collect::<Vec<_>>(),
    });
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::Command;

    #[test]
    fn float_format_round_trips() {
        for v in [1.0, -6.332431731314106e-5, 1e300, 0.1 + 0.2] {
            assert_eq!(format_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_f64(0.0), "0");
        assert_eq!(format_f64(f64::NAN), "nan");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec![("a", "meV"), ("b", "1")]);
        t.push(vec![Cell::Num(1.5), Cell::Int(3)]);
        t.meta("z_unit_nm", 98.6);
        let cfg = RunConfig::new(Command::Cavity);
        let mut buf = Vec::new();
        write_csv(&mut buf, &t, &cfg).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], format!("# {TOOL} {VERSION}"));
        assert!(s.contains("# config: material.kappa = 0\n"));
        assert!(s.contains("# meta: z_unit_nm = 98.6\n"));
        assert_eq!(lines[lines.len() - 3], "# units: meV,1");
        assert_eq!(lines[lines.len() - 2], "a,b");
        assert_eq!(lines[lines.len() - 1], "1.5e0,3");
        let mut j = Vec::new();
        write_json(&mut j, &t, &cfg).unwrap();
        let v: Value = serde_json::from_slice(&j).unwrap();
        assert_eq!(v["rows"][0][1], json!(3));
    }
}
