//! Tabular output: CSV with a header row, or `key=value` lines.

use std::fmt::Write as _;
use std::str::FromStr;

use hshift_core::format::sig9;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Kv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "kv" => Ok(Self::Kv),
            other => Err(format!("expected csv or kv, got {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Text(_) => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Num(x) => sig9(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    /// Single-row table from `(name, value)` pairs.
    pub fn record<S: Into<String>>(pairs: impl IntoIterator<Item = (S, Cell)>) -> Self {
        let (columns, row): (Vec<String>, Vec<Cell>) = pairs.into_iter().map(|(k, v)| (k.into(), v)).unzip();
        Self { columns, rows: vec![row] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().filter_map(|r| r.get(i)).collect())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TableError {
    #[error("table has no columns")]
    NoColumns,
    #[error("row {row} has {found} cells, header has {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders `table` in `format`.
///
/// CSV: header row, then one line per row, LF endings. KV: `key=value` per
/// line, rows separated by a blank line. Numbers carry 9 significant digits.
pub fn emit_table(table: &Table, format: Format) -> Result<String, TableError> {
    if table.columns.is_empty() {
        return Err(TableError::NoColumns);
    }
    for (i, row) in table.rows.iter().enumerate() {
        if row.len() != table.columns.len() {
            return Err(TableError::Ragged { row: i, expected: table.columns.len(), found: row.len() });
        }
    }
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&table.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
            for row in &table.rows {
                out.push_str(&row.iter().map(|c| csv_field(&c.render())).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
        Format::Kv => {
            for (i, row) in table.rows.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                for (k, v) in table.columns.iter().zip(row) {
                    let _ = writeln!(out, "{k}={}", v.render());
                }
            }
        }
    }
    Ok(out)
}

fn parse_cell(s: &str) -> Cell {
    s.parse::<f64>().map(Cell::Num).unwrap_or_else(|_| Cell::Text(s.to_string()))
}

fn split_csv_line(line: &str, n: usize) -> Result<Vec<String>, TableError> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(ch) = chars.next() {
        match (ch, quoted) {
            ('"', true) if chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            ('"', _) => quoted = !quoted,
            (',', false) => fields.push(std::mem::take(&mut cur)),
            (c, _) => cur.push(c),
        }
    }
    if quoted {
        return Err(TableError::Parse { line: n, message: "unterminated quote".into() });
    }
    fields.push(cur);
    Ok(fields)
}

/// Reads back CSV written by [`emit_table`].
pub fn parse_csv(text: &str) -> Result<Table, TableError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(TableError::NoColumns)?;
    let columns = split_csv_line(header, 1)?;
    let mut table = Table { columns, rows: Vec::new() };
    for (i, line) in lines {
        let row: Vec<Cell> = split_csv_line(line, i + 1)?.iter().map(|s| parse_cell(s)).collect();
        if row.len() != table.columns.len() {
            return Err(TableError::Ragged { row: table.rows.len(), expected: table.columns.len(), found: row.len() });
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Reads back a single-record KV block written by [`emit_table`].
pub fn parse_kv(text: &str) -> Result<Vec<(String, Cell)>, TableError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split_once('=')
                .map(|(k, v)| (k.to_string(), parse_cell(v)))
                .ok_or_else(|| TableError::Parse { line: i + 1, message: format!("expected key=value, got {l:?}") })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["x", "label", "y"]);
        t.push(vec![1.0.into(), "a,b".into(), (-2.5e-9).into()]);
        t.push(vec![1e12.into(), "plain".into(), 0.0.into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let s = emit_table(&sample(), Format::Csv).unwrap();
        assert_eq!(s, "x,label,y\n1.00000000e0,\"a,b\",-2.50000000e-9\n1.00000000e12,plain,0.00000000e0\n");
        assert!(!s.contains('\r'));
    }

    #[test]
    fn kv_layout() {
        let t = Table::record([("a", Cell::Num(2.0)), ("b", Cell::Text("x".into()))]);
        assert_eq!(emit_table(&t, Format::Kv).unwrap(), "a=2.00000000e0\nb=x\n");
    }

    #[test]
    fn ragged_rows_rejected() {
        let mut t = sample();
        t.push(vec![1.0.into()]);
        assert_eq!(emit_table(&t, Format::Csv), Err(TableError::Ragged { row: 2, expected: 3, found: 1 }));
        assert_eq!(emit_table(&Table::default(), Format::Kv), Err(TableError::NoColumns));
    }

    #[test]
    fn csv_round_trip() {
        let t = sample();
        let back = parse_csv(&emit_table(&t, Format::Csv).unwrap()).unwrap();
        assert_eq!(back, t);
    }
}
