//! Records, tables and the three output encodings.

use std::time::Duration;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// An exact value; strings in JSON.
    Int(BigInt),
    /// An index or count; a JSON number.
    Count(u64),
    Ints(Vec<BigInt>),
    Float(f64),
    Text(String),
    Flag(bool),
    Empty,
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Count(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Count(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Twelve significant digits.
pub fn float_text(x: f64) -> String {
    format!("{x:.11e}")
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Count(v) => v.to_string(),
            Cell::Ints(vs) => vs.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" "),
            Cell::Float(x) => float_text(*x),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::String(v.to_string()),
            Cell::Count(v) => Value::from(*v),
            Cell::Ints(vs) => Value::Array(vs.iter().map(|v| Value::String(v.to_string())).collect()),
            // round-trip through the printed form so JSON carries the same 12 digits
            Cell::Float(x) => float_text(*x)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

pub struct Row {
    pub cells: Vec<Cell>,
    pub elapsed: Option<Duration>,
}

impl Row {
    pub fn new(cells: Vec<Cell>) -> Self {
        Row { cells, elapsed: None }
    }

    pub fn timed(cells: Vec<Cell>, elapsed: Duration) -> Self {
        Row { cells, elapsed: Some(elapsed) }
    }
}

/// The first `n_params` columns are parameters, the rest results.
pub struct Table {
    pub command: String,
    pub columns: Vec<String>,
    pub n_params: usize,
    pub rows: Vec<Row>,
}

#[derive(Serialize)]
struct Record<'a> {
    command: &'a str,
    parameters: Map<String, Value>,
    result: Value,
    elapsed_ms: Value,
}

/// What a command hands back: its table, an optional plain rendering, and
/// diagnostics for stderr.
pub struct Report {
    pub table: Table,
    pub plain: Option<String>,
    pub notes: Vec<String>,
    pub failed: bool,
}

impl Report {
    pub fn new(table: Table) -> Self {
        Report { table, plain: None, notes: Vec::new(), failed: false }
    }
}

impl Table {
    pub fn new(command: &str, params: &[&str], results: &[&str]) -> Self {
        Table {
            command: command.to_string(),
            columns: params.iter().chain(results).map(|s| s.to_string()).collect(),
            n_params: params.len(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Row) {
        debug_assert_eq!(row.cells.len(), self.columns.len());
        self.rows.push(row);
    }

    fn records(&self, timing: bool) -> Vec<Record<'_>> {
        self.rows
            .iter()
            .map(|row| {
                let mut parameters = Map::new();
                for (name, cell) in self.columns.iter().zip(&row.cells).take(self.n_params) {
                    parameters.insert(name.clone(), cell.json());
                }
                let results: Vec<(&String, &Cell)> = self.columns.iter().zip(&row.cells).skip(self.n_params).collect();
                let result = if results.len() == 1 {
                    results[0].1.json()
                } else {
                    Value::Object(results.into_iter().map(|(k, c)| (k.clone(), c.json())).collect())
                };
                let elapsed_ms = match (timing, row.elapsed) {
                    (true, Some(d)) => Cell::Float(d.as_secs_f64() * 1e3).json(),
                    _ => Value::Null,
                };
                Record { command: &self.command, parameters, result, elapsed_ms }
            })
            .collect()
    }

    pub fn json(&self, timing: bool) -> String {
        let mut s = serde_json::to_string_pretty(&self.records(timing)).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn csv(&self, timing: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = self.columns.clone();
        if timing {
            header.push("elapsed_ms".into());
        }
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut fields: Vec<String> = row.cells.iter().map(Cell::text).collect();
            if timing {
                fields.push(row.elapsed.map(|d| float_text(d.as_secs_f64() * 1e3)).unwrap_or_default());
            }
            w.write_record(&fields).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// A lone value prints bare; anything else as aligned columns.
    pub fn plain(&self) -> String {
        if self.rows.len() == 1 && self.columns.len() == self.n_params + 1 {
            return format!("{}\n", self.rows[0].cells[self.n_params].text());
        }
        let body: Vec<Vec<String>> = self.rows.iter().map(|r| r.cells.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| body.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        let mut out = line(&self.columns);
        for r in &body {
            out.push_str(&line(r));
        }
        out
    }

    pub fn total_elapsed(&self) -> Duration {
        self.rows.iter().filter_map(|r| r.elapsed).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["dims"], &["degree"]);
        t.push(Row::new(vec!["1,1,1".into(), Cell::Int(BigInt::from(4))]));
        t
    }

    #[test]
    fn single_value_prints_bare() {
        assert_eq!(sample().plain(), "4\n");
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample().csv(false), "dims,degree\n\"1,1,1\",4\n");
    }

    #[test]
    fn json_keeps_integers_as_strings() {
        let v: Value = serde_json::from_str(&sample().json(false)).unwrap();
        assert_eq!(v[0]["result"], Value::String("4".into()));
        assert_eq!(v[0]["parameters"]["dims"], Value::String("1,1,1".into()));
        assert!(v[0]["elapsed_ms"].is_null());
        let mut t = Table::new("demo", &["n"], &["degree"]);
        t.push(Row::timed(vec![3u32.into(), Cell::Int(BigInt::from(2).pow(80))], Duration::from_millis(2)));
        let v: Value = serde_json::from_str(&t.json(true)).unwrap();
        assert_eq!(v[0]["parameters"]["n"], serde_json::json!(3));
        assert_eq!(v[0]["result"], Value::String("1208925819614629174706176".into()));
        assert_eq!(v[0]["elapsed_ms"], serde_json::json!(2.0));
    }

    #[test]
    fn floats_carry_twelve_digits() {
        assert_eq!(float_text(std::f64::consts::PI), "3.14159265359e0");
        assert_eq!(Cell::Float(1.0 / 3.0).json(), serde_json::json!(0.333333333333));
        assert_eq!(Cell::Float(f64::INFINITY).json(), Value::Null);
    }
}
