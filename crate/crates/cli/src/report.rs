//! Tabular reports: CSV with a `# key: value` header block, or plain text.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::ValueEnum;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

/// Twelve significant digits.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.11e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format!("{v:.8e}"),
            Cell::Missing => "-".into(),
            c => c.csv(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub meta: Vec<(String, String)>,
    /// Tolerances used; echoed in the header and on every row.
    pub tolerances: Vec<(String, f64)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Cell>) -> &mut Self {
        let cell = value.into();
        self.meta.push((key.to_string(), cell.csv()));
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.tolerances.push((key.to_string(), value));
        self
    }

    pub fn columns(&mut self, names: &[&str]) -> &mut Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        assert_eq!(cells.len(), self.columns.len(), "row width differs from header");
        self.rows.push(cells);
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Text => out.write_all(self.to_text().as_bytes()),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# tool: robiniso")?;
        writeln!(out, "# version: {VERSION}")?;
        writeln!(out, "# command: {}", self.command)?;
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        for (k, v) in &self.tolerances {
            writeln!(out, "# {k}: {}", num(*v))?;
        }
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = self.columns.clone();
        header.push("version".into());
        header.extend(self.tolerances.iter().map(|(k, _)| k.clone()));
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.iter().map(Cell::csv).collect();
            rec.push(VERSION.into());
            rec.extend(self.tolerances.iter().map(|(_, v)| num(*v)));
            w.write_record(&rec)?;
        }
        w.flush()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "robiniso {VERSION} {}", self.command);
        let width = self.meta.iter().map(|(k, _)| k.len()).chain(self.tolerances.iter().map(|(k, _)| k.len())).max().unwrap_or(0);
        for (k, v) in &self.meta {
            let _ = writeln!(s, "  {k:<width$}  {v}");
        }
        for (k, v) in &self.tolerances {
            let _ = writeln!(s, "  {k:<width$}  {v:.1e}");
        }
        if self.rows.is_empty() {
            return s;
        }
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0))
            .collect();
        s.push('\n');
        let line = |fields: Vec<&str>| -> String {
            fields.iter().zip(&widths).map(|(f, w)| format!("{f:>w$}")).collect::<Vec<_>>().join("  ")
        };
        let _ = writeln!(s, "{}", line(self.columns.iter().map(String::as_str).collect()));
        for r in &cells {
            let _ = writeln!(s, "{}", line(r.iter().map(String::as_str).collect()));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_header_block_and_echo_columns() {
        let mut r = Report::new("demo");
        r.meta("n", 3usize).tolerance("tol", 1e-8).columns(&["x", "ok"]);
        r.row(vec![Cell::Num(std::f64::consts::PI), true.into()]);
        let mut buf = Vec::new();
        r.write(&mut buf, Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# tool: robiniso\n"));
        assert!(text.contains("# n: 3\n"));
        assert!(text.contains("x,ok,version,tol\n"));
        assert!(text.contains(&format!("3.14159265359e0,true,{VERSION},1.00000000000e-8\n")));
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(1.0), "1.00000000000e0");
        assert_eq!(num(-0.000123456789012345), "-1.23456789012e-4");
    }
}
