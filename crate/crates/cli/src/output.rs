//! Streaming record output in csv, json or an aligned text table.
//!
//! Floats carry 17 significant digits. Missing or non-finite values are
//! written as `NaN` in csv and tables and as `null` in json.

use std::io::{self, Write};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(Option<f64>),
    Text(String),
    Bool(bool),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i8> for Cell {
    fn from(v: i8) -> Self {
        Cell::Int(v.into())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(Some(v))
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

pub fn format_float(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.and_then(format_float).unwrap_or_else(|| "NaN".into()),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Float(v) => v.and_then(format_float).unwrap_or_else(|| "null".into()),
            Cell::Text(s) => json_string(s),
            other => other.plain(),
        }
    }
}

/// Width of every table column; wide enough for a signed 17-digit float.
const TABLE_WIDTH: usize = 24;

/// Writes a header on construction, then one record per [`RecordWriter::row`].
/// Each row is written as soon as it is supplied.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    columns: Vec<&'static str>,
    rows: usize,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut out: W, format: Format, columns: &[&'static str]) -> io::Result<Self> {
        match format {
            Format::Csv => writeln!(out, "{}", columns.join(","))?,
            Format::Json => write!(out, "[")?,
            Format::Table => {
                let line: Vec<String> = columns.iter().map(|c| format!("{c:>TABLE_WIDTH$}")).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
        Ok(Self { out, format, columns: columns.to_vec(), rows: 0 })
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        assert_eq!(cells.len(), self.columns.len(), "row width must match the header");
        match self.format {
            Format::Csv => {
                let line: Vec<String> = cells.iter().map(Cell::plain).collect();
                writeln!(self.out, "{}", line.join(","))?;
            }
            Format::Json => {
                let sep = if self.rows == 0 { "\n" } else { ",\n" };
                let fields: Vec<String> =
                    self.columns.iter().zip(cells).map(|(k, v)| format!("{}: {}", json_string(k), v.json())).collect();
                write!(self.out, "{sep}  {{{}}}", fields.join(", "))?;
            }
            Format::Table => {
                let line: Vec<String> = cells.iter().map(|c| format!("{:>TABLE_WIDTH$}", c.plain())).collect();
                writeln!(self.out, "{}", line.join(" "))?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    pub fn finish(mut self) -> io::Result<W> {
        if self.format == Format::Json {
            writeln!(self.out, "{}]", if self.rows == 0 { "" } else { "\n" })?;
        }
        self.out.flush()?;
        Ok(self.out)
    }
}
