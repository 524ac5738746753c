//! Rendering of command results as CSV, JSON or aligned Markdown.

use std::io::{self, Write};

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a column or JSON field changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Markdown,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i128),
    Float(f64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            // Shortest representation that parses back to the same f64.
            Cell::Float(x) => format!("{x:?}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn markdown(&self) -> String {
        match self {
            Cell::Float(x) => {
                let text = format!("{x:.6}");
                match text.strip_prefix('-') {
                    Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
                    _ => text,
                }
            }
            Cell::Empty => "-".into(),
            other => other.csv(),
        }
    }

    fn right_aligned(&self) -> bool {
        matches!(self, Cell::Int(_) | Cell::Float(_))
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(i: $t) -> Self {
                Cell::Int(i as i128)
            }
        }
    )*};
}
int_cell!(u32, u64, u128, usize, i64);

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Run settings echoed in JSON so that any result can be regenerated.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Meta {
    pub format_version: u32,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_version: Option<&'static str>,
    pub workers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n_exact: Option<usize>,
}

/// One command result: a flat table for CSV and Markdown, and the full
/// structured value for JSON.
pub struct Report {
    pub meta: Meta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub result: Value,
    /// Extra lines printed under the Markdown table.
    pub footer: Vec<String>,
}

impl Report {
    pub fn new(meta: Meta, columns: Vec<&'static str>, result: impl Serialize) -> Result<Self> {
        Ok(Self {
            meta,
            columns,
            rows: Vec::new(),
            result: serde_json::to_value(result)?,
            footer: Vec::new(),
        })
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn write(&self, format: OutputFormat, out: &mut impl Write) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
            OutputFormat::Markdown => self.write_markdown(out),
        }
    }

    fn write_csv(&self, out: &mut impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_json(&self, out: &mut impl Write) -> Result<()> {
        #[derive(Serialize)]
        struct Doc<'a> {
            meta: &'a Meta,
            result: &'a Value,
        }
        serde_json::to_writer_pretty(
            &mut *out,
            &Doc {
                meta: &self.meta,
                result: &self.result,
            },
        )?;
        writeln!(out)?;
        Ok(())
    }

    fn write_markdown(&self, out: &mut impl Write) -> Result<()> {
        let text: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::markdown).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, h)| {
                text.iter()
                    .map(|r| r[i].chars().count())
                    .chain([h.len(), 3])
                    .max()
                    .unwrap()
            })
            .collect();
        let right: Vec<bool> = (0..self.columns.len())
            .map(|i| self.rows.first().is_some_and(|r| r[i].right_aligned()))
            .collect();

        let line = |cells: &mut dyn Iterator<Item = String>| -> String {
            let parts: Vec<String> = cells
                .enumerate()
                .map(|(i, c)| {
                    if right[i] {
                        format!("{c:>w$}", w = widths[i])
                    } else {
                        format!("{c:<w$}", w = widths[i])
                    }
                })
                .collect();
            format!("| {} |", parts.join(" | "))
        };
        writeln!(
            out,
            "{}",
            line(&mut self.columns.iter().map(|c| c.to_string()))
        )?;
        let rule: Vec<String> = widths
            .iter()
            .zip(&right)
            .map(|(&w, &r)| {
                if r {
                    format!("{}:", "-".repeat(w - 1))
                } else {
                    "-".repeat(w)
                }
            })
            .collect();
        writeln!(out, "| {} |", rule.join(" | "))?;
        for r in text {
            writeln!(out, "{}", line(&mut r.into_iter()))?;
        }
        for f in &self.footer {
            writeln!(out, "\n{f}")?;
        }
        Ok(())
    }
}

pub fn print(report: &Report, format: OutputFormat) -> Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    report.write(format, &mut lock)?;
    lock.flush()?;
    Ok(())
}
