use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{certify_with, ComplexityReport, LowerBoundKind, Operation};

use super::{CliError, CliResult, EXIT_OK, EXIT_TABLE};

/// Inclusive parameter range written `lo..hi` or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl Range {
    pub fn values(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid range {s:?}; expected LO..HI"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Range { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "TIGHT")]
    Tight,
    #[serde(rename = "UPPER-ONLY")]
    UpperOnly,
    #[serde(rename = "GAP")]
    Gap,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Tight => "TIGHT",
            Verdict::UpperOnly => "UPPER-ONLY",
            Verdict::Gap => "GAP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub operation: Operation,
    pub m: usize,
    pub n: Option<usize>,
    pub formula: &'static str,
    pub formula_value: usize,
    pub constructed: usize,
    pub lower_bound: usize,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl From<ComplexityReport> for TableRow {
    fn from(r: ComplexityReport) -> Self {
        let verdict = if r.tight {
            Verdict::Tight
        } else if r.lower_bound_kind == LowerBoundKind::None {
            Verdict::UpperOnly
        } else {
            Verdict::Gap
        };
        TableRow {
            operation: r.operation,
            m: r.m,
            n: r.n,
            formula: r.formula,
            formula_value: r.formula_value,
            constructed: r.constructed_size,
            lower_bound: r.lower_bound,
            verdict,
            note: r.note,
        }
    }
}

/// The cells of the table in output order; cells outside an operation's
/// parameter domain are skipped.
pub fn table_cells(m: Range, n: Range) -> Vec<(Operation, usize, Option<usize>)> {
    let mut cells = Vec::new();
    for op in Operation::ALL {
        for mv in m.values().filter(|&v| v >= op.min_param()) {
            if op.is_binary() {
                cells.extend(
                    n.values()
                        .filter(|&v| v >= op.min_param())
                        .map(|nv| (op, mv, Some(nv))),
                );
            } else {
                cells.push((op, mv, None));
            }
        }
    }
    cells
}

pub fn table_rows(m: Range, n: Range, seed: u64) -> Result<Vec<TableRow>, CliError> {
    table_cells(m, n)
        .into_par_iter()
        .map(|(op, mv, nv)| {
            certify_with(op, mv, nv, seed)
                .map(TableRow::from)
                .map_err(|e| CliError {
                    code: EXIT_TABLE,
                    message: format!("{op} m={mv}: {e}"),
                })
        })
        .collect()
}

pub(super) fn cmd_table(
    m: Range,
    n: Range,
    format: TableFormat,
    seed: u64,
    out: &mut dyn Write,
) -> CliResult {
    let rows = table_rows(m, n, seed)?;
    match format {
        TableFormat::Text => write_text(&rows, out)?,
        TableFormat::Json => {
            let text = serde_json::to_string_pretty(&rows).expect("rows serialize");
            writeln!(out, "{text}")?;
        }
        TableFormat::Csv => write_csv(&rows, out)?,
    }
    let failed = rows
        .iter()
        .any(|r| r.operation.expects_tight() && r.verdict != Verdict::Tight);
    Ok(if failed { EXIT_TABLE } else { EXIT_OK })
}

fn n_text(n: Option<usize>) -> String {
    n.map_or_else(|| "-".to_string(), |n| n.to_string())
}

fn write_text(rows: &[TableRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<11} {:>3} {:>3}  {:<11} {:>6}  {:>11}  {:>5}  {:<10}  note",
        "operation", "m", "n", "formula", "value", "constructed", "lower", "verdict"
    )?;
    for r in rows {
        let line = format!(
            "{:<11} {:>3} {:>3}  {:<11} {:>6}  {:>11}  {:>5}  {:<10}  {}",
            r.operation.name(),
            r.m,
            n_text(r.n),
            r.formula,
            r.formula_value,
            r.constructed,
            r.lower_bound,
            r.verdict.to_string(),
            r.note.as_deref().unwrap_or("")
        );
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}

fn write_csv(rows: &[TableRow], out: &mut dyn Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "operation",
        "m",
        "n",
        "formula",
        "formula_value",
        "constructed",
        "lower_bound",
        "verdict",
    ])?;
    for r in rows {
        w.write_record([
            r.operation.name().to_string(),
            r.m.to_string(),
            r.n.map_or(String::new(), |n| n.to_string()),
            r.formula.to_string(),
            r.formula_value.to_string(),
            r.constructed.to_string(),
            r.lower_bound.to_string(),
            r.verdict.to_string(),
        ])?;
    }
    w.flush()
}
