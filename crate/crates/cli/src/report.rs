use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub precision_bits: usize,
    pub wall_time_ms: u128,
}

/// Machine-readable output of one command. Exact integers and rationals are
/// carried as decimal strings.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub params: BTreeMap<&'static str, String>,
    pub results: Value,
    pub meta: Meta,
}

/// Flat view of a report for CSV output.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }
}

pub struct Output {
    pub report: Report,
    pub table: Table,
    /// Whether the command's own checks passed; only `verify` can fail.
    pub passed: bool,
}

pub fn write(out: &Output, emit: Emit, w: &mut impl Write) -> std::io::Result<()> {
    match emit {
        Emit::Json => {
            serde_json::to_writer_pretty(&mut *w, &out.report)?;
            writeln!(w)
        }
        Emit::Csv => {
            let mut cw = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(w);
            cw.write_record(&out.table.header)?;
            for r in &out.table.rows {
                cw.write_record(r)?;
            }
            cw.flush()
        }
    }
}
