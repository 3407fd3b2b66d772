//! CSV and JSON output of scan tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{ScanRow, ScanTable};

pub const CSV_COLUMNS: [&str; 14] = [
    "sigma",
    "mu",
    "c_q",
    "c_g",
    "phi0",
    "m_phi",
    "m_psi",
    "z_phi",
    "delta_mA2",
    "m_A2",
    "delta_V",
    "width_ratio",
    "hessian_residual",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!("unknown format '{other}' (csv|json)"))),
        }
    }
}

// `Display` for f64 is the shortest string that parses back to the same value.
fn num(x: f64) -> String {
    format!("{x}")
}

fn csv_record(row: &ScanRow) -> Vec<String> {
    let mut rec = vec![num(row.sigma), num(row.mu)];
    match &row.report {
        Some(r) => {
            let s = &r.spectrum;
            rec.extend([
                num(r.condensates.c_q),
                num(r.condensates.c_g),
                num(r.vacuum.phi0),
                num(s.m_phi),
                num(s.m_psi),
                num(s.z_phi),
                num(s.delta_ma2),
                num(s.m_a2),
                num(s.delta_v),
                num(s.width_ratio),
                s.hessian_residual.map(num).unwrap_or_default(),
            ]);
        }
        None => rec.extend(std::iter::repeat_n(String::new(), 11)),
    }
    rec.push(row.status.clone());
    rec
}

pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        w.write_record(csv_record(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Writes `table` to `destination`, or to standard output when `None`.
pub fn emit_report(table: &ScanTable, format: Format, destination: Option<&Path>) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::Usage("cannot emit an empty table".into()));
    }
    let sink: Box<dyn Write> = match destination {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Error::Io(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(&table.rows, sink),
        Format::Json => write_json(table, sink),
    }
}
