//! CSV and JSON emitters. Floats are written with 17 significant digits so
//! identical runs produce identical bytes.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use cohosc::ermakov::ErmakovTrajectory;

use crate::config::Format;
use crate::scenario::{Metadata, RunResult, SweepResult};
use crate::{Error, Result};

pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(columns: &[String], rows: &[Vec<f64>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| format_value(x)))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Serialize)]
struct Table<'a, M: Serialize> {
    metadata: M,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
}

#[derive(Serialize)]
struct SweepMetadata<'a> {
    var: &'a str,
    values: &'a [f64],
    runs: Vec<&'a Metadata>,
}

pub fn write_run<W: Write>(r: &RunResult, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(&r.columns, &r.rows, out),
        Format::Json => write_json(
            &Table {
                metadata: &r.metadata,
                columns: &r.columns,
                rows: &r.rows,
            },
            out,
        ),
    }
}

pub fn write_sweep<W: Write>(s: &SweepResult, format: Format, out: W) -> Result<()> {
    let columns = s.columns();
    let rows = s.rows();
    match format {
        Format::Csv => write_csv(&columns, &rows, out),
        Format::Json => write_json(
            &Table {
                metadata: SweepMetadata {
                    var: s.var,
                    values: &s.values,
                    runs: s.runs.iter().map(|r| &r.metadata).collect(),
                },
                columns: &columns,
                rows: &rows,
            },
            out,
        ),
    }
}

fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::Json(serde_json::Error::io(e)))?;
    Ok(())
}

/// Scale-factor diagnostics of one mode: `t, b, bdot, tau, omega_eff`.
pub fn write_trajectory<W: Write>(traj: &ErmakovTrajectory, out: W) -> Result<()> {
    let columns: Vec<String> = ["t", "b", "bdot", "tau", "omega_eff"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<f64>> = (0..traj.len())
        .map(|k| {
            vec![
                traj.times[k],
                traj.b[k],
                traj.bdot[k],
                traj.tau[k],
                traj.omega_eff[k],
            ]
        })
        .collect();
    write_csv(&columns, &rows, out)
}

/// Runs `emit` against `path`, or stdout when there is none.
pub fn to_path_or_stdout(
    path: Option<&Path>,
    emit: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(path) => {
            let io_err = |source| Error::Io {
                path: path.to_owned(),
                source,
            };
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io_err)?;
            }
            let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
            emit(&mut w)?;
            w.flush().map_err(io_err)
        }
        None => emit(&mut io::stdout().lock()),
    }
}
