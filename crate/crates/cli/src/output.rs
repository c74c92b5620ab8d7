//! Writers for the CSV and JSON artifacts.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "COTSUM_OUT_DIR";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// `--out`, else `$COTSUM_OUT_DIR`, else the working directory.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    match flag {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")),
    }
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

/// Writes a header and rows of already formatted fields.
pub fn write_csv<W: Write>(w: W, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.write_record(row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv_file(path: &Path, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let f = create(path)?;
    write_csv(f, header, rows).map_err(|e| match e {
        CliError::Stdout(io) => CliError::io(path, io),
        CliError::Csv(c) => CliError::io(path, io::Error::other(c)),
        other => other,
    })
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, value).map_err(|e| CliError::io(path, io::Error::other(e)))?;
    f.write_all(b"\n").and_then(|_| f.flush()).map_err(|e| CliError::io(path, e))
}

/// Writes to the file when a path is given, otherwise to stdout.
pub fn write_csv_to(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    match path {
        Some(p) => write_csv_file(p, header, rows),
        None => write_csv(io::stdout().lock(), header, rows),
    }
}
