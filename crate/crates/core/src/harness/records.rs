use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::approx::Algorithm;
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 11] = [
    "algorithm",
    "matrix",
    "n",
    "r",
    "T",
    "k",
    "l_or_s",
    "trial",
    "seed",
    "relative_error",
    "wall_time_ms",
];

/// Outcome of one trial of one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algorithm: Algorithm,
    pub matrix: String,
    pub n: usize,
    pub r: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub k: usize,
    /// `ℓ` for the simple sketch, `s` for the three-part sketch.
    pub l_or_s: usize,
    pub trial: usize,
    pub seed: u64,
    /// Infinite when `τ_{r+1} = 0`.
    pub relative_error: f64,
    pub wall_time_ms: f64,
}

fn float(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io("<csv>", io),
        other => Error::arg(format!("csv: {other:?}")),
    }
}

/// Writes the header and one row per record.
pub fn write_csv<W: Write>(records: &[ResultRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.algorithm.tag().to_string(),
            r.matrix.clone(),
            r.n.to_string(),
            r.r.to_string(),
            r.t.to_string(),
            r.k.to_string(),
            r.l_or_s.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            float(r.relative_error),
            float(r.wall_time_ms),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))
}

/// [`write_csv`] to a file.
pub fn emit_csv(records: &[ResultRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(records, BufWriter::new(file)).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

/// Parses a file written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    rd.deserialize().map(|r| r.map_err(csv_err)).collect()
}
