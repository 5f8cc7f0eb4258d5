//! Run summaries and the benchmark table: `key=value` reports for the
//! command line, plus a stable CSV schema for probe measurements.

use std::fmt;
use std::fs::OpenOptions;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;

use crate::corpus::plant_spread;
use crate::error::{Error, Result};
use crate::gap::{gap_alpha, gap_quadratic};
use crate::ptas::gap_ptas;
use crate::sampling::{RateConfig, Seed};
use crate::text::{Text, Verdict};
use crate::walk::{default_walk_period, sampled_random_walk, WalkParams};

/// Summary of one command invocation, printed as `key=value` lines.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub seed: Seed,
    /// `ACCEPT`/`REJECT` for testers, an output path for writers.
    pub outcome: String,
    pub probes_x: u64,
    pub probes_y: u64,
    pub wall_time_ms: u128,
    /// Remaining mode-specific settings and measurements, in print order.
    pub parameters: Vec<(String, String)>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command={}", self.command)?;
        writeln!(f, "seed={}", self.seed.0)?;
        writeln!(f, "outcome={}", self.outcome)?;
        writeln!(f, "probes_x={}", self.probes_x)?;
        writeln!(f, "probes_y={}", self.probes_y)?;
        writeln!(f, "wall_time_ms={}", self.wall_time_ms)?;
        for (key, value) in &self.parameters {
            writeln!(f, "{key}={value}")?;
        }
        Ok(())
    }
}

/// Tester selected for a run or a benchmark cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TesterMode {
    Quadratic,
    Alpha,
    Ptas,
    Walk,
}

impl fmt::Display for TesterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TesterMode::Quadratic => "quadratic",
            TesterMode::Alpha => "alpha",
            TesterMode::Ptas => "ptas",
            TesterMode::Walk => "walk",
        })
    }
}

impl FromStr for TesterMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic" => Ok(TesterMode::Quadratic),
            "alpha" => Ok(TesterMode::Alpha),
            "ptas" => Ok(TesterMode::Ptas),
            "walk" => Ok(TesterMode::Walk),
            other => Err(Error::parameter(format!(
                "unknown mode `{other}`; expected quadratic, alpha, ptas, or walk"
            ))),
        }
    }
}

pub const BENCH_HEADER: [&str; 7] = ["n", "k", "mode", "seed", "verdict", "probes", "wall_ms"];

/// One benchmark measurement; `probes` sums both input counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub mode: TesterMode,
    pub seed: u64,
    pub verdict: Verdict,
    pub probes: u64,
    pub wall_ms: u128,
}

/// Append rows to `path`, writing the header only when the file is new or
/// empty, so repeated runs can extend one table.
pub fn append_bench_csv(path: &Path, rows: &[BenchRow]) -> Result<()> {
    let fresh = !path.exists() || std::fs::metadata(path)?.len() == 0;
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if fresh {
        writer.write_record(BENCH_HEADER).map_err(csv_err)?;
    }
    for row in rows {
        writer
            .write_record(&[
                row.n.to_string(),
                row.k.to_string(),
                row.mode.to_string(),
                row.seed.to_string(),
                row.verdict.label().to_string(),
                row.probes.to_string(),
                row.wall_ms.to_string(),
            ])
            .map_err(csv_err)?;
    }
    writer.flush()?;
    Ok(())
}

/// Parse a benchmark table back into rows, checking the header verbatim.
pub fn read_bench_csv(path: &Path) -> Result<Vec<BenchRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(csv_err)?;
    let header = reader.headers().map_err(csv_err)?.clone();
    if header.iter().ne(BENCH_HEADER.iter().copied()) {
        return Err(Error::parameter(format!("unexpected CSV header: {header:?}")));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        if record.len() != BENCH_HEADER.len() {
            return Err(Error::parameter(format!("short CSV row: {record:?}")));
        }
        rows.push(BenchRow {
            n: field(&record, 0)?,
            k: field(&record, 1)?,
            mode: record[2].parse()?,
            seed: field(&record, 3)?,
            verdict: match &record[4] {
                "ACCEPT" => Verdict::Accept,
                "REJECT" => Verdict::Reject,
                other => return Err(Error::parameter(format!("bad verdict `{other}`"))),
            },
            probes: field(&record, 5)?,
            wall_ms: field(&record, 6)?,
        });
    }
    Ok(rows)
}

fn field<T: FromStr>(record: &csv::StringRecord, idx: usize) -> Result<T> {
    record[idx]
        .parse()
        .map_err(|_| Error::parameter(format!("bad CSV field `{}` in column {idx}", &record[idx])))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::parameter(format!("csv: {other:?}")),
    }
}

/// Mode-specific knobs a benchmark cell forwards to its tester.
#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub alpha: usize,
    pub window: usize,
    pub epsilon: f64,
    pub rates: RateConfig,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { alpha: 2, window: 64, epsilon: 0.5, rates: RateConfig::default() }
    }
}

/// Run the full `(n, k)` grid for one mode with `trials` seeds per cell.
/// Each run regenerates its inputs from the cell seed: a uniform byte
/// string and a partner with `k` well-spread substitutions, so the tester
/// exercises its accepting path. Rows come out ordered by (n, k, seed) and
/// are bit-reproducible for a fixed `master` seed, wall time aside.
pub fn bench_grid(
    ns: &[usize],
    ks: &[usize],
    mode: TesterMode,
    trials: usize,
    opts: &BenchOptions,
    master: Seed,
) -> Result<Vec<BenchRow>> {
    if ns.is_empty() || ks.is_empty() || trials == 0 {
        return Err(Error::parameter("benchmark grid is empty"));
    }
    let mut rows = Vec::with_capacity(ns.len() * ks.len() * trials);
    for &n in ns {
        for &k in ks {
            for t in 0..trials as u64 {
                let cell = master.child("n", n as u64).child("k", k as u64).child("trial", t);
                rows.push(bench_cell(n, k, mode, t, cell, opts)?);
            }
        }
    }
    Ok(rows)
}

fn bench_cell(
    n: usize,
    k: usize,
    mode: TesterMode,
    label: u64,
    seed: Seed,
    opts: &BenchOptions,
) -> Result<BenchRow> {
    let mut rng = seed.child("corpus", 0).rng();
    let base: Vec<u8> = (0..n).map(|_| rng.gen()).collect();
    let edited = plant_spread(&mut rng, &base, k);
    let (x, y) = (Text::new(base), Text::new(edited));
    let run_seed = seed.child("run", 0);
    let start = Instant::now();
    let verdict = match mode {
        TesterMode::Quadratic => gap_quadratic(&x, &y, k, opts.rates, run_seed).verdict,
        TesterMode::Alpha => gap_alpha(&x, &y, k, opts.alpha, None, opts.rates, run_seed)?.verdict,
        TesterMode::Ptas => {
            gap_ptas(&x, &y, k, opts.window, opts.epsilon, opts.rates, run_seed)?.verdict
        }
        TesterMode::Walk => {
            let params = WalkParams { k, p: default_walk_period(n), n: n.max(1) };
            sampled_random_walk(&x, &y, params, run_seed)?.verdict
        }
    };
    let wall_ms = start.elapsed().as_millis();
    Ok(BenchRow { n, k, mode, seed: label, verdict, probes: x.probes() + y.probes(), wall_ms })
}
