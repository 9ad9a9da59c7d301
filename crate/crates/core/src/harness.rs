//! Seeded pipeline campaigns, CSV/JSON reports and baseline comparison.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::pipeline::{pipeline_graph, pipeline_params, run_pipeline_on, Mode, PipelineError, DEFAULT_FOREST_ROUNDS};
use crate::rng::trial_seed;

/// Bumped whenever the report or baseline columns change.
pub const SCHEMA_VERSION: u32 = 1;

pub const REPORT_COLUMNS: [&str; 16] = [
    "schema_version",
    "seed",
    "n",
    "d",
    "eps",
    "mode",
    "L",
    "m",
    "N_components",
    "forest_order",
    "aux_edge_count",
    "admissible_edge_length",
    "final_vertex_length",
    "normalized_constant",
    "certified",
    "runtime_ms",
];

pub const SUMMARY_COLUMNS: [&str; 10] =
    ["schema_version", "n", "d", "eps", "mode", "runs", "certified", "mean", "min", "max"];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
    #[error("uncertified output at grid point {grid_index}, seed {seed}:\n{dump}")]
    Uncertified { grid_index: usize, seed: u64, dump: String },
    #[error("bad baseline: {0}")]
    Baseline(String),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: usize,
    pub d: f64,
    pub eps: f64,
    pub mode: Mode,
}

fn default_rounds() -> usize {
    DEFAULT_FOREST_ROUNDS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub grid: Vec<GridPoint>,
    pub seeds: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_rounds")]
    pub forest_rounds: usize,
    /// Record wall-clock time per row. Off by default so reruns are
    /// byte-identical; `runtime_ms` is then 0.
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub format: ReportFormat,
    #[serde(default)]
    pub output: Option<std::path::PathBuf>,
}

impl ExperimentConfig {
    /// Full grid over the given axes, in `n`, `d`, `eps`, `mode` nesting order.
    pub fn cartesian(ns: &[usize], ds: &[f64], epss: &[f64], modes: &[Mode], seeds: usize, base_seed: u64) -> Self {
        let mut grid = Vec::new();
        for &n in ns {
            for &d in ds {
                for &eps in epss {
                    for &mode in modes {
                        grid.push(GridPoint { n, d, eps, mode });
                    }
                }
            }
        }
        ExperimentConfig {
            grid,
            seeds,
            base_seed,
            forest_rounds: DEFAULT_FOREST_ROUNDS,
            timing: false,
            format: ReportFormat::Csv,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(HarnessError::InvalidConfig("empty grid".into()));
        }
        if self.seeds == 0 {
            return Err(HarnessError::InvalidConfig("seed count must be at least 1".into()));
        }
        for point in &self.grid {
            pipeline_params(point.n, point.d, point.eps, point.mode)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub schema_version: u32,
    pub seed: u64,
    pub n: usize,
    pub d: f64,
    pub eps: f64,
    pub mode: Mode,
    #[serde(rename = "L")]
    pub l: usize,
    pub m: usize,
    #[serde(rename = "N_components")]
    pub n_components: usize,
    pub forest_order: usize,
    pub aux_edge_count: usize,
    pub admissible_edge_length: usize,
    pub final_vertex_length: usize,
    pub normalized_constant: f64,
    pub certified: bool,
    pub runtime_ms: u64,
}

impl ReportRow {
    fn fields(&self) -> Vec<String> {
        vec![
            self.schema_version.to_string(),
            self.seed.to_string(),
            self.n.to_string(),
            format_sig(self.d),
            format_sig(self.eps),
            self.mode.to_string(),
            self.l.to_string(),
            self.m.to_string(),
            self.n_components.to_string(),
            self.forest_order.to_string(),
            self.aux_edge_count.to_string(),
            self.admissible_edge_length.to_string(),
            self.final_vertex_length.to_string(),
            format_sig(self.normalized_constant),
            self.certified.to_string(),
            self.runtime_ms.to_string(),
        ]
    }
}

/// Per grid point statistics of `normalized_constant` over certified rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub schema_version: u32,
    pub n: usize,
    pub d: f64,
    pub eps: f64,
    pub mode: Mode,
    pub runs: usize,
    pub certified: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl SummaryRow {
    fn fields(&self) -> Vec<String> {
        vec![
            self.schema_version.to_string(),
            self.n.to_string(),
            format_sig(self.d),
            format_sig(self.eps),
            self.mode.to_string(),
            self.runs.to_string(),
            self.certified.to_string(),
            format_sig(self.mean),
            format_sig(self.min),
            format_sig(self.max),
        ]
    }

    fn key(&self) -> PointKey {
        point_key(self.n, self.d, self.eps, self.mode)
    }

    fn label(&self) -> String {
        format!("n={} d={} eps={} mode={}", self.n, format_sig(self.d), format_sig(self.eps), self.mode)
    }
}

type PointKey = (usize, String, String, Mode);

fn point_key(n: usize, d: f64, eps: f64, mode: Mode) -> PointKey {
    (n, format_sig(d), format_sig(eps), mode)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub summary: Vec<SummaryRow>,
}

/// `%.9g`-style rendering: nine significant digits, trailing zeros dropped,
/// exponent form outside `[1e-4, 1e9)`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (8 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One row per (grid point, seed index), ordered that way. Seed index `i`
/// runs with `trial_seed(base_seed, i)`, the same at every grid point.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let jobs: Vec<(usize, u64)> = (0..config.grid.len())
        .flat_map(|g| (0..config.seeds as u64).map(move |i| (g, i)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(grid_index, index)| run_row(config, grid_index, trial_seed(config.base_seed, index)))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&config.grid, &rows);
    Ok(Report { rows, summary })
}

fn run_row(config: &ExperimentConfig, grid_index: usize, seed: u64) -> Result<ReportRow> {
    let point = config.grid[grid_index];
    let params = pipeline_params(point.n, point.d, point.eps, point.mode)?;
    let start = Instant::now();
    let g = pipeline_graph(&params, seed);
    let record = run_pipeline_on(&g, &params, seed, config.forest_rounds)?;
    let elapsed = start.elapsed().as_millis() as u64;
    if !record.certified || !pair_scan_is_induced_path(&g, &record.path) {
        return Err(HarnessError::Uncertified {
            grid_index,
            seed,
            dump: serde_json::to_string_pretty(&record)?,
        });
    }
    let s = record.stats;
    Ok(ReportRow {
        schema_version: SCHEMA_VERSION,
        seed,
        n: point.n,
        d: point.d,
        eps: point.eps,
        mode: point.mode,
        l: params.l,
        m: params.m,
        n_components: s.components_used,
        forest_order: s.forest_order,
        aux_edge_count: s.aux_edge_count,
        admissible_edge_length: s.admissible_edge_length,
        final_vertex_length: s.final_vertex_length,
        normalized_constant: s.normalized_constant,
        certified: true,
        runtime_ms: if config.timing { elapsed } else { 0 },
    })
}

/// Second, independent induced-path check: every pair of path vertices is
/// looked up with `has_edge`, quadratic in the path length.
pub fn pair_scan_is_induced_path(g: &Graph, path: &[usize]) -> bool {
    let n = g.vertex_count();
    if path.iter().any(|&v| v >= n) {
        return false;
    }
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            if path[i] == path[j] || g.has_edge(path[i], path[j]) != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

pub fn summarize(grid: &[GridPoint], rows: &[ReportRow]) -> Vec<SummaryRow> {
    grid.iter()
        .map(|point| {
            let key = point_key(point.n, point.d, point.eps, point.mode);
            let matching: Vec<&ReportRow> =
                rows.iter().filter(|r| point_key(r.n, r.d, r.eps, r.mode) == key).collect();
            let values: Vec<f64> =
                matching.iter().filter(|r| r.certified).map(|r| r.normalized_constant).collect();
            let (mean, min, max) = if values.is_empty() {
                (f64::NAN, f64::NAN, f64::NAN)
            } else {
                (
                    values.iter().sum::<f64>() / values.len() as f64,
                    values.iter().copied().fold(f64::INFINITY, f64::min),
                    values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                )
            };
            SummaryRow {
                schema_version: SCHEMA_VERSION,
                n: point.n,
                d: point.d,
                eps: point.eps,
                mode: point.mode,
                runs: matching.len(),
                certified: values.len(),
                mean,
                min,
                max,
            }
        })
        .collect()
}

pub fn write_rows_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REPORT_COLUMNS)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(summary: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_COLUMNS)?;
    for row in summary {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_report<W: Write>(report: &Report, format: ReportFormat, mut out: W) -> Result<()> {
    match format {
        ReportFormat::Csv => write_rows_csv(&report.rows, out),
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

fn check_header(headers: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    if headers.iter().ne(expected.iter().copied()) {
        return Err(HarnessError::Baseline(format!(
            "unexpected columns {:?}, want {:?}",
            headers.iter().collect::<Vec<_>>(),
            expected
        )));
    }
    Ok(())
}

pub fn read_rows_csv<R: io::Read>(input: R) -> Result<Vec<ReportRow>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(r.headers()?, &REPORT_COLUMNS)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<ReportRow>, _>>()?;
    check_schema(rows.iter().map(|r| r.schema_version))?;
    Ok(rows)
}

pub fn read_summary_csv<R: io::Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(r.headers()?, &SUMMARY_COLUMNS)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<SummaryRow>, _>>()?;
    check_schema(rows.iter().map(|r| r.schema_version))?;
    Ok(rows)
}

fn check_schema(versions: impl Iterator<Item = u32>) -> Result<()> {
    for v in versions {
        if v != SCHEMA_VERSION {
            return Err(HarnessError::Baseline(format!("schema version {v}, expected {SCHEMA_VERSION}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionOutcome {
    pub passed: bool,
    pub diffs: Vec<String>,
}

/// Compares each grid point's mean `normalized_constant` against the
/// baseline summary, relative tolerance `tol`. Uncertified rows, grid points
/// missing from the baseline and drift beyond `tol` all fail.
pub fn regression_check(report: &Report, baseline_path: &Path, tol: f64) -> Result<RegressionOutcome> {
    let file = File::open(baseline_path)
        .map_err(|e| HarnessError::Baseline(format!("{}: {e}", baseline_path.display())))?;
    let baseline = read_summary_csv(file)?;
    Ok(compare_to_baseline(report, &baseline, tol))
}

pub fn compare_to_baseline(report: &Report, baseline: &[SummaryRow], tol: f64) -> RegressionOutcome {
    let mut diffs = Vec::new();
    for row in report.rows.iter().filter(|r| !r.certified) {
        diffs.push(format!(
            "uncertified row: n={} d={} eps={} mode={} seed={}",
            row.n,
            format_sig(row.d),
            format_sig(row.eps),
            row.mode,
            row.seed
        ));
    }
    let base: BTreeMap<PointKey, &SummaryRow> = baseline.iter().map(|b| (b.key(), b)).collect();
    for point in &report.summary {
        let Some(b) = base.get(&point.key()) else {
            diffs.push(format!("{}: no baseline entry", point.label()));
            continue;
        };
        let drift = (point.mean - b.mean) / b.mean.abs();
        let within = if b.mean == 0.0 { point.mean == 0.0 } else { drift.abs() <= tol };
        if !within {
            diffs.push(format!(
                "{}: mean {} vs baseline {} ({:+.2}%)",
                point.label(),
                format_sig(point.mean),
                format_sig(b.mean),
                100.0 * drift
            ));
        }
    }
    RegressionOutcome { passed: diffs.is_empty(), diffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(seeds: usize) -> ExperimentConfig {
        ExperimentConfig::cartesian(&[1500], &[12.0], &[0.25], &[Mode::Practical], seeds, 5)
    }

    #[test]
    fn format_sig_examples() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(16.0), "16");
        assert_eq!(format_sig(0.25), "0.25");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333");
        assert_eq!(format_sig(123456789.0), "123456789");
        assert_eq!(format_sig(1234567890.0), "1.23456789e+09");
        assert_eq!(format_sig(0.00001234), "1.234e-05");
        assert_eq!(format_sig(-2.5), "-2.5");
        assert_eq!(format_sig(9.9999999999), "10");
    }

    #[test]
    fn one_point_three_seeds() {
        let report = run_experiment(&small_config(3)).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert_eq!(report.summary.len(), 1);
        assert_eq!(report.summary[0].runs, 3);
        assert!(report.rows.iter().all(|r| r.certified && r.runtime_ms == 0));
        let seeds: Vec<u64> = report.rows.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, (0..3).map(|i| trial_seed(5, i)).collect::<Vec<_>>());
    }

    #[test]
    fn rerun_is_byte_identical() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_rows_csv(&run_experiment(&small_config(2)).unwrap().rows, &mut a).unwrap();
        write_rows_csv(&run_experiment(&small_config(2)).unwrap().rows, &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("schema_version,seed,n,d,eps,mode,L,m,N_components,"));
    }

    #[test]
    fn csv_round_trip() {
        let report = run_experiment(&small_config(2)).unwrap();
        let mut buf = Vec::new();
        write_rows_csv(&report.rows, &mut buf).unwrap();
        let back = read_rows_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].seed, report.rows[0].seed);
        assert_eq!(back[0].final_vertex_length, report.rows[0].final_vertex_length);

        let mut buf = Vec::new();
        write_summary_csv(&report.summary, &mut buf).unwrap();
        let back = read_summary_csv(buf.as_slice()).unwrap();
        assert_eq!(back[0].runs, 2);
        assert!(read_summary_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn invalid_configs() {
        let mut c = small_config(0);
        assert!(matches!(run_experiment(&c), Err(HarnessError::InvalidConfig(_))));
        c.seeds = 1;
        c.grid.clear();
        assert!(matches!(run_experiment(&c), Err(HarnessError::InvalidConfig(_))));
        let c = ExperimentConfig::cartesian(&[100], &[1.0], &[0.25], &[Mode::Practical], 1, 0);
        assert!(matches!(run_experiment(&c), Err(HarnessError::Pipeline(_))));
    }

    fn fake_report(mean: f64, certified: bool) -> Report {
        let row = ReportRow {
            schema_version: SCHEMA_VERSION,
            seed: 1,
            n: 1000,
            d: 16.0,
            eps: 0.25,
            mode: Mode::Practical,
            l: 4,
            m: 1,
            n_components: 10,
            forest_order: 40,
            aux_edge_count: 5,
            admissible_edge_length: 2,
            final_vertex_length: 10,
            normalized_constant: mean,
            certified,
            runtime_ms: 0,
        };
        let grid = [GridPoint { n: 1000, d: 16.0, eps: 0.25, mode: Mode::Practical }];
        let summary = summarize(&grid, std::slice::from_ref(&row));
        Report { rows: vec![row], summary }
    }

    #[test]
    fn regression_rules() {
        let base = fake_report(0.5, true).summary;
        assert!(compare_to_baseline(&fake_report(0.5, true), &base, 0.05).passed);
        assert!(compare_to_baseline(&fake_report(0.52, true), &base, 0.05).passed);

        let out = compare_to_baseline(&fake_report(0.55, true), &base, 0.05);
        assert!(!out.passed);
        assert!(out.diffs[0].contains("n=1000 d=16 eps=0.25 mode=practical"), "{:?}", out.diffs);

        let out = compare_to_baseline(&fake_report(0.5, false), &base, 0.05);
        assert!(!out.passed);
        assert!(out.diffs.iter().any(|d| d.starts_with("uncertified")));

        let out = compare_to_baseline(&fake_report(0.5, true), &[], 0.05);
        assert!(!out.passed);
    }

    #[test]
    fn regression_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("base.csv");
        let report = fake_report(0.5, true);
        write_summary_csv(&report.summary, File::create(&path).unwrap()).unwrap();
        assert!(regression_check(&report, &path, 0.05).unwrap().passed);
        assert!(matches!(
            regression_check(&report, &dir.path().join("missing.csv"), 0.05),
            Err(HarnessError::Baseline(_))
        ));
        std::fs::write(&path, "garbage\n").unwrap();
        assert!(regression_check(&report, &path, 0.05).is_err());
    }

    #[test]
    fn pair_scan_examples() {
        let c5 = Graph::cycle(5);
        assert!(pair_scan_is_induced_path(&c5, &[0, 1, 2, 3]));
        assert!(!pair_scan_is_induced_path(&c5, &[0, 1, 2, 3, 4]));
        assert!(!pair_scan_is_induced_path(&c5, &[0, 1, 0]));
        assert!(pair_scan_is_induced_path(&c5, &[]));
        assert!(!pair_scan_is_induced_path(&c5, &[7]));
    }
}
