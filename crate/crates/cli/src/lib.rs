//! Table-producing commands behind the `fparadox` binary.
//!
//! Everything here is deterministic in its arguments: seeds are explicit and
//! parallel work is collected back into a fixed order before it is written.

use std::io::{BufRead, Write};

use fparadox::fit::{fit_alpha, fit_alpha_degrees, FitResult};
use fparadox::metrics::{self, ParadoxStats};
use fparadox::netgen::{self, GeneratorConfig};
use fparadox::powerlaw::serialize_k_max;
use fparadox::{Branch, Error, Graph, Model, PowerLawSpec, PredictionResult};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments; exit status 1.
    Usage(String),
    /// The inputs were well-formed but the computation failed; exit status 2.
    Domain(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Domain(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Domain(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Domain(err.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Domain(Error::Io(err.to_string()))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Domain(Error::Io(err.to_string()))
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses a number, accepting `inf` for infinity.
pub fn parse_value(s: &str) -> CliResult<f64> {
    let s = s.trim();
    match s.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        _ => s
            .parse::<f64>()
            .ok()
            .filter(|x| !x.is_nan())
            .ok_or_else(|| CliError::Usage(format!("not a number: '{s}'"))),
    }
}

/// Parses a comma-separated list whose items are values or inclusive ranges
/// `start:stop:step` (step defaults to 1).
pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse_value(v)?),
            [a, b] | [a, b, _] => {
                let (start, stop) = (parse_value(a)?, parse_value(b)?);
                let step = match parts.get(2) {
                    Some(c) => parse_value(c)?,
                    None => 1.0,
                };
                if !(step > 0.0 && step.is_finite() && start.is_finite() && stop.is_finite()) {
                    return Err(CliError::Usage(format!("bad range '{item}'")));
                }
                if stop < start {
                    return Err(CliError::Usage(format!("empty range '{item}'")));
                }
                // Tolerate the end point landing a hair past `stop`.
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                out.extend((0..=count).map(|i| start + i as f64 * step));
            }
            _ => return Err(CliError::Usage(format!("bad range '{item}'"))),
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("empty list '{s}'")));
    }
    Ok(out)
}

/// Parses seeds: a list of non-negative integers or integer ranges `a:b`.
pub fn parse_seeds(s: &str) -> CliResult<Vec<u64>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || CliError::Usage(format!("bad seed '{item}'"));
        match item.split_once(':') {
            None => out.push(item.parse::<u64>().map_err(|_| bad())?),
            Some((a, b)) => {
                let (a, b) = (
                    a.parse::<u64>().map_err(|_| bad())?,
                    b.parse::<u64>().map_err(|_| bad())?,
                );
                if b < a {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no seeds given".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictOutput {
    pub alpha: f64,
    pub k_min: f64,
    #[serde(serialize_with = "serialize_k_max")]
    pub k_max: f64,
    #[serde(flatten)]
    pub prediction: PredictionResult,
}

pub fn predict(alpha: f64, k_min: f64, k_max: f64) -> CliResult<PredictOutput> {
    let prediction = PowerLawSpec::new(alpha, k_min, k_max)?.predict()?;
    Ok(PredictOutput {
        alpha,
        k_min,
        k_max,
        prediction,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub k_min: f64,
    #[serde(serialize_with = "serialize_k_max")]
    pub k_max: f64,
    pub mean_k: f64,
    pub k_ff: f64,
    pub var_to_mean: f64,
    pub branch: Branch,
}

/// One row per `(alpha, k_max)`, alpha-major.
pub fn sweep(alphas: &[f64], k_maxes: &[f64], k_min: f64) -> CliResult<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(alphas.len() * k_maxes.len());
    for &alpha in alphas {
        for &k_max in k_maxes {
            let p = PowerLawSpec::new(alpha, k_min, k_max)?.predict()?;
            rows.push(SweepRow {
                alpha,
                k_min,
                k_max,
                mean_k: p.mean_k,
                k_ff: p.k_ff,
                var_to_mean: p.var_to_mean,
                branch: p.branch,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write, T: Serialize>(rows: &[T], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub k_min: f64,
    pub k_maxes: Vec<f64>,
    pub n: usize,
    pub models: Vec<Model>,
    pub seeds: Vec<u64>,
    pub block_size: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            k_min: 1.0,
            k_maxes: vec![10.0, 32.0, 100.0, 316.0, 1000.0],
            n: 10_000,
            models: Model::ALL.to_vec(),
            seeds: (1..=5).collect(),
            block_size: netgen::DEFAULT_BLOCK_SIZE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Cell,
    Summary,
}

/// One generated network, or the per-`(model, k_max)` summary of them.
///
/// Summary rows leave `seed`, `components` and `dropped_stubs` empty and
/// average the remaining per-cell columns over the cells without errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub kind: RowKind,
    pub model: Model,
    pub seed: Option<u64>,
    pub n: usize,
    pub k_max: f64,
    pub mean_k: Option<f64>,
    pub variance: Option<f64>,
    pub k_ff: Option<f64>,
    /// Realized `variance / mean_k`, the paradox gap.
    pub empirical_ratio: Option<f64>,
    /// Closed-form variance-to-mean ratio at the generating alpha.
    pub predicted_ratio: f64,
    pub alpha_hat: Option<f64>,
    /// Closed-form ratio over the fitted alphas of all seeds.
    pub predicted_lo: Option<f64>,
    pub predicted_hi: Option<f64>,
    pub components: Option<usize>,
    pub giant_fraction: Option<f64>,
    pub dropped_stubs: Option<usize>,
    pub error: Option<String>,
}

struct Cell {
    stats: ParadoxStats,
    alpha_hat: Option<f64>,
    components: usize,
    giant_fraction: f64,
    dropped: usize,
}

fn run_cell(
    spec: &PowerLawSpec,
    samples: &[f64],
    seq: &fparadox::DegreeSequence,
    model: Model,
    seed: u64,
    block_size: usize,
) -> fparadox::Result<Cell> {
    let g = netgen::generate_with(seq, model, seed, GeneratorConfig { block_size })?;
    let stats = metrics::stats_from_graph(&g)?;
    let sizes = metrics::components(&g);
    let dropped = netgen::drop_report(&g, seq)?.total;
    let alpha_hat = fit_alpha(samples, spec.k_min(), spec.k_max())
        .ok()
        .map(|f| f.alpha_hat);
    Ok(Cell {
        stats,
        alpha_hat,
        components: sizes.len(),
        giant_fraction: sizes[0] as f64 / g.n() as f64,
        dropped,
    })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Samples one degree sequence per `(k_max, seed)`, wires it under every
/// model, and measures the realized ratio. The fit uses the continuous draws
/// before rounding. Rows come out sorted by model, `k_max`, then seed, with
/// each `(model, k_max)` group followed by its summary row.
pub fn experiment(config: &ExperimentConfig) -> CliResult<Vec<ExperimentRow>> {
    if config.n < 100 {
        return Err(CliError::Usage("n must be at least 100".into()));
    }
    if config.seeds.is_empty() {
        return Err(CliError::Usage("no seeds given".into()));
    }
    if config.models.is_empty() {
        return Err(CliError::Usage("no models given".into()));
    }
    if config.k_maxes.is_empty() {
        return Err(CliError::Usage("no k_max values given".into()));
    }
    let mut models = config.models.clone();
    models.sort_unstable();
    models.dedup();
    let mut seeds = config.seeds.clone();
    seeds.sort_unstable();
    seeds.dedup();
    let mut k_maxes = config.k_maxes.clone();
    k_maxes.sort_by(f64::total_cmp);
    k_maxes.dedup();

    let specs = k_maxes
        .iter()
        .map(|&k_max| {
            let spec = PowerLawSpec::new(config.alpha, config.k_min, k_max)?;
            let predicted = spec.predict()?.var_to_mean;
            Ok((spec, predicted))
        })
        .collect::<fparadox::Result<Vec<_>>>()?;

    let jobs: Vec<(usize, u64)> = (0..k_maxes.len())
        .flat_map(|k| seeds.iter().map(move |&s| (k, s)))
        .collect();
    // (k index, seed) -> one result per model, in `models` order.
    let results: Vec<Vec<fparadox::Result<Cell>>> = jobs
        .par_iter()
        .map(|&(k, seed)| {
            let spec = &specs[k].0;
            if spec.is_unbounded() {
                let err = Error::Divergent("experiments need a finite k_max".into());
                return models.iter().map(|_| Err(err.clone())).collect();
            }
            let samples = spec.sample_continuous(config.n, seed);
            let seq = netgen::graphical_degrees(&samples, seed);
            models
                .iter()
                .map(|&m| run_cell(spec, &samples, &seq, m, seed, config.block_size))
                .collect()
        })
        .collect();

    let mut rows = Vec::new();
    for (mi, &model) in models.iter().enumerate() {
        for (k, &k_max) in k_maxes.iter().enumerate() {
            let (spec, predicted_ratio) = &specs[k];
            let cells: Vec<(u64, &fparadox::Result<Cell>)> = jobs
                .iter()
                .zip(&results)
                .filter(|((jk, _), _)| *jk == k)
                .map(|((_, seed), per_model)| (*seed, &per_model[mi]))
                .collect();
            let alphas: Vec<f64> = cells
                .iter()
                .filter_map(|(_, c)| c.as_ref().ok().and_then(|c| c.alpha_hat))
                .collect();
            let band = band(spec, &alphas);
            let (lo, hi) = match band {
                Some((lo, hi)) => (Some(lo), Some(hi)),
                None => (None, None),
            };
            for (seed, cell) in &cells {
                rows.push(match cell {
                    Ok(c) => ExperimentRow {
                        kind: RowKind::Cell,
                        model,
                        seed: Some(*seed),
                        n: config.n,
                        k_max,
                        mean_k: Some(c.stats.mean_k),
                        variance: Some(c.stats.variance),
                        k_ff: Some(c.stats.k_ff),
                        empirical_ratio: Some(c.stats.gap),
                        predicted_ratio: *predicted_ratio,
                        alpha_hat: c.alpha_hat,
                        predicted_lo: lo,
                        predicted_hi: hi,
                        components: Some(c.components),
                        giant_fraction: Some(c.giant_fraction),
                        dropped_stubs: Some(c.dropped),
                        error: None,
                    },
                    Err(e) => ExperimentRow {
                        kind: RowKind::Cell,
                        model,
                        seed: Some(*seed),
                        n: config.n,
                        k_max,
                        mean_k: None,
                        variance: None,
                        k_ff: None,
                        empirical_ratio: None,
                        predicted_ratio: *predicted_ratio,
                        alpha_hat: None,
                        predicted_lo: lo,
                        predicted_hi: hi,
                        components: None,
                        giant_fraction: None,
                        dropped_stubs: None,
                        error: Some(e.to_string()),
                    },
                });
            }
            let ok: Vec<&Cell> = cells.iter().filter_map(|(_, c)| c.as_ref().ok()).collect();
            let failed = cells.len() - ok.len();
            rows.push(ExperimentRow {
                kind: RowKind::Summary,
                model,
                seed: None,
                n: config.n,
                k_max,
                mean_k: mean(ok.iter().map(|c| c.stats.mean_k)),
                variance: mean(ok.iter().map(|c| c.stats.variance)),
                k_ff: mean(ok.iter().map(|c| c.stats.k_ff)),
                empirical_ratio: mean(ok.iter().map(|c| c.stats.gap)),
                predicted_ratio: *predicted_ratio,
                alpha_hat: mean(alphas.iter().copied()),
                predicted_lo: lo,
                predicted_hi: hi,
                components: None,
                giant_fraction: mean(ok.iter().map(|c| c.giant_fraction)),
                dropped_stubs: None,
                error: (failed > 0).then(|| format!("{failed} of {} cells failed", cells.len())),
            });
        }
    }
    Ok(rows)
}

/// Range of the closed-form ratio over the fitted alphas.
fn band(spec: &PowerLawSpec, alphas: &[f64]) -> Option<(f64, f64)> {
    let min = alphas.iter().copied().reduce(f64::min)?;
    let max = alphas.iter().copied().reduce(f64::max)?;
    let at = |a: f64| {
        spec.with_alpha(a)
            .and_then(|s| s.predict())
            .map(|p| p.var_to_mean)
            .ok()
    };
    let (x, y) = (at(min)?, at(max)?);
    Some((x.min(y), x.max(y)))
}

/// Samples a degree sequence and wires it; the graph behind `generate`.
pub fn generate(
    spec: &PowerLawSpec,
    n: usize,
    model: Model,
    seed: u64,
    block_size: usize,
) -> CliResult<Graph> {
    if spec.is_unbounded() {
        return Err(Error::Divergent("generation needs a finite k_max".into()).into());
    }
    let samples = spec.sample_continuous(n, seed);
    let seq = netgen::graphical_degrees(&samples, seed);
    Ok(netgen::generate_with(
        &seq,
        model,
        seed,
        GeneratorConfig { block_size },
    )?)
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentSummary {
    pub count: usize,
    pub largest: usize,
    pub giant_fraction: f64,
}

/// Everything `analyze` reports about one network. Efficiency and
/// dominance are `null` on graphs too small to define them; a failed fit is
/// reported in `fit_error` instead of aborting.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub edges: usize,
    pub stats: ParadoxStats,
    pub components: ComponentSummary,
    pub global_efficiency: Option<f64>,
    pub central_point_dominance: Option<f64>,
    pub fit: Option<FitResult>,
    pub fit_error: Option<String>,
}

pub fn analyze(g: &Graph) -> CliResult<AnalyzeReport> {
    let stats = metrics::stats_from_graph(g)?;
    let sizes = metrics::components(g);
    let (fit, fit_error) = match fit_alpha_degrees(&g.degrees(), None, None) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(AnalyzeReport {
        n: g.n(),
        edges: g.edge_count(),
        stats,
        components: ComponentSummary {
            count: sizes.len(),
            largest: sizes[0],
            giant_fraction: sizes[0] as f64 / g.n() as f64,
        },
        global_efficiency: metrics::global_efficiency(g).ok(),
        central_point_dominance: metrics::central_point_dominance(g).ok(),
        fit,
        fit_error,
    })
}

pub fn analyze_reader<R: BufRead>(input: R) -> CliResult<AnalyzeReport> {
    analyze(&fparadox::io::read_edge_list(input, None)?)
}
