//! Randomized scatter datasets and parameter sweeps.
//!
//! Rows are evaluated on a rayon pool and written in sample order, so the
//! bytes of a dataset depend only on the configuration, never on the number
//! of workers.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::GaussianMeasurement;
use crate::quadrature::AngleQuadrature;
use crate::states::{
    build_symmetric_mixed_tripartite, classify, Family, ParamRecord, Sample, Sampler, SamplingRanges,
    SamplingReport, SqueezedThermalParams, StateSpec,
};
use crate::symplectic::CovarianceMatrix;
use crate::work::{
    separable_bound_general, witness, work_avg_angle, work_max_standard_form, work_max_symmetric,
    work_one_measurement, work_sep_symmetric, work_sts_closed, work_sts_max, work_sts_separable,
    work_symmetric_closed, work_tripartite, work_tripartite_avg, work_two_measurements,
    work_two_measurements_avg, WitnessVerdict, WorkResult,
};

pub const SCATTER_HEADER: &str =
    "sample_id,family,a,b,c,d,c1,c2,c3,c4,c5,c6,c7,c8,c9,lambda,phi_policy,class,W";

/// 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// User-facing configuration, loadable from JSON. Unset fields take the
/// preset of `figure`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Preset id, e.g. `fig2a` or `fig7`.
    #[serde(default)]
    pub figure: Option<String>,
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub lambda: Option<f64>,
    /// Strengths of the curves of a sweep.
    #[serde(default)]
    pub lambdas: Option<Vec<f64>>,
    /// Average the work over measurement angles.
    #[serde(default)]
    pub average: Option<bool>,
    #[serde(default)]
    pub ranges: Option<SamplingRanges>,
    /// Fixed local variance of a sweep.
    #[serde(default)]
    pub a: Option<f64>,
    /// Sweep interval of the abscissa.
    #[serde(default)]
    pub x_range: Option<[f64; 2]>,
    /// Grid points of a sweep or of the threshold companion.
    #[serde(default)]
    pub points: Option<usize>,
    /// Angle-average settings.
    #[serde(default)]
    pub quadrature: Option<AngleQuadrature>,
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParams(format!("config: {e}")))
    }

    /// Fields set in `other` replace those of `self`.
    pub fn overlay(mut self, other: ExperimentConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(figure, family, samples, seed, lambda, lambdas, average, ranges, a, x_range, points, quadrature, workers, out);
        self
    }
}

/// How the measurement angle enters a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiPolicy {
    /// Angle `0`; exact for angle-independent families and for heterodyne.
    Fixed,
    Average,
}

impl PhiPolicy {
    pub fn label(self) -> &'static str {
        match self {
            PhiPolicy::Fixed => "fixed",
            PhiPolicy::Average => "average",
        }
    }
}

/// Which threshold curves accompany a scatter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdGrid {
    None,
    /// `W_sep(a)` and `ln 2a` for symmetric states.
    Symmetric,
    /// STS thresholds on an `(a, b)` grid.
    Sts,
    /// STS thresholds along `a` at a fixed `b`.
    StsAtB(f64),
    /// General standard-form bound on an `(a, b)` grid.
    StandardForm,
}

/// Fully resolved scatter run.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterPlan {
    pub family: Family,
    pub samples: usize,
    pub seed: u64,
    pub lambda: f64,
    pub phi: PhiPolicy,
    pub ranges: SamplingRanges,
    pub thresholds: ThresholdGrid,
    pub points: usize,
    pub quadrature: AngleQuadrature,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

pub const SCATTER_FIGURES: [&str; 9] =
    ["fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5", "fig6a", "fig6b", "custom"];

impl ScatterPlan {
    pub fn resolve(cfg: &ExperimentConfig) -> Result<Self> {
        let figure = cfg.figure.as_deref().unwrap_or("custom");
        let (family, lambda, phi, thresholds, b_range) = match figure {
            "fig2a" => (Family::SymSts, 0.0, PhiPolicy::Fixed, ThresholdGrid::Symmetric, None),
            "fig2b" => (Family::SymSts, 1.0, PhiPolicy::Fixed, ThresholdGrid::Symmetric, None),
            "fig3a" => (Family::Sts, 0.0, PhiPolicy::Fixed, ThresholdGrid::Sts, None),
            "fig3b" => (Family::Sts, 1.0, PhiPolicy::Fixed, ThresholdGrid::Sts, None),
            "fig4" => (Family::Sts, 0.0, PhiPolicy::Fixed, ThresholdGrid::StsAtB(3.0), Some([0.5, 3.0])),
            "fig5" => (Family::Standard, 3.0, PhiPolicy::Average, ThresholdGrid::StandardForm, None),
            "fig6a" => (Family::GeneralTri, 0.0, PhiPolicy::Average, ThresholdGrid::None, None),
            "fig6b" => (Family::GeneralTri, 1.0, PhiPolicy::Fixed, ThresholdGrid::None, None),
            "custom" => {
                let family = cfg
                    .family
                    .ok_or_else(|| Error::InvalidParams("custom scatter requires a family".into()))?;
                (family, 1.0, PhiPolicy::Fixed, ThresholdGrid::None, None)
            }
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown scatter figure {other:?}; expected one of {}",
                    SCATTER_FIGURES.join(", ")
                )))
            }
        };
        if figure != "custom" && cfg.family.is_some_and(|f| f != family) {
            return Err(Error::InvalidParams(format!(
                "{figure} uses family {}",
                family.name()
            )));
        }
        let mut ranges = SamplingRanges::default_for(family);
        ranges.b = b_range.or(ranges.b);
        let ranges = cfg.ranges.clone().unwrap_or(ranges);
        let lambda = cfg.lambda.unwrap_or(lambda);
        let _ = GaussianMeasurement::new(lambda, 0.0)?;
        let phi = match cfg.average {
            Some(true) => PhiPolicy::Average,
            Some(false) => PhiPolicy::Fixed,
            None => phi,
        };
        let samples = cfg.samples.unwrap_or(if family.n_modes() == 3 { 10_000 } else { 20_000 });
        if samples == 0 {
            return Err(Error::InvalidParams("samples must be positive".into()));
        }
        check_workers(cfg.workers)?;
        Ok(Self {
            family,
            samples,
            seed: cfg.seed.unwrap_or(0),
            lambda,
            phi,
            ranges,
            thresholds,
            points: cfg.points.unwrap_or(46).max(2),
            quadrature: cfg.quadrature.unwrap_or_default(),
            workers: cfg.workers,
            out: cfg.out.clone(),
        })
    }
}

fn check_workers(workers: Option<usize>) -> Result<()> {
    if workers == Some(0) {
        return Err(Error::InvalidParams("workers must be positive".into()));
    }
    Ok(())
}

/// Runs `f` on a pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// One evaluated sample.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatterRow {
    pub sample_id: usize,
    pub record: ParamRecord,
    pub class: String,
    pub work: f64,
}

/// A row that failed to evaluate.
#[derive(Clone, Debug, PartialEq)]
pub struct RowFailure {
    pub sample_id: usize,
    pub record: ParamRecord,
    pub error: Error,
}

impl std::fmt::Display for RowFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let params = serde_json::to_string(&self.record).unwrap_or_default();
        write!(f, "sample {} {params}: {}", self.sample_id, self.error)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExperimentError {
    Config(Error),
    Row(Box<RowFailure>),
}

impl ExperimentError {
    pub fn error(&self) -> &Error {
        match self {
            ExperimentError::Config(e) => e,
            ExperimentError::Row(r) => &r.error,
        }
    }
}

impl std::fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExperimentError::Config(e) => write!(f, "{e}"),
            ExperimentError::Row(r) => write!(f, "{r}"),
        }
    }
}

impl From<Error> for ExperimentError {
    fn from(e: Error) -> Self {
        ExperimentError::Config(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterOutput {
    pub rows: Vec<ScatterRow>,
    pub report: SamplingReport,
}

impl ScatterOutput {
    pub fn to_csv(&self, plan: &ScatterPlan) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(SCATTER_HEADER);
        out.push('\n');
        for row in &self.rows {
            let r = &row.record;
            let cell = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
            let mut cells = vec![row.sample_id.to_string(), r.family.name().to_string()];
            cells.extend([r.a, r.b, r.c, r.d].map(cell));
            cells.extend(r.corr().map(cell));
            cells.push(fmt_float(plan.lambda));
            cells.push(plan.phi.label().to_string());
            cells.push(row.class.clone());
            cells.push(fmt_float(row.work));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Work of a sampled state under the plan's measurement policy. Tripartite
/// states have Bob and Charlie measuring with the same strength.
pub fn evaluate_work(spec: &StateSpec, lambda: f64, phi: PhiPolicy, quad: &AngleQuadrature) -> Result<f64> {
    let sigma = spec.build()?;
    let m = GaussianMeasurement::new(lambda, 0.0)?;
    match (spec.family().n_modes(), phi) {
        (2, PhiPolicy::Fixed) => Ok(work_one_measurement(&sigma, &m)?.value),
        (2, PhiPolicy::Average) => Ok(work_avg_angle(&sigma, lambda, quad)?.value),
        (_, PhiPolicy::Fixed) => Ok(work_tripartite(&sigma, &m, &m)?.value),
        (_, PhiPolicy::Average) => Ok(work_tripartite_avg(&sigma, lambda, lambda, quad)?.value),
    }
}

fn evaluate_row(sample: &Sample, plan: &ScatterPlan, quad: &AngleQuadrature) -> std::result::Result<ScatterRow, RowFailure> {
    let record = sample.spec.to_record(None);
    let fail = |error| RowFailure {
        sample_id: sample.index,
        record: record.clone(),
        error,
    };
    let sigma = sample.spec.build().map_err(fail)?;
    let class = classify(&sigma).map_err(fail)?.to_string();
    let work = evaluate_work(&sample.spec, plan.lambda, plan.phi, quad).map_err(fail)?;
    Ok(ScatterRow {
        sample_id: sample.index,
        record,
        class,
        work,
    })
}

/// Samples and evaluates a scatter dataset.
pub fn run_scatter(plan: &ScatterPlan) -> std::result::Result<ScatterOutput, ExperimentError> {
    let quad = plan.quadrature;
    with_workers(plan.workers, || {
        let sampler = Sampler::new(plan.family, plan.seed).with_ranges(plan.ranges.clone());
        let (samples, report) = sampler.sample(plan.samples)?;
        let rows = samples
            .par_iter()
            .map(|s| evaluate_row(s, plan, &quad))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|f| ExperimentError::Row(Box::new(f)))?;
        Ok(ScatterOutput { rows, report })
    })?
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Threshold companion of a scatter: columns `a,b,W_sep,W_max`.
pub fn threshold_csv(plan: &ScatterPlan) -> Result<Option<String>> {
    let [a_lo, a_hi] = plan.ranges.a;
    let [b_lo, b_hi] = plan.ranges.b.unwrap_or(plan.ranges.a);
    let quad = plan.quadrature;
    let n = plan.points;
    let pairs: Vec<(f64, f64)> = match plan.thresholds {
        ThresholdGrid::None => return Ok(None),
        ThresholdGrid::Symmetric => linspace(a_lo, a_hi, n).into_iter().map(|a| (a, a)).collect(),
        ThresholdGrid::StsAtB(b) => linspace(a_lo, a_hi, n).into_iter().map(|a| (a, b)).collect(),
        ThresholdGrid::Sts | ThresholdGrid::StandardForm => {
            let bs = linspace(b_lo, b_hi, n);
            linspace(a_lo, a_hi, n)
                .into_iter()
                .flat_map(|a| bs.iter().map(move |&b| (a, b)))
                .collect()
        }
    };
    let lambda = plan.lambda;
    let rows = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<(f64, f64)> {
            Ok(match plan.thresholds {
                ThresholdGrid::Symmetric => (
                    work_sep_symmetric(a, lambda)?.value,
                    work_max_symmetric(a)?.value,
                ),
                ThresholdGrid::StandardForm => (
                    separable_bound_general(a, b, lambda, &quad)?.value,
                    work_max_standard_form(a, b, lambda)?.value,
                ),
                _ => (
                    work_sts_separable(a, b, lambda)?.value,
                    work_sts_max(a, b, lambda)?.value,
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::from("a,b,W_sep,W_max\n");
    for (&(a, b), (sep, max)) in pairs.iter().zip(rows) {
        let _ = writeln!(out, "{},{},{},{}", fmt_float(a), fmt_float(b), fmt_float(sep), fmt_float(max));
    }
    Ok(Some(out))
}

/// Companion path `name.thresholds.csv` next to `out`.
pub fn companion_path(out: &std::path::Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.thresholds.csv"))
}

/// Curve families available to `sweep`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    /// Symmetric STS work against `c` at fixed `a`, one curve per strength.
    Fig2c,
    /// Symmetric mixed tripartite work against `a`: heterodyne, averaged
    /// homodyne and the pure-state value `ln 2a`.
    Fig7,
    /// Symmetric STS against `c`: one and two measurements, heterodyne and
    /// averaged homodyne.
    TwoMeasurements,
}

pub const SWEEP_FIGURES: [&str; 3] = ["fig2c", "fig7", "two-measurements"];

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPlan {
    pub kind: SweepKind,
    pub a: f64,
    pub lambdas: Vec<f64>,
    pub x_range: [f64; 2],
    pub points: usize,
    pub quadrature: AngleQuadrature,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

impl SweepPlan {
    pub fn resolve(cfg: &ExperimentConfig) -> Result<Self> {
        let figure = cfg.figure.as_deref().unwrap_or("fig2c");
        let kind = match figure {
            "fig2c" => SweepKind::Fig2c,
            "fig7" => SweepKind::Fig7,
            "two-measurements" => SweepKind::TwoMeasurements,
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown sweep {other:?}; expected one of {}",
                    SWEEP_FIGURES.join(", ")
                )))
            }
        };
        let a = cfg.a.unwrap_or(3.0);
        let cmax = SqueezedThermalParams::c_max(a, a);
        let (lambdas, x_range) = match kind {
            SweepKind::Fig2c => (vec![1.0, 5.0, 0.0], [0.0, cmax]),
            SweepKind::Fig7 => (vec![1.0, 0.0], [0.5, 10.0]),
            SweepKind::TwoMeasurements => (vec![1.0, 0.0], [0.0, cmax]),
        };
        let lambdas = cfg.lambdas.clone().or(cfg.lambda.map(|l| vec![l])).unwrap_or(lambdas);
        for &l in &lambdas {
            GaussianMeasurement::new(l, 0.0)?;
        }
        let x_range = cfg.x_range.unwrap_or(x_range);
        if !(x_range[0] <= x_range[1]) {
            return Err(Error::InvalidParams(format!("empty sweep interval {x_range:?}")));
        }
        check_workers(cfg.workers)?;
        Ok(Self {
            kind,
            a,
            lambdas,
            x_range,
            points: cfg.points.unwrap_or(201).max(2),
            quadrature: cfg.quadrature.unwrap_or_default(),
            workers: cfg.workers,
            out: cfg.out.clone(),
        })
    }
}

/// Sweep point on a named curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub series: String,
    pub x: f64,
    pub work: f64,
}

fn sweep_point(plan: &SweepPlan, series: &str, lambda: f64, x: f64, quad: &AngleQuadrature) -> Result<f64> {
    match (plan.kind, series) {
        (SweepKind::Fig2c, _) => Ok(work_symmetric_closed(plan.a, x, lambda)?.value),
        (SweepKind::Fig7, "pure") => Ok(work_max_symmetric(x)?.value),
        (SweepKind::Fig7, _) => {
            let sigma = build_symmetric_mixed_tripartite(x)?;
            Ok(work_tripartite_avg(&sigma, lambda, lambda, quad)?.value)
        }
        (SweepKind::TwoMeasurements, s) => {
            let sigma = SqueezedThermalParams::symmetric(plan.a, x).build()?;
            let m = GaussianMeasurement::new(lambda, 0.0)?;
            if s.starts_with("one") {
                Ok(work_one_measurement(&sigma, &m)?.value)
            } else if m.is_heterodyne() {
                Ok(work_two_measurements(&sigma, &m, &m)?.value)
            } else {
                Ok(work_two_measurements_avg(&sigma, lambda, lambda, quad)?.value)
            }
        }
    }
}

fn series_label(prefix: &str, lambda: f64) -> String {
    format!("{prefix}lambda={lambda}")
}

/// Evaluates every curve of the plan on its grid.
pub fn run_sweep(plan: &SweepPlan) -> std::result::Result<Vec<SweepRow>, ExperimentError> {
    let mut series: Vec<(String, f64)> = Vec::new();
    for &l in &plan.lambdas {
        match plan.kind {
            SweepKind::TwoMeasurements => {
                series.push((series_label("one:", l), l));
                series.push((series_label("two:", l), l));
            }
            _ => series.push((series_label("", l), l)),
        }
    }
    if plan.kind == SweepKind::Fig7 {
        series.push(("pure".to_string(), 0.0));
    }
    let xs = linspace(plan.x_range[0], plan.x_range[1], plan.points);
    let jobs: Vec<(&str, f64, f64)> = series
        .iter()
        .flat_map(|(name, l)| xs.iter().map(move |&x| (name.as_str(), *l, x)))
        .collect();
    let quad = plan.quadrature;
    with_workers(plan.workers, || {
        jobs.par_iter()
            .enumerate()
            .map(|(i, &(name, l, x))| {
                sweep_point(plan, name, l, x, &quad)
                    .map(|work| SweepRow {
                        series: name.to_string(),
                        x,
                        work,
                    })
                    .map_err(|error| {
                        let mut record = ParamRecord::empty(match plan.kind {
                            SweepKind::Fig7 => Family::SymMixedTri,
                            _ => Family::SymSts,
                        });
                        match plan.kind {
                            SweepKind::Fig7 => record.a = Some(x),
                            _ => {
                                record.a = Some(plan.a);
                                record.c = Some(x);
                            }
                        }
                        ExperimentError::Row(Box::new(RowFailure {
                            sample_id: i,
                            record,
                            error,
                        }))
                    })
            })
            .collect()
    })?
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("series,x,W\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.series, fmt_float(r.x), fmt_float(r.work));
    }
    out
}

/// Everything `work` prints for one state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorkReport {
    pub state: ParamRecord,
    pub result: WorkResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_sep: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessVerdict>,
    pub class: String,
}

/// Work, thresholds and verdicts for a state under the measurement
/// `(lambda, phi)`, applied by every measuring party. `average` integrates
/// over the angles instead; standard-form thresholds are only defined for
/// the averaged work.
pub fn work_report(spec: &StateSpec, lambda: f64, phi: f64, average: bool) -> Result<WorkReport> {
    let quad = AngleQuadrature::default();
    let m = GaussianMeasurement::new(lambda, phi)?;
    let sigma = spec.build()?;
    let class = classify(&sigma)?.to_string();
    let (result, w_sep, w_max) = match *spec {
        StateSpec::SymSts { a, c } => (
            work_symmetric_closed(a, c, lambda)?,
            Some(work_sep_symmetric(a, lambda)?.value),
            Some(work_max_symmetric(a)?.value),
        ),
        StateSpec::Sts(p) => (
            work_sts_closed(p.a, p.b, p.c, lambda)?,
            Some(work_sts_separable(p.a, p.b, lambda)?.value),
            Some(work_sts_max(p.a, p.b, lambda)?.value),
        ),
        StateSpec::Standard(p) if average => (
            work_avg_angle(&sigma, lambda, &quad)?,
            Some(separable_bound_general(p.a, p.b, lambda, &quad)?.value),
            Some(work_max_standard_form(p.a, p.b, lambda)?.value),
        ),
        StateSpec::Standard(_) => (work_one_measurement(&sigma, &m)?, None, None),
        StateSpec::PureTri(p) => {
            let r = if average {
                work_tripartite_avg(&sigma, lambda, lambda, &quad)?
            } else {
                work_tripartite(&sigma, &m, &m)?
            };
            (r, None, Some(work_max_symmetric(p.a)?.value))
        }
        StateSpec::SymMixedTri { a } => {
            let r = if average {
                work_tripartite_avg(&sigma, lambda, lambda, &quad)?
            } else {
                work_tripartite(&sigma, &m, &m)?
            };
            (r, None, Some(work_max_symmetric(a)?.value))
        }
        StateSpec::GeneralTri(_) => {
            let r = if average {
                work_tripartite_avg(&sigma, lambda, lambda, &quad)?
            } else {
                work_tripartite(&sigma, &m, &m)?
            };
            (r, None, None)
        }
    };
    Ok(WorkReport {
        state: spec.to_record(None),
        witness: w_sep.map(|s| witness(result.value, s)),
        result,
        w_sep,
        w_max,
        class,
    })
}

/// Reads a 4x4 or 6x6 covariance matrix written as whitespace or comma
/// separated numbers.
pub fn parse_matrix(text: &str) -> Result<CovarianceMatrix> {
    let values = text
        .split(|ch: char| ch.is_whitespace() || ch == ',' || ch == ';' || ch == '[' || ch == ']')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::InvalidParams(format!("not a number: {t:?}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    let dim = match values.len() {
        16 => 4,
        36 => 6,
        n => {
            return Err(Error::InvalidParams(format!(
                "expected 16 or 36 matrix entries, found {n}"
            )))
        }
    };
    CovarianceMatrix::from_row_slice(dim, &values)
}
