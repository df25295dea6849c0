use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gaussian_work::experiments::{
    companion_path, parse_matrix, run_scatter, run_sweep, sweep_csv, threshold_csv, work_report,
    ExperimentConfig, ExperimentError, ScatterPlan, SweepPlan,
};
use gaussian_work::states::{classify, Family, ParamRecord, StateSpec};
use gaussian_work::Error;

#[derive(Parser)]
#[command(name = "gaussian-work", version, about = "Work extraction from Gaussian states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Work, thresholds and witness verdict for one state.
    Work(WorkArgs),
    /// PPT classification of a state or of a covariance matrix file.
    Classify(ClassifyArgs),
    /// Random-state scatter dataset (CSV).
    Scatter(RunArgs),
    /// Dense curve evaluation (CSV).
    Sweep(RunArgs),
}

#[derive(Args)]
struct StateArgs {
    /// JSON parameter record (`family`, `a`, `b`, ...).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    /// Nine correlations of a general tripartite state, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    corr: Option<Vec<f64>>,
}

impl StateArgs {
    fn spec(&self) -> Result<StateSpec, Error> {
        let mut record = match &self.config {
            Some(path) => {
                let text = read(path)?;
                serde_json::from_str::<ParamRecord>(&text)
                    .map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))?
            }
            None => ParamRecord::empty(
                self.family
                    .ok_or_else(|| Error::InvalidParams("--family or --config is required".into()))?,
            ),
        };
        if let Some(f) = self.family {
            record.family = f;
        }
        for (slot, v) in [(&mut record.a, self.a), (&mut record.b, self.b), (&mut record.c, self.c), (&mut record.d, self.d)] {
            if v.is_some() {
                *slot = v;
            }
        }
        if let Some(corr) = &self.corr {
            let corr: [f64; 9] = corr
                .as_slice()
                .try_into()
                .map_err(|_| Error::InvalidParams(format!("--corr needs 9 values, got {}", corr.len())))?;
            record.set_corr(corr);
        }
        StateSpec::from_record(&record)
    }
}

#[derive(Args)]
struct WorkArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Measurement strength: 0 homodyne, 1 heterodyne, `inf` allowed.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Measurement angle in radians.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    /// Average over measurement angles.
    #[arg(long)]
    average: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    state: StateArgs,
    /// File with a 4x4 or 6x6 covariance matrix.
    #[arg(long, conflicts_with_all = ["family", "config"])]
    matrix: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Preset, e.g. fig2a..fig6b for scatter, fig2c, fig7, two-measurements for sweep.
    #[arg(long)]
    figure: Option<String>,
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Strength; repeat for several sweep curves.
    #[arg(long)]
    lambda: Vec<f64>,
    #[arg(long)]
    average: Option<bool>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Grid points.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let base = match &self.config {
            Some(path) => ExperimentConfig::from_json(&read(path)?)?,
            None => ExperimentConfig::default(),
        };
        let lambdas = (!self.lambda.is_empty()).then(|| self.lambda.clone());
        Ok(base.overlay(ExperimentConfig {
            figure: self.figure.clone(),
            family: self.family,
            samples: self.samples,
            seed: self.seed,
            lambda: lambdas.as_ref().and_then(|l| l.first().copied()),
            lambdas,
            average: self.average,
            a: self.a,
            points: self.points,
            workers: self.workers,
            out: self.out.clone(),
            ..Default::default()
        }))
    }
}

enum Failure {
    Input(String),
    Quadrature(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::QuadratureFailure { .. } => Failure::Quadrature(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e.error() {
            Error::QuadratureFailure { .. } => Failure::Quadrature(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidParams(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "n/a".into())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Work(args) => {
            let spec = args.state.spec()?;
            let report = work_report(&spec, args.lambda, args.phi, args.average)?;
            println!("W={:.6}", report.result.value);
            println!("path: {}", serde_json::to_value(report.result.path).unwrap().as_str().unwrap_or(""));
            println!("W_sep={}", fmt_opt(report.w_sep));
            println!("W_max={}", fmt_opt(report.w_max));
            if let Some(v) = report.witness {
                println!("verdict: {}", serde_json::to_value(v).unwrap().as_str().unwrap_or(""));
            }
            println!("class: {}", report.class);
            let json = serde_json::to_string(&report).unwrap();
            println!("{json}");
            if let Some(path) = &args.out {
                write(path, &format!("{json}\n"))?;
            }
        }
        Command::Classify(args) => {
            let sigma = match &args.matrix {
                Some(path) => parse_matrix(&read(path)?)?,
                None => args.state.spec()?.build()?,
            };
            let verdict = classify(&sigma)?;
            let json = serde_json::json!({
                "label": verdict.to_string(),
                "class": verdict.class,
                "bipartitions": verdict.bipartitions,
            });
            let text = format!("{json}\n");
            print!("{text}");
            if let Some(path) = &args.out {
                write(path, &text)?;
            }
        }
        Command::Scatter(args) => {
            let plan = ScatterPlan::resolve(&args.config()?)?;
            let output = run_scatter(&plan)?;
            let r = output.report;
            eprintln!(
                "accepted {} of {} draws (rate {:.3e})",
                r.accepted, r.attempts, r.acceptance_rate
            );
            if r.low_acceptance {
                eprintln!("warning: acceptance rate below 1e-3");
            }
            emit(&plan.out, &output.to_csv(&plan))?;
            if let (Some(out), Some(grid)) = (&plan.out, threshold_csv(&plan)?) {
                write(&companion_path(out), &grid)?;
            }
        }
        Command::Sweep(args) => {
            let plan = SweepPlan::resolve(&args.config()?)?;
            let rows = run_sweep(&plan)?;
            emit(&plan.out, &sweep_csv(&rows))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Quadrature(msg)) => {
            eprintln!("quadrature failure: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
