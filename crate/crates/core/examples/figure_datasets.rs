//! Writes every scatter preset and sweep as CSV into a directory (default
//! `target/datasets`), with fewer samples than the CLI defaults.

use std::fs;
use std::path::PathBuf;

use gaussian_work::experiments::{
    companion_path, run_scatter, run_sweep, sweep_csv, threshold_csv, ExperimentConfig, ScatterPlan, SweepPlan,
    SCATTER_FIGURES, SWEEP_FIGURES,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/datasets".into()));
    fs::create_dir_all(&dir)?;
    for figure in SCATTER_FIGURES.iter().filter(|f| **f != "custom") {
        let cfg = ExperimentConfig {
            figure: Some(figure.to_string()),
            samples: Some(2000),
            seed: Some(2024),
            out: Some(dir.join(format!("{figure}.csv"))),
            ..Default::default()
        };
        let plan = ScatterPlan::resolve(&cfg)?;
        let out = run_scatter(&plan).map_err(|e| e.to_string())?;
        let path = plan.out.clone().unwrap();
        fs::write(&path, out.to_csv(&plan))?;
        if let Some(grid) = threshold_csv(&plan)? {
            fs::write(companion_path(&path), grid)?;
        }
        println!("{} rows -> {}", out.rows.len(), path.display());
    }
    for figure in SWEEP_FIGURES {
        let plan = SweepPlan::resolve(&ExperimentConfig {
            figure: Some(figure.to_string()),
            ..Default::default()
        })?;
        let rows = run_sweep(&plan).map_err(|e| e.to_string())?;
        let path = dir.join(format!("{figure}.csv"));
        fs::write(&path, sweep_csv(&rows))?;
        println!("{} points -> {}", rows.len(), path.display());
    }
    Ok(())
}
