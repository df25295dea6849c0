//! PPT classes of random three-mode states and the work each class yields.

use gaussian_work::experiments::{evaluate_work, PhiPolicy};
use gaussian_work::quadrature::AngleQuadrature;
use gaussian_work::states::{build_symmetric_mixed_tripartite, classify, Family, Sampler};
use gaussian_work::Result;

fn main() -> Result<()> {
    for a in [0.5, 1.0, 3.0] {
        let verdict = classify(&build_symmetric_mixed_tripartite(a)?)?;
        println!("symmetric mixed a = {a}: class {verdict}");
    }

    let quad = AngleQuadrature::default();
    let (samples, report) = Sampler::new(Family::GeneralTri, 11).sample(400)?;
    println!("acceptance {:.4}", report.acceptance_rate);
    let mut by_class: std::collections::BTreeMap<String, Vec<f64>> = Default::default();
    for s in &samples {
        let class = classify(&s.spec.build()?)?.class.short().to_string();
        by_class.entry(class).or_default().push(evaluate_work(&s.spec, 1.0, PhiPolicy::Fixed, &quad)?);
    }
    for (class, ws) in by_class {
        let mean = ws.iter().sum::<f64>() / ws.len() as f64;
        let min = ws.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = ws.iter().cloned().fold(0.0, f64::max);
        println!("class {class:>3}: n = {:>3}  mean W = {mean:.4}  range [{min:.4}, {max:.4}]", ws.len());
    }
    Ok(())
}
