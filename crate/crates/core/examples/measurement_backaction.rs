//! How Alice's covariance shrinks when Bob measures his mode, from homodyne
//! (lambda = 0) through heterodyne (lambda = 1) to the orthogonal homodyne
//! (lambda -> inf).

use gaussian_work::measurement::conditional_bipartite;
use gaussian_work::states::SqueezedThermalParams;
use gaussian_work::{GaussianMeasurement, Result};

fn main() -> Result<()> {
    let sigma = SqueezedThermalParams::symmetric(3.0, 2.0).build()?;
    println!("{:>8} {:>10} {:>10} {:>12}", "lambda", "var x", "var p", "det");
    for lambda in [0.0, 1e-3, 0.3, 1.0, 3.0, 1e3, f64::INFINITY] {
        let m = GaussianMeasurement::new(lambda, 0.0)?;
        let cond = conditional_bipartite(&sigma, &m)?.local(0);
        println!(
            "{lambda:>8} {:>10.6} {:>10.6} {:>12.6}",
            cond[(0, 0)],
            cond[(1, 1)],
            cond.determinant()
        );
    }
    Ok(())
}
