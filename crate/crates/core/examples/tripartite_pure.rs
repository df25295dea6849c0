//! Pure three-mode states: Alice's work is ln 2a whatever Bob and Charlie
//! measure.

use gaussian_work::states::{pure_pair_correlations, PureTripartiteParams};
use gaussian_work::work::work_tripartite;
use gaussian_work::{GaussianMeasurement, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let (cp, cm) = pure_pair_correlations(1.0, 1.0, 1.0)?;
    println!("a = b = c = 1: c+ = {cp:.6}, c- = {cm:.6}");

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [PureTripartiteParams::symmetric(2.0), PureTripartiteParams { a: 2.0, b: 1.7, c: 1.1 }] {
        let sigma = p.build()?;
        println!("(a, b, c) = ({}, {}, {}), det = {:.3e}", p.a, p.b, p.c, sigma.determinant());
        for _ in 0..5 {
            let mb = GaussianMeasurement::new(rng.random_range(0.0..4.0), rng.random_range(0.0..6.3))?;
            let mc = GaussianMeasurement::new(rng.random_range(0.0..4.0), rng.random_range(0.0..6.3))?;
            let w = work_tripartite(&sigma, &mb, &mc)?.value;
            println!("   W = {w:.12}  (ln 2a = {:.12})", (2.0 * p.a).ln());
        }
    }
    Ok(())
}
