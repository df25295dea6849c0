#![allow(dead_code)]

use gaussian_work::states::{random_physical_state, SqueezedThermalParams};
use gaussian_work::{CovarianceMatrix, GaussianMeasurement};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> CovarianceMatrix {
    random_physical_state(n, rng).unwrap()
}

pub fn random_measurement(rng: &mut ChaCha8Rng) -> GaussianMeasurement {
    let lambda = match rng.random_range(0..4) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.random_range(0.01..10.0),
    };
    GaussianMeasurement::new(lambda, rng.random_range(0.0..std::f64::consts::TAU)).unwrap()
}

/// Uniform symmetric STS inside the physical region.
pub fn random_symmetric(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let a = rng.random_range(0.5..5.0);
    let c = rng.random_range(0.0..1.0) * SqueezedThermalParams::c_max(a, a);
    (a, c)
}

pub fn random_sts(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let a = rng.random_range(0.5..5.0);
    let b = rng.random_range(0.5..5.0);
    let c = rng.random_range(0.0..1.0) * SqueezedThermalParams::c_max(a, b);
    (a, b, c)
}

/// Alice's conditional covariance after measuring all other modes at once:
/// the outcome record is `P x_rest + noise`, with `P` the identity (noise
/// `gamma`) for a proper seed and `n^T` (no noise) for homodyne, and
/// `sigma_A - X K^{-1} X^T` with `K = P sigma_rest P^T + Gamma`,
/// `X = C P^T`.
pub fn one_shot_conditional(sigma: &CovarianceMatrix, ms: &[GaussianMeasurement]) -> DMatrix<f64> {
    let m = sigma.entries();
    let rest = m.rows(2, m.nrows() - 2).columns(2, m.ncols() - 2).into_owned();
    let cross = m.rows(0, 2).columns(2, m.ncols() - 2).into_owned();
    let rows: usize = ms.iter().map(|x| if x.is_homodyne() { 1 } else { 2 }).sum();
    let mut p = DMatrix::zeros(rows, rest.nrows());
    let mut noise = DMatrix::zeros(rows, rows);
    let mut r = 0;
    for (k, meas) in ms.iter().enumerate() {
        let (s, c) = meas.angle().sin_cos();
        if meas.is_homodyne() {
            p[(r, 2 * k)] = c;
            p[(r, 2 * k + 1)] = s;
            r += 1;
        } else {
            let l = meas.strength();
            // R diag(l/2, 1/(2l)) R^T
            let (g00, g11) = (l / 2.0, 0.5 / l);
            noise[(r, r)] = c * c * g00 + s * s * g11;
            noise[(r + 1, r + 1)] = s * s * g00 + c * c * g11;
            noise[(r, r + 1)] = c * s * (g00 - g11);
            noise[(r + 1, r)] = c * s * (g00 - g11);
            p[(r, 2 * k)] = 1.0;
            p[(r + 1, 2 * k + 1)] = 1.0;
            r += 2;
        }
    }
    let k = &p * &rest * p.transpose() + noise;
    let x = &cross * p.transpose();
    let sa = m.view((0, 0), (2, 2)).into_owned();
    sa - &x * k.try_inverse().unwrap() * x.transpose()
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax()
}
