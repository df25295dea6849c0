//! Gaussian measurements with pure seeds and the conditioning pipelines built
//! on them.
//!
//! A measurement is fixed by a strength `lambda` and an angle `phi`; its seed
//! covariance is `R(phi) diag(lambda/2, 1/(2 lambda)) R(phi)^T`. `lambda = 0`
//! is the exact homodyne limit on the quadrature `cos(phi) x + sin(phi) p`,
//! `lambda = 1` is heterodyne.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{condition_on_measurement, rotation, CovarianceMatrix, Seed, VACUUM_VARIANCE};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianMeasurement {
    lambda: f64,
    phi: f64,
}

impl GaussianMeasurement {
    /// `lambda = +inf` is stored as homodyne at `phi + pi/2`.
    pub fn new(lambda: f64, phi: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 || !phi.is_finite() {
            return Err(Error::InvalidStrength(lambda));
        }
        if lambda.is_infinite() {
            return Ok(Self {
                lambda: 0.0,
                phi: phi + FRAC_PI_2,
            });
        }
        Ok(Self { lambda, phi })
    }

    pub fn homodyne(phi: f64) -> Self {
        Self { lambda: 0.0, phi }
    }

    pub fn heterodyne() -> Self {
        Self {
            lambda: 1.0,
            phi: 0.0,
        }
    }

    pub fn strength(&self) -> f64 {
        self.lambda
    }

    pub fn angle(&self) -> f64 {
        self.phi
    }

    pub fn is_homodyne(&self) -> bool {
        self.lambda == 0.0
    }

    pub fn is_heterodyne(&self) -> bool {
        self.lambda == 1.0
    }

    pub fn with_angle(&self, phi: f64) -> Self {
        Self {
            lambda: self.lambda,
            phi,
        }
    }

    /// Seed covariance, or the projector descriptor in the homodyne limit.
    pub fn seed_covariance(&self) -> Seed {
        if self.is_homodyne() {
            return Seed::homodyne(self.phi);
        }
        if self.is_heterodyne() {
            return Seed::Covariance(Matrix2::identity() * VACUUM_VARIANCE);
        }
        let r = rotation(self.phi);
        let diag = Matrix2::new(self.lambda / 2.0, 0.0, 0.0, 0.5 / self.lambda);
        let g = r * diag * r.transpose();
        // exact symmetry
        let off = 0.5 * (g[(0, 1)] + g[(1, 0)]);
        Seed::Covariance(Matrix2::new(g[(0, 0)], off, off, g[(1, 1)]))
    }
}

/// Alice's conditional state after Bob (mode 1) performs `m`.
pub fn conditional_bipartite(sigma_ab: &CovarianceMatrix, m: &GaussianMeasurement) -> Result<CovarianceMatrix> {
    if sigma_ab.n_modes() != 2 {
        return Err(Error::UnsupportedModeCount(sigma_ab.n_modes()));
    }
    condition_on_measurement(sigma_ab, 1, &m.seed_covariance())
}

/// Alice's conditional state after Charlie (mode 2) performs `m_c` and Bob
/// (mode 1) then performs `m_b` on the updated two-mode state.
pub fn conditional_tripartite(
    sigma_abc: &CovarianceMatrix,
    m_b: &GaussianMeasurement,
    m_c: &GaussianMeasurement,
) -> Result<CovarianceMatrix> {
    if sigma_abc.n_modes() != 3 {
        return Err(Error::UnsupportedModeCount(sigma_abc.n_modes()));
    }
    let sigma_ab = condition_on_measurement(sigma_abc, 2, &m_c.seed_covariance())?;
    condition_on_measurement(&sigma_ab, 1, &m_b.seed_covariance())
}

/// Covariance of the outcome distribution of a measurement on a single mode.
///
/// Homodyne outcomes are one dimensional and are represented by the variance
/// of the measured quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OutcomeCovariance {
    Full(Matrix2<f64>),
    Projected { direction: Vector2<f64>, variance: f64 },
}

impl OutcomeCovariance {
    /// `ln det` of the full covariance, or `ln variance` when projected.
    pub fn log_det(&self) -> Result<f64> {
        let v = match self {
            OutcomeCovariance::Full(m) => m.determinant(),
            OutcomeCovariance::Projected { variance, .. } => *variance,
        };
        if v > 0.0 && v.is_finite() {
            Ok(v.ln())
        } else {
            Err(Error::NonPositiveDeterminant(v))
        }
    }
}

/// Outcome covariance `sigma + gamma` of measuring a single-mode state.
pub fn outcome_covariance(local: &Matrix2<f64>, m: &GaussianMeasurement) -> OutcomeCovariance {
    match m.seed_covariance() {
        Seed::Covariance(gamma) => OutcomeCovariance::Full(local + gamma),
        Seed::Homodyne { direction } => OutcomeCovariance::Projected {
            direction,
            variance: (direction.transpose() * local * direction)[(0, 0)],
        },
    }
}

/// Covariance of Alice's outcomes conditioned on Bob's measurement,
/// `sigma_a^{pi_b} + gamma^{pi_a}`.
pub fn outcome_covariance_two_measurements(
    sigma_ab: &CovarianceMatrix,
    m_b: &GaussianMeasurement,
    m_a: &GaussianMeasurement,
) -> Result<OutcomeCovariance> {
    let cond = conditional_bipartite(sigma_ab, m_b)?;
    Ok(outcome_covariance(&cond.local(0), m_a))
}
