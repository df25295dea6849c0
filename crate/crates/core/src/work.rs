//! Extractable work, in units of `k_B T`, from Alice's mode after local
//! Gaussian measurements on the other modes.
//!
//! The generic routes evaluate `W = 1/2 ln(det sigma_a / det sigma_a^{pi})`
//! from the conditioned covariance; the closed forms cover the squeezed
//! thermal families and their separability and maximum thresholds.

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::{
    conditional_bipartite, conditional_tripartite, outcome_covariance, GaussianMeasurement,
};
use crate::quadrature::AngleQuadrature;
use crate::states::{SqueezedThermalParams, TwoModeStandardForm};
use crate::symplectic::{CovarianceMatrix, PHYSICALITY_TOL, VACUUM_VARIANCE};

/// Half-width of the band around a threshold where the witness abstains.
pub const WITNESS_GUARD: f64 = 1e-9;

/// Which formula produced a [`WorkResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorkPath {
    Generic,
    SymmetricSts,
    SymmetricStsSeparable,
    SymmetricStsMax,
    Sts,
    StsSeparable,
    StsMax,
    PrimeSeparable,
    StandardFormSeparableBound,
    TwoMeasurements,
    Tripartite,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorkResult {
    /// Work in units of `k_B T` (nats).
    pub value: f64,
    pub path: WorkPath,
    /// True when the value is an average over measurement angles.
    pub averaged: bool,
    pub measurements: Vec<GaussianMeasurement>,
}

impl WorkResult {
    fn closed(value: f64, path: WorkPath, lambda: f64) -> Self {
        Self {
            value,
            path,
            averaged: false,
            measurements: GaussianMeasurement::new(lambda, 0.0).into_iter().collect(),
        }
    }
}

/// Outcome of comparing a work value with a separability threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessVerdict {
    Entangled,
    Separable,
    Inconclusive,
}

/// `W > W_sep` witnesses entanglement; values within [`WITNESS_GUARD`] of the
/// threshold are inconclusive.
pub fn witness(work: f64, work_sep: f64) -> WitnessVerdict {
    if work > work_sep + WITNESS_GUARD {
        WitnessVerdict::Entangled
    } else if work < work_sep - WITNESS_GUARD {
        WitnessVerdict::Separable
    } else {
        WitnessVerdict::Inconclusive
    }
}

/// Finite strength for the angle-independent closed forms; `inf` behaves like
/// `0` there.
fn closed_strength(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::InvalidStrength(lambda));
    }
    Ok(if lambda.is_infinite() { 0.0 } else { lambda })
}

fn require_physical(sigma: &CovarianceMatrix) -> Result<()> {
    if sigma.is_physical(PHYSICALITY_TOL) {
        Ok(())
    } else {
        Err(Error::Unphysical("state fails the uncertainty principle".into()))
    }
}

fn log_ratio(num: f64, den: f64) -> Result<f64> {
    if den <= 0.0 || !den.is_finite() {
        return Err(Error::NonPositiveDeterminant(den));
    }
    if num <= 0.0 || !num.is_finite() {
        return Err(Error::NonPositiveDeterminant(num));
    }
    Ok(0.5 * (num / den).ln())
}

fn one_measurement_value(sigma_ab: &CovarianceMatrix, m: &GaussianMeasurement) -> Result<f64> {
    let cond = conditional_bipartite(sigma_ab, m)?;
    log_ratio(sigma_ab.local(0).determinant(), cond.local(0).determinant())
}

/// `W = 1/2 ln(det sigma_a / det sigma_a^{pi_b})` for a measurement on Bob's
/// mode, with Alice's initial state as the thermal reference.
pub fn work_one_measurement(sigma_ab: &CovarianceMatrix, m: &GaussianMeasurement) -> Result<WorkResult> {
    require_physical(sigma_ab)?;
    Ok(WorkResult {
        value: one_measurement_value(sigma_ab, m)?,
        path: WorkPath::Generic,
        averaged: false,
        measurements: vec![*m],
    })
}

/// Angle average of [`work_one_measurement`] at fixed strength.
pub fn work_avg_angle(sigma_ab: &CovarianceMatrix, lambda: f64, quad: &AngleQuadrature) -> Result<WorkResult> {
    require_physical(sigma_ab)?;
    let m = GaussianMeasurement::new(lambda, 0.0)?;
    let value = if m.is_heterodyne() {
        one_measurement_value(sigma_ab, &m)?
    } else {
        quad.average(|phi| one_measurement_value(sigma_ab, &m.with_angle(phi)))?.value
    };
    Ok(WorkResult {
        value,
        path: WorkPath::Generic,
        averaged: true,
        measurements: vec![m],
    })
}

fn sts_term(a: f64, b: f64, c: f64, x: f64, y: f64) -> f64 {
    a * (2.0 * b * x + y) / (2.0 * (a * b - c * c) * x + a * y)
}

fn sts_value(a: f64, b: f64, c: f64, lambda: f64) -> f64 {
    0.5 * (sts_term(a, b, c, 1.0, lambda).ln() + sts_term(a, b, c, lambda, 1.0).ln())
}

fn validate_sts(p: SqueezedThermalParams) -> Result<()> {
    p.validate().map_err(|e| match e {
        Error::Unphysical(msg) => Error::InvalidParams(msg),
        other => other,
    })
}

fn validate_local(a: f64, b: f64) -> Result<()> {
    for (name, v) in [("a", a), ("b", b)] {
        if !v.is_finite() || v < VACUUM_VARIANCE {
            return Err(Error::InvalidParams(format!("{name} = {v} violates {name} >= 1/2")));
        }
    }
    Ok(())
}

/// Closed-form work for the symmetric squeezed thermal state, any strength.
pub fn work_symmetric_closed(a: f64, c: f64, lambda: f64) -> Result<WorkResult> {
    validate_sts(SqueezedThermalParams::symmetric(a, c))?;
    let l = closed_strength(lambda)?;
    Ok(WorkResult::closed(sts_value(a, a, c, l), WorkPath::SymmetricSts, lambda))
}

/// Symmetric threshold work at `c_sep = a - 1/2`.
pub fn work_sep_symmetric(a: f64, lambda: f64) -> Result<WorkResult> {
    validate_local(a, a)?;
    let l = closed_strength(lambda)?;
    let term = |x: f64, y: f64| 2.0 * a * (2.0 * a * x + y) / ((4.0 * a - 1.0) * x + 2.0 * a * y);
    let value = 0.5 * (term(1.0, l).ln() + term(l, 1.0).ln());
    Ok(WorkResult::closed(value, WorkPath::SymmetricStsSeparable, lambda))
}

/// `ln 2a`: work from the two-mode squeezed vacuum, for every strength.
pub fn work_max_symmetric(a: f64) -> Result<WorkResult> {
    validate_local(a, a)?;
    Ok(WorkResult {
        value: (2.0 * a).ln(),
        path: WorkPath::SymmetricStsMax,
        averaged: false,
        measurements: Vec::new(),
    })
}

/// Closed-form work for a squeezed thermal state `(a, b, c)`; independent of
/// the measurement angle.
pub fn work_sts_closed(a: f64, b: f64, c: f64, lambda: f64) -> Result<WorkResult> {
    validate_sts(SqueezedThermalParams { a, b, c })?;
    let l = closed_strength(lambda)?;
    Ok(WorkResult::closed(sts_value(a, b, c, l), WorkPath::Sts, lambda))
}

/// STS work at the separability threshold `c_sep = sqrt((a-1/2)(b-1/2))`.
pub fn work_sts_separable(a: f64, b: f64, lambda: f64) -> Result<WorkResult> {
    validate_local(a, b)?;
    let l = closed_strength(lambda)?;
    let term = |x: f64, y: f64| 2.0 * a * (2.0 * b * x + y) / ((2.0 * a + 2.0 * b - 1.0) * x + 2.0 * a * y);
    let value = 0.5 * (term(1.0, l).ln() + term(l, 1.0).ln());
    Ok(WorkResult::closed(value, WorkPath::StsSeparable, lambda))
}

/// STS work at the physical boundary `c = c_max(a, b)`.
pub fn work_sts_max(a: f64, b: f64, lambda: f64) -> Result<WorkResult> {
    validate_local(a, b)?;
    let l = closed_strength(lambda)?;
    // a b - c_max^2 = (1 + 2|a - b|) / 4
    let gap = 0.25 * (1.0 + 2.0 * (a - b).abs());
    let term = |x: f64, y: f64| a * (2.0 * b * x + y) / (2.0 * gap * x + a * y);
    let value = 0.5 * (term(1.0, l).ln() + term(l, 1.0).ln());
    Ok(WorkResult::closed(value, WorkPath::StsMax, lambda))
}

/// Explicit homodyne and heterodyne STS thresholds.
pub mod sts_explicit {
    pub fn separable_homodyne(a: f64, b: f64) -> f64 {
        0.5 * (4.0 * a * b / (2.0 * a + 2.0 * b - 1.0)).ln()
    }

    pub fn separable_heterodyne(a: f64, b: f64) -> f64 {
        let num = 2.0 * a * b + a;
        0.5 * (4.0 * num * num / (4.0 * a + 2.0 * b - 1.0).powi(2)).ln()
    }

    pub fn max_homodyne(a: f64, b: f64) -> f64 {
        0.5 * (4.0 * a * b / (1.0 + 2.0 * (a - b).abs())).ln()
    }

    pub fn max_heterodyne(a: f64, b: f64) -> f64 {
        if a <= b {
            (2.0 * a).ln()
        } else {
            (2.0 * a * (1.0 + 2.0 * b) / (1.0 + 4.0 * a - 2.0 * b)).ln()
        }
    }
}

/// Pointwise work from the separable boundary state with `c_ab = diag(c', 0)`,
/// `c'^2 = (4a^2 - 1)(4b^2 - 1) / (16 a b)`, as a function of Bob's
/// measurement.
pub fn prime_separable_work(a: f64, b: f64, m: &GaussianMeasurement) -> Result<f64> {
    validate_local(a, b)?;
    let (l, phi) = (m.strength(), m.angle());
    let (a2, b2, l2) = (a * a, b * b, l * l);
    let num = 16.0 * a2 * b * (2.0 * b + l) * (2.0 * b * l + 1.0);
    let den = (4.0 * a2 - 1.0) * (4.0 * b2 - 1.0) * (l2 - 1.0) * (2.0 * phi).cos()
        + 4.0 * a2 * (4.0 * b2 * (l2 + 1.0) + 8.0 * b * l + l2 + 1.0)
        + (4.0 * b2 - 1.0) * (4.0 * b * l + l2 + 1.0);
    log_ratio(num, den)
}

/// Angle average of [`prime_separable_work`].
pub fn prime_separable_avg(a: f64, b: f64, lambda: f64, quad: &AngleQuadrature) -> Result<WorkResult> {
    let m = GaussianMeasurement::new(lambda, 0.0)?;
    let value = quad.average(|phi| prime_separable_work(a, b, &m.with_angle(phi)))?.value;
    Ok(WorkResult {
        value,
        path: WorkPath::PrimeSeparable,
        averaged: true,
        measurements: vec![m],
    })
}

/// Both branches of the separable bound for standard-form states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeparableBound {
    /// STS threshold `W_sep(a, b, lambda)`.
    pub sts: f64,
    /// Angle-averaged `diag(c', 0)` boundary work.
    pub prime: f64,
}

impl SeparableBound {
    pub fn value(&self) -> f64 {
        self.sts.max(self.prime)
    }
}

pub fn separable_bound_branches(a: f64, b: f64, lambda: f64, quad: &AngleQuadrature) -> Result<SeparableBound> {
    Ok(SeparableBound {
        sts: work_sts_separable(a, b, lambda)?.value,
        prime: prime_separable_avg(a, b, lambda, quad)?.value,
    })
}

/// Upper bound on the angle-averaged work from separable standard-form states
/// with local variances `a, b`.
pub fn separable_bound_general(a: f64, b: f64, lambda: f64, quad: &AngleQuadrature) -> Result<WorkResult> {
    let branches = separable_bound_branches(a, b, lambda, quad)?;
    Ok(WorkResult {
        value: branches.value(),
        path: WorkPath::StandardFormSeparableBound,
        averaged: true,
        measurements: vec![GaussianMeasurement::new(lambda, 0.0)?],
    })
}

/// Work when Bob measures `m_b` and Alice extracts from the record of her own
/// measurement `m_a`:
/// `1/2 ln[det(sigma_a + gamma_a) / det(sigma_a^{pi_b} + gamma_a)]`.
/// Homodyne on Alice's side uses the variance of the measured quadrature.
pub fn work_two_measurements(
    sigma_ab: &CovarianceMatrix,
    m_b: &GaussianMeasurement,
    m_a: &GaussianMeasurement,
) -> Result<WorkResult> {
    require_physical(sigma_ab)?;
    Ok(WorkResult {
        value: two_measurement_value(sigma_ab, m_b, m_a)?,
        path: WorkPath::TwoMeasurements,
        averaged: false,
        measurements: vec![*m_b, *m_a],
    })
}

fn two_measurement_value(
    sigma_ab: &CovarianceMatrix,
    m_b: &GaussianMeasurement,
    m_a: &GaussianMeasurement,
) -> Result<f64> {
    let before = outcome_covariance(&sigma_ab.local(0), m_a).log_det()?;
    let cond = conditional_bipartite(sigma_ab, m_b)?;
    let after = outcome_covariance(&cond.local(0), m_a).log_det()?;
    Ok(0.5 * (before - after))
}

/// [`work_two_measurements`] averaged over Bob's angle `phi` and Alice's angle
/// `theta`. Heterodyne sides are not averaged.
pub fn work_two_measurements_avg(
    sigma_ab: &CovarianceMatrix,
    lambda_b: f64,
    lambda_a: f64,
    quad: &AngleQuadrature,
) -> Result<WorkResult> {
    require_physical(sigma_ab)?;
    let mb = GaussianMeasurement::new(lambda_b, 0.0)?;
    let ma = GaussianMeasurement::new(lambda_a, 0.0)?;
    let value = if ma.is_homodyne() {
        let before = mean_log_quadratic_form(&sigma_ab.local(0))?;
        let after = |b: &GaussianMeasurement| -> Result<f64> {
            mean_log_quadratic_form(&conditional_bipartite(sigma_ab, b)?.local(0))
        };
        if mb.is_heterodyne() {
            0.5 * (before - after(&mb)?)
        } else {
            0.5 * (before - quad.average(|p| after(&mb.with_angle(p)))?.value)
        }
    } else {
        average_pair(&mb, &ma, quad, |b, a| two_measurement_value(sigma_ab, b, a))?
    };
    Ok(WorkResult {
        value,
        path: WorkPath::TwoMeasurements,
        averaged: true,
        measurements: vec![mb, ma],
    })
}

fn average_pair<F>(
    first: &GaussianMeasurement,
    second: &GaussianMeasurement,
    quad: &AngleQuadrature,
    f: F,
) -> Result<f64>
where
    F: Fn(&GaussianMeasurement, &GaussianMeasurement) -> Result<f64>,
{
    match (first.is_heterodyne(), second.is_heterodyne()) {
        (true, true) => f(first, second),
        (true, false) => Ok(quad.average(|t| f(first, &second.with_angle(t)))?.value),
        (false, true) => Ok(quad.average(|p| f(&first.with_angle(p), second))?.value),
        (false, false) => Ok(quad
            .average_2d(|p, t| f(&first.with_angle(p), &second.with_angle(t)))?
            .value),
    }
}

/// `1/2 ln(I~1 I~2 / I~4)` with the invariants of `sigma + I/2`; equals the
/// double-heterodyne work and the Wehrl mutual information.
pub fn wehrl_mutual_info(sigma_ab: &CovarianceMatrix) -> Result<f64> {
    require_physical(sigma_ab)?;
    let shifted = CovarianceMatrix::new(
        sigma_ab.entries() + DMatrix::identity(4, 4) * VACUUM_VARIANCE,
    )?;
    let inv = shifted.invariants()?;
    log_ratio(inv.i1 * inv.i2, inv.i4)
}

/// `1/2 ln(I1 I2 / I4)`: the Renyi-2 mutual information.
pub fn renyi2_mutual_info(sigma_ab: &CovarianceMatrix) -> Result<f64> {
    require_physical(sigma_ab)?;
    let inv = sigma_ab.invariants()?;
    log_ratio(inv.i1 * inv.i2, inv.i4)
}

/// Exact homodyne of coordinate `k`: rank-one Schur complement dropping `k`.
fn measure_coordinate(m: &DMatrix<f64>, k: usize) -> Result<DMatrix<f64>> {
    let var = m[(k, k)];
    if var <= 0.0 {
        return Err(Error::SingularConditioning);
    }
    let col = m.column(k).into_owned();
    let updated = m - &col * col.transpose() / var;
    Ok(updated.remove_row(k).remove_column(k))
}

fn det2(m: &DMatrix<f64>) -> f64 {
    Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]).determinant()
}

/// Work from Bob homodyning `q` and then `p` of his mode, as the sum of the two
/// sequential single-homodyne terms. Matches [`renyi2_mutual_info`].
pub fn homodyne_qp_work(sigma_ab: &CovarianceMatrix) -> Result<f64> {
    require_physical(sigma_ab)?;
    if sigma_ab.n_modes() != 2 {
        return Err(Error::UnsupportedModeCount(sigma_ab.n_modes()));
    }
    let full = sigma_ab.entries().clone();
    let after_q = measure_coordinate(&full, 2)?;
    let after_p = measure_coordinate(&after_q, 2)?;
    let d0 = det2(&full);
    let d1 = det2(&after_q);
    let d2 = det2(&after_p);
    Ok(log_ratio(d0, d1)? + log_ratio(d1, d2)?)
}

fn tripartite_value(
    sigma_abc: &CovarianceMatrix,
    m_b: &GaussianMeasurement,
    m_c: &GaussianMeasurement,
) -> Result<f64> {
    let cond = conditional_tripartite(sigma_abc, m_b, m_c)?;
    log_ratio(sigma_abc.local(0).determinant(), cond.local(0).determinant())
}

/// `W = 1/2 ln(det sigma_a / det sigma_a^{pi_b, pi_c})` after Charlie and Bob
/// measure.
pub fn work_tripartite(
    sigma_abc: &CovarianceMatrix,
    m_b: &GaussianMeasurement,
    m_c: &GaussianMeasurement,
) -> Result<WorkResult> {
    require_physical(sigma_abc)?;
    Ok(WorkResult {
        value: tripartite_value(sigma_abc, m_b, m_c)?,
        path: WorkPath::Tripartite,
        averaged: false,
        measurements: vec![*m_b, *m_c],
    })
}

/// Exact mean over `phi` of `ln(n^T A n)`, `n = (cos phi, sin phi)`, for a
/// positive definite 2x2 `A`.
fn mean_log_quadratic_form(a: &Matrix2<f64>) -> Result<f64> {
    let det = a.determinant().max(0.0);
    let half_trace = 0.5 * a.trace();
    if half_trace <= 0.0 {
        return Err(Error::SingularConditioning);
    }
    Ok(((half_trace + det.sqrt()) / 2.0).ln())
}

/// Mean over Bob's homodyne angle of `ln det sigma_a^{pi_b}`.
fn homodyne_avg_log_det(sigma_ab: &CovarianceMatrix) -> Result<f64> {
    let sa = sigma_ab.local(0);
    let sb = sigma_ab.local(1);
    let c = sigma_ab.block(0, 1);
    let inv = sa.try_inverse().ok_or(Error::SingularConditioning)?;
    let schur = sb - c.transpose() * inv * c;
    let schur = 0.5 * (schur + schur.transpose());
    Ok(sa.determinant().ln() + mean_log_quadratic_form(&schur)? - mean_log_quadratic_form(&sb)?)
}

/// Angle-averaged tripartite work with Bob's homodyne average done exactly.
fn tripartite_homodyne_b_value(sigma_abc: &CovarianceMatrix, m_c: &GaussianMeasurement) -> Result<f64> {
    let sigma_ab = conditional_bipartite_on_c(sigma_abc, m_c)?;
    Ok(0.5 * (sigma_abc.local(0).determinant().ln() - homodyne_avg_log_det(&sigma_ab)?))
}

fn conditional_bipartite_on_c(sigma_abc: &CovarianceMatrix, m_c: &GaussianMeasurement) -> Result<CovarianceMatrix> {
    crate::symplectic::condition_on_measurement(sigma_abc, 2, &m_c.seed_covariance())
}

/// [`work_tripartite`] averaged over both measurement angles.
pub fn work_tripartite_avg(
    sigma_abc: &CovarianceMatrix,
    lambda_b: f64,
    lambda_c: f64,
    quad: &AngleQuadrature,
) -> Result<WorkResult> {
    require_physical(sigma_abc)?;
    let mb = GaussianMeasurement::new(lambda_b, 0.0)?;
    let mc = GaussianMeasurement::new(lambda_c, 0.0)?;
    let value = if mb.is_homodyne() {
        if mc.is_heterodyne() {
            tripartite_homodyne_b_value(sigma_abc, &mc)?
        } else {
            quad.average(|t| tripartite_homodyne_b_value(sigma_abc, &mc.with_angle(t)))?.value
        }
    } else {
        average_pair(&mb, &mc, quad, |b, c| tripartite_value(sigma_abc, b, c))?
    };
    Ok(WorkResult {
        value,
        path: WorkPath::Tripartite,
        averaged: true,
        measurements: vec![mb, mc],
    })
}

/// Correlation box bound for the general standard-form overlay: the STS
/// maximum at `d = -c`.
pub fn work_max_standard_form(a: f64, b: f64, lambda: f64) -> Result<WorkResult> {
    work_sts_max(a, b, lambda)
}

/// Separable boundary correlation of the `diag(c', 0)` family.
pub fn prime_boundary(a: f64, b: f64) -> f64 {
    TwoModeStandardForm::prime_boundary(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn sym(a: f64, c: f64) -> CovarianceMatrix {
        SqueezedThermalParams::symmetric(a, c).build().unwrap()
    }

    #[test]
    fn uncorrelated_gives_zero() {
        let s = sym(3.0, 0.0);
        for m in [GaussianMeasurement::homodyne(0.4), GaussianMeasurement::heterodyne()] {
            assert_eq!(work_one_measurement(&s, &m).unwrap().value, 0.0);
        }
        assert_eq!(work_symmetric_closed(3.0, 0.0, 2.0).unwrap().value, 0.0);
    }

    #[test]
    fn symmetric_examples() {
        let s = sym(3.0, 2.0);
        let w0 = work_one_measurement(&s, &GaussianMeasurement::homodyne(0.0)).unwrap();
        assert_abs_diff_eq!(w0.value, 0.5 * (9.0f64 / 5.0).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(w0.value, 0.293893, epsilon = 1e-6);
        let w1 = work_one_measurement(&s, &GaussianMeasurement::heterodyne()).unwrap();
        assert_abs_diff_eq!(w1.value, (21.0f64 / 13.0).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(w1.value, 0.479573, epsilon = 1e-6);

        let c0 = work_symmetric_closed(3.0, 2.0, 0.0).unwrap();
        assert_abs_diff_eq!(c0.value, w0.value, epsilon = 1e-12);
        assert_eq!(c0.path, WorkPath::SymmetricSts);
        let cmax = work_symmetric_closed(3.0, 8.75f64.sqrt(), 5.0).unwrap();
        assert_abs_diff_eq!(cmax.value, 6f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn symmetric_thresholds() {
        assert_abs_diff_eq!(
            work_sep_symmetric(3.0, 0.0).unwrap().value,
            0.5 * (36.0f64 / 11.0).ln(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(work_sep_symmetric(3.0, 0.0).unwrap().value, 0.592812, epsilon = 1e-6);
        assert_abs_diff_eq!(
            work_sep_symmetric(3.0, 1.0).unwrap().value,
            (42.0f64 / 17.0).ln(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(work_sep_symmetric(3.0, 1.0).unwrap().value, 0.904456, epsilon = 1e-6);
        for a in [1.0, 2.0, 4.0] {
            for l in [0.0, 1.0, 3.0] {
                assert_abs_diff_eq!(
                    work_sep_symmetric(a, l).unwrap().value,
                    work_symmetric_closed(a, a - 0.5, l).unwrap().value,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn heterodyne_threshold_display_has_wrong_sign() {
        // ln[2a(2a+1)/(1-6a)] has a negative argument for a > 1/6
        let a = 3.0f64;
        assert!(2.0 * a * (2.0 * a + 1.0) / (1.0 - 6.0 * a) < 0.0);
        let fixed = (2.0 * a * (2.0 * a + 1.0) / (6.0 * a - 1.0)).ln();
        assert_abs_diff_eq!(work_sep_symmetric(a, 1.0).unwrap().value, fixed, epsilon = 1e-14);
    }

    #[test]
    fn sts_examples() {
        let w0 = work_sts_closed(2.0, 3.0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(w0.value, 0.5 * (6.0f64 / 5.0).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(w0.value, 0.091161, epsilon = 1e-6);
        let w1 = work_sts_closed(2.0, 3.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(w1.value, (14.0f64 / 12.0).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(w1.value, 0.154151, epsilon = 1e-6);
        assert_abs_diff_eq!(
            work_sts_closed(3.0, 3.0, 2.0, 0.7).unwrap().value,
            work_symmetric_closed(3.0, 2.0, 0.7).unwrap().value,
            epsilon = 1e-12
        );
    }

    #[test]
    fn sts_explicit_forms_match_general_strength() {
        for (a, b) in [(2.0, 3.0), (3.0, 2.0), (0.7, 4.1), (1.5, 1.5)] {
            assert_abs_diff_eq!(
                sts_explicit::separable_homodyne(a, b),
                work_sts_separable(a, b, 0.0).unwrap().value,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                sts_explicit::separable_heterodyne(a, b),
                work_sts_separable(a, b, 1.0).unwrap().value,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                sts_explicit::max_homodyne(a, b),
                work_sts_max(a, b, 0.0).unwrap().value,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                sts_explicit::max_heterodyne(a, b),
                work_sts_max(a, b, 1.0).unwrap().value,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn invalid_closed_form_params() {
        assert!(matches!(work_symmetric_closed(3.0, 3.0, 0.0), Err(Error::InvalidParams(_))));
        assert!(matches!(work_sts_closed(0.2, 3.0, 0.0, 0.0), Err(Error::InvalidParams(_))));
        assert!(matches!(work_sep_symmetric(0.1, 0.0), Err(Error::InvalidParams(_))));
        assert!(matches!(work_symmetric_closed(3.0, 1.0, -1.0), Err(Error::InvalidStrength(_))));
    }

    #[test]
    fn infinite_strength_matches_homodyne() {
        assert_abs_diff_eq!(
            work_symmetric_closed(3.0, 2.0, f64::INFINITY).unwrap().value,
            work_symmetric_closed(3.0, 2.0, 0.0).unwrap().value,
            epsilon = 1e-15
        );
        let s = sym(3.0, 2.0);
        let m = GaussianMeasurement::new(f64::INFINITY, 0.0).unwrap();
        assert_abs_diff_eq!(
            work_one_measurement(&s, &m).unwrap().value,
            0.5 * (9.0f64 / 5.0).ln(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn prime_formula_matches_generic_pipeline() {
        for (a, b, l) in [(2.0, 1.5, 3.0), (0.8, 2.2, 0.4), (1.3, 1.3, 0.0)] {
            let cp = prime_boundary(a, b);
            let s = TwoModeStandardForm { a, b, c: cp, d: 0.0 }.build().unwrap();
            for phi in [0.0, 0.3, 1.0, 2.5] {
                let m = GaussianMeasurement::new(l, phi).unwrap();
                assert_abs_diff_eq!(
                    prime_separable_work(a, b, &m).unwrap(),
                    work_one_measurement(&s, &m).unwrap().value,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn prime_average_matches_log_cosine_identity() {
        // mean over phi of ln(Q + P cos 2phi) = ln((Q + sqrt(Q^2 - P^2)) / 2)
        let (a, b, l) = (2.0f64, 1.5f64, 3.0f64);
        let (a2, b2, l2) = (a * a, b * b, l * l);
        let num = 16.0 * a2 * b * (2.0 * b + l) * (2.0 * b * l + 1.0);
        let p = (4.0 * a2 - 1.0) * (4.0 * b2 - 1.0) * (l2 - 1.0);
        let q = 4.0 * a2 * (4.0 * b2 * (l2 + 1.0) + 8.0 * b * l + l2 + 1.0)
            + (4.0 * b2 - 1.0) * (4.0 * b * l + l2 + 1.0);
        let exact = 0.5 * (num.ln() - ((q + (q * q - p * p).sqrt()) / 2.0).ln());
        let avg = prime_separable_avg(a, b, l, &AngleQuadrature::default()).unwrap();
        assert_abs_diff_eq!(avg.value, exact, epsilon = 1e-10);
        assert!(avg.averaged);
    }

    #[test]
    fn bound_branches() {
        let q = AngleQuadrature::default();
        let big = separable_bound_branches(4.0, 4.0, 3.0, &q).unwrap();
        assert!(big.sts > big.prime, "{big:?}");
        let small = separable_bound_branches(0.6, 0.6, 3.0, &q).unwrap();
        assert!(small.prime > small.sts, "{small:?}");
        let w = separable_bound_general(0.6, 0.6, 3.0, &q).unwrap();
        assert_eq!(w.value, small.prime);
        assert_eq!(w.path, WorkPath::StandardFormSeparableBound);
    }

    #[test]
    fn sts_average_is_pointwise() {
        let s = SqueezedThermalParams { a: 2.0, b: 3.0, c: 1.7 }.build().unwrap();
        let q = AngleQuadrature::default();
        for l in [0.0, 0.5, 3.0] {
            let avg = work_avg_angle(&s, l, &q).unwrap();
            assert!(avg.averaged);
            assert_abs_diff_eq!(avg.value, work_sts_closed(2.0, 3.0, 1.7, l).unwrap().value, epsilon = 1e-10);
        }
    }

    #[test]
    fn two_measurement_examples() {
        let s = sym(3.0, 2.0);
        let het = GaussianMeasurement::heterodyne();
        let w = work_two_measurements(&s, &het, &het).unwrap().value;
        assert_abs_diff_eq!(w, (49.0f64 / 33.0).ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(w, 0.395313, epsilon = 1e-6);
        let hom = GaussianMeasurement::homodyne(0.0);
        let w = work_two_measurements(&s, &hom, &hom).unwrap().value;
        assert_abs_diff_eq!(w, 0.5 * (18.0f64 / 10.0).ln(), epsilon = 1e-12);
        let w = work_two_measurements(&s, &GaussianMeasurement::homodyne(0.4), &GaussianMeasurement::homodyne(FRAC_PI_2 - 0.4))
            .unwrap()
            .value;
        assert_abs_diff_eq!(w, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn mutual_information_examples() {
        let prod = TwoModeStandardForm { a: 2.0, b: 1.0, c: 0.0, d: 0.0 }.build().unwrap();
        assert_eq!(wehrl_mutual_info(&prod).unwrap(), 0.0);
        assert_eq!(renyi2_mutual_info(&prod).unwrap(), 0.0);
        let s = sym(3.0, 2.0);
        assert_abs_diff_eq!(wehrl_mutual_info(&s).unwrap(), (49.0f64 / 33.0).ln(), epsilon = 1e-12);
        let r = renyi2_mutual_info(&s).unwrap();
        assert_abs_diff_eq!(r, 0.5 * (81.0f64 / 25.0).ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(r, 0.587787, epsilon = 1e-6);
        assert_abs_diff_eq!(r, 2.0 * work_symmetric_closed(3.0, 2.0, 0.0).unwrap().value, epsilon = 1e-12);
        assert_abs_diff_eq!(homodyne_qp_work(&s).unwrap(), r, epsilon = 1e-12);
    }

    #[test]
    fn exact_homodyne_average_matches_quadrature() {
        let q = AngleQuadrature::default();
        let s = SqueezedThermalParams { a: 2.0, b: 1.2, c: 0.9 }.build().unwrap();
        let t = TwoModeStandardForm { a: 1.5, b: 2.5, c: 1.1, d: -0.3 }.build().unwrap();
        for sigma in [s, t] {
            let exact = 0.5 * (sigma.local(0).determinant().ln() - homodyne_avg_log_det(&sigma).unwrap());
            let numeric = work_avg_angle(&sigma, 0.0, &q).unwrap().value;
            assert_abs_diff_eq!(exact, numeric, epsilon = 1e-10);
        }
        let tri = crate::states::build_symmetric_mixed_tripartite(1.3).unwrap();
        let fast = work_tripartite_avg(&tri, 0.0, 0.0, &q).unwrap().value;
        let grid = average_pair(
            &GaussianMeasurement::homodyne(0.0),
            &GaussianMeasurement::homodyne(0.0),
            &q,
            |b, c| tripartite_value(&tri, b, c),
        )
        .unwrap();
        assert_abs_diff_eq!(fast, grid, epsilon = 1e-9);

        let s = sym(3.0, 2.0);
        let fast = work_two_measurements_avg(&s, 0.0, 0.0, &q).unwrap().value;
        let hom = GaussianMeasurement::homodyne(0.0);
        let grid = average_pair(&hom, &hom, &q, |b, a| two_measurement_value(&s, b, a)).unwrap();
        assert_abs_diff_eq!(fast, grid, epsilon = 1e-9);
    }

    #[test]
    fn witness_guard_band() {
        assert_eq!(witness(1.0, 0.5), WitnessVerdict::Entangled);
        assert_eq!(witness(0.2, 0.5), WitnessVerdict::Separable);
        assert_eq!(witness(0.5 + 1e-10, 0.5), WitnessVerdict::Inconclusive);
    }

    #[test]
    fn unphysical_input_rejected() {
        let bad = TwoModeStandardForm { a: 3.0, b: 3.0, c: 3.0, d: -3.0 }.matrix().unwrap();
        assert!(matches!(
            work_one_measurement(&bad, &GaussianMeasurement::heterodyne()),
            Err(Error::Unphysical(_))
        ));
    }
}
