//! Extractable work from Gaussian states under local Gaussian measurements.
//!
//! One mode of a correlated Gaussian state is used as the working medium of
//! an isothermal engine after the remaining modes are measured. Comparing the
//! extracted work with its largest value over separable states gives an
//! entanglement witness. Modules:
//!
//! - [`symplectic`]: covariance matrices, symplectic spectra, partial
//!   transposition and Gaussian conditioning.
//! - [`states`]: the two- and three-mode state families, thresholds, PPT
//!   classification and reproducible samplers.
//! - [`measurement`]: measurement seeds and conditioning pipelines.
//! - [`work`]: work functionals, closed forms, bounds and angle averages.
//! - [`experiments`]: dataset generation behind the `gaussian-work` binary.
//!
//! Work is reported in units of `k_B T`; all logarithms are natural.

pub mod error;
pub mod experiments;
pub mod measurement;
pub mod quadrature;
pub mod states;
pub mod symplectic;
pub mod work;

pub use error::{Error, Result};
pub use measurement::GaussianMeasurement;
pub use quadrature::AngleQuadrature;
pub use states::{classify, Family, SeparabilityClass, SeparabilityVerdict, StateSpec};
pub use symplectic::CovarianceMatrix;
pub use work::{WorkPath, WorkResult};
