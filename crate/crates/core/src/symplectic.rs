//! Dense covariance-matrix algebra for states of up to three bosonic modes.
//!
//! Conventions: quadratures are ordered `(x_1, p_1, x_2, p_2, ...)`, the vacuum
//! has covariance `1/2 * I`, and the symplectic form is block diagonal with
//! blocks `[[0, 1], [-1, 0]]`.

use nalgebra::{DMatrix, Matrix2, Vector2};

use crate::error::{Error, Result};

/// Variance of each vacuum quadrature.
pub const VACUUM_VARIANCE: f64 = 0.5;

/// Default tolerance on the smallest symplectic eigenvalue.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Largest number of modes handled by the dense routines.
pub const MAX_MODES: usize = 3;

const SYMMETRY_TOL: f64 = 1e-12;

/// `[[cos phi, -sin phi], [sin phi, cos phi]]`.
pub fn rotation(phi: f64) -> Matrix2<f64> {
    let (s, c) = phi.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Block-diagonal symplectic form on `n_modes` modes.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// Covariance matrix of a zero-mean Gaussian state on 1 to 3 modes.
///
/// The stored matrix is exactly symmetric. Physicality is not enforced at
/// construction; use [`CovarianceMatrix::is_physical`].
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
}

/// Local, cross and global determinants of a two-mode covariance matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymplecticInvariants {
    /// `det sigma_a`
    pub i1: f64,
    /// `det sigma_b`
    pub i2: f64,
    /// `det c_ab`
    pub i3: f64,
    /// `det sigma_ab`
    pub i4: f64,
    /// `i1 + i2 + 2 i3`
    pub delta: f64,
}

impl CovarianceMatrix {
    /// Wraps a dense matrix, checking shape, finiteness and symmetry.
    ///
    /// Asymmetries below `1e-12` (relative to the largest entry) are removed by
    /// averaging with the transpose; larger ones are rejected.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 || rows > 2 * MAX_MODES {
            return Err(Error::InvalidDimension { rows, cols });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = entries.amax().max(1.0);
        let asym = (&entries - entries.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let entries = (&entries + entries.transpose()) * 0.5;
        Ok(Self {
            n_modes: rows / 2,
            entries,
        })
    }

    pub fn from_row_slice(dim: usize, data: &[f64]) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::InvalidDimension {
                rows: dim,
                cols: data.len() / dim.max(1),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, data))
    }

    /// Product of `n_modes` vacua.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        Self::new(DMatrix::identity(2 * n_modes, 2 * n_modes) * VACUUM_VARIANCE)
    }

    /// Single-mode thermal state `diag(a, a)`.
    pub fn thermal(a: f64) -> Result<Self> {
        Self::new(DMatrix::from_diagonal_element(2, 2, a))
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &CovarianceMatrix) -> Result<Self> {
        let d1 = self.dim();
        let d2 = other.dim();
        let mut m = DMatrix::zeros(d1 + d2, d1 + d2);
        m.view_mut((0, 0), (d1, d1)).copy_from(&self.entries);
        m.view_mut((d1, d1), (d2, d2)).copy_from(&other.entries);
        Self::new(m)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    /// The 2x2 block coupling modes `i` and `j`.
    pub fn block(&self, i: usize, j: usize) -> Matrix2<f64> {
        let v = self.entries.view((2 * i, 2 * j), (2, 2));
        Matrix2::new(v[(0, 0)], v[(0, 1)], v[(1, 0)], v[(1, 1)])
    }

    /// Reduced covariance matrix of a single mode.
    pub fn local(&self, mode: usize) -> Matrix2<f64> {
        self.block(mode, mode)
    }

    /// Reduced state on the listed modes, in the listed order.
    pub fn reduced(&self, modes: &[usize]) -> Result<Self> {
        if modes.is_empty() || modes.iter().any(|&m| m >= self.n_modes) {
            return Err(Error::InvalidModeSet {
                modes: modes.to_vec(),
                n_modes: self.n_modes,
            });
        }
        let idx = quadrature_indices(modes);
        Self::new(self.entries.select_rows(&idx).select_columns(&idx))
    }

    /// Reorders modes; `order[k]` is the old index of the new mode `k`.
    pub fn permute_modes(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n_modes];
        if order.len() != self.n_modes {
            return Err(Error::InvalidModeSet {
                modes: order.to_vec(),
                n_modes: self.n_modes,
            });
        }
        for &m in order {
            if m >= self.n_modes || seen[m] {
                return Err(Error::InvalidModeSet {
                    modes: order.to_vec(),
                    n_modes: self.n_modes,
                });
            }
            seen[m] = true;
        }
        self.reduced(order)
    }

    pub fn determinant(&self) -> f64 {
        self.entries.determinant()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.entries.clone().cholesky().is_some()
    }

    /// Symplectic eigenvalues in descending order.
    ///
    /// With `sigma = L L^T`, the symmetric matrix `L^T Omega^T sigma Omega L`
    /// is similar to `-(Omega sigma)^2` and has every `nu_k^2` twice; the
    /// sorted eigenvalues are paired and each pair averaged.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let chol = self
            .entries
            .clone()
            .cholesky()
            .ok_or(Error::NonPositiveDefinite)?;
        let l = chol.l();
        let omega = symplectic_form(self.n_modes);
        let m = l.transpose() * omega.transpose() * &self.entries * omega * &l;
        let m = 0.5 * (&m + m.transpose());
        let mut squares: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        squares.sort_by(|a, b| b.total_cmp(a));
        Ok(squares
            .chunks(2)
            .map(|p| (0.5 * (p[0] + p[1])).max(0.0).sqrt())
            .collect())
    }

    pub fn min_symplectic_eigenvalue(&self) -> Result<f64> {
        self.symplectic_eigenvalues()
            .map(|nu| nu.last().copied().unwrap_or(f64::NAN))
    }

    /// True iff the smallest symplectic eigenvalue is at least `1/2 - tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        match self.min_symplectic_eigenvalue() {
            Ok(nu) => nu >= VACUUM_VARIANCE - tol,
            Err(_) => false,
        }
    }

    /// Flips the sign of the momentum of every listed mode.
    ///
    /// The listed modes must be a non-empty strict subset of all modes.
    pub fn partial_transpose(&self, modes: &[usize]) -> Result<Self> {
        let mut flagged = vec![false; self.n_modes];
        for &m in modes {
            if m >= self.n_modes {
                return Err(Error::InvalidModeSet {
                    modes: modes.to_vec(),
                    n_modes: self.n_modes,
                });
            }
            flagged[m] = true;
        }
        let count = flagged.iter().filter(|&&f| f).count();
        if count == 0 || count == self.n_modes {
            return Err(Error::InvalidModeSet {
                modes: modes.to_vec(),
                n_modes: self.n_modes,
            });
        }
        let sign: Vec<f64> = (0..self.dim())
            .map(|i| if i % 2 == 1 && flagged[i / 2] { -1.0 } else { 1.0 })
            .collect();
        let mut m = self.entries.clone();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                m[(i, j)] *= sign[i] * sign[j];
            }
        }
        Ok(Self {
            n_modes: self.n_modes,
            entries: m,
        })
    }

    /// Renyi-2 entropy `1/2 ln det sigma`, in nats.
    pub fn renyi2_entropy(&self) -> Result<f64> {
        let det = self.determinant();
        if det > 0.0 && det.is_finite() {
            Ok(0.5 * det.ln())
        } else {
            Err(Error::NonPositiveDeterminant(det))
        }
    }

    /// Symplectic invariants of a two-mode state.
    pub fn invariants(&self) -> Result<SymplecticInvariants> {
        if self.n_modes != 2 {
            return Err(Error::UnsupportedModeCount(self.n_modes));
        }
        let i1 = self.local(0).determinant();
        let i2 = self.local(1).determinant();
        let i3 = self.block(0, 1).determinant();
        let i4 = self.determinant();
        Ok(SymplecticInvariants {
            i1,
            i2,
            i3,
            i4,
            delta: i1 + i2 + 2.0 * i3,
        })
    }
}

pub(crate) fn quadrature_indices(modes: &[usize]) -> Vec<usize> {
    modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect()
}

/// Covariance of the pure seed state defining a Gaussian measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Seed {
    /// Proper seed covariance `gamma` (finite, nonzero strength).
    Covariance(Matrix2<f64>),
    /// Exact homodyne limit: the quadrature along `direction` is measured
    /// with infinite precision, i.e. the projector `n n^T`.
    Homodyne { direction: Vector2<f64> },
}

impl Seed {
    /// Homodyne of the quadrature `cos(phi) x + sin(phi) p`.
    pub fn homodyne(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Seed::Homodyne {
            direction: Vector2::new(c, s),
        }
    }

    /// Projector `R(phi) diag(1, 0) R(phi)^T` for the homodyne limit.
    pub fn projector(&self) -> Option<Matrix2<f64>> {
        match self {
            Seed::Homodyne { direction } => Some(direction * direction.transpose()),
            Seed::Covariance(_) => None,
        }
    }
}

/// Conditional covariance of the remaining modes after a Gaussian measurement
/// of `mode`.
///
/// For a proper seed this is the Schur complement
/// `sigma_A - C (sigma_B + gamma)^{-1} C^T`. In the homodyne limit the
/// generalized inverse of `Pi sigma_B Pi` is used, which is the rank-one update
/// `sigma_A - (C n)(C n)^T / (n^T sigma_B n)`. The result is independent of the
/// measurement outcome.
pub fn condition_on_measurement(
    sigma: &CovarianceMatrix,
    mode: usize,
    seed: &Seed,
) -> Result<CovarianceMatrix> {
    let n = sigma.n_modes();
    if n < 2 || mode >= n {
        return Err(Error::InvalidModeSet {
            modes: vec![mode],
            n_modes: n,
        });
    }
    let kept: Vec<usize> = (0..n).filter(|&m| m != mode).collect();
    let kept_idx = quadrature_indices(&kept);
    let m = sigma.entries();
    let a = m.select_rows(&kept_idx).select_columns(&kept_idx);
    let cross = m.select_rows(&kept_idx).columns(2 * mode, 2).into_owned();
    let b = sigma.local(mode);
    let scale = b.amax().max(1.0);

    let update = match seed {
        Seed::Covariance(gamma) => {
            let sum = b + gamma;
            if sum.determinant().abs() <= 1e-14 * scale * scale {
                return Err(Error::SingularConditioning);
            }
            let inv = sum.try_inverse().ok_or(Error::SingularConditioning)?;
            let inv = DMatrix::from_column_slice(2, 2, inv.as_slice());
            &cross * inv * cross.transpose()
        }
        Seed::Homodyne { direction } => {
            let var = (direction.transpose() * b * direction)[(0, 0)];
            if var <= 1e-14 * scale {
                return Err(Error::SingularConditioning);
            }
            let dir = DMatrix::from_column_slice(2, 1, direction.as_slice());
            let cn = &cross * dir;
            &cn * cn.transpose() / var
        }
    };
    CovarianceMatrix::new(a - update)
}
