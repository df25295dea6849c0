//! Angle averages over `[0, 2pi)` by the periodic trapezoid rule with node
//! doubling.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleQuadrature {
    /// Stop once successive refinements differ by less than this.
    pub tol: f64,
    /// Nodes of the first pass (per dimension).
    pub min_nodes: usize,
    /// Cap on the total number of nodes (over the whole grid in 2D).
    pub max_nodes: usize,
}

impl Default for AngleQuadrature {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            min_nodes: 8,
            max_nodes: 1 << 14,
        }
    }
}

/// Converged mean and the number of nodes it used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Average {
    pub value: f64,
    pub nodes: usize,
}

impl AngleQuadrature {
    /// `(1/2pi) ∫ f(phi) dphi`.
    pub fn average<F>(&self, mut f: F) -> Result<Average>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut n = self.min_nodes.max(1);
        let mut sum = 0.0;
        for k in 0..n {
            sum += f(TAU * k as f64 / n as f64)?;
        }
        let mut mean = sum / n as f64;
        let mut delta = f64::INFINITY;
        while 2 * n <= self.max_nodes {
            let m = 2 * n;
            for k in (1..m).step_by(2) {
                sum += f(TAU * k as f64 / m as f64)?;
            }
            let next = sum / m as f64;
            delta = (next - mean).abs();
            mean = next;
            n = m;
            if delta < self.tol {
                return Ok(Average { value: mean, nodes: n });
            }
        }
        Err(Error::QuadratureFailure { nodes: n, last_delta: delta })
    }

    /// `(1/4pi^2) ∬ f(phi, theta) dphi dtheta` on a square product grid.
    pub fn average_2d<F>(&self, mut f: F) -> Result<Average>
    where
        F: FnMut(f64, f64) -> Result<f64>,
    {
        let mut n = self.min_nodes.max(1);
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                sum += f(TAU * i as f64 / n as f64, TAU * j as f64 / n as f64)?;
            }
        }
        let mut mean = sum / (n * n) as f64;
        let mut delta = f64::INFINITY;
        while 4 * n * n <= self.max_nodes {
            let m = 2 * n;
            for i in 0..m {
                for j in 0..m {
                    if i % 2 == 0 && j % 2 == 0 {
                        continue;
                    }
                    sum += f(TAU * i as f64 / m as f64, TAU * j as f64 / m as f64)?;
                }
            }
            let next = sum / (m * m) as f64;
            delta = (next - mean).abs();
            mean = next;
            n = m;
            if delta < self.tol {
                return Ok(Average {
                    value: mean,
                    nodes: n * n,
                });
            }
        }
        Err(Error::QuadratureFailure {
            nodes: n * n,
            last_delta: delta,
        })
    }
}
