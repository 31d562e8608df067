//! Shared domain types: operator parameters, grids and sampled functions.
//!
//! All types are immutable after construction and all operations are pure,
//! so values can be shared freely across threads.

use crate::error::{Error, Result};

/// The quadruple `(alpha, rho, a, b)` defining one Katugampola operator
/// instance on the interval `[a, b]`.
///
/// Invariants: `alpha > 0`, `rho > 0`, `0 <= a < b`, all finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    alpha: f64,
    rho: f64,
    a: f64,
    b: f64,
}

impl OperatorParams {
    /// Validates and builds an operator parameter set.
    pub fn new(alpha: f64, rho: f64, a: f64, b: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::domain(
                "alpha",
                format!("fractional order must be a finite positive real, got {alpha}"),
            ));
        }
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::domain(
                "rho",
                format!("deformation parameter must be a finite positive real, got {rho}"),
            ));
        }
        if !a.is_finite() || a < 0.0 {
            return Err(Error::domain(
                "a",
                format!("left endpoint must be finite and nonnegative, got {a}"),
            ));
        }
        if !b.is_finite() || a >= b {
            return Err(Error::domain(
                "b",
                format!("endpoints must satisfy a < b, got a = {a}, b = {b}"),
            ));
        }
        Ok(Self { alpha, rho, a, b })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Strictly increasing uniform sample points on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spacing: f64,
}

impl Grid {
    /// Builds the uniform grid with `n_points` points and step
    /// `h = (b - a) / (n_points - 1)`; both endpoints are exact.
    pub fn uniform(a: f64, b: f64, n_points: usize) -> Result<Self> {
        if n_points < 2 {
            return Err(Error::domain(
                "n_points",
                format!("grid needs at least 2 points, got {n_points}"),
            ));
        }
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::domain(
                "b",
                format!("grid endpoints must satisfy a < b, got a = {a}, b = {b}"),
            ));
        }
        let h = (b - a) / (n_points - 1) as f64;
        let mut points: Vec<f64> = (0..n_points).map(|i| a + i as f64 * h).collect();
        points[0] = a;
        *points.last_mut().expect("n_points >= 2") = b;
        Ok(Self { points, spacing: h })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least 2 points by construction
    }

    pub fn start(&self) -> f64 {
        self.points[0]
    }

    pub fn end(&self) -> f64 {
        *self.points.last().expect("at least 2 points")
    }
}

/// Function values sampled on a [`Grid`]; the common currency of the
/// approximation and solver modules.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::domain(
                "values",
                format!(
                    "value count {} does not match grid size {}",
                    values.len(),
                    grid.len()
                ),
            ));
        }
        Ok(Self { grid, values })
    }

    /// Samples a callable on every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().iter().map(|&t| f(t)).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
