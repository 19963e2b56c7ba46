//! Uniform spatial grid with Dirichlet endpoints and the complex field
//! sampled on it. Shared by packet discretization and the Crank-Nicolson
//! stepper.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// A uniform grid of `n` points spanning `[x_min, x_max]` inclusive,
/// spacing `dx = (x_max - x_min)/(n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n: usize,
    dx: f64,
}

/// Errors from grid construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("invalid grid: need finite x_min < x_max and n >= 3 (got x_min={x_min}, x_max={x_max}, n={n})")]
    InvalidGrid { x_min: f64, x_max: f64, n: usize },
}

impl Grid {
    /// Builds a uniform grid; requires `n >= 3` and finite `x_min < x_max`.
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, GridError> {
        if n < 3 || !x_min.is_finite() || !x_max.is_finite() || x_min >= x_max {
            return Err(GridError::InvalidGrid { x_min, x_max, n });
        }
        let dx = (x_max - x_min) / (n - 1) as f64;
        Ok(Grid { x_min, x_max, n, dx })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Abscissa of point `i` (0-based).
    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    /// Iterator over all abscissae.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }
}

/// Complex amplitudes on a [`Grid`], endpoints pinned to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    grid: Grid,
    amplitudes: Vec<Complex64>,
}

impl WaveField {
    /// Wraps amplitudes on a grid, forcing the Dirichlet endpoints to zero.
    ///
    /// Panics if the length does not match the grid (programming error, not
    /// a runtime condition).
    pub fn new(grid: Grid, mut amplitudes: Vec<Complex64>) -> Self {
        assert_eq!(
            amplitudes.len(),
            grid.n(),
            "amplitude count must match grid size"
        );
        amplitudes[0] = Complex64::ZERO;
        let last = amplitudes.len() - 1;
        amplitudes[last] = Complex64::ZERO;
        WaveField { grid, amplitudes }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Discrete norm `integral of |psi|^2` by the trapezoidal rule
    /// (endpoints are zero, so this equals the rectangle rule).
    pub fn norm(&self) -> f64 {
        let sum: f64 = self.amplitudes.iter().map(|a| a.norm_sqr()).sum();
        sum * self.grid.dx()
    }

    /// Scales all amplitudes so the discrete norm becomes exactly 1.
    pub fn normalize(&mut self) {
        let scale = 1.0 / self.norm().sqrt();
        for a in &mut self.amplitudes {
            *a *= scale;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_box_grid_spacing() {
        let g = Grid::new(-100.0, 100.0, 100_000).unwrap();
        assert!((g.dx() - 0.002).abs() < 1e-7);
        assert_eq!(g.point(0), -100.0);
        assert!((g.point(g.n() - 1) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn tiny_grid_spacing() {
        let g = Grid::new(0.0, 1.0, 3).unwrap();
        assert_eq!(g.dx(), 0.5);
        assert_eq!(g.point(1), 0.5);
    }

    #[test]
    fn rejects_reversed_bounds_and_short_grids() {
        assert!(Grid::new(1.0, 0.0, 10).is_err());
        assert!(Grid::new(0.0, 1.0, 2).is_err());
        assert!(Grid::new(f64::NEG_INFINITY, 0.0, 10).is_err());
    }

    #[test]
    fn wavefield_pins_endpoints_and_normalizes() {
        let g = Grid::new(-1.0, 1.0, 101).unwrap();
        let amps: Vec<Complex64> = g
            .points()
            .map(|x| Complex64::new((-x * x).exp(), 0.0))
            .collect();
        let mut f = WaveField::new(g, amps);
        assert_eq!(f.amplitudes()[0], Complex64::ZERO);
        assert_eq!(f.amplitudes()[100], Complex64::ZERO);
        f.normalize();
        assert!((f.norm() - 1.0).abs() < 1e-14);
    }
}
