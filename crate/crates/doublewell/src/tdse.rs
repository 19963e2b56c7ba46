//! Crank-Nicolson integration of the one-dimensional Schrödinger equation
//! (`hbar = m = 1`) on a uniform Dirichlet grid, with observable extraction
//! and norm/energy drift accounting.
//!
//! One step solves
//!
//! ```text
//! (I + i dt/2 H) psi' = (I - i dt/2 H) psi
//! ```
//!
//! with `H` the real symmetric tridiagonal operator built from the 3-point
//! Laplacian: diagonal `1/dx^2 + phi(x_i)`, off-diagonal `-1/(2 dx^2)`.
//! This Cayley form is exactly unitary in exact arithmetic, so norm and
//! energy drift measure only round-off and are held to a strict budget.
//! Because `H` never changes, the tridiagonal LU factors are computed once
//! per run and each step costs a single sweep of forward elimination and
//! back substitution.

use crate::grid::WaveField;
use crate::potential::PotentialParams;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Observables of a wave field under the discrete Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    pub norm: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub variance: f64,
    /// `<psi|H|psi>` with the same stencil the propagator uses.
    pub energy: f64,
}

/// Worst-case drift seen over a propagation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriftSummary {
    /// max over samples of `|norm(t) - 1|`.
    pub max_norm_drift: f64,
    /// max over samples of `|energy(t) - energy(0)|`.
    pub max_energy_drift: f64,
    /// Whether either drift exceeded the warn level (default 1e-10).
    pub warned: bool,
}

/// Sampled observable trajectory of a propagation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub samples: Vec<Observables>,
    pub drift: DriftSummary,
}

/// Drift budgets for [`evolve_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Exceeding this drift aborts the run (default 1e-9).
    pub fail_budget: f64,
    /// Exceeding this drift sets the `warned` flag (default 1e-10).
    pub warn_budget: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            fail_budget: 1e-9,
            warn_budget: 1e-10,
        }
    }
}

/// Propagation failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TdseError {
    /// A zero pivot in the tridiagonal factorization. Cannot occur for this
    /// operator with `dt > 0`; reported rather than silently continued.
    #[error("singular pivot in tridiagonal factorization at row {row}")]
    SingularPivot { row: usize },
    /// Norm or energy drift exceeded the failure budget.
    #[error("drift budget exceeded at t = {time}: norm drift {norm_drift:.3e}, energy drift {energy_drift:.3e}")]
    DriftBudgetExceeded {
        time: f64,
        norm_drift: f64,
        energy_drift: f64,
    },
}

/// Precomputed Crank-Nicolson stepper for a fixed grid, potential, and dt.
///
/// Holds the right-hand-side operator coefficients and the LU factors of
/// `I + i dt/2 H` restricted to the interior points (Dirichlet endpoints
/// stay pinned at zero).
pub struct Propagator {
    n: usize,
    /// Diagonal of `I - i dt/2 H`, interior points.
    b_diag: Vec<Complex64>,
    /// Off-diagonal of `I - i dt/2 H` (constant).
    b_off: Complex64,
    /// Off-diagonal of `I + i dt/2 H` (constant).
    a_off: Complex64,
    /// Forward-elimination multipliers.
    lower: Vec<Complex64>,
    /// Reciprocal pivots.
    inv_diag: Vec<Complex64>,
    /// Scratch for the elimination sweep.
    scratch: Vec<Complex64>,
}

impl Propagator {
    /// Factorizes the implicit operator once for the whole run.
    pub fn new(
        grid: &crate::grid::Grid,
        params: &PotentialParams,
        dt: f64,
    ) -> Result<Self, TdseError> {
        assert!(dt > 0.0, "time step must be positive");
        let n = grid.n();
        let m = n - 2; // interior unknowns
        let dx2 = grid.dx() * grid.dx();
        let half = 0.5 * dt;
        // H off-diagonal is -1/(2 dx^2).
        let a_off = Complex64::new(0.0, -half / (2.0 * dx2));
        let b_off = -a_off;

        let mut b_diag = Vec::with_capacity(m);
        let mut lower = Vec::with_capacity(m);
        let mut inv_diag = Vec::with_capacity(m);
        let mut prev_pivot = Complex64::ZERO;
        for i in 0..m {
            let h_ii = 1.0 / dx2 + params.phi(grid.point(i + 1));
            b_diag.push(Complex64::new(1.0, -half * h_ii));
            let mut pivot = Complex64::new(1.0, half * h_ii);
            if i == 0 {
                lower.push(Complex64::ZERO);
            } else {
                let l = a_off / prev_pivot;
                lower.push(l);
                pivot -= l * a_off;
            }
            if pivot == Complex64::ZERO {
                return Err(TdseError::SingularPivot { row: i });
            }
            inv_diag.push(pivot.inv());
            prev_pivot = pivot;
        }
        Ok(Propagator {
            n,
            b_diag,
            b_off,
            a_off,
            lower,
            inv_diag,
            scratch: vec![Complex64::ZERO; m],
        })
    }

    /// Advances the field by one step in place.
    pub fn step(&mut self, field: &mut WaveField) {
        let psi = field.amplitudes_mut();
        debug_assert_eq!(psi.len(), self.n);
        let m = self.n - 2;
        // Explicit half: scratch = (I - i dt/2 H) psi on the interior.
        // Endpoints are zero, so the stencil needs no special casing beyond
        // the natural truncation at the walls.
        for i in 0..m {
            let left = psi[i]; // psi[(i+1)-1]
            let right = psi[i + 2];
            self.scratch[i] = self.b_diag[i] * psi[i + 1] + self.b_off * (left + right);
        }
        // Forward elimination (in place on scratch).
        for i in 1..m {
            let correction = self.lower[i] * self.scratch[i - 1];
            self.scratch[i] -= correction;
        }
        // Back substitution into psi[1..=m].
        psi[m] = self.scratch[m - 1] * self.inv_diag[m - 1];
        for i in (0..m - 1).rev() {
            psi[i + 1] = (self.scratch[i] - self.a_off * psi[i + 2]) * self.inv_diag[i];
        }
        psi[0] = Complex64::ZERO;
        psi[self.n - 1] = Complex64::ZERO;
    }
}

/// One Crank-Nicolson step as a pure function (builds and discards the
/// factorization; use [`Propagator`] directly for long runs).
pub fn crank_nicolson_step(
    psi: &WaveField,
    params: &PotentialParams,
    dt: f64,
) -> Result<WaveField, TdseError> {
    let mut propagator = Propagator::new(psi.grid(), params, dt)?;
    let mut out = psi.clone();
    propagator.step(&mut out);
    Ok(out)
}

/// Trapezoidal-quadrature observables; the energy uses the same 3-point
/// stencil as the propagator so the drift bound is meaningful.
pub fn measure(psi: &WaveField, params: &PotentialParams) -> Observables {
    let grid = psi.grid();
    let amps = psi.amplitudes();
    let n = grid.n();
    let dx = grid.dx();
    let dx2 = dx * dx;

    let mut norm = 0.0;
    let mut mean_x = 0.0;
    let mut mean_x2 = 0.0;
    let mut mean_p = 0.0;
    let mut energy = 0.0;
    for i in 1..n - 1 {
        let x = grid.point(i);
        let a = amps[i];
        let p2 = a.norm_sqr();
        norm += p2;
        mean_x += x * p2;
        mean_x2 += x * x * p2;
        // Central-difference derivative for <p> = Im int psi* d_x psi.
        let dpsi = (amps[i + 1] - amps[i - 1]) / (2.0 * dx);
        mean_p += (a.conj() * dpsi).im;
        // (H psi)_i with the propagation stencil.
        let hpsi = (1.0 / dx2 + params.phi(x)) * a - (amps[i + 1] + amps[i - 1]) / (2.0 * dx2);
        energy += (a.conj() * hpsi).re;
    }
    Observables {
        norm: norm * dx,
        mean_x: mean_x * dx,
        mean_p: mean_p * dx,
        variance: (mean_x2 * dx) - (mean_x * dx) * (mean_x * dx),
        energy: energy * dx,
    }
}

/// Finds the packet variance whose *discrete* energy `<psi|H|psi>` on this
/// grid equals `energy`, so that sampled packets are energy-matched to
/// round-off rather than to the continuum formula.
///
/// The analytic inversion ([`crate::packet::variance_for_energy`] on the
/// full energy relation) seeds a bracket, which is then bisected on the
/// discrete energy to floating-point exhaustion. If no sign change exists
/// near the seed (the discrete correction is below resolution), the seed is
/// already the best available value and is returned as-is.
pub fn variance_for_discrete_energy(
    grid: &crate::grid::Grid,
    params: &PotentialParams,
    x0: f64,
    k0: f64,
    energy: f64,
    branch: crate::packet::Branch,
) -> Result<f64, crate::packet::PacketError> {
    use crate::packet::{sample_on_grid, EnergyFormula, GaussianSpec};
    let seed = crate::packet::variance_for_energy(
        params,
        x0,
        k0,
        energy,
        branch,
        EnergyFormula::General,
    )?;
    let discrete = |v0: f64| -> Result<f64, crate::packet::PacketError> {
        let psi = sample_on_grid(&GaussianSpec { x0, v0, k0 }, grid)?;
        Ok(measure(&psi, params).energy - energy)
    };
    // Expand a geometric window around the seed until the residual changes
    // sign across it.
    let g_seed = discrete(seed)?;
    if g_seed == 0.0 {
        return Ok(seed);
    }
    let mut width = 1e-6;
    let (mut lo, mut hi, mut g_lo, g_hi) = loop {
        let lo = seed / (1.0 + width);
        let hi = seed * (1.0 + width);
        let g_lo = discrete(lo)?;
        let g_hi = discrete(hi)?;
        if g_lo == 0.0 {
            return Ok(lo);
        }
        if g_hi == 0.0 {
            return Ok(hi);
        }
        if g_lo.signum() != g_hi.signum() {
            break (lo, hi, g_lo, g_hi);
        }
        width *= 4.0;
        if width > 0.5 {
            // No sign change anywhere near the seed: the discrete and
            // analytic energies agree to better than the window can
            // resolve.
            return Ok(seed);
        }
    };
    let mut best = if g_lo.abs() <= g_hi.abs() { (lo, g_lo) } else { (hi, g_hi) };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = discrete(mid)?;
        if g_mid.abs() < best.1.abs() {
            best = (mid, g_mid);
        }
        if g_mid == 0.0 {
            break;
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.0)
}

/// Propagates with default drift budgets. See [`evolve_with`].
pub fn evolve(
    psi0: &WaveField,
    params: &PotentialParams,
    dt: f64,
    t_end: f64,
    stride: usize,
) -> Result<ObservableSeries, TdseError> {
    evolve_with(psi0, params, dt, t_end, stride, EvolveOptions::default(), |_, _| {})
}

/// Propagates `psi0` to `t_end`, sampling observables every `stride` steps
/// (always including `t = 0` and the final step) and auditing norm and
/// energy drift at each sample against [`EvolveOptions`] budgets.
///
/// `observer` is called with `(t, field)` at every sampled instant; use it
/// for snapshot output.
pub fn evolve_with(
    psi0: &WaveField,
    params: &PotentialParams,
    dt: f64,
    t_end: f64,
    stride: usize,
    options: EvolveOptions,
    mut observer: impl FnMut(f64, &WaveField),
) -> Result<ObservableSeries, TdseError> {
    assert!(dt > 0.0 && t_end > 0.0 && stride > 0, "need dt > 0, t_end > 0, stride > 0");
    let mut propagator = Propagator::new(psi0.grid(), params, dt)?;
    let n_steps = (t_end / dt).round().max(1.0) as u64;

    let mut field = psi0.clone();
    let first = measure(&field, params);
    let e0 = first.energy;
    let mut series = ObservableSeries {
        times: vec![0.0],
        samples: vec![first],
        drift: DriftSummary {
            max_norm_drift: (first.norm - 1.0).abs(),
            max_energy_drift: 0.0,
            warned: false,
        },
    };
    observer(0.0, &field);

    for i in 1..=n_steps {
        propagator.step(&mut field);
        if i % stride as u64 == 0 || i == n_steps {
            let t = i as f64 * dt;
            let obs = measure(&field, params);
            let norm_drift = (obs.norm - 1.0).abs();
            let energy_drift = (obs.energy - e0).abs();
            series.drift.max_norm_drift = series.drift.max_norm_drift.max(norm_drift);
            series.drift.max_energy_drift = series.drift.max_energy_drift.max(energy_drift);
            if norm_drift > options.fail_budget || energy_drift > options.fail_budget {
                return Err(TdseError::DriftBudgetExceeded {
                    time: t,
                    norm_drift,
                    energy_drift,
                });
            }
            if norm_drift > options.warn_budget || energy_drift > options.warn_budget {
                series.drift.warned = true;
            }
            series.times.push(t);
            series.samples.push(obs);
            observer(t, &field);
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::packet::{sample_on_grid, GaussianSpec};

    const FREE: PotentialParams = PotentialParams { a: 0.0, b: 0.0, c: 0.0 };
    const HARMONIC: PotentialParams = PotentialParams { a: 10.0, b: 0.0, c: 0.0 };

    fn box_mode(grid: &Grid) -> WaveField {
        let length = grid.x_max() - grid.x_min();
        let amps = grid
            .points()
            .map(|x| {
                Complex64::new(
                    (std::f64::consts::PI * (x - grid.x_min()) / length).sin(),
                    0.0,
                )
            })
            .collect();
        WaveField::new(*grid, amps)
    }

    #[test]
    fn one_step_applies_the_exact_cayley_phase_to_a_box_mode() {
        let grid = Grid::new(0.0, 1.0, 201).unwrap();
        let dt = 0.003;
        let psi = box_mode(&grid);
        let stepped = crank_nicolson_step(&psi, &FREE, dt).unwrap();
        // Discrete eigenvalue of the stencil for the k=1 Dirichlet mode.
        let dx = grid.dx();
        let length = grid.x_max() - grid.x_min();
        let e_tilde = (1.0 - (std::f64::consts::PI * dx / length).cos()) / (dx * dx);
        let phase = (Complex64::new(1.0, -0.5 * dt * e_tilde))
            / (Complex64::new(1.0, 0.5 * dt * e_tilde));
        let scale = psi
            .amplitudes()
            .iter()
            .map(|a| a.norm())
            .fold(0.0_f64, f64::max);
        for (before, after) in psi.amplitudes().iter().zip(stepped.amplitudes()) {
            let expect = phase * before;
            assert!(
                (after - expect).norm() < 1e-12 * scale,
                "pointwise Cayley mismatch: {after} vs {expect}"
            );
        }
    }

    #[test]
    fn one_step_preserves_the_norm_to_round_off() {
        let grid = Grid::new(-20.0, 20.0, 4001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 0.5, v0: 0.5, k0: 0.0 }, &grid).unwrap();
        let stepped = crank_nicolson_step(
            &psi,
            &PotentialParams { a: 10.0, b: 4.0, c: 0.35 },
            0.01,
        )
        .unwrap();
        assert!((stepped.norm() - psi.norm()).abs() < 1e-14);
    }

    #[test]
    fn stepping_is_linear() {
        let grid = Grid::new(-20.0, 20.0, 2001).unwrap();
        let p1 = sample_on_grid(&GaussianSpec { x0: -1.0, v0: 0.4, k0: 1.0 }, &grid).unwrap();
        let p2 = sample_on_grid(&GaussianSpec { x0: 1.5, v0: 0.8, k0: -0.5 }, &grid).unwrap();
        let (alpha, beta) = (Complex64::new(0.6, -0.2), Complex64::new(-0.3, 1.1));
        let combined = WaveField::new(
            grid,
            p1.amplitudes()
                .iter()
                .zip(p2.amplitudes())
                .map(|(u, v)| alpha * u + beta * v)
                .collect(),
        );
        let params = PotentialParams { a: 10.0, b: 4.0, c: 0.35 };
        let dt = 0.01;
        let s_combined = crank_nicolson_step(&combined, &params, dt).unwrap();
        let s1 = crank_nicolson_step(&p1, &params, dt).unwrap();
        let s2 = crank_nicolson_step(&p2, &params, dt).unwrap();
        for i in 0..grid.n() {
            let expect = alpha * s1.amplitudes()[i] + beta * s2.amplitudes()[i];
            assert!((s_combined.amplitudes()[i] - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn measured_moments_of_a_gaussian_match_the_closed_forms() {
        let grid = Grid::new(-100.0, 100.0, 100_000).unwrap();
        let params = PotentialParams { a: 10.0, b: 4.0, c: 0.35 };
        let psi = sample_on_grid(&GaussianSpec { x0: 0.5, v0: 0.5, k0: 0.0 }, &grid).unwrap();
        let obs = measure(&psi, &params);
        assert!((obs.norm - 1.0).abs() < 1e-14);
        assert!((obs.mean_x - 0.5).abs() < 1e-10, "mean_x = {}", obs.mean_x);
        assert!((obs.variance - 0.5).abs() < 1e-6);
        let analytic = crate::packet::packet_energy(
            &params,
            &GaussianSpec { x0: 0.5, v0: 0.5, k0: 0.0 },
        )
        .unwrap();
        assert!(
            (obs.energy - analytic).abs() / analytic < 1e-6,
            "energy {} vs analytic {analytic}",
            obs.energy
        );
    }

    #[test]
    fn measured_momentum_matches_the_wave_number() {
        // Central differences are second order; a fine grid keeps the
        // k0-recovery error under 1e-8.
        let grid = Grid::new(-10.0, 10.0, 300_001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 0.0, v0: 1.0, k0: 2.0 }, &grid).unwrap();
        let obs = measure(&psi, &FREE);
        assert!((obs.mean_p - 2.0).abs() < 1e-8, "mean_p = {}", obs.mean_p);
    }

    #[test]
    fn free_packet_spreads_ballistically() {
        let grid = Grid::new(-15.0, 15.0, 6001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 0.0, v0: 0.5, k0: 0.0 }, &grid).unwrap();
        let series = evolve(&psi, &FREE, 1e-3, 1.0, 100).unwrap();
        let v_end = series.samples.last().unwrap().variance;
        // V(t) = V0 + t^2/(4 V0).
        assert!((v_end - 1.0).abs() < 1e-4, "variance at t=1: {v_end}");
    }

    #[test]
    fn harmonic_coherent_packet_oscillates_without_spreading() {
        let omega = 10.0_f64.sqrt();
        let v0 = 1.0 / (2.0 * omega);
        let grid = Grid::new(-6.0, 6.0, 6001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 1.0, v0, k0: 0.0 }, &grid).unwrap();
        let period = 2.0 * std::f64::consts::PI / omega;
        let series = evolve(&psi, &HARMONIC, 5e-4, period, 10).unwrap();
        for (t, obs) in series.times.iter().zip(&series.samples) {
            let expect = (omega * t).cos();
            assert!(
                (obs.mean_x - expect).abs() < 1e-4,
                "t={t}: mean_x={} expected={expect}",
                obs.mean_x
            );
            assert!((obs.variance - v0).abs() < 1e-4, "t={t}: variance={}", obs.variance);
        }
        assert!(!series.drift.warned);
    }

    #[test]
    fn mean_position_rate_matches_mean_momentum() {
        let omega = 10.0_f64.sqrt();
        let v0 = 1.0 / (2.0 * omega);
        let grid = Grid::new(-6.0, 6.0, 6001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 1.0, v0, k0: 0.0 }, &grid).unwrap();
        let series = evolve(&psi, &HARMONIC, 5e-4, 2.0, 10).unwrap();
        let dt_s = series.times[1] - series.times[0];
        let p_scale = series
            .samples
            .iter()
            .map(|o| o.mean_p.abs())
            .fold(0.0_f64, f64::max);
        for k in 1..series.times.len() - 1 {
            let fd = (series.samples[k + 1].mean_x - series.samples[k - 1].mean_x) / (2.0 * dt_s);
            assert!(
                (fd - series.samples[k].mean_p).abs() < 1e-4 * p_scale,
                "t={}: d<x>/dt={fd} vs <p>={}",
                series.times[k],
                series.samples[k].mean_p
            );
        }
    }

    #[test]
    fn halving_dt_quarters_the_time_discretization_error() {
        let grid = Grid::new(-15.0, 15.0, 3001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 0.0, v0: 0.2, k0: 0.0 }, &grid).unwrap();
        // Each dt divides t_end exactly so every run lands on the same final
        // instant and the comparison isolates the O(dt^2) error.
        let observe = |dt: f64| {
            evolve(&psi, &FREE, dt, 0.5, (0.5 / dt).round() as usize)
                .unwrap()
                .samples
                .last()
                .unwrap()
                .variance
        };
        let reference = observe(0.0025);
        let coarse = (observe(0.02) - reference).abs();
        let fine = (observe(0.01) - reference).abs();
        let ratio = coarse / fine;
        assert!(
            (3.0..=5.0).contains(&ratio),
            "expected ~4x error reduction, got {ratio} (coarse {coarse:.3e}, fine {fine:.3e})"
        );
    }

    #[test]
    fn discrete_energy_tuning_matches_the_target_to_round_off() {
        let grid = Grid::new(-100.0, 100.0, 20_001).unwrap();
        let params = PotentialParams { a: 10.0, b: 4.0, c: 0.35 };
        for branch in [crate::packet::Branch::Small, crate::packet::Branch::Large] {
            let v0 =
                variance_for_discrete_energy(&grid, &params, 0.5, 0.0, 14.95, branch).unwrap();
            let psi = sample_on_grid(&GaussianSpec { x0: 0.5, v0, k0: 0.0 }, &grid).unwrap();
            let e = measure(&psi, &params).energy;
            assert!(
                (e - 14.95).abs() < 1e-10,
                "{branch:?}: discrete energy {e} for v0 = {v0}"
            );
            let analytic = crate::packet::variance_for_energy(
                &params,
                0.5,
                0.0,
                14.95,
                branch,
                crate::packet::EnergyFormula::General,
            )
            .unwrap();
            assert!(
                (v0 - analytic).abs() / analytic < 0.01,
                "{branch:?}: tuned {v0} vs analytic {analytic}"
            );
        }
    }

    #[test]
    fn drift_budget_violations_are_reported() {
        let grid = Grid::new(-15.0, 15.0, 3001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 0.0, v0: 0.5, k0: 0.0 }, &grid).unwrap();
        let tight = EvolveOptions {
            fail_budget: 1e-18,
            warn_budget: 1e-19,
        };
        let result = evolve_with(&psi, &FREE, 1e-3, 0.1, 10, tight, |_, _| {});
        assert!(matches!(result, Err(TdseError::DriftBudgetExceeded { .. })));
    }

    #[test]
    fn observer_sees_every_sample() {
        let grid = Grid::new(-15.0, 15.0, 1001).unwrap();
        let psi = sample_on_grid(&GaussianSpec { x0: 0.0, v0: 0.5, k0: 0.0 }, &grid).unwrap();
        let mut seen = Vec::new();
        let series = evolve_with(
            &psi,
            &FREE,
            1e-2,
            0.1,
            5,
            EvolveOptions::default(),
            |t, field| {
                seen.push((t, field.norm()));
            },
        )
        .unwrap();
        assert_eq!(seen.len(), series.times.len());
        assert_eq!(seen.first().unwrap().0, 0.0);
        assert!((seen.last().unwrap().0 - 0.1).abs() < 1e-12);
    }
}
