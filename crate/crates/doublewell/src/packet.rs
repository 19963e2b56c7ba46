//! Gaussian wave-packet bookkeeping: the closed-form energy expectation,
//! its inversion to an initial variance at fixed energy, and discretization
//! onto a grid.
//!
//! For a normalized Gaussian with center `x0`, position variance `v0`, and
//! plane-wave factor `exp(i k0 x)`, the energy expectation under the quartic
//! potential has the closed form
//!
//! ```text
//! E(v0) = 1/(8 v0) + k0^2/2 + phi(x0) + phi''(x0) v0 / 2 + (3c/4) v0^2
//! ```
//!
//! which expands to
//! `1/(8v0) + k0^2/2 + (a/2)(x0^2 + v0) - (b/3)(x0^3 + 3 x0 v0) + (c/4)(x0^4 + 6 x0^2 v0 + 3 v0^2)`.
//! `E(v0)` is strictly convex in `v0` whenever `c > 0`, so a target energy
//! above the convexity minimum is met by exactly two variances: a narrow
//! packet (width energy dominated) and a broad one (potential spread
//! dominated).

use crate::grid::{Grid, WaveField};
use crate::potential::PotentialParams;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A Gaussian packet: center `x0`, position variance `v0 > 0`, wave number
/// `k0` (equal to the mean momentum, since `m = hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub x0: f64,
    pub v0: f64,
    pub k0: f64,
}

/// Which of the two variance roots of the energy relation to select.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// The narrow packet: least positive root.
    Small,
    /// The broad packet: greatest positive root.
    Large,
}

/// Which form of the energy-variance relation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyFormula {
    /// Full expectation including all `x0`-dependent potential terms.
    General,
    /// Evaluate the relation as if the packet were centered at the origin
    /// (drops every `x0`-dependent potential term). This is the textbook
    /// energy-variance relation for an origin-centered packet, applied
    /// verbatim at any `x0`.
    Centered,
}

/// Errors from packet construction and energy inversion.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PacketError {
    #[error("packet variance must be positive (got {0})")]
    NonPositiveVariance(f64),
    #[error("target energy {requested} is below the attainable minimum {min_energy}")]
    EnergyTooLow { requested: f64, min_energy: f64 },
    #[error("grid [{x_min}, {x_max}] does not cover the packet support [{lo}, {hi}] (center +/- 8 sigma)")]
    GridTooNarrow {
        x_min: f64,
        x_max: f64,
        lo: f64,
        hi: f64,
    },
}

/// Energy expectation of the packet under the full (general) relation.
pub fn packet_energy(params: &PotentialParams, spec: &GaussianSpec) -> Result<f64, PacketError> {
    if spec.v0.is_nan() || spec.v0 <= 0.0 {
        return Err(PacketError::NonPositiveVariance(spec.v0));
    }
    Ok(energy_with(
        EnergyFormula::General,
        params,
        spec.x0,
        spec.v0,
        spec.k0,
    ))
}

/// Energy expectation under the chosen relation. The `Centered` formula
/// ignores `x0`; both are defined for any `v0 > 0`.
pub fn energy_with(
    formula: EnergyFormula,
    params: &PotentialParams,
    x0: f64,
    v0: f64,
    k0: f64,
) -> f64 {
    let x_eff = match formula {
        EnergyFormula::General => x0,
        EnergyFormula::Centered => 0.0,
    };
    let at = params.evaluate(x_eff);
    1.0 / (8.0 * v0) + 0.5 * k0 * k0 + at.phi + 0.5 * at.d2phi * v0
        + 0.75 * params.c * v0 * v0
}

/// Derivative of `energy_with` in `v0` (used for locating the convexity
/// minimum).
fn energy_slope(formula: EnergyFormula, params: &PotentialParams, x0: f64, v0: f64) -> f64 {
    let x_eff = match formula {
        EnergyFormula::General => x0,
        EnergyFormula::Centered => 0.0,
    };
    let d2 = params.evaluate(x_eff).d2phi;
    -1.0 / (8.0 * v0 * v0) + 0.5 * d2 + 1.5 * params.c * v0
}

/// Locates the variance minimizing the energy relation, returning
/// `(v_min, e_min)`. When the relation is monotone decreasing (possible
/// only with `c = 0` and non-positive curvature, e.g. the free particle),
/// returns `None`.
pub fn energy_minimum(
    formula: EnergyFormula,
    params: &PotentialParams,
    x0: f64,
    k0: f64,
) -> Option<(f64, f64)> {
    // The slope rises monotonically from -inf at v -> 0+; find a sign change.
    let mut hi = 1e-3;
    while energy_slope(formula, params, x0, hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e15 {
            return None; // monotone decreasing over any practical range
        }
    }
    let mut lo = hi / 2.0;
    while energy_slope(formula, params, x0, lo) > 0.0 {
        lo /= 2.0;
        if lo < 1e-300 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if energy_slope(formula, params, x0, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let v = 0.5 * (lo + hi);
    Some((v, energy_with(formula, params, x0, v, k0)))
}

/// Inverts the energy relation: finds `v0 > 0` with
/// `energy_with(formula, ..., v0, k0) = energy`, selecting the requested
/// branch. The root satisfies the relation to better than 1e-10 absolute.
///
/// Bisection brackets grow geometrically outward from the convexity minimum
/// and shrink to floating-point exhaustion (below 1e-12 interval width).
/// A target within 1e-9 of the minimum snaps to the double root. In the
/// monotone (`c = 0`, curvature <= 0) case the unique root is returned for
/// either branch label.
pub fn variance_for_energy(
    params: &PotentialParams,
    x0: f64,
    k0: f64,
    energy: f64,
    branch: Branch,
    formula: EnergyFormula,
) -> Result<f64, PacketError> {
    let e_of = |v: f64| energy_with(formula, params, x0, v, k0);

    let Some((v_min, e_min)) = energy_minimum(formula, params, x0, k0) else {
        // Monotone decreasing: a single root exists for any energy above
        // the k0^2/2 floor; bracket it directly.
        let mut lo = 1e-8;
        while e_of(lo) < energy {
            lo *= 0.1;
            if lo < 1e-300 {
                return Err(PacketError::EnergyTooLow {
                    requested: energy,
                    min_energy: e_of(1e-8),
                });
            }
        }
        let mut hi = lo;
        while e_of(hi) > energy {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(PacketError::EnergyTooLow {
                    requested: energy,
                    min_energy: 0.5 * k0 * k0,
                });
            }
        }
        return Ok(bisect_energy(&e_of, lo, hi, energy));
    };

    let snap = 1e-9 * e_min.abs().max(1.0);
    if energy < e_min - snap {
        return Err(PacketError::EnergyTooLow {
            requested: energy,
            min_energy: e_min,
        });
    }
    if (energy - e_min).abs() <= snap {
        return Ok(v_min);
    }

    match branch {
        Branch::Small => {
            let mut lo = 1e-8_f64.min(v_min / 2.0);
            while e_of(lo) < energy {
                lo *= 0.1;
                if lo < 1e-300 {
                    return Err(PacketError::EnergyTooLow {
                        requested: energy,
                        min_energy: e_min,
                    });
                }
            }
            Ok(bisect_energy(&e_of, lo, v_min, energy))
        }
        Branch::Large => {
            let mut hi = 2.0 * v_min;
            while e_of(hi) < energy {
                hi *= 2.0;
            }
            Ok(bisect_energy(&e_of, v_min, hi, energy))
        }
    }
}

/// Bisects `e_of(v) = target` on `[lo, hi]`, where the residual changes sign
/// across the interval, down to floating-point exhaustion.
fn bisect_energy(e_of: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, target: f64) -> f64 {
    let f_lo = e_of(lo) - target;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = e_of(mid) - target;
        if (f_lo <= 0.0) == (f_mid <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Return whichever endpoint has the smaller residual.
    if (e_of(lo) - target).abs() <= (e_of(hi) - target).abs() {
        lo
    } else {
        hi
    }
}

/// Samples the packet on a grid, pins the Dirichlet endpoints, and
/// renormalizes so the discrete (trapezoidal) norm is exactly 1.
///
/// The grid must cover `x0 +/- 8 sqrt(v0)`.
pub fn sample_on_grid(spec: &GaussianSpec, grid: &Grid) -> Result<WaveField, PacketError> {
    if spec.v0.is_nan() || spec.v0 <= 0.0 {
        return Err(PacketError::NonPositiveVariance(spec.v0));
    }
    let sigma = spec.v0.sqrt();
    let (lo, hi) = (spec.x0 - 8.0 * sigma, spec.x0 + 8.0 * sigma);
    if grid.x_min() > lo || grid.x_max() < hi {
        return Err(PacketError::GridTooNarrow {
            x_min: grid.x_min(),
            x_max: grid.x_max(),
            lo,
            hi,
        });
    }
    let amps: Vec<Complex64> = grid
        .points()
        .map(|x| {
            let envelope = (-(x - spec.x0).powi(2) / (4.0 * spec.v0)).exp();
            envelope * Complex64::new(0.0, spec.k0 * x).exp()
        })
        .collect();
    let mut field = WaveField::new(*grid, amps);
    field.normalize();
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    const STUDY: PotentialParams = PotentialParams {
        a: 10.0,
        b: 4.0,
        c: 0.35,
    };

    /// Independent energy oracle: trapezoidal quadrature of
    /// `integral[ (g'^2 + k0^2 g^2)/2 + phi g^2 ]` with the analytic
    /// normalized envelope `g` (kinetic term via integration by parts).
    fn quadrature_energy(params: &PotentialParams, x0: f64, v0: f64, k0: f64) -> f64 {
        let sigma = v0.sqrt();
        let (lo, hi) = (x0 - 12.0 * sigma, x0 + 12.0 * sigma);
        let n = 48_001;
        let dx = (hi - lo) / (n - 1) as f64;
        let norm = 1.0 / (2.0 * std::f64::consts::PI * v0).powf(0.25);
        let mut sum = 0.0;
        for i in 0..n {
            let x = lo + i as f64 * dx;
            let g = norm * (-(x - x0) * (x - x0) / (4.0 * v0)).exp();
            let gp = -(x - x0) / (2.0 * v0) * g;
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            sum += w * (0.5 * (gp * gp + k0 * k0 * g * g) + params.phi(x) * g * g);
        }
        sum * dx
    }

    #[test]
    fn energy_matches_quadrature_oracle_for_centered_packet() {
        let spec = GaussianSpec { x0: 0.0, v0: 0.5, k0: 0.0 };
        let e = packet_energy(&STUDY, &spec).unwrap();
        let oracle = quadrature_energy(&STUDY, 0.0, 0.5, 0.0);
        assert!((e - oracle).abs() / oracle < 1e-8, "e={e}, oracle={oracle}");
        assert!((e - 2.815625).abs() < 1e-12);
    }

    #[test]
    fn energy_matches_quadrature_oracle_with_wave_number() {
        let spec = GaussianSpec { x0: 0.0, v0: 1.0, k0: 1.0 };
        let e = packet_energy(&STUDY, &spec).unwrap();
        let oracle = quadrature_energy(&STUDY, 0.0, 1.0, 1.0);
        assert!((e - oracle).abs() / oracle < 1e-8, "e={e}, oracle={oracle}");
        assert!((e - 5.8875).abs() < 1e-12);
    }

    #[test]
    fn energy_matches_quadrature_oracle_off_center() {
        for (x0, v0) in [(0.5, 0.8), (5.5, 2.0), (3.0, 0.3)] {
            let e = packet_energy(&STUDY, &GaussianSpec { x0, v0, k0: 0.0 }).unwrap();
            let oracle = quadrature_energy(&STUDY, x0, v0, 0.0);
            assert!(
                (e - oracle).abs() / oracle.abs() < 1e-8,
                "x0={x0} v0={v0}: e={e}, oracle={oracle}"
            );
        }
    }

    #[test]
    fn harmonic_energy_is_width_plus_displacement() {
        let harmonic = PotentialParams { a: 10.0, b: 0.0, c: 0.0 };
        let spec = GaussianSpec { x0: 1.0, v0: 0.5, k0: 0.0 };
        let e = packet_energy(&harmonic, &spec).unwrap();
        assert!((e - 7.75).abs() < 1e-12);
    }

    #[test]
    fn variance_roots_at_study_energy() {
        let small =
            variance_for_energy(&STUDY, 0.0, 0.0, 9.0, Branch::Small, EnergyFormula::General)
                .unwrap();
        let large =
            variance_for_energy(&STUDY, 0.0, 0.0, 9.0, Branch::Large, EnergyFormula::General)
                .unwrap();
        assert!((small - 0.0140).abs() < 5e-4, "small root = {small}");
        assert!((large - 1.64).abs() < 5e-3, "large root = {large}");
        assert!(small < large);
        for v in [small, large] {
            let e = packet_energy(&STUDY, &GaussianSpec { x0: 0.0, v0: v, k0: 0.0 }).unwrap();
            assert!((e - 9.0).abs() < 1e-10, "round-trip residual {}", e - 9.0);
        }
    }

    #[test]
    fn harmonic_minimum_is_the_ground_width() {
        let harmonic = PotentialParams { a: 10.0, b: 0.0, c: 0.0 };
        let (v_min, e_min) =
            energy_minimum(EnergyFormula::General, &harmonic, 0.0, 0.0).unwrap();
        let expected = 1.0 / (2.0 * 10.0_f64.sqrt());
        assert!((v_min - expected).abs() < 1e-9, "v_min = {v_min}");
        // Requesting exactly the minimum returns the double root on both branches.
        for branch in [Branch::Small, Branch::Large] {
            let v = variance_for_energy(
                &harmonic,
                0.0,
                0.0,
                e_min,
                branch,
                EnergyFormula::General,
            )
            .unwrap();
            assert!((v - expected).abs() < 1e-6);
        }
    }

    #[test]
    fn energy_below_minimum_is_rejected_with_floor() {
        let harmonic = PotentialParams { a: 10.0, b: 0.0, c: 0.0 };
        let err = variance_for_energy(
            &harmonic,
            0.0,
            0.0,
            1.0,
            Branch::Small,
            EnergyFormula::General,
        )
        .unwrap_err();
        match err {
            PacketError::EnergyTooLow { min_energy, .. } => {
                // min over v of 1/(8v) + 5v is sqrt(10)/2.
                assert!((min_energy - 10.0_f64.sqrt() / 2.0).abs() < 1e-9);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn free_particle_energy_relation_is_monotone() {
        let free = PotentialParams { a: 0.0, b: 0.0, c: 0.0 };
        assert!(energy_minimum(EnergyFormula::General, &free, 0.0, 0.0).is_none());
        // Unique root regardless of branch label: 1/(8v) = E.
        for branch in [Branch::Small, Branch::Large] {
            let v =
                variance_for_energy(&free, 0.0, 0.0, 0.25, branch, EnergyFormula::General).unwrap();
            assert!((v - 0.5).abs() < 1e-9, "v = {v}");
        }
    }

    #[test]
    fn centered_formula_ignores_center_terms() {
        let at_origin =
            energy_with(EnergyFormula::Centered, &STUDY, 0.0, 0.7, 0.0);
        let off_center =
            energy_with(EnergyFormula::Centered, &STUDY, 5.5, 0.7, 0.0);
        assert_eq!(at_origin, off_center);
        let general = energy_with(EnergyFormula::General, &STUDY, 0.0, 0.7, 0.0);
        assert_eq!(at_origin, general);
    }

    #[test]
    fn sampled_packet_moments_match_the_spec_values() {
        let grid = Grid::new(-100.0, 100.0, 100_000).unwrap();
        let spec = GaussianSpec { x0: 0.0, v0: 0.5, k0: 0.0 };
        let field = sample_on_grid(&spec, &grid).unwrap();
        assert!((field.norm() - 1.0).abs() < 1e-14);
        let dx = grid.dx();
        let mean: f64 = field
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, a)| grid.point(i) * a.norm_sqr())
            .sum::<f64>()
            * dx;
        assert!(mean.abs() < 1e-10, "mean = {mean}");
        let var: f64 = field
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, a)| (grid.point(i) - mean).powi(2) * a.norm_sqr())
            .sum::<f64>()
            * dx;
        assert!((var - 0.5).abs() < 1e-6, "variance = {var}");
    }

    #[test]
    fn narrow_grid_is_rejected() {
        let grid = Grid::new(-3.0, 3.0, 1001).unwrap();
        let spec = GaussianSpec { x0: 0.0, v0: 0.5, k0: 0.0 };
        assert!(matches!(
            sample_on_grid(&spec, &grid),
            Err(PacketError::GridTooNarrow { .. })
        ));
    }
}
