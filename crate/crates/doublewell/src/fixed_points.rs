//! Fixed points of the reduced moment system and their linear stability.
//!
//! A fixed point has the form `(x*, 0, V*, 0)` with `x*` one of the
//! stationary abscissae of the potential (`0`, the barrier top, or the
//! second minimum). Demanding stationarity fixes the skewness in terms of
//! `V*`, and the conserved energy then pins `V*` itself through a quadratic
//! equation. Linearizing the two second-order equations around the fixed
//! point yields a 2x2 stability matrix whose eigenvalues decide whether the
//! barrier-top fixed point can hold the packet — the energy at which both
//! real parts turn negative is the detectable-tunneling threshold.

use crate::potential::{PotentialError, PotentialParams, Regime};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Root label for the fixed-point variance quadratic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VstarBranch {
    /// Smaller root.
    Minus,
    /// Larger root — the physical branch for thresholds.
    Plus,
}

/// Errors from fixed-point analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FixedPointError {
    /// The skewness and variance relations divide by `c`.
    #[error("fixed-point relations are undefined for c = 0 (quartic term required)")]
    DegenerateQuartic,
    /// The potential has no barrier (single-well or inflection regime).
    #[error("potential regime {0} has no barrier; thresholds are undefined")]
    NoBarrier(Regime),
    #[error(transparent)]
    InvalidParams(#[from] PotentialError),
}

/// Coefficients of the energy relation `q2 V*^2 + q1 V* + q0 = E` at a
/// candidate abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VstarCoeffs {
    pub q2: f64,
    pub q1: f64,
    pub q0: f64,
}

/// Solutions of the fixed-point variance quadratic at one energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VstarRoots {
    /// Discriminant `q1^2 - 4 q2 (q0 - E)`; roots are real iff nonnegative.
    pub discriminant: f64,
    /// Positive roots with branch labels, ascending. A double root appears
    /// under both labels.
    pub roots: Vec<(f64, VstarBranch)>,
    /// Real roots discarded for being non-positive (variance must be > 0).
    pub rejected_nonpositive: Vec<f64>,
}

/// The 2x2 linearization acting on `(delta<x>, delta V)` second
/// derivatives: `d^2/dt^2 (delta<x>, delta V) = A (delta<x>, delta V)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityMatrix {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

/// A fully characterized fixed point at one energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointSolution {
    pub x_star: f64,
    pub v_star: f64,
    pub skewness: f64,
    pub discriminant: f64,
    pub branch: VstarBranch,
    /// Eigenvalues of the stability matrix, real parts ascending.
    pub eigenvalues: [Complex64; 2],
    /// Both eigenvalue real parts strictly below `-1e-9`.
    pub stable: bool,
}

/// One labeled energy interval of the threshold ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyRegimeInterval {
    pub label: EnergyRegime,
    pub lower: f64,
    /// `None` for the unbounded top interval.
    pub upper: Option<f64>,
}

/// Energy classification relative to the barrier fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnergyRegime {
    /// Below the existence threshold: the barrier fixed point is complex.
    #[serde(rename = "no-fixed-point")]
    NoFixedPoint,
    /// The fixed point exists but is linearly unstable.
    #[serde(rename = "exists-unstable")]
    ExistsUnstable,
    /// The fixed point is stable: detectable tunneling.
    #[serde(rename = "stable-tunneling")]
    StableTunneling,
    /// At or above the barrier height.
    #[serde(rename = "above-barrier")]
    AboveBarrier,
}

/// Existence, stability, and barrier thresholds for a double-well
/// potential, with the labeled energy intervals they delimit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    /// Minimum energy for a real barrier fixed point (discriminant zero).
    pub e_exist: f64,
    /// Least energy at which the plus-branch fixed point is stable
    /// (bisection to 1e-6); `None` if stability never onsets below the
    /// barrier height.
    pub e_stable: Option<f64>,
    /// Plus-branch `V*` at `e_stable`.
    pub v_stable: Option<f64>,
    /// Barrier height `phi(beta_minus)`.
    pub e_barrier: f64,
    /// The four labeled half-open intervals `[lower, upper)`.
    pub regimes: Vec<EnergyRegimeInterval>,
}

/// Both eigenvalue real parts must fall below this to count as stable.
const STABLE_RE_TOL: f64 = -1e-9;

/// Bisection tolerance in energy for the stability threshold.
const E_STABLE_TOL: f64 = 1e-6;

/// Skewness that makes `(x*, 0, v*, 0)` stationary:
/// `S = -(1/c) [a x* - b V* - b x*^2 + 3 c V* x* + c x*^3]`.
pub fn skewness_at(
    params: &PotentialParams,
    x_star: f64,
    v_star: f64,
) -> Result<f64, FixedPointError> {
    let PotentialParams { a, b, c } = *params;
    if c == 0.0 {
        return Err(FixedPointError::DegenerateQuartic);
    }
    Ok(-(a * x_star - b * v_star - b * x_star * x_star
        + 3.0 * c * v_star * x_star
        + c * x_star.powi(3))
        / c)
}

/// Coefficients of `q2 V*^2 + q1 V* + q0 = E` at `x_star`:
/// `q2 = 9c/4`, `q1 = a - 5b^2/6c + 3b x* - (9c/2) x*^2`,
/// `q0 = 5ab x*/6c - 2a x*^2 - 5b^2 x*^2/6c + 3b x*^3 - (9c/4) x*^4`.
///
/// At a stationary point of the potential, `q0` equals `phi(x*)`.
pub fn vstar_energy_coeffs(
    params: &PotentialParams,
    x_star: f64,
) -> Result<VstarCoeffs, FixedPointError> {
    let PotentialParams { a, b, c } = *params;
    if c == 0.0 {
        return Err(FixedPointError::DegenerateQuartic);
    }
    let x = x_star;
    let x2 = x * x;
    Ok(VstarCoeffs {
        q2: 2.25 * c,
        q1: a - 5.0 * b * b / (6.0 * c) + 3.0 * b * x - 4.5 * c * x2,
        q0: 5.0 * a * b * x / (6.0 * c) - 2.0 * a * x2 - 5.0 * b * b * x2 / (6.0 * c)
            + 3.0 * b * x2 * x
            - 2.25 * c * x2 * x2,
    })
}

/// Solves the fixed-point variance quadratic at `x_star` for energy `E`.
/// An empty root set (negative discriminant, or all roots non-positive)
/// is a valid outcome, not an error.
pub fn solve_vstar(
    params: &PotentialParams,
    x_star: f64,
    energy: f64,
) -> Result<VstarRoots, FixedPointError> {
    let VstarCoeffs { q2, q1, q0 } = vstar_energy_coeffs(params, x_star)?;
    let discriminant = q1 * q1 - 4.0 * q2 * (q0 - energy);
    let mut roots = Vec::new();
    let mut rejected = Vec::new();
    if discriminant >= 0.0 {
        let sq = discriminant.sqrt();
        let lo = (-q1 - sq) / (2.0 * q2);
        let hi = (-q1 + sq) / (2.0 * q2);
        for (v, branch) in [(lo, VstarBranch::Minus), (hi, VstarBranch::Plus)] {
            if v > 0.0 {
                roots.push((v, branch));
            } else {
                rejected.push(v);
            }
        }
    }
    Ok(VstarRoots {
        discriminant,
        roots,
        rejected_nonpositive: rejected,
    })
}

/// The linearization entries at `(x, V) = (x_star, v_star)` with frozen
/// skewness.
pub fn stability_matrix(
    params: &PotentialParams,
    x_star: f64,
    v_star: f64,
    skewness: f64,
) -> StabilityMatrix {
    let PotentialParams { a, b, c } = *params;
    let (x, v, s) = (x_star, v_star, skewness);
    let x2 = x * x;
    StabilityMatrix {
        a11: -a + 2.0 * b * x - 3.0 * c * x2 - 3.0 * c * v,
        a12: b - 3.0 * c * x,
        a21: -4.0 * a * x + 4.0 * b * x2 - 4.0 * c * x2 * x + 8.0 * b * v
            - 24.0 * c * x * v
            - 10.0 * c * s,
        a22: -4.0 * a + 8.0 * b * x - 18.0 * c * v - 12.0 * c * x2,
    }
}

/// Closed-form eigenvalues of the 2x2 matrix,
/// `lambda = (tr +/- sqrt(tr^2 - 4 det))/2`, ordered by real part
/// ascending (imaginary part ascending on ties).
pub fn eigen2(m: &StabilityMatrix) -> (Complex64, Complex64) {
    let tr = m.a11 + m.a22;
    let det = m.a11 * m.a22 - m.a12 * m.a21;
    let disc = tr * tr - 4.0 * det;
    let (l1, l2) = if disc >= 0.0 {
        let sq = disc.sqrt();
        (
            Complex64::new(0.5 * (tr - sq), 0.0),
            Complex64::new(0.5 * (tr + sq), 0.0),
        )
    } else {
        let sq = (-disc).sqrt();
        (
            Complex64::new(0.5 * tr, -0.5 * sq),
            Complex64::new(0.5 * tr, 0.5 * sq),
        )
    };
    if (l1.re, l1.im) <= (l2.re, l2.im) {
        (l1, l2)
    } else {
        (l2, l1)
    }
}

/// Characterizes the fixed point at an arbitrary stationary abscissa and
/// energy on the requested branch. Returns `Ok(None)` when that branch has
/// no positive root.
pub fn fixed_point_at(
    params: &PotentialParams,
    x_star: f64,
    energy: f64,
    branch: VstarBranch,
) -> Result<Option<FixedPointSolution>, FixedPointError> {
    let sols = solve_vstar(params, x_star, energy)?;
    let Some(&(v_star, _)) = sols.roots.iter().find(|(_, b)| *b == branch) else {
        return Ok(None);
    };
    let skewness = skewness_at(params, x_star, v_star)?;
    let matrix = stability_matrix(params, x_star, v_star, skewness);
    let (l1, l2) = eigen2(&matrix);
    Ok(Some(FixedPointSolution {
        x_star,
        v_star,
        skewness,
        discriminant: sols.discriminant,
        branch,
        eigenvalues: [l1, l2],
        stable: l1.re < STABLE_RE_TOL && l2.re < STABLE_RE_TOL,
    }))
}

/// Resolves the barrier abscissa and characterizes its fixed point.
pub fn barrier_fixed_point(
    params: &PotentialParams,
    energy: f64,
    branch: VstarBranch,
) -> Result<Option<FixedPointSolution>, FixedPointError> {
    let beta_minus = barrier_abscissa(params)?;
    fixed_point_at(params, beta_minus, energy, branch)
}

fn barrier_abscissa(params: &PotentialParams) -> Result<f64, FixedPointError> {
    params.validate()?;
    let regime = params.regime();
    match (regime, params.betas()) {
        (Regime::SingleWell | Regime::Inflection, _) | (_, None) => {
            Err(FixedPointError::NoBarrier(regime))
        }
        (_, Some((beta_minus, _))) => Ok(beta_minus),
    }
}

/// Existence, stability, and barrier thresholds at the barrier abscissa.
///
/// `e_exist` comes from the discriminant-zero closed form
/// `q0 - q1^2/(4 q2)`; `e_stable` from bisection of the full
/// energy -> V*(plus) -> skewness -> eigenvalue chain to 1e-6 in energy.
pub fn thresholds(params: &PotentialParams) -> Result<ThresholdReport, FixedPointError> {
    let beta_minus = barrier_abscissa(params)?;
    let VstarCoeffs { q2, q1, q0 } = vstar_energy_coeffs(params, beta_minus)?;
    let e_exist = q0 - q1 * q1 / (4.0 * q2);
    let e_barrier = params.phi(beta_minus);

    let is_stable = |e: f64| -> bool {
        matches!(
            fixed_point_at(params, beta_minus, e, VstarBranch::Plus),
            Ok(Some(FixedPointSolution { stable: true, .. }))
        )
    };

    let (e_stable, v_stable) = if !is_stable(e_barrier) {
        (None, None)
    } else {
        let (mut lo, mut hi) = (e_exist, e_barrier);
        while hi - lo > E_STABLE_TOL {
            let mid = 0.5 * (lo + hi);
            if is_stable(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let sol = fixed_point_at(params, beta_minus, hi, VstarBranch::Plus)?
            .expect("stable endpoint has a plus root");
        (Some(hi), Some(sol.v_star))
    };

    let mut regimes = vec![EnergyRegimeInterval {
        label: EnergyRegime::NoFixedPoint,
        lower: 0.0,
        upper: Some(e_exist),
    }];
    match e_stable {
        Some(es) => {
            regimes.push(EnergyRegimeInterval {
                label: EnergyRegime::ExistsUnstable,
                lower: e_exist,
                upper: Some(es),
            });
            regimes.push(EnergyRegimeInterval {
                label: EnergyRegime::StableTunneling,
                lower: es,
                upper: Some(e_barrier),
            });
        }
        None => regimes.push(EnergyRegimeInterval {
            label: EnergyRegime::ExistsUnstable,
            lower: e_exist,
            upper: Some(e_barrier),
        }),
    }
    regimes.push(EnergyRegimeInterval {
        label: EnergyRegime::AboveBarrier,
        lower: e_barrier,
        upper: None,
    });

    Ok(ThresholdReport {
        e_exist,
        e_stable,
        v_stable,
        e_barrier,
        regimes,
    })
}

/// Classifies an energy into the threshold ladder (half-open intervals
/// `[lower, upper)`).
pub fn regime_of(params: &PotentialParams, energy: f64) -> Result<EnergyRegime, FixedPointError> {
    let report = thresholds(params)?;
    Ok(if energy < report.e_exist {
        EnergyRegime::NoFixedPoint
    } else if energy >= report.e_barrier {
        EnergyRegime::AboveBarrier
    } else if report.e_stable.is_some_and(|es| energy >= es) {
        EnergyRegime::StableTunneling
    } else {
        EnergyRegime::ExistsUnstable
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{rhs, MomentState, MomentSystemParams};

    const STUDY: PotentialParams = PotentialParams {
        a: 10.0,
        b: 4.0,
        c: 0.35,
    };

    fn study_beta_minus() -> f64 {
        STUDY.betas().unwrap().0
    }

    /// Residual oracle: with the computed skewness, the mean-momentum
    /// equation must be stationary at `(x*, 0, v*, 0)`.
    fn mean_p_residual(x_star: f64, v_star: f64, skewness: f64) -> f64 {
        let sys = MomentSystemParams::new(STUDY, 1.0, skewness);
        let state = MomentState {
            mean_x: x_star,
            mean_p: 0.0,
            variance: v_star,
            variance_rate: 0.0,
        };
        rhs(&state, &sys).d_mean_p
    }

    #[test]
    fn skewness_collapses_at_the_origin() {
        let s = skewness_at(&STUDY, 0.0, 1.0).unwrap();
        assert!((s - 4.0 / 0.35).abs() < 1e-12, "s = {s}");
    }

    #[test]
    fn skewness_makes_the_mean_equation_stationary() {
        let (bm, bp) = STUDY.betas().unwrap();
        for (x, v) in [(bm, 4.959), (bp, 1.0), (0.0, 2.5)] {
            let s = skewness_at(&STUDY, x, v).unwrap();
            let r = mean_p_residual(x, v, s);
            assert!(r.abs() < 1e-10, "x*={x}, V*={v}: residual {r}");
        }
    }

    #[test]
    fn degenerate_quartic_is_rejected() {
        let p = PotentialParams { a: 10.0, b: 4.0, c: 0.0 };
        assert!(matches!(
            skewness_at(&p, 1.0, 1.0),
            Err(FixedPointError::DegenerateQuartic)
        ));
        assert!(matches!(
            vstar_energy_coeffs(&p, 1.0),
            Err(FixedPointError::DegenerateQuartic)
        ));
    }

    #[test]
    fn energy_coefficients_at_barrier_and_origin() {
        let at_barrier = vstar_energy_coeffs(&STUDY, study_beta_minus()).unwrap();
        assert!((at_barrier.q2 - 0.7875).abs() < 1e-12);
        assert!((at_barrier.q1 + 5.259).abs() < 1e-3, "q1 = {}", at_barrier.q1);
        assert!((at_barrier.q0 - 17.31).abs() < 1e-2, "q0 = {}", at_barrier.q0);
        // At a stationary point, q0 equals the potential there.
        assert!((at_barrier.q0 - STUDY.phi(study_beta_minus())).abs() < 1e-9);

        let at_origin = vstar_energy_coeffs(&STUDY, 0.0).unwrap();
        assert!((at_origin.q2 - 0.7875).abs() < 1e-12);
        assert!((at_origin.q1 - (10.0 - 80.0 / 2.1)).abs() < 1e-12);
        assert_eq!(at_origin.q0, 0.0);
    }

    #[test]
    fn vstar_roots_at_the_reference_energies() {
        let bm = study_beta_minus();

        let at_10_60 = solve_vstar(&STUDY, bm, 10.60).unwrap();
        assert_eq!(at_10_60.roots.len(), 2);
        let (v_minus, b_minus) = at_10_60.roots[0];
        let (v_plus, b_plus) = at_10_60.roots[1];
        assert_eq!(b_minus, VstarBranch::Minus);
        assert_eq!(b_plus, VstarBranch::Plus);
        assert!((v_minus - 1.73).abs() < 0.05, "minus root {v_minus}");
        assert!((v_plus - 4.96).abs() < 0.05, "plus root {v_plus}");

        let at_8 = solve_vstar(&STUDY, bm, 8.0).unwrap();
        assert!(at_8.roots.is_empty());
        assert!(at_8.discriminant < 0.0);

        // Just above the existence threshold the two roots pinch together
        // at -q1/(2 q2).
        let c = vstar_energy_coeffs(&STUDY, bm).unwrap();
        let e_exist = c.q0 - c.q1 * c.q1 / (4.0 * c.q2);
        let near_double = solve_vstar(&STUDY, bm, e_exist + 1e-9).unwrap();
        assert_eq!(near_double.roots.len(), 2);
        let pinch = -c.q1 / (2.0 * c.q2);
        assert!((pinch - 3.34).abs() < 0.01, "pinch {pinch}");
        assert!((near_double.roots[0].0 - pinch).abs() < 1e-3);
        assert!((near_double.roots[1].0 - pinch).abs() < 1e-3);
    }

    #[test]
    fn harmonic_stability_matrix_is_diagonal() {
        let p = PotentialParams { a: 10.0, b: 0.0, c: 0.0 };
        let m = stability_matrix(&p, 0.0, 1.0, 0.0);
        assert_eq!(m.a11, -10.0);
        assert_eq!(m.a12, 0.0);
        assert_eq!(m.a21, 0.0);
        assert_eq!(m.a22, -40.0);
        let (l1, l2) = eigen2(&m);
        assert_eq!((l1.re, l2.re), (-40.0, -10.0));
        assert_eq!((l1.im, l2.im), (0.0, 0.0));
    }

    #[test]
    fn eigen2_known_matrices() {
        let diag = StabilityMatrix { a11: -1.0, a12: 0.0, a21: 0.0, a22: -2.0 };
        let (l1, l2) = eigen2(&diag);
        assert_eq!((l1.re, l2.re), (-2.0, -1.0));

        let rotation = StabilityMatrix { a11: 0.0, a12: 1.0, a21: -1.0, a22: 0.0 };
        let (r1, r2) = eigen2(&rotation);
        assert_eq!((r1.re, r2.re), (0.0, 0.0));
        assert_eq!((r1.im, r2.im), (-1.0, 1.0));
    }

    #[test]
    fn eigen2_satisfies_trace_and_determinant() {
        let cases = [
            StabilityMatrix { a11: 1.0, a12: 2.0, a21: 3.0, a22: 4.0 },
            StabilityMatrix { a11: -3.5, a12: 0.25, a21: -10.0, a22: 2.0 },
            StabilityMatrix { a11: 0.0, a12: -7.0, a21: 5.0, a22: -1.0 },
        ];
        for m in cases {
            let (l1, l2) = eigen2(&m);
            let tr = Complex64::new(m.a11 + m.a22, 0.0);
            let det = Complex64::new(m.a11 * m.a22 - m.a12 * m.a21, 0.0);
            assert!((l1 + l2 - tr).norm() < 1e-12);
            assert!((l1 * l2 - det).norm() < 1e-12);
        }
    }

    #[test]
    fn stability_matrix_matches_finite_difference_jacobian() {
        // The entries are the Jacobian of (d<p>/dt, dW/dt) in (<x>, V) at
        // frozen skewness; check by central differences at several states.
        let h = 1e-6;
        for (x, v, s) in [(3.694, 4.959, 1.719), (0.5, 2.0, 0.8), (7.0, 1.5, -0.3)] {
            let m = stability_matrix(&STUDY, x, v, s);
            let sys = MomentSystemParams::new(STUDY, 5.0, s);
            let f = |xx: f64, vv: f64| {
                let st = MomentState {
                    mean_x: xx,
                    mean_p: 0.0,
                    variance: vv,
                    variance_rate: 0.0,
                };
                let d = rhs(&st, &sys);
                (d.d_mean_p, d.d_variance_rate)
            };
            let (pm, wm) = f(x - h, v);
            let (pp, wp) = f(x + h, v);
            let (pm2, wm2) = f(x, v - h);
            let (pp2, wp2) = f(x, v + h);
            let fd = [
                (pp - pm) / (2.0 * h),
                (pp2 - pm2) / (2.0 * h),
                (wp - wm) / (2.0 * h),
                (wp2 - wm2) / (2.0 * h),
            ];
            for (got, want) in [m.a11, m.a12, m.a21, m.a22].iter().zip(fd) {
                assert!(
                    (got - want).abs() < 1e-5 * want.abs().max(1.0),
                    "entry {got} vs fd {want} at ({x}, {v}, {s})"
                );
            }
        }
    }

    #[test]
    fn thresholds_for_the_study_parameters() {
        let r = thresholds(&STUDY).unwrap();
        assert!((r.e_exist - 8.531).abs() < 1e-3, "e_exist = {}", r.e_exist);
        let e_stable = r.e_stable.unwrap();
        let v_stable = r.v_stable.unwrap();
        assert!((e_stable - 10.605).abs() < 1e-2, "e_stable = {e_stable}");
        assert!((v_stable - 4.962).abs() < 1e-2, "v_stable = {v_stable}");
        assert!((r.e_barrier - 17.3117).abs() < 1e-3);
        assert!(r.e_exist < e_stable && e_stable < r.e_barrier);
        assert_eq!(r.regimes.len(), 4);
        assert_eq!(r.regimes[0].lower, 0.0);
        assert_eq!(r.regimes[3].upper, None);
    }

    #[test]
    fn stability_flips_exactly_at_the_threshold() {
        let below = barrier_fixed_point(&STUDY, 10.60, VstarBranch::Plus)
            .unwrap()
            .unwrap();
        let above = barrier_fixed_point(&STUDY, 10.61, VstarBranch::Plus)
            .unwrap()
            .unwrap();
        assert!(!below.stable, "eigenvalues below: {:?}", below.eigenvalues);
        assert!(above.stable, "eigenvalues above: {:?}", above.eigenvalues);
        assert!(above.eigenvalues[0].re < 0.0 && above.eigenvalues[1].re < 0.0);
    }

    #[test]
    fn energy_regime_ladder_matches_the_study_values() {
        assert_eq!(regime_of(&STUDY, 5.0).unwrap(), EnergyRegime::NoFixedPoint);
        assert_eq!(regime_of(&STUDY, 9.5).unwrap(), EnergyRegime::ExistsUnstable);
        assert_eq!(regime_of(&STUDY, 14.95).unwrap(), EnergyRegime::StableTunneling);
        assert_eq!(regime_of(&STUDY, 20.0).unwrap(), EnergyRegime::AboveBarrier);
    }

    #[test]
    fn well_fixed_points_exist_at_any_positive_energy() {
        let (_, bp) = STUDY.betas().unwrap();
        let e_barrier = STUDY.phi(study_beta_minus());
        for x_star in [0.0, bp] {
            let mut e = 0.05_f64;
            while e <= 2.0 * e_barrier {
                let roots = solve_vstar(&STUDY, x_star, e).unwrap();
                assert!(
                    !roots.roots.is_empty(),
                    "no positive root at x*={x_star}, E={e}"
                );
                e += 0.5;
            }
        }
    }

    #[test]
    fn no_barrier_regimes_are_rejected() {
        let single = PotentialParams::new(10.0, 4.0, 0.5).unwrap();
        assert!(matches!(
            thresholds(&single),
            Err(FixedPointError::NoBarrier(Regime::SingleWell))
        ));
        let inflection = PotentialParams::new(10.0, 4.0, 0.4).unwrap();
        assert!(matches!(
            thresholds(&inflection),
            Err(FixedPointError::NoBarrier(Regime::Inflection))
        ));
    }
}
