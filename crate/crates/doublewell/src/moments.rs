//! The reduced four-dimensional moment system for a wave packet in the
//! quartic potential: mean position, mean momentum, position variance, and
//! the variance rate, closed with the Gaussian kurtosis rule `K = 3 V^2`
//! and a constant skewness `S`.
//!
//! The evolution equations are
//!
//! ```text
//! d<x>/dt = <p>
//! d<p>/dt = -a<x> + b[V + <x>^2] - c[S + 3V<x> + <x>^3]
//! dV/dt   = W
//! dW/dt   = 4E - 2<p>^2 - a[4V + 2<x>^2] + b[(10/3)S + 8V<x> + (4/3)<x>^3]
//!           - c[9V^2 + 10S<x> + 12V<x>^2 + <x>^4]
//! ```
//!
//! where the `9V^2` term is `3K` under the Gaussian closure. The mean energy
//! `E` is the system's only conserved quantity and enters as a control
//! parameter; the skewness is frozen at a constant value for a run
//! (normally its barrier fixed-point value, see [`crate::fixed_points`]).

use crate::potential::PotentialParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Phase point of the reduced system: `(<x>, <p>, V, dV/dt)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentState {
    pub mean_x: f64,
    pub mean_p: f64,
    /// Position variance `V`; positive for any physical state.
    pub variance: f64,
    /// `W = dV/dt`.
    pub variance_rate: f64,
}

/// Fixed parameters of a moment-dynamics run. The kurtosis closure
/// `K = 3 V^2` is a constant of the model, not a field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSystemParams {
    pub potential: PotentialParams,
    /// Conserved mean energy `E`, the control parameter; must be >= 0.
    pub energy: f64,
    /// Skewness `S`, held constant during integration.
    pub skewness: f64,
}

/// Time derivative of a [`MomentState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentDeriv {
    pub d_mean_x: f64,
    pub d_mean_p: f64,
    pub d_variance: f64,
    pub d_variance_rate: f64,
}

/// Sampled trajectory of the moment system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentSeries {
    /// Sample instants, strictly increasing.
    pub times: Vec<f64>,
    pub states: Vec<MomentState>,
    /// Momentum-variance diagnostic per sample (may be negative; reported,
    /// never raised).
    pub vp_diagnostic: Vec<f64>,
}

/// Integration failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentError {
    /// The closure broke down: variance dropped to (or below) 1e-12. The
    /// trajectory sampled before the collapse is carried along so callers
    /// can still analyze the usable prefix.
    #[error("variance collapsed to <= 1e-12 at t = {time} (closure breakdown)")]
    VarianceCollapse {
        time: f64,
        partial: Box<MomentSeries>,
    },
    /// A state component became non-finite.
    #[error("non-finite state at t = {time}")]
    NonFiniteState { time: f64 },
}

/// Variance at or below this value halts integration as a closure breakdown.
pub const VARIANCE_FLOOR: f64 = 1e-12;

impl MomentSystemParams {
    /// Validates `energy >= 0`.
    pub fn new(potential: PotentialParams, energy: f64, skewness: f64) -> Self {
        assert!(
            energy >= 0.0 && energy.is_finite(),
            "moment-system energy must be finite and >= 0, got {energy}"
        );
        MomentSystemParams { potential, energy, skewness }
    }
}

fn rhs_array(s: &[f64; 4], sys: &MomentSystemParams) -> [f64; 4] {
    let PotentialParams { a, b, c } = sys.potential;
    let e = sys.energy;
    let sk = sys.skewness;
    let [x, p, v, w] = *s;
    let x2 = x * x;
    let x3 = x2 * x;
    let d_p = -a * x + b * (v + x2) - c * (sk + 3.0 * v * x + x3);
    let d_w = 4.0 * e - 2.0 * p * p - a * (4.0 * v + 2.0 * x2)
        + b * (10.0 / 3.0 * sk + 8.0 * v * x + 4.0 / 3.0 * x3)
        - c * (9.0 * v * v + 10.0 * sk * x + 12.0 * v * x2 + x2 * x2);
    [p, d_p, w, d_w]
}

/// Evaluates the moment-system vector field at a state.
pub fn rhs(state: &MomentState, sys: &MomentSystemParams) -> MomentDeriv {
    let d = rhs_array(
        &[state.mean_x, state.mean_p, state.variance, state.variance_rate],
        sys,
    );
    MomentDeriv {
        d_mean_x: d[0],
        d_mean_p: d[1],
        d_variance: d[2],
        d_variance_rate: d[3],
    }
}

/// Momentum-variance diagnostic
/// `Vp = 2E - 2<phi> - <p>^2`, with `<phi>` evaluated for the closed
/// system:
/// `<phi> = (a/2)(V + x^2) - (b/3)(x^3 + 3xV + S) + (c/4)(x^4 + 6x^2 V + 4Sx + 3V^2)`.
///
/// Negative values signal that the state is unreachable at this energy; the
/// value is reported as-is.
pub fn momentum_variance(state: &MomentState, sys: &MomentSystemParams) -> f64 {
    let PotentialParams { a, b, c } = sys.potential;
    let sk = sys.skewness;
    let (x, v) = (state.mean_x, state.variance);
    let x2 = x * x;
    let mean_phi = 0.5 * a * (v + x2) - b / 3.0 * (x2 * x + 3.0 * x * v + sk)
        + 0.25 * c * (x2 * x2 + 6.0 * x2 * v + 4.0 * sk * x + 3.0 * v * v);
    2.0 * sys.energy - 2.0 * mean_phi - state.mean_p * state.mean_p
}

/// Integrates with classical fixed-step fourth-order Runge-Kutta, sampling
/// every `stride` steps (always including `t = 0` and the final step).
///
/// Halts with [`MomentError::VarianceCollapse`] if the variance falls to
/// `1e-12` or below after any step, carrying the samples collected so far.
pub fn integrate(
    init: &MomentState,
    sys: &MomentSystemParams,
    dt: f64,
    t_end: f64,
    stride: usize,
) -> Result<MomentSeries, MomentError> {
    assert!(dt > 0.0 && t_end > 0.0 && stride > 0, "need dt > 0, t_end > 0, stride > 0");
    assert!(init.variance > 0.0, "initial variance must be positive");

    let n_steps = (t_end / dt).round().max(1.0) as u64;
    let mut series = MomentSeries {
        times: Vec::with_capacity((n_steps / stride as u64 + 2) as usize),
        states: Vec::with_capacity((n_steps / stride as u64 + 2) as usize),
        vp_diagnostic: Vec::with_capacity((n_steps / stride as u64 + 2) as usize),
    };
    let push = |series: &mut MomentSeries, t: f64, s: &[f64; 4]| {
        let state = MomentState {
            mean_x: s[0],
            mean_p: s[1],
            variance: s[2],
            variance_rate: s[3],
        };
        series.times.push(t);
        series.states.push(state);
        series.vp_diagnostic.push(momentum_variance(&state, sys));
    };

    let mut s = [init.mean_x, init.mean_p, init.variance, init.variance_rate];
    push(&mut series, 0.0, &s);

    for i in 1..=n_steps {
        s = rk4_step(&s, sys, dt);
        let t = i as f64 * dt;
        if s.iter().any(|v| !v.is_finite()) {
            return Err(MomentError::NonFiniteState { time: t });
        }
        if s[2] <= VARIANCE_FLOOR {
            return Err(MomentError::VarianceCollapse {
                time: t,
                partial: Box::new(series),
            });
        }
        if i % stride as u64 == 0 || i == n_steps {
            push(&mut series, t, &s);
        }
    }
    Ok(series)
}

fn rk4_step(s: &[f64; 4], sys: &MomentSystemParams, dt: f64) -> [f64; 4] {
    let k1 = rhs_array(s, sys);
    let k2 = rhs_array(&offset(s, &k1, 0.5 * dt), sys);
    let k3 = rhs_array(&offset(s, &k2, 0.5 * dt), sys);
    let k4 = rhs_array(&offset(s, &k3, dt), sys);
    let mut out = *s;
    for i in 0..4 {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn offset(s: &[f64; 4], k: &[f64; 4], h: f64) -> [f64; 4] {
    let mut out = *s;
    for i in 0..4 {
        out[i] += h * k[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::{self, VstarBranch};
    use crate::packet::{self, Branch, EnergyFormula, GaussianSpec};

    const STUDY: PotentialParams = PotentialParams {
        a: 10.0,
        b: 4.0,
        c: 0.35,
    };
    const HARMONIC: PotentialParams = PotentialParams {
        a: 10.0,
        b: 0.0,
        c: 0.0,
    };
    const FREE: PotentialParams = PotentialParams {
        a: 0.0,
        b: 0.0,
        c: 0.0,
    };

    #[test]
    fn harmonic_rhs_matches_hand_values() {
        let sys = MomentSystemParams::new(HARMONIC, 7.75, 0.0);
        let state = MomentState {
            mean_x: 1.0,
            mean_p: 0.0,
            variance: 0.5,
            variance_rate: 0.0,
        };
        let d = rhs(&state, &sys);
        assert_eq!(d.d_mean_x, 0.0);
        assert!((d.d_mean_p + 10.0).abs() < 1e-12);
        assert_eq!(d.d_variance, 0.0);
        assert!((d.d_variance_rate + 9.0).abs() < 1e-12);
    }

    #[test]
    fn free_particle_variance_acceleration_is_4e() {
        let sys = MomentSystemParams::new(FREE, 0.25, 0.0);
        let state = MomentState {
            mean_x: 0.0,
            mean_p: 0.0,
            variance: 0.5,
            variance_rate: 0.0,
        };
        let d = rhs(&state, &sys);
        assert!((d.d_variance_rate - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rhs_vanishes_at_the_barrier_fixed_point() {
        let sol = fixed_points::barrier_fixed_point(&STUDY, 10.60, VstarBranch::Plus)
            .unwrap()
            .expect("plus-branch fixed point exists at E=10.60");
        let sys = MomentSystemParams::new(STUDY, 10.60, sol.skewness);
        let state = MomentState {
            mean_x: sol.x_star,
            mean_p: 0.0,
            variance: sol.v_star,
            variance_rate: 0.0,
        };
        let d = rhs(&state, &sys);
        assert!(d.d_mean_x.abs() < 1e-8);
        assert!(d.d_mean_p.abs() < 1e-8, "d_mean_p = {}", d.d_mean_p);
        assert!(d.d_variance.abs() < 1e-8);
        assert!(d.d_variance_rate.abs() < 1e-8, "d_variance_rate = {}", d.d_variance_rate);
        // Approximate location for the study parameters.
        assert!((sol.v_star - 4.959).abs() < 0.05);
    }

    #[test]
    fn momentum_variance_special_cases() {
        let harmonic_sys = MomentSystemParams::new(HARMONIC, 7.75, 0.0);
        let coherent = MomentState {
            mean_x: 1.0,
            mean_p: 0.0,
            variance: 0.5,
            variance_rate: 0.0,
        };
        assert!((momentum_variance(&coherent, &harmonic_sys) - 0.5).abs() < 1e-12);

        let free_sys = MomentSystemParams::new(FREE, 0.25, 0.0);
        let free_state = MomentState {
            mean_x: 0.0,
            mean_p: 0.0,
            variance: 0.5,
            variance_rate: 0.0,
        };
        assert!((momentum_variance(&free_state, &free_sys) - 0.5).abs() < 1e-12);

        // At the barrier fixed point the closure reports a negative momentum
        // variance; it is a diagnostic and must come back as a value, not an
        // error. Reference number computed from the closed-form expression.
        let sol = fixed_points::barrier_fixed_point(&STUDY, 10.60, VstarBranch::Plus)
            .unwrap()
            .unwrap();
        let sys = MomentSystemParams::new(STUDY, 10.60, sol.skewness);
        let at_fp = MomentState {
            mean_x: sol.x_star,
            mean_p: 0.0,
            variance: sol.v_star,
            variance_rate: 0.0,
        };
        let vp = momentum_variance(&at_fp, &sys);
        assert!((vp - (-0.28870298)).abs() < 1e-6, "vp = {vp}");
    }

    #[test]
    fn harmonic_coherent_state_is_exact_to_1e6_over_ten_periods() {
        let omega = 10.0_f64.sqrt();
        let v0 = 1.0 / (2.0 * omega);
        let e = packet::packet_energy(&HARMONIC, &GaussianSpec { x0: 1.0, v0, k0: 0.0 }).unwrap();
        let sys = MomentSystemParams::new(HARMONIC, e, 0.0);
        let init = MomentState {
            mean_x: 1.0,
            mean_p: 0.0,
            variance: v0,
            variance_rate: 0.0,
        };
        let series = integrate(&init, &sys, 1e-3, 10.0, 10).unwrap();
        for (t, s) in series.times.iter().zip(&series.states) {
            let expect = (omega * t).cos();
            assert!(
                (s.mean_x - expect).abs() < 1e-6,
                "t={t}: mean_x={} expected={expect}",
                s.mean_x
            );
            assert!((s.variance - v0).abs() < 1e-6, "t={t}: variance={}", s.variance);
        }
    }

    #[test]
    fn barrier_fixed_point_persists_for_long_horizons() {
        let e = 12.0;
        let sol = fixed_points::barrier_fixed_point(&STUDY, e, VstarBranch::Plus)
            .unwrap()
            .unwrap();
        let sys = MomentSystemParams::new(STUDY, e, sol.skewness);
        let init = MomentState {
            mean_x: sol.x_star,
            mean_p: 0.0,
            variance: sol.v_star,
            variance_rate: 0.0,
        };
        let series = integrate(&init, &sys, 1e-3, 100.0, 100).unwrap();
        for s in &series.states {
            assert!((s.mean_x - sol.x_star).abs() < 1e-6);
            assert!((s.variance - sol.v_star).abs() < 1e-6);
            assert!(s.mean_p.abs() < 1e-6);
            assert!(s.variance_rate.abs() < 1e-6);
        }
    }

    #[test]
    fn confined_scenario_stays_in_the_left_well() {
        // E below the stability threshold, packet in the left well.
        let e = 9.0;
        let v0 = packet::variance_for_energy(
            &STUDY,
            0.5,
            0.0,
            e,
            Branch::Large,
            EnergyFormula::Centered,
        )
        .unwrap();
        let sol = fixed_points::barrier_fixed_point(&STUDY, e, VstarBranch::Plus)
            .unwrap()
            .unwrap();
        let sys = MomentSystemParams::new(STUDY, e, sol.skewness);
        let init = MomentState {
            mean_x: 0.5,
            mean_p: 0.0,
            variance: v0,
            variance_rate: 0.0,
        };
        let series = integrate(&init, &sys, 1e-3, 100.0, 10).unwrap();
        let barrier = STUDY.betas().unwrap().0;
        for (t, s) in series.times.iter().zip(&series.states) {
            assert!(s.mean_x < barrier, "t={t}: mean_x={} crossed {barrier}", s.mean_x);
        }
    }

    #[test]
    fn time_reversal_roundtrip_returns_to_start() {
        let e = 9.0;
        let v0 = packet::variance_for_energy(
            &STUDY,
            0.5,
            0.0,
            e,
            Branch::Large,
            EnergyFormula::Centered,
        )
        .unwrap();
        let sol = fixed_points::barrier_fixed_point(&STUDY, e, VstarBranch::Plus)
            .unwrap()
            .unwrap();
        let sys = MomentSystemParams::new(STUDY, e, sol.skewness);
        let init = MomentState {
            mean_x: 0.5,
            mean_p: 0.0,
            variance: v0,
            variance_rate: 0.0,
        };
        let forward = integrate(&init, &sys, 1e-3, 5.0, 5000).unwrap();
        let end = *forward.states.last().unwrap();
        let reflected = MomentState {
            mean_x: end.mean_x,
            mean_p: -end.mean_p,
            variance: end.variance,
            variance_rate: -end.variance_rate,
        };
        let back = integrate(&reflected, &sys, 1e-3, 5.0, 5000).unwrap();
        let out = back.states.last().unwrap();
        assert!((out.mean_x - init.mean_x).abs() < 1e-6);
        assert!((out.mean_p + init.mean_p).abs() < 1e-6);
        assert!((out.variance - init.variance).abs() < 1e-6);
        assert!((out.variance_rate + init.variance_rate).abs() < 1e-6);
    }

    #[test]
    fn sampling_includes_endpoints_and_uniform_interior() {
        let sys = MomentSystemParams::new(HARMONIC, 7.75, 0.0);
        let init = MomentState {
            mean_x: 1.0,
            mean_p: 0.0,
            variance: 0.5,
            variance_rate: 0.0,
        };
        let series = integrate(&init, &sys, 1e-3, 1.0, 100).unwrap();
        assert_eq!(series.times[0], 0.0);
        assert!((series.times.last().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(series.times.len(), 11);
        for w in series.times.windows(2) {
            assert!((w[1] - w[0] - 0.1).abs() < 1e-12);
        }
        assert_eq!(series.times.len(), series.states.len());
        assert_eq!(series.times.len(), series.vp_diagnostic.len());
    }

    #[test]
    fn variance_collapse_is_reported_with_partial_series() {
        // The left-well tunneling scenario drives the closure to breakdown
        // shortly after the first barrier crossing.
        let e = 14.95;
        let v0 = packet::variance_for_energy(
            &STUDY,
            0.5,
            0.0,
            e,
            Branch::Large,
            EnergyFormula::Centered,
        )
        .unwrap();
        let sol = fixed_points::barrier_fixed_point(&STUDY, e, VstarBranch::Plus)
            .unwrap()
            .unwrap();
        let sys = MomentSystemParams::new(STUDY, e, sol.skewness);
        let init = MomentState {
            mean_x: 0.5,
            mean_p: 0.0,
            variance: v0,
            variance_rate: 0.0,
        };
        match integrate(&init, &sys, 1e-3, 100.0, 10) {
            Err(MomentError::VarianceCollapse { time, partial }) => {
                assert!(time > 3.0 && time < 4.5, "collapse at t = {time}");
                assert!(!partial.times.is_empty());
                assert!(*partial.times.last().unwrap() <= time);
                for s in &partial.states {
                    assert!(s.variance > 0.0);
                }
            }
            other => panic!("expected variance collapse, got {other:?}"),
        }
    }
}
