//! Tunneling detection: the verdict is driven entirely by the mean position
//! switching sides of the barrier abscissa during the simulated horizon.

use serde::Serialize;
use thiserror::Error;

/// Crossing analysis of a mean-position time series against the barrier
/// abscissa.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TunnelingReport {
    /// The dividing abscissa (the barrier top).
    pub barrier_x: f64,
    /// Whether the mean position ever switched sides.
    pub crossed: bool,
    /// Linearly interpolated time of the first switch, if any.
    pub first_crossing_time: Option<f64>,
    /// Number of sign changes between consecutive samples.
    pub n_crossings: usize,
    /// Fraction of samples on the left of the barrier.
    pub left_fraction: f64,
    /// Fraction of samples on the right (complements `left_fraction`).
    pub right_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DetectError {
    #[error("cannot analyze an empty series")]
    EmptySeries,
}

/// Scans `(t, mean_x)` samples for sign changes of `mean_x - barrier_x`.
///
/// A sample exactly on the barrier counts toward the left side and does not
/// by itself constitute a crossing; a crossing is strictly a sign change
/// between consecutive samples, timed by linear interpolation.
pub fn detect_tunneling(
    times: &[f64],
    mean_x: &[f64],
    barrier_x: f64,
) -> Result<TunnelingReport, DetectError> {
    assert_eq!(times.len(), mean_x.len(), "times and values must pair up");
    if times.is_empty() {
        return Err(DetectError::EmptySeries);
    }
    let side = |x: f64| x - barrier_x;
    let mut n_crossings = 0usize;
    let mut first_crossing_time = None;
    let mut left = 0usize;
    for (i, (&t, &x)) in times.iter().zip(mean_x).enumerate() {
        if side(x) <= 0.0 {
            left += 1;
        }
        if i == 0 {
            continue;
        }
        let prev = side(mean_x[i - 1]);
        let here = side(x);
        if prev == 0.0 || here == 0.0 {
            continue;
        }
        if prev.signum() != here.signum() {
            n_crossings += 1;
            if first_crossing_time.is_none() {
                let t_prev = times[i - 1];
                let frac = prev.abs() / (prev.abs() + here.abs());
                first_crossing_time = Some(t_prev + frac * (t - t_prev));
            }
        }
    }
    let total = times.len() as f64;
    let left_fraction = left as f64 / total;
    Ok(TunnelingReport {
        barrier_x,
        crossed: n_crossings > 0,
        first_crossing_time,
        n_crossings,
        left_fraction,
        right_fraction: 1.0 - left_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_series_never_crosses() {
        let times: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let xs = vec![1.0; 11];
        let r = detect_tunneling(&times, &xs, 3.69).unwrap();
        assert!(!r.crossed);
        assert_eq!(r.n_crossings, 0);
        assert_eq!(r.first_crossing_time, None);
        assert_eq!(r.left_fraction, 1.0);
        assert_eq!(r.right_fraction, 0.0);
    }

    #[test]
    fn linear_ramp_crossing_is_interpolated() {
        // Two samples, 0 at t=0 and 5 at t=1: the 3.69 level is crossed at
        // t = 3.69/5 = 0.738 by linear interpolation.
        let r = detect_tunneling(&[0.0, 1.0], &[0.0, 5.0], 3.69).unwrap();
        assert!(r.crossed);
        assert_eq!(r.n_crossings, 1);
        assert!((r.first_crossing_time.unwrap() - 0.738).abs() < 1e-12);
    }

    #[test]
    fn oscillation_counts_every_sign_change() {
        let times: Vec<f64> = (0..6).map(|i| i as f64).collect();
        let xs = vec![1.0, 5.0, 1.0, 5.0, 1.0, 5.0];
        let r = detect_tunneling(&times, &xs, 3.69).unwrap();
        assert!(r.crossed);
        assert_eq!(r.n_crossings, 5);
        assert!((r.left_fraction - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fractions_sum_to_one() {
        let times: Vec<f64> = (0..7).map(|i| i as f64).collect();
        let xs = vec![0.0, 1.0, 4.0, 5.0, 2.0, 3.69, 6.0];
        let r = detect_tunneling(&times, &xs, 3.69).unwrap();
        assert_eq!(r.left_fraction + r.right_fraction, 1.0);
        // The on-barrier sample counts left.
        assert!((r.left_fraction - 4.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn empty_series_is_an_error() {
        assert_eq!(
            detect_tunneling(&[], &[], 3.69),
            Err(DetectError::EmptySeries)
        );
    }
}
