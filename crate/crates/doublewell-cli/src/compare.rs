//! Cross-model comparison: resamples two `(t, mean_x, variance)` series onto
//! their common time window at the coarser cadence and reports RMS
//! differences plus whether the two tunneling verdicts agree.

use crate::detect::detect_tunneling;
use serde::Serialize;
use thiserror::Error;

/// A time series reduced to the observables both models share.
#[derive(Debug, Clone)]
pub struct CommonSeries {
    pub times: Vec<f64>,
    pub mean_x: Vec<f64>,
    pub variance: Vec<f64>,
}

/// RMS differences over the common window and verdict agreement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub rms_mean_x: f64,
    pub rms_variance: f64,
    /// Whether both series produce the same `crossed` flag against the same
    /// barrier abscissa (each judged on its full own series).
    pub verdict_agreement: bool,
    pub crossed_a: bool,
    pub crossed_b: bool,
    /// Number of resampled points the RMS values average over.
    pub n_common: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompareError {
    #[error("series time windows do not overlap: [{a_start}, {a_end}] vs [{b_start}, {b_end}]")]
    DisjointWindows {
        a_start: f64,
        a_end: f64,
        b_start: f64,
        b_end: f64,
    },
    #[error("cannot compare an empty series")]
    EmptySeries,
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> f64 {
    // Binary search for the bracketing segment; t is within range by
    // construction of the common window.
    match times.binary_search_by(|probe| probe.partial_cmp(&t).unwrap()) {
        Ok(i) => values[i],
        Err(i) => {
            let (t0, t1) = (times[i - 1], times[i]);
            let w = (t - t0) / (t1 - t0);
            values[i - 1] * (1.0 - w) + values[i] * w
        }
    }
}

fn rms(diff: impl Iterator<Item = f64>, n: usize) -> f64 {
    let sum: f64 = diff.map(|d| d * d).sum();
    (sum / n as f64).sqrt()
}

/// Compares two series over their overlapping time window.
///
/// The series with the coarser average cadence donates the sample instants
/// (restricted to the window); the other is linearly interpolated onto them.
/// Verdicts are evaluated on each full series against `barrier_x`.
pub fn compare(
    a: &CommonSeries,
    b: &CommonSeries,
    barrier_x: f64,
) -> Result<ComparisonReport, CompareError> {
    if a.times.is_empty() || b.times.is_empty() {
        return Err(CompareError::EmptySeries);
    }
    let (a_start, a_end) = (a.times[0], *a.times.last().unwrap());
    let (b_start, b_end) = (b.times[0], *b.times.last().unwrap());
    let lo = a_start.max(b_start);
    let hi = a_end.min(b_end);
    if lo > hi {
        return Err(CompareError::DisjointWindows {
            a_start,
            a_end,
            b_start,
            b_end,
        });
    }
    let cadence = |s: &CommonSeries| {
        if s.times.len() < 2 {
            f64::INFINITY
        } else {
            (s.times.last().unwrap() - s.times[0]) / (s.times.len() - 1) as f64
        }
    };
    let (coarse, fine) = if cadence(a) >= cadence(b) { (a, b) } else { (b, a) };
    let grid: Vec<f64> = coarse
        .times
        .iter()
        .copied()
        .filter(|&t| t >= lo && t <= hi)
        .collect();
    if grid.is_empty() {
        return Err(CompareError::DisjointWindows {
            a_start,
            a_end,
            b_start,
            b_end,
        });
    }
    let n = grid.len();
    let rms_mean_x = rms(
        grid.iter().map(|&t| {
            interpolate(&coarse.times, &coarse.mean_x, t)
                - interpolate(&fine.times, &fine.mean_x, t)
        }),
        n,
    );
    let rms_variance = rms(
        grid.iter().map(|&t| {
            interpolate(&coarse.times, &coarse.variance, t)
                - interpolate(&fine.times, &fine.variance, t)
        }),
        n,
    );
    let crossed_a = detect_tunneling(&a.times, &a.mean_x, barrier_x)
        .expect("nonempty by check above")
        .crossed;
    let crossed_b = detect_tunneling(&b.times, &b.mean_x, barrier_x)
        .expect("nonempty by check above")
        .crossed;
    Ok(ComparisonReport {
        rms_mean_x,
        rms_variance,
        verdict_agreement: crossed_a == crossed_b,
        crossed_a,
        crossed_b,
        n_common: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(times: Vec<f64>, mean_x: Vec<f64>, variance: Vec<f64>) -> CommonSeries {
        CommonSeries {
            times,
            mean_x,
            variance,
        }
    }

    #[test]
    fn identical_series_have_zero_rms_and_agree() {
        let t: Vec<f64> = (0..101).map(|i| i as f64 * 0.1).collect();
        let x: Vec<f64> = t.iter().map(|t| t.sin()).collect();
        let v: Vec<f64> = t.iter().map(|t| 0.5 + 0.1 * t).collect();
        let a = series(t.clone(), x.clone(), v.clone());
        let b = series(t, x, v);
        let r = compare(&a, &b, 3.69).unwrap();
        assert_eq!(r.rms_mean_x, 0.0);
        assert_eq!(r.rms_variance, 0.0);
        assert!(r.verdict_agreement);
    }

    #[test]
    fn constant_offset_shows_up_as_rms() {
        let t: Vec<f64> = (0..51).map(|i| i as f64 * 0.2).collect();
        let x: Vec<f64> = t.iter().map(|t| t.cos()).collect();
        let x_off: Vec<f64> = x.iter().map(|x| x + 0.1).collect();
        let v = vec![1.0; t.len()];
        let a = series(t.clone(), x, v.clone());
        let b = series(t, x_off, v);
        let r = compare(&a, &b, 3.69).unwrap();
        assert!((r.rms_mean_x - 0.1).abs() < 1e-12);
        assert_eq!(r.rms_variance, 0.0);
    }

    #[test]
    fn finer_series_is_resampled_onto_the_coarser_grid() {
        // Fine series samples a line at 0.01 cadence; coarse at 0.1. Linear
        // interpolation of a line is exact, so RMS must vanish.
        let tf: Vec<f64> = (0..1001).map(|i| i as f64 * 0.01).collect();
        let tc: Vec<f64> = (0..101).map(|i| i as f64 * 0.1).collect();
        let line = |t: f64| 2.0 * t - 1.0;
        let a = series(tc.clone(), tc.iter().map(|&t| line(t)).collect(), vec![1.0; 101]);
        let b = series(tf.clone(), tf.iter().map(|&t| line(t)).collect(), vec![1.0; 1001]);
        let r = compare(&a, &b, 100.0).unwrap();
        assert!(r.rms_mean_x < 1e-12);
        assert_eq!(r.n_common, 101);
    }

    #[test]
    fn partial_overlap_restricts_the_window() {
        let ta: Vec<f64> = (0..11).map(|i| i as f64).collect(); // [0, 10]
        let tb: Vec<f64> = (5..21).map(|i| i as f64).collect(); // [5, 20]
        let a = series(ta.clone(), ta.clone(), vec![0.0; 11]);
        let b = series(tb.clone(), tb.clone(), vec![0.0; 16]);
        let r = compare(&a, &b, 100.0).unwrap();
        assert_eq!(r.n_common, 6); // {5,...,10}
        assert!(r.rms_mean_x < 1e-12);
    }

    #[test]
    fn disjoint_windows_are_rejected() {
        let a = series(vec![0.0, 1.0], vec![0.0, 0.0], vec![1.0, 1.0]);
        let b = series(vec![2.0, 3.0], vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!(matches!(
            compare(&a, &b, 3.69),
            Err(CompareError::DisjointWindows { .. })
        ));
    }

    #[test]
    fn verdict_disagreement_is_reported() {
        let t: Vec<f64> = (0..3).map(|i| i as f64).collect();
        let a = series(t.clone(), vec![1.0, 1.2, 1.1], vec![1.0; 3]);
        let b = series(t, vec![1.0, 5.0, 1.0], vec![1.0; 3]);
        let r = compare(&a, &b, 3.69).unwrap();
        assert!(!r.verdict_agreement);
        assert!(!r.crossed_a);
        assert!(r.crossed_b);
    }
}
