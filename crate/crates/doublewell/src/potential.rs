//! The quartic potential family `phi(x) = (a/2) x^2 - (b/3) x^3 + (c/4) x^4`
//! and its landscape: stationary points, critical couplings, regime
//! classification, barrier height, and the energy offset between wells.
//!
//! With `a, b > 0` fixed, lowering the quartic coupling `c` deforms the
//! potential from a single well through an inflection into a double well
//! whose second minimum deepens until it drops below the origin. Two
//! critical couplings separate the regimes: `c0' = b^2/4a`, below which a
//! second stationary pair exists, and `c0 = 2b^2/9a`, at which the two
//! minima become degenerate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coefficients `(a, b, c)` of the quartic potential. Units follow
/// `hbar = m = 1`: `a` is energy/length^2, `b` energy/length^3,
/// `c` energy/length^4. All three must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Errors from potential construction and landscape analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    /// A coefficient is non-positive or non-finite.
    #[error("invalid potential coefficients: a={a}, b={b}, c={c} (all must be finite and > 0)")]
    InvalidParams { a: f64, b: f64, c: f64 },
}

/// Potential value and its first two derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialValues {
    /// `phi(x)`
    pub phi: f64,
    /// `phi'(x) = a x - b x^2 + c x^3`
    pub dphi: f64,
    /// `phi''(x) = a - 2 b x + 3 c x^2`
    pub d2phi: f64,
}

/// Curvature class of a stationary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StationaryKind {
    Minimum,
    Maximum,
    Inflection,
}

/// One stationary point of the potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryPoint {
    pub x: f64,
    pub kind: StationaryKind,
    /// `phi` at the point.
    pub phi: f64,
}

/// Shape regime of the quartic family, ordered by decreasing coupling `c`.
///
/// The ladder runs from a single well (strong quartic confinement) down to
/// an asymmetric double well whose second minimum lies below the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `c > c0'`: one minimum at the origin.
    #[serde(rename = "A single-well")]
    SingleWell,
    /// `c = c0'`: the stationary pair coalesces into an inflection at `b/2c`.
    #[serde(rename = "B inflection")]
    Inflection,
    /// `c0 < c < c0'`: a second minimum exists but sits above `phi = 0`.
    #[serde(rename = "C asymmetric-shallow-right")]
    ShallowRight,
    /// `c = c0`: the two minima are energy-degenerate.
    #[serde(rename = "D symmetric")]
    Symmetric,
    /// `c < c0`: the right-hand minimum is the global one, `phi(beta_plus) < 0`.
    #[serde(rename = "E asymmetric-deep-right")]
    DeepRight,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::SingleWell => "A single-well",
            Regime::Inflection => "B inflection",
            Regime::ShallowRight => "C asymmetric-shallow-right",
            Regime::Symmetric => "D symmetric",
            Regime::DeepRight => "E asymmetric-deep-right",
        };
        f.write_str(s)
    }
}

/// Full landscape characterization of a quartic potential.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialReport {
    /// Critical coupling `2b^2/9a` for degenerate minima.
    pub c0: f64,
    /// Critical coupling `b^2/4a` for coalescence of the stationary pair.
    pub c0_prime: f64,
    pub regime: Regime,
    /// All stationary points, ascending in `x`.
    pub stationary_points: Vec<StationaryPoint>,
    /// Barrier abscissa `(b - sqrt(b^2 - 4ac))/2c`, when real.
    pub beta_minus: Option<f64>,
    /// Second-well abscissa `(b + sqrt(b^2 - 4ac))/2c`, when real.
    pub beta_plus: Option<f64>,
    /// Lesser nontrivial zero of `phi`, when real.
    pub alpha_minus: Option<f64>,
    /// Greater nontrivial zero of `phi`, when real.
    pub alpha_plus: Option<f64>,
    /// `phi(beta_minus)`, when the barrier exists.
    pub barrier_height: Option<f64>,
    /// Well offset `phi(0) - phi(beta_plus) = -phi(beta_plus)`, when the
    /// second well exists. Positive exactly when the second well is deeper.
    pub delta: Option<f64>,
}

/// Relative tolerance for classifying `c` against the critical couplings.
const REGIME_REL_TOL: f64 = 1e-12;

/// Curvature below `1e-10 * a` in magnitude counts as an inflection.
const INFLECTION_REL_TOL: f64 = 1e-10;

impl PotentialParams {
    /// Validates `a, b, c > 0` and finite.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, PotentialError> {
        let p = PotentialParams { a, b, c };
        p.validate()?;
        Ok(p)
    }

    /// Checks the positivity invariant.
    pub fn validate(&self) -> Result<(), PotentialError> {
        let ok = [self.a, self.b, self.c]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if ok {
            Ok(())
        } else {
            Err(PotentialError::InvalidParams {
                a: self.a,
                b: self.b,
                c: self.c,
            })
        }
    }

    /// `phi(x)` alone.
    pub fn phi(&self, x: f64) -> f64 {
        self.evaluate(x).phi
    }

    /// Potential value, slope, and curvature at `x`.
    pub fn evaluate(&self, x: f64) -> PotentialValues {
        let PotentialParams { a, b, c } = *self;
        let x2 = x * x;
        PotentialValues {
            phi: 0.5 * a * x2 - b / 3.0 * x2 * x + 0.25 * c * x2 * x2,
            dphi: x * (a - b * x + c * x2),
            d2phi: a - 2.0 * b * x + 3.0 * c * x2,
        }
    }

    /// Critical coupling `c0 = 2b^2/9a` (degenerate minima).
    pub fn c0(&self) -> f64 {
        2.0 * self.b * self.b / (9.0 * self.a)
    }

    /// Critical coupling `c0' = b^2/4a` (stationary pair coalesces).
    pub fn c0_prime(&self) -> f64 {
        self.b * self.b / (4.0 * self.a)
    }

    /// The nonzero stationary abscissae `(beta_minus, beta_plus)`
    /// when `b^2 >= 4ac`; at the inflection coupling both equal `b/2c`.
    pub fn betas(&self) -> Option<(f64, f64)> {
        let disc = self.b * self.b - 4.0 * self.a * self.c;
        if disc < 0.0 {
            return None;
        }
        let root = disc.sqrt();
        Some(((self.b - root) / (2.0 * self.c), (self.b + root) / (2.0 * self.c)))
    }

    /// Classifies the curvature at a stationary point.
    fn kind_at(&self, x: f64) -> StationaryKind {
        let d2 = self.evaluate(x).d2phi;
        if d2.abs() < INFLECTION_REL_TOL * self.a {
            StationaryKind::Inflection
        } else if d2 > 0.0 {
            StationaryKind::Minimum
        } else {
            StationaryKind::Maximum
        }
    }

    /// Regime of the potential, classified by comparing `c` against the
    /// critical couplings with relative tolerance 1e-12 (exact-boundary
    /// inputs map to the boundary regimes).
    pub fn regime(&self) -> Regime {
        let c = self.c;
        let c0 = self.c0();
        let c0p = self.c0_prime();
        if (c - c0p).abs() <= REGIME_REL_TOL * c0p {
            Regime::Inflection
        } else if (c - c0).abs() <= REGIME_REL_TOL * c0 {
            Regime::Symmetric
        } else if c > c0p {
            Regime::SingleWell
        } else if c > c0 {
            Regime::ShallowRight
        } else {
            Regime::DeepRight
        }
    }

    /// Full landscape analysis.
    pub fn landscape(&self) -> Result<PotentialReport, PotentialError> {
        self.validate()?;
        let regime = self.regime();
        let betas = self.betas();

        let mut stationary = vec![StationaryPoint {
            x: 0.0,
            kind: self.kind_at(0.0),
            phi: 0.0,
        }];
        if let Some((bm, bp)) = betas {
            if regime == Regime::Inflection {
                // Coalesced pair: report the single inflection at b/2c.
                let x = self.b / (2.0 * self.c);
                stationary.push(StationaryPoint {
                    x,
                    kind: StationaryKind::Inflection,
                    phi: self.phi(x),
                });
            } else {
                for x in [bm, bp] {
                    stationary.push(StationaryPoint {
                        x,
                        kind: self.kind_at(x),
                        phi: self.phi(x),
                    });
                }
            }
        }

        // Nontrivial zeros: (c/4) x^2 - (b/3) x + a/2 = 0.
        let zdisc = self.b * self.b / 9.0 - self.a * self.c / 2.0;
        let (alpha_minus, alpha_plus) = if zdisc >= 0.0 {
            let mid = 2.0 * self.b / (3.0 * self.c);
            let half = 2.0 / self.c * zdisc.sqrt();
            (Some(mid - half), Some(mid + half))
        } else {
            (None, None)
        };

        let (beta_minus, beta_plus) = match (regime, betas) {
            (Regime::Inflection, _) | (_, None) => (None, None),
            (_, Some((bm, bp))) => (Some(bm), Some(bp)),
        };

        Ok(PotentialReport {
            c0: self.c0(),
            c0_prime: self.c0_prime(),
            regime,
            stationary_points: stationary,
            beta_minus,
            beta_plus,
            alpha_minus,
            alpha_plus,
            barrier_height: beta_minus.map(|x| self.phi(x)),
            delta: beta_plus.map(|x| -self.phi(x)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STUDY: PotentialParams = PotentialParams {
        a: 10.0,
        b: 4.0,
        c: 0.35,
    };

    #[test]
    fn origin_is_flat_with_curvature_a() {
        let v = STUDY.evaluate(0.0);
        assert_eq!(v.phi, 0.0);
        assert_eq!(v.dphi, 0.0);
        assert_eq!(v.d2phi, 10.0);
    }

    #[test]
    fn barrier_point_is_stationary_at_known_height() {
        let (bm, bp) = STUDY.betas().unwrap();
        let at_barrier = STUDY.evaluate(bm);
        assert!((bm - 3.69).abs() < 0.01, "beta_minus = {bm}");
        assert!((at_barrier.phi - 17.31).abs() < 0.01, "barrier = {}", at_barrier.phi);
        assert!(at_barrier.dphi.abs() < 1e-10);
        let at_well = STUDY.evaluate(bp);
        assert!((bp - 7.73).abs() < 0.01, "beta_plus = {bp}");
        assert!((at_well.phi + 4.68).abs() < 0.01, "phi(beta_plus) = {}", at_well.phi);
        assert!(at_well.dphi.abs() < 1e-10);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // Second differences amplify round-off by 1/h^2, so they get a
        // larger step than the first difference.
        let h1 = 1e-6;
        let h2 = 1e-4;
        for x in [-2.0, -0.5, 0.0, 0.3, 1.7, 3.69, 5.0, 7.73, 11.0] {
            let v = STUDY.evaluate(x);
            let dphi_fd = (STUDY.phi(x + h1) - STUDY.phi(x - h1)) / (2.0 * h1);
            let d2phi_fd =
                (STUDY.phi(x + h2) - 2.0 * STUDY.phi(x) + STUDY.phi(x - h2)) / (h2 * h2);
            assert!((v.dphi - dphi_fd).abs() < 1e-5 * (1.0 + v.dphi.abs()), "x={x}");
            assert!((v.d2phi - d2phi_fd).abs() < 1e-5 * (1.0 + v.d2phi.abs()), "x={x}");
        }
    }

    #[test]
    fn study_landscape_is_deep_right_regime() {
        let r = STUDY.landscape().unwrap();
        assert_eq!(r.regime, Regime::DeepRight);
        assert!((r.beta_minus.unwrap() - 3.69).abs() < 0.01);
        assert!((r.beta_plus.unwrap() - 7.73).abs() < 0.01);
        assert!((r.barrier_height.unwrap() - 17.31).abs() < 0.01);
        assert!((r.delta.unwrap() - 4.68).abs() < 0.01);
        assert!(r.delta.unwrap() > 0.0);
        assert!(r.beta_minus.unwrap() < r.beta_plus.unwrap());
        // Three stationary points: min at 0, max at the barrier, global min right.
        assert_eq!(r.stationary_points.len(), 3);
        assert_eq!(r.stationary_points[0].kind, StationaryKind::Minimum);
        assert_eq!(r.stationary_points[1].kind, StationaryKind::Maximum);
        assert_eq!(r.stationary_points[2].kind, StationaryKind::Minimum);
        for sp in &r.stationary_points {
            assert!(STUDY.evaluate(sp.x).dphi.abs() < 1e-10);
        }
    }

    #[test]
    fn inflection_coupling_gives_single_stationary_pairless_point() {
        // c0' = b^2/4a = 0.4 forces coalescence at b/2c = 5.
        let p = PotentialParams::new(10.0, 4.0, 0.4).unwrap();
        let r = p.landscape().unwrap();
        assert_eq!(r.regime, Regime::Inflection);
        assert!(r.beta_minus.is_none() && r.beta_plus.is_none());
        assert_eq!(r.stationary_points.len(), 2);
        let infl = &r.stationary_points[1];
        assert_eq!(infl.kind, StationaryKind::Inflection);
        assert!((infl.x - 5.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_coupling_gives_degenerate_minima() {
        // c0 = 2b^2/9a = 32/90.
        let p = PotentialParams::new(10.0, 4.0, 32.0 / 90.0).unwrap();
        let r = p.landscape().unwrap();
        assert_eq!(r.regime, Regime::Symmetric);
        assert!(r.delta.unwrap().abs() < 1e-9, "delta = {:?}", r.delta);
        assert!(p.phi(r.beta_plus.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn strong_coupling_gives_single_well() {
        let p = PotentialParams::new(10.0, 4.0, 0.5).unwrap();
        let r = p.landscape().unwrap();
        assert_eq!(r.regime, Regime::SingleWell);
        assert_eq!(r.stationary_points.len(), 1);
        assert_eq!(r.stationary_points[0].x, 0.0);
        assert_eq!(r.stationary_points[0].kind, StationaryKind::Minimum);
    }

    #[test]
    fn intermediate_coupling_gives_shallow_right_well() {
        // c0 < 0.38 < c0' for (a, b) = (10, 4).
        let p = PotentialParams::new(10.0, 4.0, 0.38).unwrap();
        let r = p.landscape().unwrap();
        assert_eq!(r.regime, Regime::ShallowRight);
        assert!(p.phi(r.beta_plus.unwrap()) > 0.0);
        assert!(r.delta.unwrap() < 0.0);
        // Shallow second well never reaches phi = 0, so no nontrivial zeros.
        assert!(r.alpha_minus.is_none());
    }

    #[test]
    fn nontrivial_zeros_bracket_the_deep_well() {
        let r = STUDY.landscape().unwrap();
        let (am, ap) = (r.alpha_minus.unwrap(), r.alpha_plus.unwrap());
        assert!(STUDY.phi(am).abs() < 1e-9, "phi(alpha_minus) = {}", STUDY.phi(am));
        assert!(STUDY.phi(ap).abs() < 1e-9, "phi(alpha_plus) = {}", STUDY.phi(ap));
        // The deep minimum lies between the two zero crossings.
        assert!(am < r.beta_plus.unwrap() && r.beta_plus.unwrap() < ap);
    }

    #[test]
    fn rejects_nonpositive_coefficients() {
        assert!(PotentialParams::new(0.0, 4.0, 0.35).is_err());
        assert!(PotentialParams::new(10.0, -4.0, 0.35).is_err());
        assert!(PotentialParams::new(10.0, 4.0, 0.0).is_err());
        assert!(PotentialParams::new(f64::NAN, 4.0, 0.35).is_err());
    }

    #[test]
    fn barrier_is_maximum_and_wells_are_minima_across_couplings() {
        for c in [0.2, 0.25, 0.3, 0.35, 0.39] {
            let p = PotentialParams::new(10.0, 4.0, c).unwrap();
            let (bm, bp) = p.betas().unwrap();
            assert!(p.evaluate(bm).d2phi < 0.0, "c={c}");
            assert!(p.evaluate(bp).d2phi > 0.0, "c={c}");
            assert_eq!(p.evaluate(0.0).d2phi, 10.0);
        }
    }
}
