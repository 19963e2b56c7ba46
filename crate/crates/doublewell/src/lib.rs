//! Dynamics of a Gaussian wave packet in an asymmetric quartic double well,
//! two ways:
//!
//! 1. **Moment dynamics** ([`moments`]): a reduced four-dimensional ODE
//!    system for the packet's mean position, mean momentum, position
//!    variance, and its rate, closed with the Gaussian kurtosis rule and a
//!    constant skewness. Fixed points of this system at the barrier top and
//!    their linear stability ([`fixed_points`]) yield energy thresholds for
//!    detectable tunneling.
//! 2. **A Crank-Nicolson reference solver** ([`tdse`]): unitary
//!    time-stepping of the one-dimensional Schrödinger equation on a large
//!    Dirichlet box, with observable extraction and norm/energy drift
//!    accounting.
//!
//! Supporting modules characterize the quartic potential landscape
//! ([`potential`]) and handle Gaussian packet bookkeeping — energy
//! expectation, energy-to-variance inversion, grid sampling ([`packet`],
//! [`grid`]).
//!
//! Everything is deterministic, single-threaded, pure-`f64` math with
//! `hbar = m = 1`.

pub mod fixed_points;
pub mod grid;
pub mod moments;
pub mod packet;
pub mod potential;
pub mod tdse;

/// Keeps the guide (`book/`) honest: every fenced Rust block in the
/// chapters below compiles and runs under `cargo test` as a doc-test.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/potential.md")]
    mod potential_landscape {}
    #[doc = include_str!("../../../book/src/packets.md")]
    mod gaussian_packets {}
    #[doc = include_str!("../../../book/src/moments.md")]
    mod moment_dynamics {}
    #[doc = include_str!("../../../book/src/fixed-points.md")]
    mod fixed_point_thresholds {}
    #[doc = include_str!("../../../book/src/waves.md")]
    mod wave_solver {}
}

pub use fixed_points::{
    barrier_fixed_point, eigen2, fixed_point_at, regime_of, skewness_at, solve_vstar,
    stability_matrix, thresholds, vstar_energy_coeffs, EnergyRegime, EnergyRegimeInterval,
    FixedPointError, FixedPointSolution, StabilityMatrix, ThresholdReport, VstarBranch,
    VstarCoeffs, VstarRoots,
};
pub use grid::{Grid, GridError, WaveField};
pub use moments::{
    integrate, momentum_variance, MomentError, MomentSeries, MomentState, MomentSystemParams,
};
pub use packet::{
    energy_with, packet_energy, sample_on_grid, variance_for_energy, Branch, EnergyFormula,
    GaussianSpec, PacketError,
};
pub use potential::{PotentialError, PotentialParams, PotentialReport, Regime};
pub use tdse::{
    crank_nicolson_step, evolve, evolve_with, measure, variance_for_discrete_energy,
    DriftSummary, EvolveOptions, Observables, ObservableSeries, Propagator, TdseError,
};
