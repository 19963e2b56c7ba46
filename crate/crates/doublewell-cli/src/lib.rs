//! Scenario harness around the `doublewell` library: JSON-configured runs
//! of the moment model and the wave-equation reference solver, tunneling
//! verdicts from mean-position barrier crossings, threshold scans, and
//! cross-model comparison reports. See the `doublewell` binary for the
//! command-line surface.

pub mod cli;
pub mod compare;
pub mod config;
pub mod detect;
pub mod format;
pub mod runner;
pub mod scan;
pub mod svg;

/// Keeps the guide's harness chapter honest: its fenced Rust blocks run
/// under `cargo test` as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/cli.md")]
    mod harness_chapter {}
}
