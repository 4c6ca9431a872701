//! Degree-capped reduction of binomial products and the strong edge-coloring
//! reducibility checks built on it.
//!
//! * [`polycore`]: sparse integer polynomials with per-variable exponent caps.
//! * [`schedule`]: greedy factor ordering and the batched reduction driver.
//! * [`configmodel`]: coloring configurations, the "sees" relation and caps.
//! * [`engine`]: witness search, targeted coefficient checks, built-in fixtures.
//! * [`oracle`]: brute-force list coloring, SDRs, exact strong chromatic index.
//! * [`plane`]: rotation-system faces, Euler charges, discharging, separating cycles.

pub mod configmodel;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod plane;
pub mod polycore;
pub mod rational;
pub mod schedule;

pub use error::{Error, Result};
pub use polycore::{naive_expand, BinomialTerm, CapVector, CappedPolynomial, ExponentVector};
