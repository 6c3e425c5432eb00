//! Exact computation and finite verification of additive representation
//! functions of integer sequences.
//!
//! The crate works with finite truncations of integer sequences and provides:
//!
//! - the three representation-function profiles `R1`, `R2`, `R3` (ordered
//!   pairs, unordered with repetition, unordered without repetition),
//!   computed both by a definition-level enumeration oracle and by an exact
//!   characteristic-vector convolution that must agree bit for bit;
//! - the monotonicity-defect partial sums `S_k`, their positive parts, the
//!   sup statistics `T(N)`/`T⁺(N)`, and the `L¹` sum `Σ S⁺_n/n`;
//! - Laplace-weighted generating-function quantities `ψ(Y)` and `g(Y)` with
//!   certified truncation-error bounds, the dyadic cascade `H(Y;α)`, and
//!   exact polynomial-identity checks;
//! - Sidon-set generators and the complement-of-a-Sidon-set construction
//!   exhibiting `R1` monotone on a density-1 set, verified at finite scale;
//! - a report harness that evaluates the inequality chain on concrete
//!   sequences and emits deterministic JSON/CSV bundles.

pub mod analytic;
pub mod construct;
mod conv;
pub mod error;
pub mod harness;
pub mod repfuncs;
pub mod seq;
pub mod sums;

pub use analytic::{AnalyticValue, CoefficientSeries, EvalParams};
pub use construct::SarkozyInstance;
pub use error::Error;
pub use harness::{CheckKind, ExperimentConfig, Family, ReportBundle, Status, VerificationReport};
pub use repfuncs::RepProfile;
pub use seq::{Density, IntegerSequence};
pub use sums::SumProfile;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
