//! Degrees-of-freedom analysis for the two-user `(M, N1, N2)` MIMO broadcast
//! channel with delayed imperfect-quality CSIT.
//!
//! * [`region`]: exact half-plane geometry of the DoF region and its
//!   no-CSIT / delayed-CSIT specializations.
//! * [`converse`]: the two genie-aided outer bounds.
//! * [`scheme`]: the three-phase achievability planner, its decoding
//!   conditions and the TDMA case.
//! * [`linksim`]: Monte Carlo validation by rank checks and rate slopes.
//! * [`report`]: plot-ready sweeps and comparison documents.

pub mod converse;
pub mod error;
pub mod linksim;
pub mod rational;
pub mod region;
pub mod report;
pub mod scheme;

pub use error::{DofError, Result};
pub use rational::Rational;
pub use region::{DofPoint, DofRegion, HalfPlane, SystemConfig};
