//! Genie-aided outer bounds.
//!
//! Each bound hands one receiver the quantized share of the other
//! receiver's outputs, turning the channel into a physically degraded one
//! whose no-CSIT DoF region is known. Each bound is separately valid, so the
//! combined outer region is their intersection.

use crate::region::{DofRegion, HalfPlane, SystemConfig};

/// Rx1 sees `N1 + α2·N2` outputs:
/// `d1/min{N1+α2N2, M} + d2/min{N2, M} ≤ 1`.
pub fn outer_bound_rx1_enhanced(cfg: &SystemConfig) -> DofRegion {
    DofRegion::new(vec![HalfPlane::from_intercepts(
        &cfg.rx1_enhanced_dim(),
        &cfg.rx2_dim(),
    )])
}

/// Rx2 sees `N2 + α1·N1` outputs:
/// `d1/min{N1, M} + d2/min{N2+α1N1, M} ≤ 1`.
pub fn outer_bound_rx2_enhanced(cfg: &SystemConfig) -> DofRegion {
    DofRegion::new(vec![HalfPlane::from_intercepts(
        &cfg.rx1_dim(),
        &cfg.rx2_enhanced_dim(),
    )])
}

/// Both bounds at once.
pub fn converse_region(cfg: &SystemConfig) -> DofRegion {
    let mut constraints = outer_bound_rx1_enhanced(cfg).constraints;
    constraints.extend(outer_bound_rx2_enhanced(cfg).constraints);
    DofRegion::new(constraints)
}
