//! Plot-ready documents: corner lists, three-way comparisons and CSIT
//! quality sweeps. All rationals serialize as `"num/den"` strings.

use serde::{Deserialize, Serialize};

use crate::error::{DofError, Result};
use crate::rational::{self, Rational};
use crate::region::{
    corner_point, delayed_csit_region, no_csit_region, symmetric_boundary_point, theorem1_region, DofPoint,
    RegionDocument, SystemConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornersDocument {
    pub config: SystemConfig,
    pub vertices: Vec<DofPoint>,
    /// Closed-form positive corner; absent when the boundaries coincide.
    pub corner_point: Option<DofPoint>,
    /// Boundary point on the diagonal `d1 = d2`.
    pub symmetric_point: DofPoint,
}

pub fn corners(cfg: &SystemConfig) -> Result<CornersDocument> {
    let region = theorem1_region(cfg);
    let corner = match corner_point(cfg) {
        Ok(p) => Some(p),
        Err(DofError::DegenerateCorner) => None,
        Err(e) => return Err(e),
    };
    Ok(CornersDocument {
        config: cfg.clone(),
        vertices: region.vertices()?,
        corner_point: corner,
        symmetric_point: symmetric_boundary_point(&region)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedRegion {
    pub name: String,
    #[serde(flatten)]
    pub region: RegionDocument,
    #[serde(with = "rational::serde_str")]
    pub area: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareDocument {
    pub config: SystemConfig,
    pub regions: Vec<NamedRegion>,
    pub no_csit_subset_of_proposed: bool,
    pub proposed_subset_of_delayed: bool,
}

fn named(name: &str, region: &crate::region::DofRegion) -> Result<NamedRegion> {
    Ok(NamedRegion {
        name: name.to_string(),
        region: region.document()?,
        area: region.area()?,
    })
}

/// No-CSIT, proposed and delayed-CSIT regions with the subset verdicts.
pub fn compare(cfg: &SystemConfig) -> Result<CompareDocument> {
    let none = no_csit_region(cfg);
    let proposed = theorem1_region(cfg);
    let delayed = delayed_csit_region(cfg);
    Ok(CompareDocument {
        config: cfg.clone(),
        no_csit_subset_of_proposed: none.is_subset_of(&proposed)?,
        proposed_subset_of_delayed: proposed.is_subset_of(&delayed)?,
        regions: vec![
            named("no_csit", &none)?,
            named("proposed", &proposed)?,
            named("delayed_csit", &delayed)?,
        ],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualityPoint {
    #[serde(with = "rational::serde_str")]
    pub alpha1: Rational,
    #[serde(with = "rational::serde_str")]
    pub alpha2: Rational,
    pub vertices: Vec<DofPoint>,
    pub corner_point: Option<DofPoint>,
    pub symmetric_point: DofPoint,
    #[serde(with = "rational::serde_str")]
    pub area: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualitySweep {
    pub m: u32,
    pub n1: u32,
    pub n2: u32,
    pub points: Vec<QualityPoint>,
    /// Each region is a proper subset of the next one in the list.
    pub strictly_nested: bool,
}

fn quality_point(cfg: &SystemConfig) -> Result<QualityPoint> {
    let c = corners(cfg)?;
    Ok(QualityPoint {
        alpha1: cfg.alpha1.clone(),
        alpha2: cfg.alpha2.clone(),
        vertices: c.vertices,
        corner_point: c.corner_point,
        symmetric_point: c.symmetric_point,
        area: theorem1_region(cfg).area()?,
    })
}

/// Regions for arbitrary `(α1, α2)` pairs, in the given order.
pub fn sweep_pairs(m: u32, n1: u32, n2: u32, pairs: &[(Rational, Rational)]) -> Result<QualitySweep> {
    let cfgs: Vec<SystemConfig> = pairs
        .iter()
        .map(|(a1, a2)| SystemConfig::new(m, n1, n2, a1.clone(), a2.clone()))
        .collect::<Result<_>>()?;
    let mut strictly_nested = true;
    for w in cfgs.windows(2) {
        let (a, b) = (theorem1_region(&w[0]), theorem1_region(&w[1]));
        strictly_nested &= a.is_subset_of(&b)? && !b.is_subset_of(&a)?;
    }
    Ok(QualitySweep {
        m,
        n1,
        n2,
        points: cfgs.iter().map(quality_point).collect::<Result<_>>()?,
        strictly_nested,
    })
}

/// Symmetric sweep `α1 = α2 = α`.
pub fn sweep_alpha(m: u32, n1: u32, n2: u32, alphas: &[Rational]) -> Result<QualitySweep> {
    let pairs: Vec<(Rational, Rational)> = alphas.iter().map(|a| (a.clone(), a.clone())).collect();
    sweep_pairs(m, n1, n2, &pairs)
}

/// `{0, 1/2, 1}`, the three symmetric qualities compared in the region plot.
pub fn default_alphas() -> Vec<Rational> {
    vec![rational::int(0), rational::ratio(1, 2), rational::int(1)]
}

/// `α1 = 1/2` fixed, `α2` over `{0, 1/4, 1/2, 3/4, 1}`.
pub fn default_pairs() -> Vec<(Rational, Rational)> {
    (0..=4).map(|k| (rational::ratio(1, 2), rational::ratio(k, 4))).collect()
}
