//! Exact geometry of two-user DoF regions.
//!
//! A region is an intersection of half-planes `p·d1 + q·d2 ≤ r` with the
//! nonnegative quadrant. Every coordinate is a [`Rational`], so vertex
//! enumeration, containment and equality are decided exactly.
//!
//! Redundant and coincident constraints are allowed; no operation assumes a
//! minimal representation.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DofError, Result};
use crate::rational::{self, Rational};

/// Antenna counts and per-user CSIT qualities of an `(M, N1, N2)` channel.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Transmit antennas.
    pub m: u32,
    pub n1: u32,
    pub n2: u32,
    #[serde(with = "rational::serde_str")]
    pub alpha1: Rational,
    #[serde(with = "rational::serde_str")]
    pub alpha2: Rational,
}

impl SystemConfig {
    pub fn new(m: u32, n1: u32, n2: u32, alpha1: Rational, alpha2: Rational) -> Result<Self> {
        let cfg = SystemConfig { m, n1, n2, alpha1, alpha2 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Convenience constructor for tests and examples: `alpha = num/den`.
    pub fn with_ratios(m: u32, n1: u32, n2: u32, a1: (i64, i64), a2: (i64, i64)) -> Result<Self> {
        Self::new(m, n1, n2, rational::ratio(a1.0, a1.1), rational::ratio(a2.0, a2.1))
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n1 == 0 || self.n2 == 0 {
            return Err(DofError::InvalidConfig(format!(
                "antenna counts must be positive, got M={} N1={} N2={}",
                self.m, self.n1, self.n2
            )));
        }
        for a in [&self.alpha1, &self.alpha2] {
            if a.is_negative() || *a > rational::int(1) {
                return Err(DofError::InvalidAlpha(rational::format(a)));
            }
        }
        Ok(())
    }

    /// Same antennas, different CSIT qualities.
    pub fn with_alphas(&self, alpha1: Rational, alpha2: Rational) -> Result<Self> {
        Self::new(self.m, self.n1, self.n2, alpha1, alpha2)
    }

    fn m_q(&self) -> Rational {
        rational::int(self.m as i64)
    }

    /// `min{N1, M}`
    pub fn rx1_dim(&self) -> Rational {
        rational::int(self.n1.min(self.m) as i64)
    }

    /// `min{N2, M}`
    pub fn rx2_dim(&self) -> Rational {
        rational::int(self.n2.min(self.m) as i64)
    }

    /// `min{N1 + α2·N2, M}`: what Rx1 can resolve once the genie (or
    /// phase III) hands it the quantized share of Rx2's outputs.
    pub fn rx1_enhanced_dim(&self) -> Rational {
        let v = rational::int(self.n1 as i64) + &self.alpha2 * rational::int(self.n2 as i64);
        rational::min(v, self.m_q())
    }

    /// `min{N2 + α1·N1, M}`
    pub fn rx2_enhanced_dim(&self) -> Rational {
        let v = rational::int(self.n2 as i64) + &self.alpha1 * rational::int(self.n1 as i64);
        rational::min(v, self.m_q())
    }
}

impl fmt::Display for SystemConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}; α1={}, α2={})",
            self.m, self.n1, self.n2, self.alpha1, self.alpha2
        )
    }
}

/// `p·d1 + q·d2 ≤ r` with `p, q, r ≥ 0` and `(p, q) ≠ (0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHalfPlane")]
pub struct HalfPlane {
    #[serde(with = "rational::serde_str")]
    p: Rational,
    #[serde(with = "rational::serde_str")]
    q: Rational,
    #[serde(with = "rational::serde_str")]
    r: Rational,
}

#[derive(Deserialize)]
struct RawHalfPlane {
    #[serde(with = "rational::serde_str")]
    p: Rational,
    #[serde(with = "rational::serde_str")]
    q: Rational,
    #[serde(with = "rational::serde_str")]
    r: Rational,
}

impl TryFrom<RawHalfPlane> for HalfPlane {
    type Error = DofError;

    fn try_from(raw: RawHalfPlane) -> Result<Self> {
        HalfPlane::new(raw.p, raw.q, raw.r)
    }
}

impl HalfPlane {
    pub fn new(p: Rational, q: Rational, r: Rational) -> Result<Self> {
        if p.is_negative() || q.is_negative() || r.is_negative() {
            return Err(DofError::InvalidHalfPlane(format!(
                "coefficients must be nonnegative: {p}·d1 + {q}·d2 ≤ {r}"
            )));
        }
        if p.is_zero() && q.is_zero() {
            return Err(DofError::InvalidHalfPlane("p and q are both zero".into()));
        }
        Ok(HalfPlane { p, q, r })
    }

    /// `d1/x + d2/y ≤ 1` for positive intercepts `x`, `y`.
    pub fn from_intercepts(x: &Rational, y: &Rational) -> Self {
        assert!(x.is_positive() && y.is_positive(), "intercepts must be positive");
        HalfPlane {
            p: x.recip(),
            q: y.recip(),
            r: rational::int(1),
        }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn lhs(&self, pt: &DofPoint) -> Rational {
        &self.p * &pt.d1 + &self.q * &pt.d2
    }

    pub fn contains(&self, pt: &DofPoint) -> bool {
        self.lhs(pt) <= self.r
    }

    /// Holds with equality at `pt`.
    pub fn is_tight(&self, pt: &DofPoint) -> bool {
        self.lhs(pt) == self.r
    }

    /// Same line (and side) after normalization.
    pub fn same_line(&self, other: &HalfPlane) -> bool {
        &self.p * &other.q == &self.q * &other.p
            && &self.p * &other.r == &self.r * &other.p
            && &self.q * &other.r == &self.r * &other.q
    }

    /// Intersection point of the two boundary lines, if they cross once.
    pub fn intersect(&self, other: &HalfPlane) -> Option<DofPoint> {
        let det = &self.p * &other.q - &self.q * &other.p;
        if det.is_zero() {
            return None;
        }
        let d1 = (&self.r * &other.q - &self.q * &other.r) / &det;
        let d2 = (&self.p * &other.r - &self.r * &other.p) / &det;
        Some(DofPoint { d1, d2 })
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·d1 + {}·d2 ≤ {}", self.p, self.q, self.r)
    }
}

/// A DoF pair `(d1, d2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DofPoint {
    pub d1: Rational,
    pub d2: Rational,
}

impl DofPoint {
    pub fn new(d1: Rational, d2: Rational) -> Self {
        DofPoint { d1, d2 }
    }

    pub fn origin() -> Self {
        DofPoint::new(rational::int(0), rational::int(0))
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.d1.is_negative() && !self.d2.is_negative()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational::to_f64(&self.d1), rational::to_f64(&self.d2))
    }
}

impl fmt::Display for DofPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

impl Serialize for DofPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rational::format(&self.d1), rational::format(&self.d2)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for DofPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        let d1 = rational::parse(&a).map_err(serde::de::Error::custom)?;
        let d2 = rational::parse(&b).map_err(serde::de::Error::custom)?;
        Ok(DofPoint { d1, d2 })
    }
}

/// Intersection of half-planes with `d1 ≥ 0`, `d2 ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DofRegion {
    pub constraints: Vec<HalfPlane>,
}

impl DofRegion {
    pub fn new(constraints: Vec<HalfPlane>) -> Self {
        DofRegion { constraints }
    }

    /// Fails with [`DofError::UnboundedRegion`] when no constraint caps a
    /// coordinate direction.
    pub fn check_bounded(&self) -> Result<()> {
        if !self.constraints.iter().any(|h| h.p.is_positive()) {
            return Err(DofError::UnboundedRegion(1));
        }
        if !self.constraints.iter().any(|h| h.q.is_positive()) {
            return Err(DofError::UnboundedRegion(2));
        }
        Ok(())
    }

    pub fn contains(&self, pt: &DofPoint) -> bool {
        pt.is_nonnegative() && self.constraints.iter().all(|h| h.contains(pt))
    }

    /// Vertices in counterclockwise order starting at the origin, exact and
    /// duplicate-free.
    pub fn vertices(&self) -> Result<Vec<DofPoint>> {
        self.check_bounded()?;
        let mut candidates = vec![DofPoint::origin()];
        for (i, h) in self.constraints.iter().enumerate() {
            if h.p.is_positive() {
                candidates.push(DofPoint::new(&h.r / &h.p, rational::int(0)));
            }
            if h.q.is_positive() {
                candidates.push(DofPoint::new(rational::int(0), &h.r / &h.q));
            }
            for g in &self.constraints[i + 1..] {
                if let Some(pt) = h.intersect(g) {
                    candidates.push(pt);
                }
            }
        }
        candidates.retain(|pt| self.contains(pt));
        Ok(convex_hull(&candidates))
    }

    /// Vertex containment; valid because both regions are convex.
    pub fn is_subset_of(&self, other: &DofRegion) -> Result<bool> {
        other.check_bounded()?;
        Ok(self.vertices()?.iter().all(|v| other.contains(v)))
    }

    pub fn set_equals(&self, other: &DofRegion) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Shoelace area over the vertex list.
    pub fn area(&self) -> Result<Rational> {
        let v = self.vertices()?;
        let mut twice = rational::int(0);
        for (i, a) in v.iter().enumerate() {
            let b = &v[(i + 1) % v.len()];
            twice += &a.d1 * &b.d2 - &b.d1 * &a.d2;
        }
        Ok(twice / rational::int(2))
    }

    /// Largest `t` with `t·(u1, u2)` inside the region, for a nonnegative
    /// nonzero direction.
    pub fn ray_exit(&self, dir: &DofPoint) -> Result<Rational> {
        self.check_bounded()?;
        let mut best: Option<Rational> = None;
        for h in &self.constraints {
            let rate = h.lhs(dir);
            if rate.is_positive() {
                let t = &h.r / rate;
                best = Some(match best {
                    Some(b) => rational::min(b, t),
                    None => t,
                });
            }
        }
        best.ok_or(DofError::UnboundedRegion(0))
    }

    /// Serializable snapshot with constraints and vertices.
    pub fn document(&self) -> Result<RegionDocument> {
        Ok(RegionDocument {
            constraints: self.constraints.clone(),
            vertices: self.vertices()?,
        })
    }
}

/// Region JSON: `{"constraints":[{"p","q","r"}], "vertices":[[d1, d2], …]}`
/// with rationals as `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDocument {
    pub constraints: Vec<HalfPlane>,
    pub vertices: Vec<DofPoint>,
}

impl RegionDocument {
    pub fn region(&self) -> DofRegion {
        DofRegion::new(self.constraints.clone())
    }
}

fn cross(o: &DofPoint, a: &DofPoint, b: &DofPoint) -> Rational {
    (&a.d1 - &o.d1) * (&b.d2 - &o.d2) - (&a.d2 - &o.d2) * (&b.d1 - &o.d1)
}

/// Strict convex hull (collinear points dropped), counterclockwise from the
/// lexicographically smallest point.
pub fn convex_hull(points: &[DofPoint]) -> Vec<DofPoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<DofPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<DofPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// The two region constraints:
/// `d1/min{N1+α2N2, M} + d2/min{N2, M} ≤ 1` and
/// `d1/min{N1, M} + d2/min{N2+α1N1, M} ≤ 1`.
pub fn theorem1_region(cfg: &SystemConfig) -> DofRegion {
    DofRegion::new(vec![
        HalfPlane::from_intercepts(&cfg.rx1_enhanced_dim(), &cfg.rx2_dim()),
        HalfPlane::from_intercepts(&cfg.rx1_dim(), &cfg.rx2_enhanced_dim()),
    ])
}

pub fn no_csit_region(cfg: &SystemConfig) -> DofRegion {
    let zero = SystemConfig {
        alpha1: rational::int(0),
        alpha2: rational::int(0),
        ..cfg.clone()
    };
    theorem1_region(&zero)
}

pub fn delayed_csit_region(cfg: &SystemConfig) -> DofRegion {
    let one = SystemConfig {
        alpha1: rational::int(1),
        alpha2: rational::int(1),
        ..cfg.clone()
    };
    theorem1_region(&one)
}

/// The four quantities of the closed-form corner: `a = min{N1,M}`,
/// `b = min{N2+α1N1,M}`, `c = min{N1+α2N2,M}`, `d = min{N2,M}`.
pub fn corner_coefficients(cfg: &SystemConfig) -> [Rational; 4] {
    [
        cfg.rx1_dim(),
        cfg.rx2_enhanced_dim(),
        cfg.rx1_enhanced_dim(),
        cfg.rx2_dim(),
    ]
}

/// Crossing of the two boundary lines,
/// `(ac(d−b)/(ad−bc), bd(a−c)/(ad−bc))`.
///
/// The crossing always lies in the closed quadrant since `c ≥ a` and
/// `b ≥ d`; it sits on an axis when one constraint is redundant.
pub fn corner_point(cfg: &SystemConfig) -> Result<DofPoint> {
    let [a, b, c, d] = corner_coefficients(cfg);
    let det = &a * &d - &b * &c;
    if det.is_zero() {
        return Err(DofError::DegenerateCorner);
    }
    let d1 = &a * &c * (&d - &b) / &det;
    let d2 = &b * &d * (&a - &c) / &det;
    let zero = rational::int(0);
    Ok(DofPoint::new(rational::max(d1, zero.clone()), rational::max(d2, zero)))
}

/// Point where the region boundary crosses the diagonal `d1 = d2`, read off
/// the vertex polygon. This is the fallback for a degenerate corner.
pub fn symmetric_boundary_point(region: &DofRegion) -> Result<DofPoint> {
    let v = region.vertices()?;
    for (i, a) in v.iter().enumerate() {
        let b = &v[(i + 1) % v.len()];
        if *a == DofPoint::origin() || *b == DofPoint::origin() {
            continue;
        }
        let fa = &a.d1 - &a.d2;
        let fb = &b.d1 - &b.d2;
        if fa.is_zero() {
            return Ok(a.clone());
        }
        if fa.is_positive() != fb.is_positive() || fb.is_zero() {
            // a + t(b - a) with f = 0
            let t = &fa / (&fa - &fb);
            let d1 = &a.d1 + &t * (&b.d1 - &a.d1);
            return Ok(DofPoint::new(d1.clone(), d1));
        }
    }
    Ok(DofPoint::origin())
}
