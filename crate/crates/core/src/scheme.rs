//! Achievability: the three-phase scheme for `N2 < M` and TDMA for `M ≤ N2`.
//!
//! Phase I spends `τ1` slots on `min{N1+α2N2, M}·τ1` symbols for Rx1, phase
//! II spends `τ2` slots on `min{N2+α1N1, M}·τ2` symbols for Rx2, and phase
//! III spends `τ3` slots on order-2 combinations built from the quantized
//! CSIT of the first two phases. Each receiver needs its phase-III share to
//! cover the gap between symbols sent and antennas available:
//!
//! ```text
//! (min{N1+α2N2, M} − N1)·τ1 ≤ N1·τ3
//! (min{N2+α1N1, M} − N2)·τ2 ≤ N2·τ3
//! ```
//!
//! Plans are always stored scaled to integers so that the link simulator can
//! lay them out slot by slot.

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DofError, Result};
use crate::rational::{self, Rational};
use crate::region::{convex_hull, DofPoint, DofRegion, HalfPlane, SystemConfig};

/// Integer phase durations and symbol counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchedulePlan {
    pub tau1: u64,
    pub tau2: u64,
    pub tau3: u64,
    pub s1_count: u64,
    pub s2_count: u64,
    /// Factor applied to the rational plan to make all five quantities
    /// integral.
    pub integer_scale: u64,
}

/// Exact slack of both decoding conditions, `N_i·τ3 − (s_i − N_i·τ_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodingCheck {
    pub slack1: i64,
    pub slack2: i64,
}

impl DecodingCheck {
    pub fn holds(&self) -> bool {
        self.slack1 >= 0 && self.slack2 >= 0
    }
}

/// Sizes of the order-2 payload sent in phase III.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order2Payload {
    /// Extra equations Rx1 needs about its own symbols.
    pub k1_needed: u64,
    pub k2_needed: u64,
    /// `max(k1, k2)`; the shorter component is zero-padded.
    pub length: u64,
    /// Streams per phase-III slot, `⌈length / τ3⌉`.
    pub per_slot_streams: u64,
}

fn to_u64(v: &Rational, what: &str) -> Result<u64> {
    if !v.is_integer() || v.is_negative() {
        return Err(DofError::InfeasiblePlan(format!("{what} = {v} is not a nonnegative integer")));
    }
    v.to_integer()
        .to_u64()
        .ok_or_else(|| DofError::InfeasiblePlan(format!("{what} = {v} overflows")))
}

impl SchedulePlan {
    /// Scales rational durations and counts by their common denominator.
    fn from_rational(taus: [Rational; 3], counts: [Rational; 2]) -> Result<Self> {
        if taus.iter().chain(counts.iter()).any(|v| v.is_negative()) {
            return Err(DofError::InfeasiblePlan("negative duration or count".into()));
        }
        if taus.iter().all(|t| t.is_zero()) {
            return Err(DofError::InfeasiblePlan("all phase durations are zero".into()));
        }
        let scale = rational::common_denominator(taus.iter().chain(counts.iter()));
        let k = Rational::from_integer(scale.clone());
        let scaled: Vec<Rational> = taus.iter().chain(counts.iter()).map(|v| v * &k).collect();
        Ok(SchedulePlan {
            tau1: to_u64(&scaled[0], "tau1")?,
            tau2: to_u64(&scaled[1], "tau2")?,
            tau3: to_u64(&scaled[2], "tau3")?,
            s1_count: to_u64(&scaled[3], "s1_count")?,
            s2_count: to_u64(&scaled[4], "s2_count")?,
            integer_scale: scale
                .to_u64()
                .ok_or_else(|| DofError::InfeasiblePlan("integer scale overflows".into()))?,
        })
    }

    /// Three-phase plan with the given durations; symbol counts follow the
    /// per-phase transmit dimensions of `cfg`.
    pub fn from_durations(cfg: &SystemConfig, tau1: Rational, tau2: Rational, tau3: Rational) -> Result<Self> {
        let s1 = cfg.rx1_enhanced_dim() * &tau1;
        let s2 = cfg.rx2_enhanced_dim() * &tau2;
        Self::from_rational([tau1, tau2, tau3], [s1, s2])
    }

    /// TDMA plan: `min{N1, M}` streams per slot for Rx1 over `tau1` slots,
    /// `min{N2, M}` for Rx2 over `tau2`, no phase III.
    pub fn tdma(cfg: &SystemConfig, tau1: Rational, tau2: Rational) -> Result<Self> {
        let s1 = cfg.rx1_dim() * &tau1;
        let s2 = cfg.rx2_dim() * &tau2;
        Self::from_rational([tau1, tau2, rational::int(0)], [s1, s2])
    }

    pub fn total_slots(&self) -> u64 {
        self.tau1 + self.tau2 + self.tau3
    }
}

fn check_weight(weight: &Rational) -> Result<()> {
    if weight.is_negative() || *weight > rational::int(1) {
        return Err(DofError::InvalidWeight(rational::format(weight)));
    }
    Ok(())
}

fn require_three_phase(cfg: &SystemConfig) -> Result<()> {
    if cfg.m <= cfg.n2 {
        return Err(DofError::WrongCase(format!(
            "M = {} ≤ N2 = {}: the TDMA case applies",
            cfg.m, cfg.n2
        )));
    }
    Ok(())
}

/// Phase-III slots per phase-I (resp. phase-II) slot needed by Rx1 (resp.
/// Rx2), clamped at zero when the receiver already has enough antennas.
fn phase3_ratios(cfg: &SystemConfig) -> (Rational, Rational) {
    let n1 = rational::int(cfg.n1 as i64);
    let n2 = rational::int(cfg.n2 as i64);
    let zero = rational::int(0);
    let r1 = rational::max((cfg.rx1_enhanced_dim() - &n1) / &n1, zero.clone());
    let r2 = rational::max((cfg.rx2_enhanced_dim() - &n2) / &n2, zero);
    (r1, r2)
}

/// Plans the three-phase scheme with `τ1 : τ2 = weight : 1 − weight` and the
/// smallest `τ3` meeting both decoding conditions.
pub fn plan_schedule(cfg: &SystemConfig, weight: &Rational) -> Result<SchedulePlan> {
    require_three_phase(cfg)?;
    check_weight(weight)?;
    let tau1 = weight.clone();
    let tau2 = rational::int(1) - weight;
    let (r1, r2) = phase3_ratios(cfg);
    let tau3 = rational::max(&r1 * &tau1, &r2 * &tau2);
    SchedulePlan::from_durations(cfg, tau1, tau2, tau3)
}

/// TDMA time split for the `M ≤ N2` case (usable for any configuration).
pub fn plan_tdma(cfg: &SystemConfig, weight: &Rational) -> Result<SchedulePlan> {
    check_weight(weight)?;
    SchedulePlan::tdma(cfg, weight.clone(), rational::int(1) - weight)
}

/// Weight at which both decoding conditions are tight at once, i.e. the plan
/// that lands on the positive corner. `None` when no phase III is ever needed.
pub fn corner_weight(cfg: &SystemConfig) -> Option<Rational> {
    let (r1, r2) = phase3_ratios(cfg);
    let total = &r1 + &r2;
    if total.is_zero() {
        None
    } else {
        Some(r2 / total)
    }
}

pub fn check_decoding_conditions(plan: &SchedulePlan, cfg: &SystemConfig) -> DecodingCheck {
    let (n1, n2) = (cfg.n1 as i64, cfg.n2 as i64);
    let (t1, t2, t3) = (plan.tau1 as i64, plan.tau2 as i64, plan.tau3 as i64);
    DecodingCheck {
        slack1: n1 * t3 - (plan.s1_count as i64 - n1 * t1),
        slack2: n2 * t3 - (plan.s2_count as i64 - n2 * t2),
    }
}

/// `(s1/T, s2/T)` with `T = τ1 + τ2 + τ3`.
pub fn achieved_dof(plan: &SchedulePlan, cfg: &SystemConfig) -> Result<DofPoint> {
    let check = check_decoding_conditions(plan, cfg);
    if !check.holds() {
        return Err(DofError::InfeasiblePlan(format!(
            "decoding conditions violated (slacks {}, {})",
            check.slack1, check.slack2
        )));
    }
    let total = plan.total_slots() as i64;
    if total == 0 {
        return Err(DofError::InfeasiblePlan("zero-length plan".into()));
    }
    Ok(DofPoint::new(
        rational::ratio(plan.s1_count as i64, total),
        rational::ratio(plan.s2_count as i64, total),
    ))
}

pub fn order2_payload(plan: &SchedulePlan, cfg: &SystemConfig) -> Result<Order2Payload> {
    let check = check_decoding_conditions(plan, cfg);
    if !check.holds() {
        return Err(DofError::InfeasiblePlan(format!(
            "decoding conditions violated (slacks {}, {})",
            check.slack1, check.slack2
        )));
    }
    let k1 = plan.s1_count.saturating_sub(cfg.n1 as u64 * plan.tau1);
    let k2 = plan.s2_count.saturating_sub(cfg.n2 as u64 * plan.tau2);
    let length = k1.max(k2);
    let q = if length == 0 { 0 } else { length.div_ceil(plan.tau3) };
    if q > cfg.m as u64 {
        return Err(DofError::AntennaOverflow {
            needed: q as usize,
            available: cfg.m as usize,
        });
    }
    Ok(Order2Payload {
        k1_needed: k1,
        k2_needed: k2,
        length,
        per_slot_streams: q,
    })
}

/// Region the three-phase scheme achieves:
/// `d1/min{N1+α2N2, M} + d2/N2 ≤ 1` and `d1/N1 + d2/min{N2+α1N1, M} ≤ 1`.
pub fn scheme_region(cfg: &SystemConfig) -> Result<DofRegion> {
    require_three_phase(cfg)?;
    let n1 = rational::int(cfg.n1 as i64);
    let n2 = rational::int(cfg.n2 as i64);
    Ok(DofRegion::new(vec![
        HalfPlane::from_intercepts(&cfg.rx1_enhanced_dim(), &n2),
        HalfPlane::from_intercepts(&n1, &cfg.rx2_enhanced_dim()),
    ]))
}

/// Time sharing between `min{N1, M}` streams to Rx1 and `M` streams to Rx2.
pub fn tdma_region(cfg: &SystemConfig) -> Result<DofRegion> {
    if cfg.n2 < cfg.m {
        return Err(DofError::WrongCase(format!(
            "N2 = {} < M = {}: the three-phase scheme applies",
            cfg.n2, cfg.m
        )));
    }
    let m = rational::int(cfg.m as i64);
    Ok(DofRegion::new(vec![
        HalfPlane::from_intercepts(&m, &m),
        HalfPlane::from_intercepts(&cfg.rx1_dim(), &m),
    ]))
}

/// [`scheme_region`] or [`tdma_region`], whichever case `cfg` falls in.
pub fn achievable_region(cfg: &SystemConfig) -> DofRegion {
    match scheme_region(cfg) {
        Ok(r) => r,
        Err(_) => tdma_region(cfg).expect("cases are exhaustive"),
    }
}

/// One point of a weight sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPoint {
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub plan: SchedulePlan,
    pub dof: DofPoint,
}

/// The weights `0, 1/steps, …, 1`.
pub fn weight_grid(steps: u32) -> Vec<Rational> {
    (0..=steps as i64).map(|k| rational::ratio(k, steps as i64)).collect()
}

/// Plans every weight of `weights` plus the corner weight, sorted by weight.
pub fn sweep_boundary(cfg: &SystemConfig, weights: &[Rational]) -> Result<Vec<SweepPoint>> {
    let mut ws = weights.to_vec();
    if let Some(w) = corner_weight(cfg) {
        ws.push(w);
    }
    ws.sort();
    ws.dedup();
    ws.into_iter()
        .map(|weight| {
            let plan = plan_schedule(cfg, &weight)?;
            let dof = achieved_dof(&plan, cfg)?;
            Ok(SweepPoint { weight, plan, dof })
        })
        .collect()
}

/// Convex hull of the origin and the swept DoF points.
pub fn swept_hull(points: &[SweepPoint]) -> Vec<DofPoint> {
    let mut pts: Vec<DofPoint> = points.iter().map(|p| p.dof.clone()).collect();
    pts.push(DofPoint::origin());
    convex_hull(&pts)
}

/// Plan serialization: durations, counts, slacks, payload and DoF.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDocument {
    pub config: SystemConfig,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
    pub plan: SchedulePlan,
    pub slacks: DecodingCheck,
    pub decodable: bool,
    pub payload: Option<Order2Payload>,
    pub achieved_dof: Option<DofPoint>,
}

impl PlanDocument {
    pub fn new(cfg: &SystemConfig, weight: &Rational, plan: SchedulePlan) -> Self {
        let slacks = check_decoding_conditions(&plan, cfg);
        PlanDocument {
            config: cfg.clone(),
            weight: weight.clone(),
            payload: order2_payload(&plan, cfg).ok(),
            achieved_dof: achieved_dof(&plan, cfg).ok(),
            decodable: slacks.holds(),
            slacks,
            plan,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::region::theorem1_region;
    use proptest::prelude::*;

    fn cfg(m: u32, n1: u32, n2: u32, a1: (i64, i64), a2: (i64, i64)) -> SystemConfig {
        SystemConfig::with_ratios(m, n1, n2, a1, a2).unwrap()
    }

    fn plan(c: &SystemConfig, t: (i64, i64, i64)) -> SchedulePlan {
        SchedulePlan::from_durations(c, int(t.0), int(t.1), int(t.2)).unwrap()
    }

    fn taus(p: &SchedulePlan) -> (u64, u64, u64) {
        (p.tau1, p.tau2, p.tau3)
    }

    #[test]
    fn plan_schedule_examples() {
        let c = cfg(2, 1, 1, (1, 1), (1, 1));
        let p = plan_schedule(&c, &ratio(1, 2)).unwrap();
        assert_eq!(taus(&p), (1, 1, 1));
        assert_eq!((p.s1_count, p.s2_count), (2, 2));
        assert_eq!(achieved_dof(&p, &c).unwrap(), DofPoint::new(ratio(2, 3), ratio(2, 3)));

        let c = cfg(2, 1, 1, (1, 2), (1, 2));
        let p = plan_schedule(&c, &ratio(1, 2)).unwrap();
        assert_eq!(taus(&p), (2, 2, 1));
        assert_eq!((p.s1_count, p.s2_count), (3, 3));
        assert_eq!(p.integer_scale, 4);
        assert_eq!(achieved_dof(&p, &c).unwrap(), DofPoint::new(ratio(3, 5), ratio(3, 5)));

        let c = cfg(3, 2, 1, (1, 1), (1, 1));
        let p = plan_schedule(&c, &ratio(4, 5)).unwrap();
        assert_eq!(taus(&p), (4, 1, 2));
        assert_eq!((p.s1_count, p.s2_count), (12, 3));
        assert_eq!(achieved_dof(&p, &c).unwrap(), DofPoint::new(ratio(12, 7), ratio(3, 7)));
    }

    #[test]
    fn plan_schedule_errors() {
        let c = cfg(2, 1, 2, (1, 1), (1, 1));
        assert!(matches!(plan_schedule(&c, &ratio(1, 2)), Err(DofError::WrongCase(_))));
        let c = cfg(2, 1, 1, (1, 1), (1, 1));
        assert!(matches!(plan_schedule(&c, &ratio(3, 2)), Err(DofError::InvalidWeight(_))));
        assert!(matches!(plan_schedule(&c, &ratio(-1, 2)), Err(DofError::InvalidWeight(_))));
    }

    #[test]
    fn achieved_dof_examples() {
        let c = cfg(3, 2, 1, (1, 1), (1, 1));
        assert_eq!(achieved_dof(&plan(&c, (0, 1, 2)), &c).unwrap(), DofPoint::new(int(0), int(1)));
        // phase I alone overloads Rx1: (3 − 2)·1 > 2·0
        assert!(matches!(achieved_dof(&plan(&c, (1, 0, 0)), &c), Err(DofError::InfeasiblePlan(_))));
    }

    #[test]
    fn decoding_condition_examples() {
        let c = cfg(2, 1, 1, (1, 1), (1, 1));
        assert_eq!(
            check_decoding_conditions(&plan(&c, (1, 1, 1)), &c),
            DecodingCheck { slack1: 0, slack2: 0 }
        );
        let chk = check_decoding_conditions(&plan(&c, (1, 1, 0)), &c);
        assert_eq!(chk, DecodingCheck { slack1: -1, slack2: -1 });
        assert!(!chk.holds());
        let c = cfg(3, 2, 1, (1, 1), (1, 1));
        assert!(check_decoding_conditions(&plan(&c, (4, 1, 2)), &c).holds());
        assert_eq!(
            check_decoding_conditions(&plan(&c, (4, 1, 2)), &c),
            DecodingCheck { slack1: 0, slack2: 0 }
        );
    }

    #[test]
    fn from_durations_clears_fractional_counts() {
        let c = cfg(2, 1, 1, (1, 2), (1, 2));
        let p = SchedulePlan::from_durations(&c, int(1), int(1), ratio(1, 2)).unwrap();
        assert_eq!(taus(&p), (2, 2, 1));
        assert_eq!(p.integer_scale, 2);
    }

    #[test]
    fn scheme_region_examples() {
        for (n, d) in [(0, 1), (1, 3), (1, 1)] {
            let a = ratio(n, d);
            let c = cfg(2, 1, 1, (n, d), (n, d));
            let expected = vec![
                HalfPlane::from_intercepts(&(int(1) + &a), &int(1)),
                HalfPlane::from_intercepts(&int(1), &(int(1) + &a)),
            ];
            assert_eq!(scheme_region(&c).unwrap().constraints, expected);
        }
        let c = cfg(3, 2, 1, (1, 1), (1, 1));
        assert_eq!(
            scheme_region(&c).unwrap().constraints,
            vec![
                HalfPlane::from_intercepts(&int(3), &int(1)),
                HalfPlane::from_intercepts(&int(2), &int(3)),
            ]
        );
        // N1 > M: the second row is dominated by the first
        let c = cfg(3, 4, 1, (1, 1), (1, 1));
        let r = scheme_region(&c).unwrap();
        assert_eq!(
            r.constraints,
            vec![
                HalfPlane::from_intercepts(&int(3), &int(1)),
                HalfPlane::from_intercepts(&int(4), &int(3)),
            ]
        );
        assert!(r.set_equals(&theorem1_region(&c)).unwrap());
        assert!(matches!(scheme_region(&cfg(2, 2, 2, (1, 1), (1, 1))), Err(DofError::WrongCase(_))));
    }

    #[test]
    fn tdma_region_examples() {
        let c = cfg(2, 1, 2, (1, 2), (1, 2));
        let r = tdma_region(&c).unwrap();
        let v = r.vertices().unwrap();
        assert_eq!(v, vec![DofPoint::origin(), DofPoint::new(int(1), int(0)), DofPoint::new(int(0), int(2))]);
        assert!(r.set_equals(&theorem1_region(&c)).unwrap());

        let c = cfg(1, 1, 1, (1, 1), (1, 1));
        let simplex = DofRegion::new(vec![HalfPlane::from_intercepts(&int(1), &int(1))]);
        assert!(tdma_region(&c).unwrap().set_equals(&simplex).unwrap());

        let c = cfg(2, 2, 2, (0, 1), (1, 1));
        let r = tdma_region(&c).unwrap();
        assert_eq!(r.constraints[0], r.constraints[1]);
        assert_eq!(r.constraints[0], HalfPlane::from_intercepts(&int(2), &int(2)));

        assert!(matches!(tdma_region(&cfg(2, 1, 1, (1, 1), (1, 1))), Err(DofError::WrongCase(_))));
    }

    #[test]
    fn order2_payload_examples() {
        let c = cfg(2, 1, 1, (1, 1), (1, 1));
        assert_eq!(
            order2_payload(&plan(&c, (1, 1, 1)), &c).unwrap(),
            Order2Payload { k1_needed: 1, k2_needed: 1, length: 1, per_slot_streams: 1 }
        );
        assert!(matches!(order2_payload(&plan(&c, (1, 1, 0)), &c), Err(DofError::InfeasiblePlan(_))));
        let c = cfg(3, 2, 1, (1, 1), (1, 1));
        assert_eq!(
            order2_payload(&plan(&c, (4, 1, 2)), &c).unwrap(),
            Order2Payload { k1_needed: 4, k2_needed: 2, length: 4, per_slot_streams: 2 }
        );
    }

    #[test]
    fn order2_payload_reports_antenna_overflow() {
        // hand-built plan with a single phase-III slot for four equations
        let c = cfg(2, 4, 1, (1, 1), (1, 1));
        let p = SchedulePlan { tau1: 0, tau2: 4, tau3: 4, s1_count: 0, s2_count: 8, integer_scale: 1 };
        assert!(order2_payload(&p, &c).is_ok());
        let c = cfg(2, 4, 4, (1, 1), (1, 1));
        let p = SchedulePlan { tau1: 0, tau2: 1, tau3: 1, s1_count: 0, s2_count: 7, integer_scale: 1 };
        assert_eq!(
            order2_payload(&p, &c),
            Err(DofError::AntennaOverflow { needed: 3, available: 2 })
        );
    }

    #[test]
    fn corner_weight_hits_the_corner() {
        let c = cfg(3, 2, 1, (1, 1), (1, 1));
        assert_eq!(corner_weight(&c), Some(ratio(4, 5)));
        assert_eq!(corner_weight(&cfg(3, 2, 1, (0, 1), (0, 1))), None);
    }

    #[test]
    fn sweep_reconstructs_example_region() {
        let c = cfg(3, 2, 1, (1, 2), (1, 4));
        let pts = sweep_boundary(&c, &weight_grid(10)).unwrap();
        assert_eq!(swept_hull(&pts), theorem1_region(&c).vertices().unwrap());
    }

    #[test]
    fn plan_document_serializes_rationals_as_strings() {
        let c = cfg(2, 1, 1, (1, 2), (1, 2));
        let p = plan_schedule(&c, &ratio(1, 2)).unwrap();
        let doc = PlanDocument::new(&c, &ratio(1, 2), p);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains(r#""achieved_dof":["3/5","3/5"]"#));
        assert!(text.contains(r#""alpha1":"1/2""#));
        let back: PlanDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }

    fn arb_alpha() -> impl Strategy<Value = Rational> {
        (0i64..=12, 1i64..=12).prop_map(|(n, d)| ratio(n.min(d), d))
    }

    proptest! {
        #[test]
        fn symmetric_miso_reaches_closed_form_corner(a in arb_alpha()) {
            let c = SystemConfig::new(2, 1, 1, a.clone(), a.clone()).unwrap();
            let p = plan_schedule(&c, &ratio(1, 2)).unwrap();
            let v = (int(1) + &a) / (int(2) + &a);
            prop_assert_eq!(achieved_dof(&p, &c).unwrap(), DofPoint::new(v.clone(), v));
        }

        #[test]
        fn planned_points_lie_in_region(
            m in 2u32..=6, n1 in 1u32..=6, n2 in 1u32..=5,
            a1 in arb_alpha(), a2 in arb_alpha(), k in 0i64..=10,
        ) {
            prop_assume!(n2 < m);
            let c = SystemConfig::new(m, n1, n2, a1, a2).unwrap();
            let p = plan_schedule(&c, &ratio(k, 10)).unwrap();
            let region = theorem1_region(&c);
            let dof = achieved_dof(&p, &c).unwrap();
            prop_assert!(region.contains(&dof));
            let chk = check_decoding_conditions(&p, &c);
            // condition 1 tight ⇒ second region row tight, and vice versa
            if chk.slack1 == 0 {
                prop_assert!(region.constraints[1].is_tight(&dof));
            }
            if chk.slack2 == 0 {
                prop_assert!(region.constraints[0].is_tight(&dof));
            }
            prop_assert!(order2_payload(&p, &c).is_ok());
        }

        #[test]
        fn integer_scale_is_minimal(
            m in 2u32..=6, n1 in 1u32..=6, n2 in 1u32..=5,
            a1 in arb_alpha(), a2 in arb_alpha(), k in 0i64..=10,
        ) {
            prop_assume!(n2 < m);
            let c = SystemConfig::new(m, n1, n2, a1, a2).unwrap();
            let p = plan_schedule(&c, &ratio(k, 10)).unwrap();
            let all = [p.tau1, p.tau2, p.tau3, p.s1_count, p.s2_count];
            let g = all.iter().fold(0u64, |acc, &v| num_integer::gcd(acc, v));
            prop_assert_eq!(g, 1);
        }
    }
}
