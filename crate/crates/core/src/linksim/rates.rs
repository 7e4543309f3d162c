//! Gaussian-signaling rates over an SNR sweep and their pre-log slopes.
//!
//! Every symbol has power `P/M`; phase-III entries are scaled by
//! `1/√(2M)` so a slot never exceeds `P` on average. For receiver `i` the
//! effective model is `y = F·s_i + w` with `F = [own-phase rows; phase-III
//! rows]` and
//!
//! ```text
//! Cov(w) = BD{σ²I, σ²I + γ²·G(σ²I + (P/M)·H̃H̃ᴴ)Gᴴ}
//! ```
//!
//! where `G` mixes the other user's payload entries into the phase-III rows
//! and `H̃` holds the CSIT residual rows behind those entries. The rate is
//! `log₂det(Cov(w) + (P/M)FFᴴ) − log₂det(Cov(w))`, divided by the plan
//! length.

use nalgebra::Cholesky;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::gen_channels_with;
use super::phase::{build_phase_matrices, SlotLayout};
use super::rank::{rank_check_realization, require_decodable, RankTally, RANK_CHECK_SNR_DB};
use super::receiver::{Receiver, ReceiverSystem};
use super::{db_to_linear, trial_rng, CMatrix, Cancellation, ChannelRealization, RankOutcome, SimParams};
use crate::error::{DofError, Result};
use crate::rational;
use crate::region::{DofPoint, SystemConfig};
use crate::scheme::{achieved_dof, SchedulePlan};

/// `log₂ det` of a Hermitian positive definite matrix.
pub fn log2_det_hpd(m: &CMatrix) -> Result<f64> {
    if m.is_empty() {
        return Ok(0.0);
    }
    let chol = Cholesky::new(m.clone()).ok_or(DofError::SingularCovariance)?;
    let l = chol.l_dirty();
    let mut ln = 0.0;
    for i in 0..m.nrows() {
        let d = l[(i, i)];
        // a negative pivot comes back as an imaginary square root
        if !(d.re > 0.0) || d.im.abs() > 1e-9 * d.re {
            return Err(DofError::SingularCovariance);
        }
        ln += d.re.ln();
    }
    Ok(2.0 * ln / std::f64::consts::LN_2)
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// First grid index used by the slope fit: the upper half, at least two
/// points.
pub fn fit_start(points: usize) -> usize {
    (points / 2).min(points.saturating_sub(2))
}

/// Slope of rate (bits) against `log₂ρ` over the upper half of the grid.
pub fn fit_slope(snr_db: &[f64], rates: &[f64]) -> f64 {
    let start = fit_start(snr_db.len());
    let xs: Vec<f64> = snr_db[start..].iter().map(|db| db / 10.0 * 10f64.log2()).collect();
    least_squares_slope(&xs, &rates[start..])
}

fn receiver_rate(sys: &ReceiverSystem, symbol_power: f64, noise: f64, m: usize, cancellation: Cancellation) -> Result<f64> {
    if sys.unknowns() == 0 {
        return Ok(0.0);
    }
    let gain = 1.0 / (2.0 * m as f64).sqrt();
    let f = sys.stacked(gain);
    let n = f.nrows();
    let mut cov = CMatrix::identity(n, n) * Complex64::new(noise, 0.0);
    let k_other = sys.phase3_other_mix.ncols();
    if cancellation == Cancellation::Noisy && k_other > 0 {
        let r = &sys.other_residual;
        let inner = CMatrix::identity(k_other, k_other) * Complex64::new(noise, 0.0)
            + r * r.adjoint() * Complex64::new(symbol_power, 0.0);
        let g = &sys.phase3_other_mix;
        let extra = g * inner * g.adjoint() * Complex64::new(gain * gain, 0.0);
        let own = sys.own_phase.nrows();
        let mut block = cov.view_mut((own, own), extra.shape());
        block += extra;
    }
    let total = &cov + &f * f.adjoint() * Complex64::new(symbol_power, 0.0);
    let rate = log2_det_hpd(&total)? - log2_det_hpd(&cov)?;
    Ok(rate.max(0.0))
}

/// Per-receiver rate (bits per slot) of one realization at one SNR. The
/// realization's feedback must already reflect that SNR.
pub fn realization_rates(
    layout: &SlotLayout,
    realization: &ChannelRealization,
    power: f64,
    params: &SimParams,
) -> Result<[f64; 2]> {
    let pm = build_phase_matrices(realization, layout)?;
    let symbol_power = power / layout.m as f64;
    let slots = layout.total_slots() as f64;
    let mut out = [0.0; 2];
    for (i, rx) in [Receiver::Rx1, Receiver::Rx2].into_iter().enumerate() {
        let sys = ReceiverSystem::build(rx, layout, &pm, realization);
        out[i] = receiver_rate(&sys, symbol_power, params.noise_variance, layout.m, params.cancellation)? / slots;
    }
    Ok(out)
}

struct TrialResult {
    rates: Vec<[f64; 2]>,
    rank: RankOutcome,
}

fn run_trial(cfg: &SystemConfig, layout: &SlotLayout, params: &SimParams, trial: u64) -> Result<TrialResult> {
    let mut rng = trial_rng(params.seed, trial);
    let mut r = gen_channels_with(cfg, layout.total_slots(), &mut rng);
    let (a1, a2) = (rational::to_f64(&cfg.alpha1), rational::to_f64(&cfg.alpha2));
    let mut rates = Vec::with_capacity(params.snr_grid_db.len());
    for &db in &params.snr_grid_db {
        r.apply_feedback(a1, a2, db_to_linear(db));
        rates.push(realization_rates(layout, &r, params.power(db), params)?);
    }
    r.apply_feedback(a1, a2, db_to_linear(RANK_CHECK_SNR_DB));
    let rank = rank_check_realization(layout, &r)?;
    Ok(TrialResult { rates, rank })
}

/// Per-trial rates, indexed `[trial][snr]`. Exposed for invariant checks.
pub fn trial_rates(cfg: &SystemConfig, plan: &SchedulePlan, params: &SimParams) -> Result<Vec<Vec<[f64; 2]>>> {
    params.validate()?;
    let layout = require_decodable(cfg, plan)?;
    (0..params.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(cfg, &layout, params, t).map(|r| r.rates))
        .collect()
}

/// Averaged rates, fitted slopes and rank tallies.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub config: SystemConfig,
    pub plan: SchedulePlan,
    pub params: SimParams,
    /// Mean bits per slot, `[snr][rx]`.
    pub rates: Vec<[f64; 2]>,
    pub slopes: [f64; 2],
    pub rank: RankTally,
    /// DoF the plan achieves by equation counting.
    pub expected_dof: DofPoint,
}

pub fn estimate_rates(cfg: &SystemConfig, plan: &SchedulePlan, params: &SimParams) -> Result<SimReport> {
    params.validate()?;
    let layout = require_decodable(cfg, plan)?;
    let expected_dof = achieved_dof(plan, cfg)?;
    let trials: Vec<TrialResult> = (0..params.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(cfg, &layout, params, t))
        .collect::<Result<_>>()?;

    let points = params.snr_grid_db.len();
    let mut sums = vec![[0.0f64; 2]; points];
    let mut rank = RankTally::default();
    for t in &trials {
        for (acc, r) in sums.iter_mut().zip(&t.rates) {
            acc[0] += r[0];
            acc[1] += r[1];
        }
        rank.record(&t.rank);
    }
    let n = params.trials as f64;
    let rates: Vec<[f64; 2]> = sums.iter().map(|s| [s[0] / n, s[1] / n]).collect();
    let per_rx = |i: usize| rates.iter().map(|r| r[i]).collect::<Vec<f64>>();
    let slopes = [
        fit_slope(&params.snr_grid_db, &per_rx(0)),
        fit_slope(&params.snr_grid_db, &per_rx(1)),
    ];
    Ok(SimReport {
        config: cfg.clone(),
        plan: plan.clone(),
        params: params.clone(),
        rates,
        slopes,
        rank,
        expected_dof,
    })
}

/// One CSV row: `snr_db,rx,rate_bits_per_slot,trials`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub snr_db: f64,
    pub rx: u8,
    pub rate_bits_per_slot: f64,
    pub trials: usize,
}

pub const CSV_HEADER: &str = "snr_db,rx,rate_bits_per_slot,trials";

impl SimReport {
    pub fn rows(&self) -> Vec<RateRow> {
        let mut rows = Vec::with_capacity(2 * self.rates.len());
        for (db, r) in self.params.snr_grid_db.iter().zip(&self.rates) {
            for rx in 0..2 {
                rows.push(RateRow {
                    snr_db: *db,
                    rx: rx as u8 + 1,
                    rate_bits_per_slot: r[rx],
                    trials: self.params.trials,
                });
            }
        }
        rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in self.rows() {
            out.push_str(&format!("{},{},{},{}\n", row.snr_db, row.rx, row.rate_bits_per_slot, row.trials));
        }
        out
    }

    pub fn summary(&self) -> SimSummary {
        let start = fit_start(self.params.snr_grid_db.len());
        SimSummary {
            config: self.config.clone(),
            plan: self.plan.clone(),
            seed: self.params.seed,
            trials: self.params.trials,
            noise_variance: self.params.noise_variance,
            cancellation: self.params.cancellation,
            snr_db: self.params.snr_grid_db.clone(),
            fit_snr_db: [self.params.snr_grid_db[start], *self.params.snr_grid_db.last().unwrap()],
            slope_rx1: self.slopes[0],
            slope_rx2: self.slopes[1],
            expected_dof: self.expected_dof.clone(),
            expected_dof_f64: [
                rational::to_f64(&self.expected_dof.d1),
                rational::to_f64(&self.expected_dof.d2),
            ],
            rank: self.rank,
        }
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<RateRow>> {
    let bad = |line: &str| DofError::InvalidSimParams(format!("malformed CSV line {line:?}"));
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(DofError::InvalidSimParams("missing CSV header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(bad(line));
            }
            Ok(RateRow {
                snr_db: f[0].parse().map_err(|_| bad(line))?,
                rx: f[1].parse().map_err(|_| bad(line))?,
                rate_bits_per_slot: f[2].parse().map_err(|_| bad(line))?,
                trials: f[3].parse().map_err(|_| bad(line))?,
            })
        })
        .collect()
}

/// JSON summary of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimSummary {
    pub config: SystemConfig,
    pub plan: SchedulePlan,
    pub seed: u64,
    pub trials: usize,
    pub noise_variance: f64,
    pub cancellation: Cancellation,
    pub snr_db: Vec<f64>,
    /// SNR span used by the slope fit.
    pub fit_snr_db: [f64; 2],
    pub slope_rx1: f64,
    pub slope_rx2: f64,
    pub expected_dof: DofPoint,
    pub expected_dof_f64: [f64; 2],
    pub rank: RankTally,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linksim::snr_grid;
    use crate::rational::{int, ratio};
    use crate::scheme::{plan_schedule, plan_tdma};

    fn cfg(m: u32, n1: u32, n2: u32, a1: (i64, i64), a2: (i64, i64)) -> SystemConfig {
        SystemConfig::with_ratios(m, n1, n2, a1, a2).unwrap()
    }

    fn params(trials: usize) -> SimParams {
        SimParams::new(snr_grid(30.0, 60.0, 5.0).unwrap(), trials, 2024).unwrap()
    }

    #[test]
    fn slope_of_a_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        assert!((least_squares_slope(&xs, &ys) - 2.0).abs() < 1e-12);
        assert_eq!(fit_start(7), 3);
        assert_eq!(fit_start(2), 0);
        assert_eq!(fit_start(3), 1);
    }

    #[test]
    fn log_det_of_diagonal() {
        let mut m = CMatrix::identity(3, 3);
        m[(0, 0)] = Complex64::new(4.0, 0.0);
        m[(2, 2)] = Complex64::new(8.0, 0.0);
        assert!((log2_det_hpd(&m).unwrap() - 5.0).abs() < 1e-12);
        m[(1, 1)] = Complex64::new(-1.0, 0.0);
        assert_eq!(log2_det_hpd(&m), Err(DofError::SingularCovariance));
    }

    #[test]
    fn point_to_point_slope_is_one() {
        let c = cfg(1, 1, 1, (0, 1), (0, 1));
        let p = plan_tdma(&c, &int(1)).unwrap();
        let rep = estimate_rates(&c, &p, &params(200)).unwrap();
        assert!((rep.slopes[0] - 1.0).abs() < 0.05, "slope {}", rep.slopes[0]);
        assert_eq!(rep.slopes[1], 0.0);
    }

    #[test]
    fn single_trial_point_to_point_matches_closed_form() {
        let c = cfg(1, 1, 1, (0, 1), (0, 1));
        let p = plan_tdma(&c, &int(1)).unwrap();
        let layout = SlotLayout::new(&c, &p).unwrap();
        let r = super::super::gen_channels(&c, 1, 8);
        let prm = params(1);
        let got = realization_rates(&layout, &r, 1000.0, &prm).unwrap();
        let expected = (1.0 + 1000.0 * r.h1[0][(0, 0)].norm_sqr()).log2();
        assert!((got[0] - expected).abs() < 1e-9);
    }

    #[test]
    fn rates_are_nonnegative_and_increase() {
        let c = cfg(2, 1, 1, (1, 1), (1, 1));
        let p = plan_schedule(&c, &ratio(1, 2)).unwrap();
        let rep = estimate_rates(&c, &p, &params(50)).unwrap();
        for w in rep.rates.windows(2) {
            for rx in 0..2 {
                assert!(w[0][rx] >= 0.0);
                assert!(w[1][rx] >= w[0][rx]);
            }
        }
        assert_eq!(rep.rank.both_pass, 50);
    }

    #[test]
    fn exact_cancellation_never_hurts() {
        let c = cfg(2, 1, 1, (1, 2), (1, 2));
        let p = plan_schedule(&c, &ratio(1, 2)).unwrap();
        let mut exact = params(20);
        exact.cancellation = Cancellation::Exact;
        let noisy = estimate_rates(&c, &p, &params(20)).unwrap();
        let ideal = estimate_rates(&c, &p, &exact).unwrap();
        for (n, e) in noisy.rates.iter().zip(&ideal.rates) {
            assert!(e[0] >= n[0] - 1e-9 && e[1] >= n[1] - 1e-9);
        }
    }

    #[test]
    fn report_is_deterministic_and_csv_round_trips() {
        let c = cfg(3, 2, 1, (1, 1), (1, 1));
        let p = plan_schedule(&c, &ratio(4, 5)).unwrap();
        let mut prm = params(8);
        prm.snr_grid_db = vec![20.0, 40.0];
        let a = estimate_rates(&c, &p, &prm).unwrap();
        let b = estimate_rates(&c, &p, &prm).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        let sa = serde_json::to_string(&a.summary()).unwrap();
        assert_eq!(sa, serde_json::to_string(&b.summary()).unwrap());
        let rows = parse_csv(&a.to_csv()).unwrap();
        assert_eq!(rows, a.rows());
        let back: SimSummary = serde_json::from_str(&sa).unwrap();
        assert_eq!(back, a.summary());
    }

    #[test]
    fn infeasible_plan_is_rejected() {
        let c = cfg(2, 1, 1, (1, 1), (1, 1));
        let p = SchedulePlan::from_durations(&c, int(1), int(1), int(0)).unwrap();
        assert!(matches!(estimate_rates(&c, &p, &params(1)), Err(DofError::InfeasiblePlan(_))));
    }
}
