use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::gen_channels_with;
use super::phase::{build_phase_matrices, SlotLayout};
use super::receiver::{Receiver, ReceiverSystem};
use super::{db_to_linear, trial_rng, CMatrix, ChannelRealization};
use crate::error::{DofError, Result};
use crate::rational;
use crate::region::SystemConfig;
use crate::scheme::{check_decoding_conditions, SchedulePlan};

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// SNR at which CSIT is quantized for rank checks.
pub const RANK_CHECK_SNR_DB: f64 = 60.0;

pub fn numerical_rank(m: &CMatrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * top).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOutcome {
    pub rx1_rank: usize,
    pub rx1_unknowns: usize,
    pub rx2_rank: usize,
    pub rx2_unknowns: usize,
}

impl RankOutcome {
    pub fn rx1_pass(&self) -> bool {
        self.rx1_rank == self.rx1_unknowns
    }

    pub fn rx2_pass(&self) -> bool {
        self.rx2_rank == self.rx2_unknowns
    }

    pub fn pass(&self) -> bool {
        self.rx1_pass() && self.rx2_pass()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RankTally {
    pub trials: usize,
    pub rx1_pass: usize,
    pub rx2_pass: usize,
    pub both_pass: usize,
}

impl RankTally {
    pub fn record(&mut self, o: &RankOutcome) {
        self.trials += 1;
        self.rx1_pass += usize::from(o.rx1_pass());
        self.rx2_pass += usize::from(o.rx2_pass());
        self.both_pass += usize::from(o.pass());
    }

    pub fn pass_rate(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.both_pass as f64 / self.trials as f64
    }
}

pub(crate) fn require_decodable(cfg: &SystemConfig, plan: &SchedulePlan) -> Result<SlotLayout> {
    let chk = check_decoding_conditions(plan, cfg);
    if !chk.holds() {
        return Err(DofError::InfeasiblePlan(format!(
            "decoding conditions violated (slacks {}, {})",
            chk.slack1, chk.slack2
        )));
    }
    SlotLayout::new(cfg, plan)
}

/// Rank check on a realization whose feedback has already been applied.
pub fn rank_check_realization(layout: &SlotLayout, realization: &ChannelRealization) -> Result<RankOutcome> {
    let pm = build_phase_matrices(realization, layout)?;
    let rx1 = ReceiverSystem::build(Receiver::Rx1, layout, &pm, realization);
    let rx2 = ReceiverSystem::build(Receiver::Rx2, layout, &pm, realization);
    Ok(RankOutcome {
        rx1_rank: numerical_rank(&rx1.stacked(1.0)),
        rx1_unknowns: rx1.unknowns(),
        rx2_rank: numerical_rank(&rx2.stacked(1.0)),
        rx2_unknowns: rx2.unknowns(),
    })
}

fn rank_trial(cfg: &SystemConfig, layout: &SlotLayout, seed: u64, trial: u64) -> Result<RankOutcome> {
    let mut rng = trial_rng(seed, trial);
    let mut r = gen_channels_with(cfg, layout.total_slots(), &mut rng);
    r.apply_feedback(
        rational::to_f64(&cfg.alpha1),
        rational::to_f64(&cfg.alpha2),
        db_to_linear(RANK_CHECK_SNR_DB),
    );
    rank_check_realization(layout, &r)
}

/// Draws one realization and checks that each receiver's stacked system
/// (own-phase rows plus cleaned phase-III rows) has full column rank.
pub fn run_scheme_rank_check(cfg: &SystemConfig, plan: &SchedulePlan, seed: u64) -> Result<RankOutcome> {
    let layout = require_decodable(cfg, plan)?;
    rank_trial(cfg, &layout, seed, 0)
}

/// Tally over `trials` independent realizations.
pub fn rank_check_trials(cfg: &SystemConfig, plan: &SchedulePlan, trials: usize, seed: u64) -> Result<RankTally> {
    let layout = require_decodable(cfg, plan)?;
    let outcomes: Vec<RankOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|t| rank_trial(cfg, &layout, seed, t))
        .collect::<Result<_>>()?;
    let mut tally = RankTally::default();
    outcomes.iter().for_each(|o| tally.record(o));
    Ok(tally)
}
