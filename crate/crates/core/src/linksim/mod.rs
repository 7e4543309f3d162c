//! Monte Carlo validation of the achievability scheme.
//!
//! Channels are i.i.d. Rayleigh, CSIT is a quantized copy of the true
//! channel whose resolution grows with `ρ^α`, and each plan is laid out slot
//! by slot. Two checks run on the same layout: a generic-rank check on each
//! receiver's stacked system (exact side-information cancellation), and a
//! log-det rate estimate whose slope against `log₂ρ` approximates the DoF.
//!
//! Trials are independent; trial `i` draws from its own ChaCha stream keyed
//! by `(seed, i)`, so results do not depend on how trials are scheduled.

pub mod channel;
pub mod phase;
pub mod quantize;
pub mod rank;
pub mod rates;
pub mod receiver;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{DofError, Result};

pub use channel::{gen_channels, ChannelRealization};
pub use phase::{block_diag, build_phase_matrices, PhaseMatrices, SlotLayout};
pub use quantize::quantize_csit;
pub use rank::{rank_check_trials, run_scheme_rank_check, RankOutcome, RankTally};
pub use rates::{estimate_rates, SimReport, SimSummary};

pub type CMatrix = DMatrix<Complex64>;

/// How a receiver removes the other user's part of an order-2 symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cancellation {
    /// Known exactly (equation counting).
    Exact,
    /// Rebuilt from the receiver's own noisy observation; the CSIT residual
    /// and the reused noise enter the noise covariance.
    #[default]
    Noisy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub snr_grid_db: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// σ²; transmit power is `P = ρ·σ²`.
    pub noise_variance: f64,
    pub cancellation: Cancellation,
}

impl SimParams {
    pub fn new(snr_grid_db: Vec<f64>, trials: usize, seed: u64) -> Result<Self> {
        let p = SimParams {
            snr_grid_db,
            trials,
            seed,
            noise_variance: 1.0,
            cancellation: Cancellation::Noisy,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.snr_grid_db.len() < 2 {
            return Err(DofError::InvalidSimParams("need at least two SNR points".into()));
        }
        if self.snr_grid_db.iter().any(|s| !s.is_finite()) {
            return Err(DofError::InvalidSimParams("SNR values must be finite".into()));
        }
        if self.trials == 0 {
            return Err(DofError::InvalidSimParams("trials must be at least 1".into()));
        }
        if !(self.noise_variance > 0.0 && self.noise_variance.is_finite()) {
            return Err(DofError::InvalidSimParams("noise variance must be positive".into()));
        }
        Ok(())
    }

    /// Transmit power at a grid point.
    pub fn power(&self, snr_db: f64) -> f64 {
        db_to_linear(snr_db) * self.noise_variance
    }
}

/// `min, min + step, …` up to and including `max` (within rounding).
pub fn snr_grid(min_db: f64, max_db: f64, step_db: f64) -> Result<Vec<f64>> {
    if !(step_db > 0.0) || max_db < min_db {
        return Err(DofError::InvalidSimParams(format!(
            "bad SNR grid {min_db}..{max_db} step {step_db}"
        )));
    }
    let n = ((max_db - min_db) / step_db + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| min_db + k as f64 * step_db).collect())
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Independent RNG stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
