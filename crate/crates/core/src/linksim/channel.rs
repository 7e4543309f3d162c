use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::quantize::quantize_csit;
use super::{trial_rng, CMatrix};
use crate::region::SystemConfig;

/// Per-slot channels `H_i[t]` and their CSIT estimates `Ĥ_i[t]`.
///
/// The residual is defined as `H̃ = H − Ĥ`; estimates start at zero (no
/// feedback) until [`ChannelRealization::apply_feedback`] is called.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub h1: Vec<CMatrix>,
    pub h2: Vec<CMatrix>,
    pub h1_hat: Vec<CMatrix>,
    pub h2_hat: Vec<CMatrix>,
}

impl ChannelRealization {
    pub fn slots(&self) -> usize {
        self.h1.len()
    }

    /// Quantized feedback of every slot at SNR `rho`.
    pub fn apply_feedback(&mut self, alpha1: f64, alpha2: f64, rho: f64) {
        self.h1_hat = self.h1.iter().map(|h| quantize_csit(h, alpha1, rho)).collect();
        self.h2_hat = self.h2.iter().map(|h| quantize_csit(h, alpha2, rho)).collect();
    }

    pub fn residual1(&self, t: usize) -> CMatrix {
        &self.h1[t] - &self.h1_hat[t]
    }

    pub fn residual2(&self, t: usize) -> CMatrix {
        &self.h2[t] - &self.h2_hat[t]
    }
}

/// `rows × cols` matrix of i.i.d. CN(0, 1) entries.
pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(s * re, s * im)
    })
}

pub fn gen_channels_with<R: Rng + ?Sized>(cfg: &SystemConfig, total_slots: usize, rng: &mut R) -> ChannelRealization {
    let m = cfg.m as usize;
    let mut h1 = Vec::with_capacity(total_slots);
    let mut h2 = Vec::with_capacity(total_slots);
    for _ in 0..total_slots {
        h1.push(complex_gaussian(cfg.n1 as usize, m, rng));
        h2.push(complex_gaussian(cfg.n2 as usize, m, rng));
    }
    let h1_hat = h1.iter().map(|h| CMatrix::zeros(h.nrows(), m)).collect();
    let h2_hat = h2.iter().map(|h| CMatrix::zeros(h.nrows(), m)).collect();
    ChannelRealization { h1, h2, h1_hat, h2_hat }
}

/// Reproducible realization for `seed`.
pub fn gen_channels(cfg: &SystemConfig, total_slots: usize, seed: u64) -> ChannelRealization {
    gen_channels_with(cfg, total_slots, &mut trial_rng(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: u32, n1: u32, n2: u32) -> SystemConfig {
        SystemConfig::with_ratios(m, n1, n2, (1, 1), (1, 2)).unwrap()
    }

    #[test]
    fn deterministic_for_seed() {
        let a = gen_channels(&cfg(2, 1, 1), 5, 42);
        let b = gen_channels(&cfg(2, 1, 1), 5, 42);
        assert_eq!(a, b);
        assert_ne!(a, gen_channels(&cfg(2, 1, 1), 5, 43));
    }

    #[test]
    fn shapes() {
        let r = gen_channels(&cfg(3, 2, 1), 7, 0);
        assert_eq!(r.slots(), 7);
        assert!(r.h1.iter().all(|h| h.shape() == (2, 3)));
        assert!(r.h2.iter().all(|h| h.shape() == (1, 3)));
    }

    #[test]
    fn unit_power_entries() {
        let r = gen_channels(&cfg(4, 4, 4), 625, 9);
        let n: usize = r.h1.iter().map(|h| h.len()).sum();
        let p: f64 = r.h1.iter().flat_map(|h| h.iter()).map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        assert_eq!(n, 10_000);
        assert!((p - 1.0).abs() < 0.05, "mean power {p}");
    }

    #[test]
    fn decomposition_is_consistent() {
        let mut r = gen_channels(&cfg(2, 2, 2), 4, 3);
        r.apply_feedback(0.5, 1.0, 1e4);
        for t in 0..r.slots() {
            let back = &r.h1_hat[t] + r.residual1(t);
            assert!((&back - &r.h1[t]).norm() <= 1e-15 * r.h1[t].norm());
            let back = &r.h2_hat[t] + r.residual2(t);
            assert!((&back - &r.h2[t]).norm() <= 1e-15 * r.h2[t].norm());
        }
    }

    #[test]
    fn no_feedback_residual_is_the_channel() {
        let mut r = gen_channels(&cfg(2, 1, 1), 2, 5);
        r.apply_feedback(0.0, 0.0, 1e6);
        assert_eq!(r.residual1(0), r.h1[0]);
    }
}
