//! Rate-limited CSIT feedback.
//!
//! Each real dimension of a channel entry goes through a mid-rise uniform
//! quantizer with `2·⌈ρ^(α/2)⌉` levels over `±6σ` (σ² = 1/2 per dimension),
//! i.e. about `α·log₂ρ` bits per complex entry. The granular error is
//! `Δ²/12` per dimension, so the residual power is about `3·ρ^(−α)`.
//! `α = 0` sends nothing and the estimate is zero.

use num_complex::Complex64;

use super::CMatrix;

/// Clipping range of each real dimension.
pub const RANGE: f64 = 6.0 * std::f64::consts::FRAC_1_SQRT_2;

/// Quantizer levels per real dimension; zero means no feedback.
pub fn levels_per_dim(alpha: f64, rho: f64) -> usize {
    if alpha <= 0.0 {
        return 0;
    }
    2 * rho.powf(alpha / 2.0).ceil() as usize
}

/// Bits fed back per complex entry.
pub fn bits_per_entry(alpha: f64, rho: f64) -> f64 {
    match levels_per_dim(alpha, rho) {
        0 => 0.0,
        l => 2.0 * (l as f64).log2(),
    }
}

fn quantize_scalar(x: f64, levels: usize) -> f64 {
    let step = 2.0 * RANGE / levels as f64;
    let idx = ((x + RANGE) / step).floor().clamp(0.0, (levels - 1) as f64);
    -RANGE + (idx + 0.5) * step
}

/// Quantized estimate `Ĥ` of `h` at CSIT quality `alpha` and SNR `rho`.
pub fn quantize_csit(h: &CMatrix, alpha: f64, rho: f64) -> CMatrix {
    let levels = levels_per_dim(alpha, rho);
    if levels == 0 {
        return CMatrix::zeros(h.nrows(), h.ncols());
    }
    h.map(|z| Complex64::new(quantize_scalar(z.re, levels), quantize_scalar(z.im, levels)))
}
