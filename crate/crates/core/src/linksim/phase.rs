//! Slot layout and block-diagonal phase matrices.
//!
//! Phase I spreads `s1` symbols as evenly as possible over `τ1` slots, each
//! slot sending its symbols on the first antennas. The phase matrix
//! `H_i^{P-I} = BD{H_i[1][:, ..c_1], …, H_i[τ1][:, ..c_τ1]}` maps the whole
//! phase-I symbol vector to everything receiver `i` hears in that phase.
//!
//! Order-2 payload. In phase-I slot `j`, Rx1 hears `N1` equations in `c_j`
//! symbols, so it lacks `c_j − N1` of them; the first `c_j − N1` rows of
//! `Ĥ2[j]` supply them. Symmetrically for Rx2 in phase II. Entry `e` of the
//! zero-padded payload `η` goes out in phase-III slot `e mod τ3` on antenna
//! `e div τ3`. The interleaving keeps at most `⌈k_i/τ3⌉ ≤ N_i` of each
//! receiver's entries in any one slot, so each slot's entries stay
//! resolvable.

use std::ops::Range;

use super::{CMatrix, ChannelRealization};
use crate::error::{DofError, Result};
use crate::region::SystemConfig;
use crate::scheme::SchedulePlan;

/// Slot-level structure of a plan on a concrete configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotLayout {
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    /// Symbols sent in each phase-I slot.
    pub phase1: Vec<usize>,
    pub phase2: Vec<usize>,
    pub phase3_slots: usize,
    /// Rows of `Ĥ2^{P-I}` carried to Rx1, in payload order.
    pub rx1_payload_rows: Vec<usize>,
    /// Rows of `Ĥ1^{P-II}` carried to Rx2, in payload order.
    pub rx2_payload_rows: Vec<usize>,
}

fn split_even(total: u64, slots: u64, m: usize, phase: &str) -> Result<Vec<usize>> {
    if slots == 0 {
        if total > 0 {
            return Err(DofError::ShapeMismatch(format!("{phase}: {total} symbols in zero slots")));
        }
        return Ok(Vec::new());
    }
    let base = total / slots;
    let extra = total % slots;
    let counts: Vec<usize> = (0..slots).map(|j| (base + u64::from(j < extra)) as usize).collect();
    if counts[0] > m {
        return Err(DofError::ShapeMismatch(format!(
            "{phase}: {} symbols per slot exceed M = {m}",
            counts[0]
        )));
    }
    Ok(counts)
}

fn deficit_rows(counts: &[usize], own: usize, other: usize, phase: &str) -> Result<Vec<usize>> {
    let mut rows = Vec::new();
    for (j, &c) in counts.iter().enumerate() {
        let need = c.saturating_sub(own);
        if need > other {
            return Err(DofError::ShapeMismatch(format!(
                "{phase} slot {j}: {need} missing equations but the other receiver has {other} antennas"
            )));
        }
        rows.extend((0..need).map(|r| j * other + r));
    }
    Ok(rows)
}

impl SlotLayout {
    pub fn new(cfg: &SystemConfig, plan: &SchedulePlan) -> Result<Self> {
        let (n1, n2, m) = (cfg.n1 as usize, cfg.n2 as usize, cfg.m as usize);
        let phase1 = split_even(plan.s1_count, plan.tau1, m, "phase I")?;
        let phase2 = split_even(plan.s2_count, plan.tau2, m, "phase II")?;
        let rx1_payload_rows = deficit_rows(&phase1, n1, n2, "phase I")?;
        let rx2_payload_rows = deficit_rows(&phase2, n2, n1, "phase II")?;
        let layout = SlotLayout {
            n1,
            n2,
            m,
            phase1,
            phase2,
            phase3_slots: plan.tau3 as usize,
            rx1_payload_rows,
            rx2_payload_rows,
        };
        if layout.payload_len() > 0 {
            if layout.phase3_slots == 0 {
                return Err(DofError::InfeasiblePlan("order-2 payload but no phase-III slots".into()));
            }
            if layout.streams_per_slot() > m {
                return Err(DofError::AntennaOverflow {
                    needed: layout.streams_per_slot(),
                    available: m,
                });
            }
        }
        Ok(layout)
    }

    pub fn total_slots(&self) -> usize {
        self.phase1.len() + self.phase2.len() + self.phase3_slots
    }

    pub fn phase1_slots(&self) -> Range<usize> {
        0..self.phase1.len()
    }

    pub fn phase2_slots(&self) -> Range<usize> {
        self.phase1.len()..self.phase1.len() + self.phase2.len()
    }

    pub fn phase3_slot_range(&self) -> Range<usize> {
        let start = self.phase1.len() + self.phase2.len();
        start..start + self.phase3_slots
    }

    pub fn s1(&self) -> usize {
        self.phase1.iter().sum()
    }

    pub fn s2(&self) -> usize {
        self.phase2.iter().sum()
    }

    /// Length of `η` after zero-padding.
    pub fn payload_len(&self) -> usize {
        self.rx1_payload_rows.len().max(self.rx2_payload_rows.len())
    }

    pub fn streams_per_slot(&self) -> usize {
        match self.phase3_slots {
            0 => 0,
            t => self.payload_len().div_ceil(t),
        }
    }

    /// Phase-III slot (0-based within the phase) and antenna of entry `e`.
    pub fn placement(&self, e: usize) -> (usize, usize) {
        (e % self.phase3_slots, e / self.phase3_slots)
    }
}

/// `BD{A, B, …}`
pub fn block_diag(blocks: &[CMatrix]) -> CMatrix {
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

fn phase_stack(per_slot: &[CMatrix], slots: Range<usize>, counts: &[usize]) -> CMatrix {
    let blocks: Vec<CMatrix> = slots
        .zip(counts)
        .map(|(t, &c)| per_slot[t].columns(0, c).into_owned())
        .collect();
    block_diag(&blocks)
}

/// Block-diagonal phase-I / phase-II matrices, true and estimated.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatrices {
    /// `H_1^{P-I}`: `(N1·τ1) × s1`
    pub h1_p1: CMatrix,
    pub h2_p1: CMatrix,
    /// `H_1^{P-II}`: `(N1·τ2) × s2`
    pub h1_p2: CMatrix,
    pub h2_p2: CMatrix,
    pub h1_hat_p1: CMatrix,
    pub h2_hat_p1: CMatrix,
    pub h1_hat_p2: CMatrix,
    pub h2_hat_p2: CMatrix,
}

pub fn build_phase_matrices(realization: &ChannelRealization, layout: &SlotLayout) -> Result<PhaseMatrices> {
    if realization.slots() < layout.total_slots() {
        return Err(DofError::ShapeMismatch(format!(
            "plan needs {} slots, realization has {}",
            layout.total_slots(),
            realization.slots()
        )));
    }
    let shapes_ok = realization.h1.iter().all(|h| h.shape() == (layout.n1, layout.m))
        && realization.h2.iter().all(|h| h.shape() == (layout.n2, layout.m));
    if !shapes_ok {
        return Err(DofError::ShapeMismatch("channel matrices do not match (M, N1, N2)".into()));
    }
    let (p1, p2) = (layout.phase1_slots(), layout.phase2_slots());
    let (c1, c2) = (&layout.phase1, &layout.phase2);
    Ok(PhaseMatrices {
        h1_p1: phase_stack(&realization.h1, p1.clone(), c1),
        h2_p1: phase_stack(&realization.h2, p1.clone(), c1),
        h1_p2: phase_stack(&realization.h1, p2.clone(), c2),
        h2_p2: phase_stack(&realization.h2, p2.clone(), c2),
        h1_hat_p1: phase_stack(&realization.h1_hat, p1.clone(), c1),
        h2_hat_p1: phase_stack(&realization.h2_hat, p1, c1),
        h1_hat_p2: phase_stack(&realization.h1_hat, p2.clone(), c2),
        h2_hat_p2: phase_stack(&realization.h2_hat, p2, c2),
    })
}
