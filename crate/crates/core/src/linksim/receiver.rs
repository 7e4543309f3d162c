//! Per-receiver stacked linear system in the receiver's own symbols.

use super::phase::{PhaseMatrices, SlotLayout};
use super::{CMatrix, ChannelRealization};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Receiver {
    Rx1,
    Rx2,
}

/// What receiver `i` hears about its own symbols `s_i`.
#[derive(Debug, Clone)]
pub struct ReceiverSystem {
    /// Own-phase observations: `(N_i·τ_i) × s_i`.
    pub own_phase: CMatrix,
    /// Phase-III rows after removing the other user's share:
    /// `(N_i·τ3) × s_i`.
    pub phase3: CMatrix,
    /// How the other user's payload entries mix into the phase-III rows:
    /// `(N_i·τ3) × k_other`.
    pub phase3_other_mix: CMatrix,
    /// CSIT residual rows behind the other user's payload entries,
    /// `k_other × s_other`; they survive the cancellation.
    pub other_residual: CMatrix,
}

impl ReceiverSystem {
    pub fn build(rx: Receiver, layout: &SlotLayout, pm: &PhaseMatrices, realization: &ChannelRealization) -> Self {
        let (own_phase, own_antennas, desired_hat, desired_rows, other_true, other_hat, other_rows, per_slot) = match rx {
            Receiver::Rx1 => (
                &pm.h1_p1,
                layout.n1,
                &pm.h2_hat_p1,
                &layout.rx1_payload_rows,
                &pm.h1_p2,
                &pm.h1_hat_p2,
                &layout.rx2_payload_rows,
                &realization.h1,
            ),
            Receiver::Rx2 => (
                &pm.h2_p2,
                layout.n2,
                &pm.h1_hat_p2,
                &layout.rx2_payload_rows,
                &pm.h2_p1,
                &pm.h2_hat_p1,
                &layout.rx1_payload_rows,
                &realization.h2,
            ),
        };
        let rows3 = own_antennas * layout.phase3_slots;
        let mut phase3 = CMatrix::zeros(rows3, own_phase.ncols());
        let mut phase3_other_mix = CMatrix::zeros(rows3, other_rows.len());
        let mut other_residual = CMatrix::zeros(other_rows.len(), other_true.ncols());
        let p3_start = layout.phase3_slot_range().start;
        for e in 0..layout.payload_len() {
            let (slot, antenna) = layout.placement(e);
            let h = &per_slot[p3_start + slot];
            let col = h.column(antenna);
            let r0 = slot * own_antennas;
            if let Some(&row) = desired_rows.get(e) {
                let contrib = col * desired_hat.row(row);
                let mut block = phase3.rows_mut(r0, own_antennas);
                block += contrib;
            }
            if let Some(&row) = other_rows.get(e) {
                phase3_other_mix.view_mut((r0, e), (own_antennas, 1)).copy_from(&col);
                other_residual.set_row(e, &(other_true.row(row) - other_hat.row(row)));
            }
        }
        ReceiverSystem {
            own_phase: own_phase.clone(),
            phase3,
            phase3_other_mix,
            other_residual,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.own_phase.ncols()
    }

    /// `[own_phase; gain·phase3]`
    pub fn stacked(&self, phase3_gain: f64) -> CMatrix {
        let (a, b) = (self.own_phase.nrows(), self.phase3.nrows());
        let mut out = CMatrix::zeros(a + b, self.unknowns());
        out.rows_mut(0, a).copy_from(&self.own_phase);
        out.rows_mut(a, b).copy_from(&(&self.phase3 * num_complex::Complex64::new(phase3_gain, 0.0)));
        out
    }
}
