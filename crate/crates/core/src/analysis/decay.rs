//! Numeric wave packet, its staged exponential fit, and the analytic decay time.

use serde::Serialize;

use super::fit::{fit_exp_decay, ExpDecayFit};
use crate::error::Result;
use crate::medium::{MediumParams, PumpMode};
use crate::spectra::DetuningGrid;
use crate::temporal::{biphoton_decay_rate, wavepacket_numeric, FilterSpec, WavePacket};

/// Fit window in units of the analytic decay time 1/Γ_BI.
pub const FIT_WINDOW_BEFORE: f64 = 2.5;
pub const FIT_WINDOW_AFTER: f64 = 15.0;
pub const DEFAULT_BASELINE_WINDOW: f64 = 0.2;

#[derive(Debug, Clone, Serialize)]
pub struct DecayComparison {
    pub fit: ExpDecayFit,
    /// 1/Γ_BI in Γ⁻¹.
    pub analytic_tau: f64,
    /// Full numeric packet (not windowed).
    #[serde(skip)]
    pub packet: WavePacket,
    pub window: (f64, f64),
}

impl DecayComparison {
    /// `(fit − analytic)/analytic`.
    pub fn relative_difference(&self) -> f64 {
        (self.fit.tau - self.analytic_tau) / self.analytic_tau
    }
}

/// Computes G²(τ) on `grid`, fits `y0 + A e^{−(t−t0)/τ}` on
/// `[−2.5, 15]/Γ_BI` and returns it next to the analytic 1/Γ_BI.
pub fn compare_decay(
    p: &MediumParams,
    grid: &DetuningGrid,
    filter: FilterSpec,
    include_sinc: bool,
    pump_mode: PumpMode,
) -> Result<DecayComparison> {
    let analytic_tau = 1.0 / biphoton_decay_rate(p)?;
    let packet = wavepacket_numeric(p, grid, filter, include_sinc, pump_mode)?;
    let window = (-FIT_WINDOW_BEFORE * analytic_tau, FIT_WINDOW_AFTER * analytic_tau);
    let fit = fit_exp_decay(&packet.window(window.0, window.1), DEFAULT_BASELINE_WINDOW)?;
    Ok(DecayComparison {
        fit,
        analytic_tau,
        packet,
        window,
    })
}
