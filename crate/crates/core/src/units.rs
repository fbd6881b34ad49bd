//! Conversions between natural-linewidth units and laboratory units.

use std::f64::consts::PI;

/// Γ/2π in MHz.
pub const GAMMA_MHZ: f64 = 6.0;

/// Γ⁻¹ in nanoseconds, `1/(2π·6 MHz)`.
pub const NS_PER_INVERSE_GAMMA: f64 = 1e3 / (2.0 * PI * GAMMA_MHZ);

/// Delay in Γ⁻¹ to nanoseconds.
pub fn to_physical_time(tau: f64) -> f64 {
    tau * NS_PER_INVERSE_GAMMA
}

pub fn from_physical_time(ns: f64) -> f64 {
    ns / NS_PER_INVERSE_GAMMA
}

/// Frequency in Γ to MHz (ordinary frequency, Γ ≙ 6 MHz).
pub fn to_mhz(freq: f64) -> f64 {
    freq * GAMMA_MHZ
}

pub fn from_mhz(mhz: f64) -> f64 {
    mhz / GAMMA_MHZ
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_inverse_gamma_in_ns() {
        assert!((to_physical_time(1.0) - 26.526).abs() < 1e-3);
        assert_eq!(to_physical_time(0.0), 0.0);
        assert!((to_physical_time(1.0 / 0.049) - 541.0).abs() < 1.0);
    }

    #[test]
    fn two_gigahertz_pump_detuning() {
        assert!((from_mhz(-2000.0) + 333.333).abs() < 1e-3);
        assert!((from_physical_time(to_physical_time(3.7)) - 3.7).abs() < 1e-14);
    }
}
