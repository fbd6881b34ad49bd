//! Medium parameters and the Doppler-averaged self- and cross-susceptibilities
//! of the Stokes photon.
//!
//! Both susceptibilities are returned in their dimensionless propagation form:
//! `self_susceptibility` is `(k_s L/4)·ξ(δ)` and `cross_susceptibility` is
//! `(√(k_as k_s) L/2)·χ(δ)`. The integrands are products of simple poles in the
//! Doppler shift, so after partial fractions each Gaussian average is a
//! Faddeeva evaluation. The `*_quadrature` variants integrate the same
//! integrands with Gauss–Hermite rules instead.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{doppler_average_adaptive, gaussian_pole_average, Averaged, AveragingSettings};
use crate::units;

/// Physical parameters, all rates in units of Γ (Γ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumParams {
    /// Coupling Rabi frequency Ω_c.
    pub omega_c: f64,
    /// Pump Rabi frequency Ω_p.
    pub omega_p: f64,
    /// Pump one-photon detuning Δ_p.
    pub delta_p: f64,
    /// Ground-state decoherence rate γ.
    pub gamma: f64,
    /// Doppler width Γ_D.
    pub gamma_doppler: f64,
    /// Resonant optical depth of the Stokes transition.
    pub alpha_s: f64,
    /// Resonant optical depth of the anti-Stokes transition.
    pub alpha_as: f64,
}

pub const DEFAULT_GAMMA_DOPPLER: f64 = 54.0;
pub const DEFAULT_OMEGA_P: f64 = 2.0;

/// −2.0 GHz expressed in Γ.
pub fn default_delta_p() -> f64 {
    units::from_mhz(-2000.0)
}

impl MediumParams {
    /// Parameters with Γ_D = 54Γ, Ω_p = 2Γ, Δ_p = −2 GHz and α_as = α_s.
    pub fn new(omega_c: f64, gamma: f64, alpha_s: f64) -> Self {
        Self {
            omega_c,
            omega_p: DEFAULT_OMEGA_P,
            delta_p: default_delta_p(),
            gamma,
            gamma_doppler: DEFAULT_GAMMA_DOPPLER,
            alpha_s,
            alpha_as: alpha_s,
        }
    }

    pub fn with_omega_c(mut self, omega_c: f64) -> Self {
        self.omega_c = omega_c;
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_alpha_s(mut self, alpha_s: f64) -> Self {
        self.alpha_s = alpha_s;
        self
    }

    pub fn with_alpha_as(mut self, alpha_as: f64) -> Self {
        self.alpha_as = alpha_as;
        self
    }

    pub fn with_gamma_doppler(mut self, gamma_doppler: f64) -> Self {
        self.gamma_doppler = gamma_doppler;
        self
    }

    pub fn with_pump(mut self, omega_p: f64, delta_p: f64) -> Self {
        self.omega_p = omega_p;
        self.delta_p = delta_p;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("omega_c", self.omega_c),
            ("omega_p", self.omega_p),
            ("delta_p", self.delta_p),
            ("gamma", self.gamma),
            ("gamma_doppler", self.gamma_doppler),
            ("alpha_s", self.alpha_s),
            ("alpha_as", self.alpha_as),
        ];
        for (field, v) in finite {
            if !v.is_finite() {
                return Err(Error::invalid(field, format!("{v} is not finite")));
            }
        }
        let positive = [
            ("omega_c", self.omega_c),
            ("gamma", self.gamma),
            ("gamma_doppler", self.gamma_doppler),
            ("alpha_s", self.alpha_s),
            ("alpha_as", self.alpha_as),
        ];
        for (field, v) in positive {
            if v <= 0.0 {
                return Err(Error::invalid(field, format!("{v} must be > 0")));
            }
        }
        if self.omega_p < 0.0 {
            return Err(Error::invalid("omega_p", "must be >= 0"));
        }
        Ok(())
    }

    /// Effective Doppler optical depth α_s' = α_s √π Γ / (k Γ_D), k = 4 or 2.
    pub fn alpha_s_prime(&self, mode: PathlengthMode) -> f64 {
        let divisor = match mode {
            PathlengthMode::BiphotonQuarter => 4.0,
            PathlengthMode::ClassicalProbeHalf => 2.0,
        };
        self.alpha_s * std::f64::consts::PI.sqrt() / (divisor * self.gamma_doppler)
    }

    /// Center ω₀ and half-width β of the Lorentzian in the Doppler shift seen by
    /// the Stokes field at two-photon detuning `delta` (exact β).
    pub fn doppler_pole(&self, delta: f64) -> (f64, f64) {
        let denom = 4.0 * (delta * delta + self.gamma * self.gamma);
        let oc2 = self.omega_c * self.omega_c;
        let center = delta * oc2 / denom - delta;
        let half_width = 0.5 + self.gamma * oc2 / denom;
        (center, half_width)
    }

    /// Pole ζ = Ω_c²/(4(δ+iγ)) − δ − i/2 of the EIT denominator, so that
    /// `Ω_c² − 4(δ+iγ)(δ+ω+i/2) = −4(δ+iγ)(ω − ζ)`.
    fn eit_pole(&self, delta: f64) -> (Complex64, Complex64) {
        let a = Complex64::new(delta, self.gamma);
        let zeta = self.omega_c * self.omega_c / (4.0 * a) - Complex64::new(delta, 0.5);
        (a, zeta)
    }
}

/// How far a Stokes photon travels through the medium on average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PathlengthMode {
    /// Photons born inside the medium, α_s' = α_s√πΓ/(4Γ_D).
    #[default]
    BiphotonQuarter,
    /// Input probe crossing the whole cell, α_s' = α_s√πΓ/(2Γ_D).
    ClassicalProbeHalf,
}

/// Treatment of the pump factor Ω_p/(Δ_p − ω_D + iΓ/2) in the cross-susceptibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PumpMode {
    /// Keep the pump factor inside the Doppler average.
    #[default]
    ExactPumpDenominator,
    /// Replace it by Ω_p/Δ_p (large pump detuning).
    ConstantPumpRatio,
}

pub(crate) fn self_susceptibility_unchecked(p: &MediumParams, delta: f64) -> Complex64 {
    let (_, zeta) = p.eit_pole(delta);
    -(p.alpha_s / 8.0) * gaussian_pole_average(zeta, p.gamma_doppler)
}

pub(crate) fn cross_susceptibility_unchecked(
    p: &MediumParams,
    delta: f64,
    mode: PumpMode,
) -> Complex64 {
    let prefactor = (p.alpha_as * p.alpha_s).sqrt() / 4.0;
    let (a, zeta) = p.eit_pole(delta);
    match mode {
        PumpMode::ExactPumpDenominator => {
            let pump_pole = Complex64::new(p.delta_p, 0.5);
            let residue = p.omega_p * p.omega_c / (4.0 * a * (pump_pole - zeta));
            prefactor
                * residue
                * (gaussian_pole_average(pump_pole, p.gamma_doppler)
                    - gaussian_pole_average(zeta, p.gamma_doppler))
        }
        PumpMode::ConstantPumpRatio => {
            -prefactor * (p.omega_p / p.delta_p) * p.omega_c / (4.0 * a)
                * gaussian_pole_average(zeta, p.gamma_doppler)
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("delta", format!("{delta} is not finite")))
    }
}

fn check_pump_mode(p: &MediumParams, mode: PumpMode) -> Result<()> {
    if mode == PumpMode::ConstantPumpRatio && p.delta_p == 0.0 {
        return Err(Error::domain(
            "cross_susceptibility",
            "constant pump ratio Ω_p/Δ_p needs Δ_p ≠ 0",
        ));
    }
    Ok(())
}

/// `(k_s L/4)·ξ(δ)`, the Doppler-averaged self-susceptibility.
pub fn self_susceptibility(p: &MediumParams, delta: f64) -> Result<Complex64> {
    p.validate()?;
    check_delta(delta)?;
    Ok(self_susceptibility_unchecked(p, delta))
}

/// `(√(k_as k_s) L/2)·χ(δ)`, the Doppler-averaged cross-susceptibility.
pub fn cross_susceptibility(p: &MediumParams, delta: f64, mode: PumpMode) -> Result<Complex64> {
    p.validate()?;
    check_delta(delta)?;
    check_pump_mode(p, mode)?;
    Ok(cross_susceptibility_unchecked(p, delta, mode))
}

/// Self-susceptibility integrated with Gauss–Hermite order doubling.
pub fn self_susceptibility_quadrature(
    p: &MediumParams,
    delta: f64,
    settings: &AveragingSettings,
) -> Result<Averaged> {
    p.validate()?;
    check_delta(delta)?;
    let a = Complex64::new(delta, p.gamma);
    let oc2 = p.omega_c * p.omega_c;
    let integrand = |w: f64| {
        (p.alpha_s / 2.0) * a / (oc2 - 4.0 * a * Complex64::new(delta + w, 0.5))
    };
    doppler_average_adaptive(integrand, p.gamma_doppler, settings)
}

/// Cross-susceptibility integrated with Gauss–Hermite order doubling.
pub fn cross_susceptibility_quadrature(
    p: &MediumParams,
    delta: f64,
    mode: PumpMode,
    settings: &AveragingSettings,
) -> Result<Averaged> {
    p.validate()?;
    check_delta(delta)?;
    check_pump_mode(p, mode)?;
    let a = Complex64::new(delta, p.gamma);
    let oc2 = p.omega_c * p.omega_c;
    let prefactor = (p.alpha_as * p.alpha_s).sqrt() / 4.0;
    let integrand = |w: f64| {
        let pump = match mode {
            PumpMode::ExactPumpDenominator => p.omega_p / Complex64::new(p.delta_p - w, 0.5),
            PumpMode::ConstantPumpRatio => Complex64::new(p.omega_p / p.delta_p, 0.0),
        };
        prefactor * pump * p.omega_c / (oc2 - 4.0 * a * Complex64::new(delta + w, 0.5))
    };
    doppler_average_adaptive(integrand, p.gamma_doppler, settings)
}
