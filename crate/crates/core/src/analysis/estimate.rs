//! Coupling Rabi frequency and decoherence rates from classical-probe EIT
//! spectra taken at several coupling powers.

use serde::Serialize;

use super::fit::fit_lorentzian;
use super::lm::{levenberg_marquardt, LmSettings};
use crate::error::{Error, Result};
use crate::medium::{MediumParams, PathlengthMode, DEFAULT_GAMMA_DOPPLER};
use crate::specfun::erfcx;
use crate::spectra::{eit_exact, eit_width_factor, RealSpectrum};

#[derive(Debug, Clone)]
pub struct EstimateOptions {
    pub gamma_doppler: f64,
    /// Hold γ at these values (one per spectrum) and fit Ω_c0 alone.
    pub fixed_gammas: Option<Vec<f64>>,
    pub settings: LmSettings,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            gamma_doppler: DEFAULT_GAMMA_DOPPLER,
            fixed_gammas: None,
            settings: LmSettings::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamEstimate {
    /// Ω_c at power ratio 1.
    pub omega_c0: f64,
    pub gammas: Vec<f64>,
    /// RMS of model − data for each spectrum.
    pub rms_residuals: Vec<f64>,
    pub iterations: usize,
    pub warnings: Vec<String>,
}

/// Solves `erfcx(x) = target` for `x ≥ 0`, `target ∈ (0, 1]`.
fn erfcx_inverse(target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1e6f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if erfcx(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Ω_c and γ that make the Lorentzian summary reproduce a measured peak
/// transmission and width.
fn analytic_guess(s: &RealSpectrum, base: &MediumParams) -> Result<(f64, f64)> {
    let fit = fit_lorentzian(s)?;
    let alpha = base.alpha_s_prime(PathlengthMode::ClassicalProbeHalf);
    let r = erfcx(1.0 / (2.0 * base.gamma_doppler));
    let peak = (fit.baseline + fit.amplitude).clamp(1e-300, 1.0);
    let one_minus_a = (-peak.ln() / (alpha * r)).clamp(1e-6, 1.0 - 1e-9);
    let x = erfcx_inverse(r * one_minus_a);
    let a = 1.0 - one_minus_a;
    let gamma = fit.fwhm / (2.0 * (1.0 + x) * eit_width_factor(alpha * r * a));
    let omega_c = (4.0 * gamma * base.gamma_doppler * x).sqrt();
    Ok((omega_c.max(1e-3), gamma.max(1e-6)))
}

/// Joint least squares for one Ω_c0 shared across spectra as
/// `Ω_c,i = Ω_c0·√power_ratio_i` and one γ per spectrum, with the
/// classical-probe model. Parameters are fitted in log space.
pub fn estimate_params_from_eit(
    measured: &[RealSpectrum],
    alpha_s: f64,
    power_ratios: &[f64],
    options: &EstimateOptions,
) -> Result<ParamEstimate> {
    let n = measured.len();
    if n == 0 || power_ratios.len() != n {
        return Err(Error::invalid("power_ratios", "need one ratio per spectrum"));
    }
    if power_ratios.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::invalid("power_ratios", "must be finite and > 0"));
    }
    if let Some(fixed) = &options.fixed_gammas {
        if fixed.len() != n || fixed.iter().any(|g| !(*g > 0.0)) {
            return Err(Error::invalid("fixed_gammas", "need one positive γ per spectrum"));
        }
    }
    let base = MediumParams::new(1.0, 0.05, alpha_s).with_gamma_doppler(options.gamma_doppler);
    base.validate()?;

    let mut warnings = Vec::new();
    let mut log_omega0 = 0.0;
    let mut log_gammas = Vec::with_capacity(n);
    for (i, s) in measured.iter().enumerate() {
        let (oc, g) = analytic_guess(s, &base)?;
        log_omega0 += (oc / power_ratios[i].sqrt()).ln() / n as f64;
        log_gammas.push(g.ln());
        let contrast = s.max() - super::fit::edge_baseline(&s.values);
        if contrast < 0.01 {
            warnings.push(format!(
                "spectrum {i} rises only {contrast:.2e} above its baseline; γ is poorly constrained"
            ));
        }
    }
    let free_gammas = options.fixed_gammas.is_none();
    let mut x0 = vec![log_omega0];
    if free_gammas {
        x0.extend(&log_gammas);
    }
    let rows: usize = measured.iter().map(|s| s.values.len()).sum();

    let unpack = |p: &[f64]| -> Vec<MediumParams> {
        (0..n)
            .map(|i| {
                let gamma = match &options.fixed_gammas {
                    Some(fixed) => fixed[i],
                    None => p[1 + i].exp(),
                };
                base.with_omega_c(p[0].exp() * power_ratios[i].sqrt()).with_gamma(gamma)
            })
            .collect()
    };
    let residual = |p: &[f64], r: &mut [f64]| -> bool {
        let mut offset = 0;
        for (params, s) in unpack(p).iter().zip(measured) {
            let Ok(model) = eit_exact(params, &s.grid, PathlengthMode::ClassicalProbeHalf) else {
                return false;
            };
            for (k, (m, y)) in model.values.iter().zip(&s.values).enumerate() {
                r[offset + k] = m - y;
            }
            offset += s.values.len();
        }
        true
    };
    let scales = vec![1.0; x0.len()];
    let out = levenberg_marquardt(residual, &x0, rows, &scales, &options.settings)?;

    let diag_max = (0..x0.len()).map(|j| out.normal_matrix[(j, j)]).fold(0.0, f64::max);
    let eig = out.normal_matrix.clone().symmetric_eigen().eigenvalues;
    let eig_min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    if !(eig_min > 1e-12 * diag_max) {
        warnings.push("normal equations are ill-conditioned; parameters are not independently determined".into());
    }

    let fitted = unpack(&out.params);
    let mut rms = Vec::with_capacity(n);
    let mut offset = 0;
    for s in measured {
        let len = s.values.len();
        let ss: f64 = out.residuals[offset..offset + len].iter().map(|v| v * v).sum();
        rms.push((ss / len as f64).sqrt());
        offset += len;
    }
    Ok(ParamEstimate {
        omega_c0: out.params[0].exp(),
        gammas: fitted.iter().map(|p| p.gamma).collect(),
        rms_residuals: rms,
        iterations: out.iterations,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::DetuningGrid;

    fn synthetic(omega_c: f64, gamma: f64) -> RealSpectrum {
        let p = MediumParams::new(omega_c, gamma, 360.0);
        let grid = DetuningGrid::linspace(0.6, 241).unwrap();
        eit_exact(&p, &grid, PathlengthMode::ClassicalProbeHalf).unwrap()
    }

    #[test]
    fn erfcx_inverse_round_trip() {
        for x in [0.0, 0.3, 1.0, 4.0, 30.0] {
            assert!((erfcx_inverse(erfcx(x)) - x).abs() < 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn single_spectrum_round_trip() {
        let s = synthetic(2.0, 0.03);
        let e = estimate_params_from_eit(&[s], 360.0, &[1.0], &EstimateOptions::default()).unwrap();
        assert!((e.omega_c0 - 2.0).abs() < 1e-4 * 2.0, "{e:?}");
        assert!((e.gammas[0] - 0.03).abs() < 1e-4 * 0.03);
    }

    #[test]
    fn fixed_gamma_fits_rabi_frequency_only() {
        let s = synthetic(2.4, 0.04);
        let options = EstimateOptions {
            fixed_gammas: Some(vec![0.04]),
            ..EstimateOptions::default()
        };
        let e = estimate_params_from_eit(&[s], 360.0, &[1.0], &options).unwrap();
        assert!((e.omega_c0 - 2.4).abs() < 1e-5 * 2.4);
        assert_eq!(e.gammas, vec![0.04]);
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let s = synthetic(2.0, 0.03);
        assert!(estimate_params_from_eit(std::slice::from_ref(&s), 360.0, &[1.0, 2.0], &EstimateOptions::default()).is_err());
        assert!(estimate_params_from_eit(&[s], 360.0, &[-1.0], &EstimateOptions::default()).is_err());
    }
}
