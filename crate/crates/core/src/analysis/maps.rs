//! Numeric-versus-analytic width comparisons over (Ω_c², γ) grids.

use rayon::prelude::*;
use serde::Serialize;

use super::fit::numeric_fwhm;
use crate::error::{Error, Result};
use crate::medium::{MediumParams, PathlengthMode, PumpMode};
use crate::spectra::{
    biphoton_spectrum, eit_exact, eit_lorentzian_summary, fwm_exact, DetuningGrid, RealSpectrum,
};

/// Which spectrum a width refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// Biphoton EIT spectrum, analytic width Γ_EIT.
    Eit,
    /// FWM spectrum, analytic width Γ_FWM = Γ_L.
    Fwm,
    /// Overall spectrum |F|², analytic width Γ_BI ≈ Γ_EIT.
    Overall,
}

impl ProfileKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileKind::Eit => "eit",
            ProfileKind::Fwm => "fwm",
            ProfileKind::Overall => "overall",
        }
    }
}

/// Samples the exact profile of `kind` on `grid`.
pub fn exact_profile(p: &MediumParams, kind: ProfileKind, grid: &DetuningGrid) -> Result<RealSpectrum> {
    match kind {
        ProfileKind::Eit => eit_exact(p, grid, PathlengthMode::BiphotonQuarter),
        ProfileKind::Fwm => fwm_exact(p, grid, PumpMode::ExactPumpDenominator),
        ProfileKind::Overall => {
            Ok(biphoton_spectrum(p, grid, true, PumpMode::ExactPumpDenominator)?.intensity())
        }
    }
}

/// Analytic FWHM of `kind`.
pub fn analytic_width(p: &MediumParams, kind: ProfileKind) -> Result<f64> {
    let s = eit_lorentzian_summary(p, PathlengthMode::BiphotonQuarter)?;
    Ok(match kind {
        ProfileKind::Eit | ProfileKind::Overall => s.gamma_eit,
        ProfileKind::Fwm => s.gamma_l,
    })
}

/// Numeric FWHM (Lorentzian best fit) of the exact profile of `kind`.
pub fn numeric_width(p: &MediumParams, kind: ProfileKind) -> Result<f64> {
    let guess = analytic_width(p, kind)?;
    numeric_fwhm(|g| exact_profile(p, kind, g), guess)
}

/// FWHM comparison at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthComparison {
    pub numeric: f64,
    pub analytic: f64,
    /// `100·(numeric − analytic)/numeric`.
    pub signed_percent: f64,
}

pub fn compare_widths(p: &MediumParams, kind: ProfileKind) -> Result<WidthComparison> {
    let analytic = analytic_width(p, kind)?;
    let numeric = numeric_width(p, kind)?;
    Ok(WidthComparison {
        numeric,
        analytic,
        signed_percent: 100.0 * (numeric - analytic) / numeric,
    })
}

/// Percentage FWHM difference on an (Ω_c², γ) grid.
///
/// Rows follow `gamma_axis`, columns `omega_c_sq_axis`. Failed cells hold NaN.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffMap {
    pub kind: ProfileKind,
    pub omega_c_sq_axis: Vec<f64>,
    pub gamma_axis: Vec<f64>,
    /// `100·|num − ana|/num`.
    pub percent_diff: Vec<Vec<f64>>,
    /// `100·(num − ana)/num`.
    pub signed_percent_diff: Vec<Vec<f64>>,
    pub numeric_fwhm: Vec<Vec<f64>>,
    pub analytic_fwhm: Vec<Vec<f64>>,
    pub failed_cells: usize,
}

impl DiffMap {
    /// `x = Ω_c²/(4γΓ_D)` for cell (row, column).
    pub fn coupling_ratio(&self, row: usize, col: usize, gamma_doppler: f64) -> f64 {
        self.omega_c_sq_axis[col] / (4.0 * self.gamma_axis[row] * gamma_doppler)
    }
}

fn check_axis(name: &'static str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::invalid(name, "empty axis"));
    }
    if axis.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::invalid(name, "values must be finite and > 0"));
    }
    if axis.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid(name, "must be strictly increasing"));
    }
    Ok(())
}

/// FWHM percentage-difference map for `kind`. `base` supplies α_s, Γ_D and
/// the pump; its Ω_c and γ are replaced per cell.
pub fn fwhm_diff_map(
    kind: ProfileKind,
    omega_c_sq_axis: &[f64],
    gamma_axis: &[f64],
    base: &MediumParams,
) -> Result<DiffMap> {
    check_axis("omega_c_sq_axis", omega_c_sq_axis)?;
    check_axis("gamma_axis", gamma_axis)?;
    base.validate()?;
    let cols = omega_c_sq_axis.len();
    let cells: Vec<Option<WidthComparison>> = (0..gamma_axis.len() * cols)
        .into_par_iter()
        .map(|k| {
            let p = base
                .with_gamma(gamma_axis[k / cols])
                .with_omega_c(omega_c_sq_axis[k % cols].sqrt());
            compare_widths(&p, kind).ok()
        })
        .collect();
    let rows = |f: &dyn Fn(&WidthComparison) -> f64| -> Vec<Vec<f64>> {
        cells
            .chunks(cols)
            .map(|row| row.iter().map(|c| c.as_ref().map_or(f64::NAN, f)).collect())
            .collect()
    };
    Ok(DiffMap {
        kind,
        omega_c_sq_axis: omega_c_sq_axis.to_vec(),
        gamma_axis: gamma_axis.to_vec(),
        percent_diff: rows(&|c| c.signed_percent.abs()),
        signed_percent_diff: rows(&|c| c.signed_percent),
        numeric_fwhm: rows(&|c| c.numeric),
        analytic_fwhm: rows(&|c| c.analytic),
        failed_cells: cells.iter().filter(|c| c.is_none()).count(),
    })
}

/// Numeric width ratios against Ω_c² at one (α_s, γ).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioCurve {
    pub alpha_s: f64,
    pub gamma: f64,
    pub omega_c_sq: Vec<f64>,
    pub gamma_eit: Vec<f64>,
    pub gamma_fwm: Vec<f64>,
    pub gamma_bi: Vec<f64>,
    /// Γ_EIT/Γ_BI.
    pub eit_over_bi: Vec<f64>,
    /// Γ_FWM/Γ_BI.
    pub fwm_over_bi: Vec<f64>,
    pub failed_points: usize,
}

/// Γ_EIT/Γ_BI and Γ_FWM/Γ_BI with all three widths from Lorentzian fits of
/// the exact spectra. Curves are ordered α_s-major, then γ.
pub fn linewidth_ratio_curves(
    alpha_s_list: &[f64],
    gamma_list: &[f64],
    omega_c_sq: &[f64],
    base: &MediumParams,
) -> Result<Vec<RatioCurve>> {
    check_axis("alpha_s_list", alpha_s_list)?;
    check_axis("gamma_list", gamma_list)?;
    check_axis("omega_c_sq", omega_c_sq)?;
    base.validate()?;
    let n = omega_c_sq.len();
    let combos: Vec<(f64, f64)> = alpha_s_list
        .iter()
        .flat_map(|&a| gamma_list.iter().map(move |&g| (a, g)))
        .collect();
    let widths: Vec<[f64; 3]> = (0..combos.len() * n)
        .into_par_iter()
        .map(|k| {
            let (alpha_s, gamma) = combos[k / n];
            let p = base
                .with_alpha_s(alpha_s)
                .with_alpha_as(alpha_s * base.alpha_as / base.alpha_s)
                .with_gamma(gamma)
                .with_omega_c(omega_c_sq[k % n].sqrt());
            let w = |kind| numeric_width(&p, kind).unwrap_or(f64::NAN);
            [w(ProfileKind::Eit), w(ProfileKind::Fwm), w(ProfileKind::Overall)]
        })
        .collect();
    Ok(combos
        .iter()
        .zip(widths.chunks(n))
        .map(|(&(alpha_s, gamma), w)| {
            let col = |i: usize| w.iter().map(|x| x[i]).collect::<Vec<f64>>();
            let (eit, fwm, bi) = (col(0), col(1), col(2));
            RatioCurve {
                alpha_s,
                gamma,
                omega_c_sq: omega_c_sq.to_vec(),
                eit_over_bi: eit.iter().zip(&bi).map(|(e, b)| e / b).collect(),
                fwm_over_bi: fwm.iter().zip(&bi).map(|(f, b)| f / b).collect(),
                failed_points: w.iter().filter(|x| x.iter().any(|v| v.is_nan())).count(),
                gamma_eit: eit,
                gamma_fwm: fwm,
                gamma_bi: bi,
            }
        })
        .collect())
}
