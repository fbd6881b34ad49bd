//! Biphoton EIT, FWM and overall spectra on a detuning grid, exact and
//! in the Lorentzian approximation.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::medium::{
    cross_susceptibility_unchecked, self_susceptibility_unchecked, MediumParams, PathlengthMode,
    PumpMode,
};
use crate::specfun::{erfcx, faddeeva};

/// Uniform detuning grid symmetric about zero, in units of Γ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetuningGrid {
    points: Vec<f64>,
    spacing: f64,
    span: f64,
}

impl DetuningGrid {
    /// Cell-centred grid `δ_k = (k − (N−1)/2)·h` with `h = 2·span/N`.
    ///
    /// This is the layout used for Fourier transforms: `N` cells exactly tile
    /// `[−span, span]`.
    pub fn centered(span: f64, count: usize) -> Result<Self> {
        check_span(span, count)?;
        let spacing = 2.0 * span / count as f64;
        let mid = (count as f64 - 1.0) / 2.0;
        let points = (0..count).map(|k| (k as f64 - mid) * spacing).collect();
        Ok(Self {
            points,
            spacing,
            span,
        })
    }

    /// Grid with both endpoints `±span` included; odd counts contain `δ = 0`.
    pub fn linspace(span: f64, count: usize) -> Result<Self> {
        check_span(span, count)?;
        let spacing = 2.0 * span / (count - 1) as f64;
        let mid = (count as f64 - 1.0) / 2.0;
        let points = (0..count).map(|k| (k as f64 - mid) * spacing).collect();
        Ok(Self {
            points,
            spacing,
            span,
        })
    }

    /// Cell-centred grid whose count must be a power of two.
    pub fn for_transform(span: f64, count: usize) -> Result<Self> {
        if !count.is_power_of_two() {
            return Err(Error::NonPowerOfTwo { count });
        }
        Self::centered(span, count)
    }

    /// Grid from measured detunings, strictly increasing but not necessarily
    /// uniform. `spacing` then reports the mean step.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("count", format!("{} < 2", points.len())));
        }
        if points.iter().any(|d| !d.is_finite()) || points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("points", "must be finite and strictly increasing"));
        }
        let n = points.len();
        Ok(Self {
            spacing: (points[n - 1] - points[0]) / (n - 1) as f64,
            span: points[0].abs().max(points[n - 1].abs()),
            points,
        })
    }

    /// True when every step equals `spacing` to 1e-9 relative.
    pub fn is_uniform(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| ((w[1] - w[0]) - self.spacing).abs() <= 1e-9 * self.spacing)
    }

    /// Default grid for spectra: span `max(20Γ_L, 40Γ_EIT)`, 2¹⁴ points.
    pub fn default_for(p: &MediumParams, mode: PathlengthMode) -> Result<Self> {
        p.validate()?;
        let gamma_l = lorentzian_width(p);
        let span = match eit_lorentzian_summary(p, mode) {
            Ok(s) => (20.0 * gamma_l).max(40.0 * s.gamma_eit),
            Err(_) => 20.0 * gamma_l,
        };
        Self::for_transform(span, 1 << 14)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Half-width of the grid.
    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_power_of_two(&self) -> bool {
        self.points.len().is_power_of_two()
    }
}

fn check_span(span: f64, count: usize) -> Result<()> {
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::invalid("span", format!("{span} must be finite and > 0")));
    }
    if count < 2 {
        return Err(Error::invalid("count", format!("{count} < 2")));
    }
    Ok(())
}

/// Real profile sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealSpectrum {
    pub grid: DetuningGrid,
    pub values: Vec<f64>,
}

impl RealSpectrum {
    /// Model output: values must be finite and non-negative.
    pub fn new(grid: DetuningGrid, values: Vec<f64>) -> Result<Self> {
        let s = Self::measured(grid, values)?;
        if let Some(v) = s.values.iter().find(|v| **v < 0.0) {
            return Err(Error::invalid("values", format!("negative sample {v}")));
        }
        Ok(s)
    }

    /// Measured data: values must be finite but may dip below zero from noise.
    pub fn measured(grid: DetuningGrid, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::GridMismatch);
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid("values", format!("non-finite sample {v}")));
        }
        Ok(Self { grid, values })
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Complex spectral amplitude sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    pub grid: DetuningGrid,
    pub values: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn new(grid: DetuningGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::GridMismatch);
        }
        if let Some(v) = values.iter().find(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::invalid("values", format!("non-finite sample {v}")));
        }
        Ok(Self { grid, values })
    }

    /// `|F(δ)|²`.
    pub fn intensity(&self) -> RealSpectrum {
        RealSpectrum {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v.norm_sqr()).collect(),
        }
    }
}

/// Parameters of the Lorentzian approximation of the EIT spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LorentzianSummary {
    pub r: f64,
    pub a: f64,
    pub gamma_l: f64,
    pub gamma_eit: f64,
    /// `exp(−α_s' R)`, the far-detuned transmission.
    pub baseline: f64,
    /// `exp(−α_s' R (1 − A))`, the transmission at `δ = 0`.
    pub peak: f64,
    pub alpha_s_prime: f64,
    /// False when `Ω_c² > 2γΓ` does not hold; the numbers are still returned.
    pub premise_holds: bool,
}

fn lorentzian_width(p: &MediumParams) -> f64 {
    2.0 * p.gamma * (1.0 + coupling_ratio(p))
}

/// `x = Ω_c²/(4γΓ_D)`.
fn coupling_ratio(p: &MediumParams) -> f64 {
    p.omega_c * p.omega_c / (4.0 * p.gamma * p.gamma_doppler)
}

/// `ln((1 + eˣ)/2)` without overflow or cancellation.
fn log_mean_exp(x: f64) -> f64 {
    if x < 1.0 {
        (x.exp_m1() / 2.0).ln_1p()
    } else {
        x + (-x).exp().ln_1p() - std::f64::consts::LN_2
    }
}

/// `Γ_EIT/Γ_L = √(y/ln((1+e^y)/2) − 1)` with `y = α_s' R A`.
pub fn eit_width_factor(y: f64) -> f64 {
    if y < 1e-6 {
        // y/ln((1+e^y)/2) = 2 − y/2 + O(y³)
        return (1.0 - y / 2.0).sqrt();
    }
    (y / log_mean_exp(y) - 1.0).sqrt()
}

/// R, A, Γ_L and Γ_EIT of the Lorentzian approximation.
pub fn eit_lorentzian_summary(p: &MediumParams, mode: PathlengthMode) -> Result<LorentzianSummary> {
    p.validate()?;
    let r = erfcx(1.0 / (2.0 * p.gamma_doppler));
    let x = coupling_ratio(p);
    let a = 1.0 - erfcx(x) / r;
    if !(a > 0.0) {
        return Err(Error::domain(
            "eit_lorentzian_summary",
            format!("A = {a} ≤ 0; the Lorentzian approximation needs Ω_c² ≫ 2γΓ"),
        ));
    }
    let gamma_l = lorentzian_width(p);
    let alpha_s_prime = p.alpha_s_prime(mode);
    let gamma_eit = gamma_l * eit_width_factor(alpha_s_prime * r * a);
    Ok(LorentzianSummary {
        r,
        a,
        gamma_l,
        gamma_eit,
        baseline: (-alpha_s_prime * r).exp(),
        peak: (-alpha_s_prime * r * (1.0 - a)).exp(),
        alpha_s_prime,
        premise_holds: p.omega_c * p.omega_c > 2.0 * p.gamma,
    })
}

/// `T_EIT = exp(−α_s'·Re w(z))`, `z = (ω₀ + iβ)/Γ_D` with the exact β.
pub fn eit_exact(p: &MediumParams, grid: &DetuningGrid, mode: PathlengthMode) -> Result<RealSpectrum> {
    p.validate()?;
    let alpha = p.alpha_s_prime(mode);
    let values = grid
        .points()
        .par_iter()
        .map(|&d| {
            let (center, half_width) = p.doppler_pole(d);
            let w = faddeeva(Complex64::new(center, half_width) / p.gamma_doppler)?;
            Ok((-alpha * w.re).exp())
        })
        .collect::<Result<Vec<_>>>()?;
    RealSpectrum::new(grid.clone(), values)
}

/// Both analytic forms of the EIT spectrum.
#[derive(Debug, Clone)]
pub struct EitAnalytic {
    /// `exp[−α_s' R (1 − A/(1 + 4δ²/Γ_L²))]`.
    pub exponential: RealSpectrum,
    /// `e^{−α_s' R}[1 + (e^{α_s' R A} − 1)/(1 + 4δ²/Γ_EIT²)]`, FWHM Γ_EIT.
    pub lorentzian: RealSpectrum,
    pub summary: LorentzianSummary,
}

pub fn eit_analytic(p: &MediumParams, grid: &DetuningGrid, mode: PathlengthMode) -> Result<EitAnalytic> {
    let s = eit_lorentzian_summary(p, mode)?;
    let ar = s.alpha_s_prime * s.r;
    let exponential = grid
        .points()
        .iter()
        .map(|&d| (-ar * (1.0 - s.a / (1.0 + 4.0 * d * d / (s.gamma_l * s.gamma_l)))).exp())
        .collect();
    let lift = (ar * s.a).exp_m1();
    let lorentzian = grid
        .points()
        .iter()
        .map(|&d| s.baseline * (1.0 + lift / (1.0 + 4.0 * d * d / (s.gamma_eit * s.gamma_eit))))
        .collect();
    Ok(EitAnalytic {
        exponential: RealSpectrum::new(grid.clone(), exponential)?,
        lorentzian: RealSpectrum::new(grid.clone(), lorentzian)?,
        summary: s,
    })
}

/// `T_FWM = |(√(k_as k_s) L/2)·χ(δ)|²`.
pub fn fwm_exact(p: &MediumParams, grid: &DetuningGrid, pump_mode: PumpMode) -> Result<RealSpectrum> {
    crate::medium::cross_susceptibility(p, 0.0, pump_mode)?;
    let values = grid
        .points()
        .par_iter()
        .map(|&d| cross_susceptibility_unchecked(p, d, pump_mode).norm_sqr())
        .collect();
    RealSpectrum::new(grid.clone(), values)
}

/// Complex-Lorentzian approximation of the FWM spectrum.
#[derive(Debug, Clone)]
pub struct FwmAnalytic {
    pub spectrum: RealSpectrum,
    /// Equal to Γ_L.
    pub gamma_fwm: f64,
    pub b: f64,
    /// Γ_FWM divided by the numerically observed peak separation Ω_c²/(5.4Γ_D).
    pub separation_ratio: f64,
    /// True when Γ_FWM is at least ten times the peak separation.
    pub valid: bool,
}

/// `B = (√π Ω_c/(4γΓ_D))·erfcx(Ω_c²/(4γΓ_D))`.
pub fn fwm_b(p: &MediumParams) -> f64 {
    std::f64::consts::PI.sqrt() * p.omega_c / (4.0 * p.gamma * p.gamma_doppler) * erfcx(coupling_ratio(p))
}

pub fn fwm_analytic(p: &MediumParams, grid: &DetuningGrid) -> Result<FwmAnalytic> {
    p.validate()?;
    if p.delta_p == 0.0 {
        return Err(Error::domain("fwm_analytic", "Ω_p/Δ_p needs Δ_p ≠ 0"));
    }
    let gamma_fwm = lorentzian_width(p);
    let b = fwm_b(p);
    let amplitude = (p.alpha_as * p.alpha_s).sqrt() / 4.0 * (p.omega_p / p.delta_p) * b;
    let height = amplitude * amplitude;
    let values = grid
        .points()
        .iter()
        .map(|&d| height / (1.0 + 4.0 * d * d / (gamma_fwm * gamma_fwm)))
        .collect();
    let separation = p.omega_c * p.omega_c / (5.4 * p.gamma_doppler);
    let separation_ratio = gamma_fwm / separation;
    Ok(FwmAnalytic {
        spectrum: RealSpectrum::new(grid.clone(), values)?,
        gamma_fwm,
        b,
        separation_ratio,
        valid: separation_ratio >= 10.0,
    })
}

/// `sin(z)/z` for complex `z`, with the removable singularity filled in.
pub fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// Single-point spectral amplitude `F(δ)` without parameter checks.
pub(crate) fn amplitude_unchecked(
    p: &MediumParams,
    delta: f64,
    include_sinc: bool,
    pump_mode: PumpMode,
) -> Complex64 {
    let s = self_susceptibility_unchecked(p, delta);
    let chi = cross_susceptibility_unchecked(p, delta, pump_mode);
    let envelope = if include_sinc { sinc(s) } else { Complex64::new(1.0, 0.0) };
    chi * envelope * (Complex64::i() * s).exp()
}

/// `F(δ) = χ·sinc(ξ)·e^{iξ}` in the dimensionless propagation form.
pub fn biphoton_spectrum(
    p: &MediumParams,
    grid: &DetuningGrid,
    include_sinc: bool,
    pump_mode: PumpMode,
) -> Result<ComplexSpectrum> {
    crate::medium::cross_susceptibility(p, 0.0, pump_mode)?;
    let values = grid
        .points()
        .par_iter()
        .map(|&d| amplitude_unchecked(p, d, include_sinc, pump_mode))
        .collect();
    ComplexSpectrum::new(grid.clone(), values)
}

/// Dimensionless diagnostics for the analytic approximations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityMetrics {
    /// `Ω_c²/(4γΓ_D)`.
    pub x: f64,
    /// `2γΓ/Ω_c²`.
    pub premise_ratio: f64,
    /// `Ω_c²/(5.4Γ_D)`, separation of the two FWM transmission peaks.
    pub fwm_peak_separation: f64,
    /// `premise_ratio < 0.1`.
    pub premise_ok: bool,
    /// `x ≤ 2.6`, the range over which analytic widths were checked against data.
    pub analytic_widths_trusted: bool,
}

pub fn validity_metrics(p: &MediumParams) -> Result<ValidityMetrics> {
    p.validate()?;
    let oc2 = p.omega_c * p.omega_c;
    let x = coupling_ratio(p);
    let premise_ratio = 2.0 * p.gamma / oc2;
    Ok(ValidityMetrics {
        x,
        premise_ratio,
        fwm_peak_separation: oc2 / (5.4 * p.gamma_doppler),
        premise_ok: premise_ratio < 0.1,
        analytic_widths_trusted: x <= 2.6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> MediumParams {
        MediumParams::new(2.5, 0.05, 350.0)
    }

    fn grid() -> DetuningGrid {
        DetuningGrid::linspace(3.0, 1201).unwrap()
    }

    #[test]
    fn grids_are_symmetric() {
        let g = DetuningGrid::centered(10.0, 8).unwrap();
        assert_eq!(g.points()[0], -g.points()[7]);
        assert!((g.spacing() - 2.5).abs() < 1e-15);
        assert!((g.points()[0] + 8.75).abs() < 1e-15);
        let l = DetuningGrid::linspace(1.0, 5).unwrap();
        assert_eq!(l.points(), &[-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(matches!(
            DetuningGrid::for_transform(1.0, 100),
            Err(Error::NonPowerOfTwo { count: 100 })
        ));
        assert!(DetuningGrid::centered(0.0, 4).is_err());
        assert!(l.is_uniform());
    }

    #[test]
    fn measured_points_grid() {
        let g = DetuningGrid::from_points(vec![-1.0, 0.0, 0.5, 2.0]).unwrap();
        assert_eq!(g.span(), 2.0);
        assert!(!g.is_uniform());
        assert!(DetuningGrid::from_points(vec![0.0, 0.0, 1.0]).is_err());
        assert!(DetuningGrid::from_points(vec![1.0]).is_err());
    }

    #[test]
    fn default_grid_covers_both_widths() {
        let p = fig2();
        let g = DetuningGrid::default_for(&p, PathlengthMode::BiphotonQuarter).unwrap();
        let s = eit_lorentzian_summary(&p, PathlengthMode::BiphotonQuarter).unwrap();
        assert_eq!(g.len(), 1 << 14);
        assert!(g.span() >= 20.0 * s.gamma_l && g.span() >= 40.0 * s.gamma_eit);
    }

    #[test]
    fn summary_reference_values() {
        let p = MediumParams::new(1.75, 0.020, 360.0);
        let s = eit_lorentzian_summary(&p, PathlengthMode::BiphotonQuarter).unwrap();
        // erfcx(1/108) = 0.9896372; the commonly quoted 0.98966 is within 3e-5.
        assert!((s.r - 0.989_637_185).abs() < 1e-9, "{}", s.r);
        assert!((s.r - 0.98966).abs() < 3e-5);
        assert!((s.gamma_l - 0.068_356_481_481_481_48).abs() < 1e-12, "{}", s.gamma_l);
        assert!(s.gamma_eit > 0.0 && s.gamma_eit <= s.gamma_l);
        assert!(s.baseline <= s.peak && s.peak <= 1.0);
        assert!(s.premise_holds);
    }

    #[test]
    fn width_factor_limits() {
        assert!((eit_width_factor(1e-3) - 1.0).abs() < 1e-3);
        assert!((eit_width_factor(1e-9) - 1.0).abs() < 1e-9);
        let mut prev = 1.0;
        for k in 0..=40 {
            let y = 10f64.powf(-3.0 + k as f64 * 0.1);
            let f = eit_width_factor(y);
            assert!(f < 1.0 && f <= prev, "y={y}");
            prev = f;
        }
        assert!(eit_width_factor(800.0).is_finite());
    }

    #[test]
    fn void_approximation_is_rejected() {
        // A ≤ 0 exactly when Ω_c² ≤ 2γΓ.
        let p = MediumParams::new(1e-4, 0.5, 100.0).with_gamma_doppler(0.5);
        assert!(matches!(
            eit_lorentzian_summary(&p, PathlengthMode::BiphotonQuarter),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn eit_exact_invariants() {
        for p in [fig2(), fig2().with_omega_c(5.0), MediumParams::new(1.0, 0.1, 200.0)] {
            let g = grid();
            let t = eit_exact(&p, &g, PathlengthMode::BiphotonQuarter).unwrap();
            let n = t.values.len();
            for i in 0..n {
                assert!(t.values[i] > 0.0 && t.values[i] <= 1.0);
                assert!((t.values[i] - t.values[n - 1 - i]).abs() <= 1e-9);
            }
            let half = eit_exact(&p, &g, PathlengthMode::ClassicalProbeHalf).unwrap();
            assert!(half.values.iter().zip(&t.values).all(|(h, q)| h < q));
        }
    }

    #[test]
    fn eit_exact_limits() {
        let p = fig2().with_gamma(1e-9);
        let g = DetuningGrid::linspace(1.0, 3).unwrap();
        let t = eit_exact(&p, &g, PathlengthMode::BiphotonQuarter).unwrap();
        assert!((t.values[1] - 1.0).abs() < 1e-6);
        // Far wing approaches 1 from below.
        let far = DetuningGrid::linspace(1e5, 3).unwrap();
        let t = eit_exact(&fig2(), &far, PathlengthMode::BiphotonQuarter).unwrap();
        assert!(t.values[0] < 1.0 && t.values[0] > 0.99);
    }

    #[test]
    fn eit_matches_self_susceptibility() {
        let p = fig2();
        let g = grid();
        let t = eit_exact(&p, &g, PathlengthMode::BiphotonQuarter).unwrap();
        for (d, v) in g.points().iter().zip(&t.values).step_by(50) {
            let s = crate::medium::self_susceptibility(&p, *d).unwrap();
            let direct = (Complex64::i() * s).exp().norm_sqr();
            assert!((direct - v).abs() < 1e-12 * v.max(1e-300), "δ={d}");
        }
    }

    #[test]
    fn analytic_forms_share_peak_and_baseline() {
        let p = fig2();
        let g = DetuningGrid::linspace(1e4, 3).unwrap();
        let a = eit_analytic(&p, &g, PathlengthMode::BiphotonQuarter).unwrap();
        let s = a.summary;
        assert!((a.exponential.values[1] - s.peak).abs() < 1e-14);
        assert!((a.lorentzian.values[1] - s.peak).abs() < 1e-12 * s.peak);
        assert!((a.exponential.values[0] - s.baseline).abs() < 1e-6 * s.baseline);
        assert!((a.lorentzian.values[0] - s.baseline).abs() < 1e-6 * s.baseline);
        for v in a.exponential.values.iter().chain(&a.lorentzian.values) {
            assert!(*v > 0.0 && *v <= 1.0);
        }
    }

    #[test]
    fn fwm_symmetry_and_zero_pump() {
        let p = fig2();
        let g = grid();
        let t = fwm_exact(&p, &g, PumpMode::ConstantPumpRatio).unwrap();
        let n = t.values.len();
        let peak = t.max();
        for i in 0..n {
            assert!((t.values[i] - t.values[n - 1 - i]).abs() <= 1e-9 * peak);
        }
        let off = fwm_exact(&p.with_pump(0.0, -333.0), &g, PumpMode::ExactPumpDenominator).unwrap();
        assert!(off.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn fwm_analytic_reference() {
        let p = MediumParams::new(1.75, 0.020, 360.0);
        let g = DetuningGrid::linspace(1.0, 201).unwrap();
        let f = fwm_analytic(&p, &g).unwrap();
        let s = eit_lorentzian_summary(&p, PathlengthMode::BiphotonQuarter).unwrap();
        assert_eq!(f.gamma_fwm, s.gamma_l);
        let expected = std::f64::consts::PI.sqrt() * 1.75 / 4.32 * erfcx(3.0625 / 4.32);
        assert!((f.b - expected).abs() < 1e-14);
        let v = &f.spectrum.values;
        let mid = v.len() / 2;
        assert!(v[..mid].windows(2).all(|w| w[0] < w[1]));
        assert!(v[mid..].windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn fwm_analytic_matches_exact_at_center_for_small_x() {
        let p = MediumParams::new(0.5, 0.1, 350.0);
        let g = DetuningGrid::linspace(0.01, 3).unwrap();
        let exact = fwm_exact(&p, &g, PumpMode::ConstantPumpRatio).unwrap();
        let approx = fwm_analytic(&p, &g).unwrap();
        let (e, a) = (exact.values[1], approx.spectrum.values[1]);
        assert!((e - a).abs() < 0.05 * e, "{e} vs {a}");
    }

    #[test]
    fn sinc_is_smooth_at_origin() {
        assert_eq!(sinc(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
        for &z in &[Complex64::new(0.9e-4, 0.3e-4), Complex64::new(1.1e-4, -0.2e-4)] {
            let direct = z.sin() / z;
            assert!((sinc(z) - direct).norm() < 1e-15);
        }
        let z = Complex64::new(1.3, 0.4);
        assert!((sinc(z) - z.sin() / z).norm() < 1e-15);
    }

    #[test]
    fn biphoton_limits() {
        let g = grid();
        let zero = biphoton_spectrum(&fig2().with_pump(0.0, -333.0), &g, true, PumpMode::default()).unwrap();
        assert!(zero.values.iter().all(|v| v.norm() == 0.0));
        // Near-ideal EIT at line centre: F reduces to χ.
        let p = fig2().with_gamma(1e-12);
        let one = DetuningGrid::linspace(1.0, 3).unwrap();
        let f = biphoton_spectrum(&p, &one, true, PumpMode::default()).unwrap();
        let chi = crate::medium::cross_susceptibility(&p, 0.0, PumpMode::default()).unwrap();
        assert!((f.values[1] - chi).norm() < 1e-8 * chi.norm());
    }

    #[test]
    fn validity_reference_values() {
        let v = validity_metrics(&MediumParams::new(1.75, 0.020, 360.0)).unwrap();
        assert!((v.x - 0.7089).abs() < 1e-4);
        assert!(v.premise_ok && v.analytic_widths_trusted);
        let v = validity_metrics(&MediumParams::new(7.0, 0.086, 360.0)).unwrap();
        assert!((v.x - 2.638).abs() < 1e-3);
        assert!(!v.analytic_widths_trusted);
        let err = validity_metrics(&MediumParams::new(7.0, 0.0, 360.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { .. }));
    }
}
