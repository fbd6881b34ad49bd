//! Two-photon correlation function `G²(τ)` from the spectral amplitude, and
//! the exponential-decay approximation.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{MediumParams, PathlengthMode, PumpMode};
use crate::spectra::{self, ComplexSpectrum, DetuningGrid};

pub use crate::units::to_physical_time;

/// Largest edge-to-peak amplitude ratio accepted before the grid is widened.
pub const EDGE_LIMIT: f64 = 1e-4;

/// Grids are widened by doubling span and count at most this many times.
const MAX_WIDENINGS: usize = 6;

/// Spectral filter applied to the amplitude before the transform.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FilterSpec {
    #[default]
    None,
    /// Lorentzian intensity response of FWHM `fwhm` (Γ units), applied to the
    /// field as `1/(1 − 2iδ/fwhm)`.
    LorentzianEtalon { fwhm: f64 },
}

impl FilterSpec {
    pub fn etalon_mhz(fwhm_mhz: f64) -> Self {
        FilterSpec::LorentzianEtalon {
            fwhm: crate::units::from_mhz(fwhm_mhz),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FilterSpec::None => Ok(()),
            FilterSpec::LorentzianEtalon { fwhm } if fwhm.is_finite() && fwhm > 0.0 => Ok(()),
            FilterSpec::LorentzianEtalon { fwhm } => {
                Err(Error::invalid("filter_fwhm", format!("{fwhm} must be finite and > 0")))
            }
        }
    }

    /// Field response at detuning `delta`, unity at `δ = 0`.
    pub fn response(&self, delta: f64) -> Complex64 {
        match *self {
            FilterSpec::None => Complex64::new(1.0, 0.0),
            FilterSpec::LorentzianEtalon { fwhm } => {
                Complex64::new(1.0, 0.0) / Complex64::new(1.0, -2.0 * delta / fwhm)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Divided by the largest transform sample; `raw_peak` keeps that value.
    PeakNormalized,
    /// `e^{−Γ_BI τ}`; `raw_peak` holds the unnormalized amplitude C.
    UnitAtZeroDelay,
}

/// `G²(τ)` sampled on a uniform delay grid in units of Γ⁻¹.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavePacket {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub normalization: Normalization,
    pub raw_peak: f64,
    /// Fraction of `Σ G²` carried by `τ < 0`.
    pub negative_time_weight: f64,
    /// Detuning grid the packet was computed from, if any.
    pub source_grid: Option<GridInfo>,
}

/// Discretization of the spectrum behind a transformed wave packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridInfo {
    pub span: f64,
    pub count: usize,
    pub spacing: f64,
    /// Edge-to-peak amplitude ratio of the transformed spectrum.
    pub edge_ratio: f64,
}

impl WavePacket {
    /// Samples with `t_min ≤ τ ≤ t_max`.
    pub fn window(&self, t_min: f64, t_max: f64) -> WavePacket {
        let (times, values): (Vec<f64>, Vec<f64>) = self
            .times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= t_min && **t <= t_max)
            .map(|(t, v)| (*t, *v))
            .unzip();
        WavePacket {
            times,
            values,
            ..self.clone()
        }
    }

    pub fn spacing(&self) -> f64 {
        if self.times.len() < 2 {
            return 0.0;
        }
        self.times[1] - self.times[0]
    }

    /// Averages the packet into bins `[k·w, (k+1)·w)` covering `[t_min, t_max)`.
    /// Returns `(bin starts, means)`; empty bins are dropped.
    pub fn rebin(&self, width: f64, t_min: f64, t_max: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::invalid("bin_width", format!("{width} must be > 0")));
        }
        let first = (t_min / width).floor() as i64;
        let last = (t_max / width).ceil() as i64;
        let bins = (last - first).max(0) as usize;
        let mut sums = vec![0.0; bins];
        let mut counts = vec![0usize; bins];
        for (&t, &v) in self.times.iter().zip(&self.values) {
            let k = (t / width).floor() as i64 - first;
            if t >= t_min && t < t_max && k >= 0 && (k as usize) < bins {
                sums[k as usize] += v;
                counts[k as usize] += 1;
            }
        }
        let mut starts = Vec::new();
        let mut means = Vec::new();
        for k in 0..bins {
            if counts[k] > 0 {
                starts.push((first + k as i64) as f64 * width);
                means.push(sums[k] / counts[k] as f64);
            }
        }
        Ok((starts, means))
    }
}

fn edge_ratio(values: &[Complex64]) -> f64 {
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let n = values.len();
    values[0].norm().max(values[n - 1].norm()) / peak
}

/// `G²(τ) = |(1/2π) ∫ dδ e^{−iδτ} F(δ)|²` by FFT of a sampled spectrum.
///
/// The grid must be cell-centred with a power-of-two count. Delays are
/// `τ_m = 2πm/(N h)` for `m = −N/2 .. N/2−1`.
pub fn transform_spectrum(spectrum: &ComplexSpectrum) -> Result<WavePacket> {
    let grid = &spectrum.grid;
    let n = grid.len();
    if !n.is_power_of_two() {
        return Err(Error::NonPowerOfTwo { count: n });
    }
    if !grid.is_uniform() {
        return Err(Error::invalid("grid", "the transform needs uniformly spaced detunings"));
    }
    let ratio = edge_ratio(&spectrum.values);
    if ratio > EDGE_LIMIT {
        return Err(Error::GridTooNarrow {
            edge_ratio: ratio,
            limit: EDGE_LIMIT,
        });
    }
    let h = grid.spacing();
    let mut buffer = spectrum.values.clone();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);
    // The offset of δ_0 only contributes a unit-modulus phase.
    let scale = h / (2.0 * std::f64::consts::PI);
    let dt = 2.0 * std::f64::consts::PI / (n as f64 * h);
    let half = n / 2;
    let mut times = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for j in 0..n {
        let m = j as i64 - half as i64;
        let idx = m.rem_euclid(n as i64) as usize;
        times.push(m as f64 * dt);
        values.push((buffer[idx] * scale).norm_sqr());
    }
    let raw_peak = values.iter().copied().fold(0.0, f64::max);
    let total: f64 = values.iter().sum();
    let negative: f64 = values[..half].iter().sum();
    if raw_peak > 0.0 {
        for v in &mut values {
            *v /= raw_peak;
        }
    }
    Ok(WavePacket {
        times,
        values,
        normalization: Normalization::PeakNormalized,
        raw_peak,
        negative_time_weight: if total > 0.0 { negative / total } else { 0.0 },
        source_grid: Some(GridInfo {
            span: grid.span(),
            count: n,
            spacing: h,
            edge_ratio: ratio,
        }),
    })
}

/// Spectral amplitude multiplied by the filter response.
pub fn filtered_amplitude(
    p: &MediumParams,
    grid: &DetuningGrid,
    filter: FilterSpec,
    include_sinc: bool,
    pump_mode: PumpMode,
) -> Result<ComplexSpectrum> {
    filter.validate()?;
    let mut f = spectra::biphoton_spectrum(p, grid, include_sinc, pump_mode)?;
    for (v, &d) in f.values.iter_mut().zip(grid.points()) {
        *v *= filter.response(d);
    }
    Ok(f)
}

/// Default transform grid: ±400Γ with 2¹⁶ points (τ step ≈ 0.2 ns, range ±6.8 µs).
pub fn default_transform_grid() -> DetuningGrid {
    DetuningGrid::for_transform(400.0, 1 << 16).expect("static grid")
}

/// Numeric wave packet from the biphoton spectrum.
///
/// If the filtered amplitude at the grid edges exceeds `EDGE_LIMIT` of its
/// peak, span and count are doubled together (keeping the spacing) until it
/// does not, up to six times.
pub fn wavepacket_numeric(
    p: &MediumParams,
    grid: &DetuningGrid,
    filter: FilterSpec,
    include_sinc: bool,
    pump_mode: PumpMode,
) -> Result<WavePacket> {
    if !grid.is_power_of_two() {
        return Err(Error::NonPowerOfTwo { count: grid.len() });
    }
    let mut grid = grid.clone();
    for attempt in 0..=MAX_WIDENINGS {
        let f = filtered_amplitude(p, &grid, filter, include_sinc, pump_mode)?;
        match transform_spectrum(&f) {
            Err(Error::GridTooNarrow { .. }) if attempt < MAX_WIDENINGS => {
                grid = DetuningGrid::for_transform(2.0 * grid.span(), 2 * grid.len())?;
            }
            other => return other,
        }
    }
    unreachable!("loop returns on the last attempt")
}

/// Γ_BI ≈ Γ_EIT of the biphoton (quarter pathlength) EIT spectrum.
pub fn biphoton_decay_rate(p: &MediumParams) -> Result<f64> {
    Ok(spectra::eit_lorentzian_summary(p, PathlengthMode::BiphotonQuarter)?.gamma_eit)
}

/// Unnormalized amplitude `C = α_as α_s (Ω_p/Δ_p)² B² e^{−α_s' R (1−A)}` (Γ = 1).
pub fn analytic_amplitude(p: &MediumParams) -> Result<f64> {
    let s = spectra::eit_lorentzian_summary(p, PathlengthMode::BiphotonQuarter)?;
    if p.delta_p == 0.0 {
        return Err(Error::domain("analytic_amplitude", "Ω_p/Δ_p needs Δ_p ≠ 0"));
    }
    let b = spectra::fwm_b(p);
    let ratio = p.omega_p / p.delta_p;
    Ok(p.alpha_as * p.alpha_s * ratio * ratio * b * b * s.peak)
}

/// `G²(τ) = e^{−Γ_BI τ}` for `τ ≥ 0` and 0 before, with C kept in `raw_peak`.
pub fn wavepacket_analytic(p: &MediumParams, times: &[f64]) -> Result<WavePacket> {
    let rate = biphoton_decay_rate(p)?;
    let c = analytic_amplitude(p)?;
    if times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("times", "must be strictly increasing"));
    }
    let values: Vec<f64> = times
        .iter()
        .map(|&t| if t >= 0.0 { (-rate * t).exp() } else { 0.0 })
        .collect();
    Ok(WavePacket {
        times: times.to_vec(),
        values,
        normalization: Normalization::UnitAtZeroDelay,
        raw_peak: c,
        negative_time_weight: 0.0,
        source_grid: None,
    })
}

/// One of the five coupling powers of the measured data set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingPowerPreset {
    pub power_mw: f64,
    pub params: MediumParams,
}

/// α_s = 360, Ω_c = 1.75Γ·√(P/0.5 mW) and the fitted γ at 0.5, 1, 2, 4 and 8 mW.
pub fn coupling_power_presets() -> Vec<CouplingPowerPreset> {
    const OMEGA_C0: f64 = 1.75;
    const ALPHA_S: f64 = 360.0;
    [(0.5, 0.020), (1.0, 0.022), (2.0, 0.029), (4.0, 0.044), (8.0, 0.086)]
        .into_iter()
        .map(|(power_mw, gamma)| CouplingPowerPreset {
            power_mw,
            params: MediumParams::new(OMEGA_C0 * (power_mw / 0.5f64).sqrt(), gamma, ALPHA_S),
        })
        .collect()
}
