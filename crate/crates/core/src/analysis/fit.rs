//! Widths, Lorentzian and exponential-decay fits, and profile distance.

use serde::Serialize;

use super::lm::{levenberg_marquardt, LmSettings};
use crate::error::{Error, Result};
use crate::spectra::{DetuningGrid, RealSpectrum};
use crate::temporal::WavePacket;

/// Whether the feature of interest rises above or falls below the baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    PeakAboveBaseline,
    DipBelowBaseline,
}

/// Mean of the outer 5% of samples (2.5% at each end, at least one each).
pub fn edge_baseline(values: &[f64]) -> f64 {
    let k = (values.len() / 40).max(1);
    let n = values.len();
    let sum: f64 = values[..k].iter().chain(&values[n - k..]).sum();
    sum / (2 * k) as f64
}

fn extremum(values: &[f64], sense: Sense) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        let better = match sense {
            Sense::PeakAboveBaseline => *v > values[best],
            Sense::DipBelowBaseline => *v < values[best],
        };
        if better {
            best = i;
        }
    }
    best
}

/// Full width at half maximum by linear interpolation of the two crossings
/// nearest the extremum, measured from the edge baseline.
pub fn fwhm_halfmax(s: &RealSpectrum, sense: Sense) -> Result<f64> {
    let x = s.grid.points();
    let y = &s.values;
    if y.len() < 3 {
        return Err(Error::NoCrossing { side: "left" });
    }
    let base = edge_baseline(y);
    let i = extremum(y, sense);
    let half = base + (y[i] - base) / 2.0;
    // Positive inside the feature, non-positive outside.
    let inside = |v: f64| match sense {
        Sense::PeakAboveBaseline => v - half,
        Sense::DipBelowBaseline => half - v,
    };
    if !(inside(y[i]) > 0.0) {
        return Err(Error::NoCrossing { side: "left" });
    }
    let cross = |a: usize, b: usize| {
        let (fa, fb) = (inside(y[a]), inside(y[b]));
        x[a] + fa / (fa - fb) * (x[b] - x[a])
    };
    let mut j = i;
    while j + 1 < y.len() && inside(y[j + 1]) > 0.0 {
        j += 1;
    }
    if j + 1 == y.len() {
        return Err(Error::NoCrossing { side: "right" });
    }
    let right = cross(j, j + 1);
    let mut j = i;
    while j > 0 && inside(y[j - 1]) > 0.0 {
        j -= 1;
    }
    if j == 0 {
        return Err(Error::NoCrossing { side: "left" });
    }
    let left = cross(j, j - 1);
    Ok(right - left)
}

/// `baseline + amplitude/(1 + 4(δ − center)²/fwhm²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LorentzianFit {
    pub center: f64,
    pub fwhm: f64,
    pub amplitude: f64,
    pub baseline: f64,
    pub rms_residual: f64,
    pub iterations: usize,
}

impl LorentzianFit {
    pub fn eval(&self, delta: f64) -> f64 {
        let u = 2.0 * (delta - self.center) / self.fwhm;
        self.baseline + self.amplitude / (1.0 + u * u)
    }
}

/// Least-squares Lorentzian with a free baseline. Peak or dip is chosen by
/// whichever extremum lies further from the edge baseline.
pub fn fit_lorentzian(s: &RealSpectrum) -> Result<LorentzianFit> {
    fit_lorentzian_with(s, &LmSettings::default())
}

pub fn fit_lorentzian_with(s: &RealSpectrum, settings: &LmSettings) -> Result<LorentzianFit> {
    let x = s.grid.points();
    let y = &s.values;
    let base = edge_baseline(y);
    let hi = y[extremum(y, Sense::PeakAboveBaseline)];
    let lo = y[extremum(y, Sense::DipBelowBaseline)];
    let sense = if hi - base >= base - lo {
        Sense::PeakAboveBaseline
    } else {
        Sense::DipBelowBaseline
    };
    let i = extremum(y, sense);
    let width = fwhm_halfmax(s, sense)?;
    let amplitude = y[i] - base;
    let scale_y = amplitude.abs().max(f64::MIN_POSITIVE);
    let out = levenberg_marquardt(
        |p, r| {
            if p[1] == 0.0 {
                return false;
            }
            for k in 0..x.len() {
                let u = 2.0 * (x[k] - p[0]) / p[1];
                r[k] = (p[3] + p[2] / (1.0 + u * u) - y[k]) / scale_y;
            }
            true
        },
        &[x[i], width, amplitude, base],
        x.len(),
        &[width, width, scale_y, scale_y],
        settings,
    )?;
    let p = &out.params;
    Ok(LorentzianFit {
        center: p[0],
        fwhm: p[1].abs(),
        amplitude: p[2],
        baseline: p[3],
        rms_residual: out.rms() * scale_y,
        iterations: out.iterations,
    })
}

/// `y0 + A·exp(−(t − t0)/τ)` for `t ≥ t0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpDecayFit {
    pub y0: f64,
    pub amplitude: f64,
    pub t0: f64,
    /// e⁻¹ time constant in the units of the wave packet's times.
    pub tau: f64,
    pub rms_residual: f64,
    pub points: usize,
}

impl ExpDecayFit {
    pub fn eval(&self, t: f64) -> f64 {
        if t < self.t0 {
            return f64::NAN;
        }
        self.y0 + self.amplitude * (-(t - self.t0) / self.tau).exp()
    }
}

/// Staged exponential fit: `y0` from the trailing `baseline_window` fraction,
/// `t0` fixed at the peak, then `A` and `τ` by least squares over `t ≥ t0`.
pub fn fit_exp_decay(w: &WavePacket, baseline_window: f64) -> Result<ExpDecayFit> {
    fit_exp_decay_data(&w.times, &w.values, baseline_window)
}

pub fn fit_exp_decay_data(times: &[f64], values: &[f64], baseline_window: f64) -> Result<ExpDecayFit> {
    if !(baseline_window > 0.0 && baseline_window < 0.5) {
        return Err(Error::invalid("baseline_window", format!("{baseline_window} not in (0, 0.5)")));
    }
    if times.len() != values.len() || times.len() < 5 {
        return Err(Error::invalid("wave packet", "needs at least 5 samples"));
    }
    let n = values.len();
    let tail = ((n as f64 * baseline_window).round() as usize).max(1);
    let y0 = values[n - tail..].iter().sum::<f64>() / tail as f64;
    let i = extremum(values, Sense::PeakAboveBaseline);
    if i + 3 >= n {
        return Err(Error::Fit("peak at the trailing edge; no decay to fit".into()));
    }
    let t0 = times[i];
    let t = &times[i..];
    let y = &values[i..];
    let a0 = y[0] - y0;
    if !(a0 > 0.0) {
        return Err(Error::Fit("peak does not rise above the baseline".into()));
    }
    let tau0 = y
        .iter()
        .position(|v| v - y0 < a0 / std::f64::consts::E)
        .map(|k| t[k] - t0)
        .filter(|v| *v > 0.0)
        .unwrap_or((t[t.len() - 1] - t0) / 10.0);
    let scale_y = a0;
    let out = levenberg_marquardt(
        |p, r| {
            if !(p[1] > 0.0) {
                return false;
            }
            for k in 0..t.len() {
                r[k] = (y0 + p[0] * (-(t[k] - t0) / p[1]).exp() - y[k]) / scale_y;
            }
            true
        },
        &[a0, tau0],
        t.len(),
        &[a0, tau0],
        &LmSettings::default(),
    )?;
    let (amplitude, tau) = (out.params[0], out.params[1]);
    if !(tau > 0.0 && amplitude > 0.0) {
        return Err(Error::Fit(format!("unphysical fit A = {amplitude}, τ = {tau}")));
    }
    Ok(ExpDecayFit {
        y0,
        amplitude,
        t0,
        tau,
        rms_residual: out.rms() * scale_y,
        points: t.len(),
    })
}

fn trapezoid(x: &[f64], y: impl Fn(usize) -> f64) -> f64 {
    (1..x.len())
        .map(|k| 0.5 * (x[k] - x[k - 1]) * (y(k) + y(k - 1)))
        .sum()
}

/// `∫(f − g)² dδ / ∫ f·g dδ` by the trapezoid rule.
pub fn profile_distance(f: &RealSpectrum, g: &RealSpectrum) -> Result<f64> {
    if f.grid.points() != g.grid.points() {
        return Err(Error::GridMismatch);
    }
    let x = f.grid.points();
    let num = trapezoid(x, |k| {
        let d = f.values[k] - g.values[k];
        d * d
    });
    let den = trapezoid(x, |k| f.values[k] * g.values[k]);
    Ok(num / den)
}

/// Numeric FWHM of a profile known only through a sampler: half-max width on
/// ±8× `width_guess` (4001 points), then a Lorentzian fit on ±5× that width
/// (801 points).
pub fn numeric_fwhm<F>(sample: F, width_guess: f64) -> Result<f64>
where
    F: Fn(&DetuningGrid) -> Result<RealSpectrum>,
{
    let coarse = DetuningGrid::linspace(8.0 * width_guess, 4001)?;
    let halfmax = fwhm_halfmax(&sample(&coarse)?, Sense::PeakAboveBaseline)?;
    let fine = DetuningGrid::linspace(5.0 * halfmax, 801)?;
    Ok(fit_lorentzian(&sample(&fine)?)?.fwhm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorentzian(grid: &DetuningGrid, c: f64, w: f64, a: f64, b: f64) -> RealSpectrum {
        let v = grid
            .points()
            .iter()
            .map(|d| b + a / (1.0 + 4.0 * (d - c) * (d - c) / (w * w)))
            .collect();
        RealSpectrum::measured(grid.clone(), v).unwrap()
    }

    #[test]
    fn halfmax_of_sampled_lorentzian() {
        let g = DetuningGrid::linspace(2.0, 4001).unwrap();
        let s = lorentzian(&g, 0.0, 0.1, 1.0, 0.0);
        let w = fwhm_halfmax(&s, Sense::PeakAboveBaseline).unwrap();
        // The edge baseline sits slightly above zero on a finite window.
        assert!((w - 0.1).abs() < 2e-3 * 0.1, "{w}");
        let dip = lorentzian(&g, 0.3, 0.2, -0.5, 1.0);
        let w = fwhm_halfmax(&dip, Sense::DipBelowBaseline).unwrap();
        assert!((w - 0.2).abs() < 5e-3 * 0.2, "{w}");
    }

    #[test]
    fn monotone_profile_has_no_crossing() {
        let g = DetuningGrid::linspace(1.0, 101).unwrap();
        let s = RealSpectrum::new(g.clone(), g.points().iter().map(|d| d + 1.0).collect()).unwrap();
        assert!(matches!(
            fwhm_halfmax(&s, Sense::PeakAboveBaseline),
            Err(Error::NoCrossing { .. })
        ));
    }

    #[test]
    fn lorentzian_fit_is_exact_on_noiseless_data() {
        for &offset in &[0.0, 0.013, -0.27] {
            let g = DetuningGrid::linspace(1.5, 601).unwrap();
            let s = lorentzian(&g, offset, 0.3, 2.0, 0.25);
            let f = fit_lorentzian(&s).unwrap();
            assert!((f.fwhm - 0.3).abs() < 1e-6 * 0.3);
            assert!((f.center - offset).abs() < 1e-6);
            assert!((f.amplitude - 2.0).abs() < 1e-6 * 2.0);
            assert!((f.baseline - 0.25).abs() < 1e-6);
            assert!(f.rms_residual < 1e-9);
        }
        let g = DetuningGrid::linspace(1.5, 601).unwrap();
        let dip = fit_lorentzian(&lorentzian(&g, 0.1, 0.4, -0.6, 1.0)).unwrap();
        assert!((dip.fwhm - 0.4).abs() < 1e-6 * 0.4 && (dip.amplitude + 0.6).abs() < 1e-6);
    }

    #[test]
    fn exp_decay_recovery() {
        let tau = 100.0;
        let times: Vec<f64> = (0..4000).map(|k| -100.0 + k as f64 * 0.8).collect();
        let values: Vec<f64> = times
            .iter()
            .map(|&t| if t < 0.0 { 0.02 } else { 0.02 + 1.5 * (-t / tau).exp() })
            .collect();
        let f = fit_exp_decay_data(&times, &values, 0.2).unwrap();
        assert_eq!(f.t0, 0.0);
        assert!((f.tau - tau).abs() < 1e-6 * tau, "{}", f.tau);
        assert!((f.y0 - 0.02).abs() < 1e-9);
    }

    #[test]
    fn exp_decay_rejects_bad_windows() {
        let t: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let rising: Vec<f64> = t.clone();
        assert!(fit_exp_decay_data(&t, &rising, 0.2).is_err());
        assert!(fit_exp_decay_data(&t, &rising, 0.7).is_err());
    }

    #[test]
    fn profile_distance_properties() {
        let g = DetuningGrid::linspace(3.0, 301).unwrap();
        let f = lorentzian(&g, 0.0, 1.0, 1.0, 0.1);
        let h = lorentzian(&g, 0.05, 1.1, 0.9, 0.1);
        assert_eq!(profile_distance(&f, &f).unwrap(), 0.0);
        assert_eq!(profile_distance(&f, &h).unwrap(), profile_distance(&h, &f).unwrap());
        let other = lorentzian(&DetuningGrid::linspace(2.0, 301).unwrap(), 0.0, 1.0, 1.0, 0.1);
        assert!(matches!(profile_distance(&f, &other), Err(Error::GridMismatch)));
    }
}
