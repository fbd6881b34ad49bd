use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use super::config::{FitKind, RunConfig};
use super::output::{emit, suffixed, Table};
use crate::analysis::{
    compare_decay, estimate_params_from_eit, fit_exp_decay_data, fwhm_diff_map, linewidth_ratio_curves,
    EstimateOptions, ProfileKind,
};
use crate::error::{Error, Result};
use crate::medium::{MediumParams, PathlengthMode};
use crate::spectra::{
    biphoton_spectrum, eit_analytic, eit_exact, eit_lorentzian_summary, fwm_analytic, fwm_exact,
    validity_metrics, DetuningGrid, RealSpectrum,
};
use crate::temporal::{analytic_amplitude, wavepacket_analytic};
use crate::units::{from_mhz, from_physical_time, to_physical_time};

fn curve_stem(config: &RunConfig, stem: &Path, index: usize) -> PathBuf {
    if config.is_sweep() {
        suffixed(stem, &(index + 1).to_string())
    } else {
        stem.to_path_buf()
    }
}

/// Lorentzian summary, or the reason it does not exist.
fn summary_json(p: &MediumParams, mode: PathlengthMode) -> serde_json::Value {
    match eit_lorentzian_summary(p, mode) {
        Ok(s) => json!(s),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn spectrum_values(config: &RunConfig, p: &MediumParams, grid: &DetuningGrid) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let kind = config.spectrum.kind;
    let exact = match kind {
        ProfileKind::Eit => eit_exact(p, grid, config.pathlength)?,
        ProfileKind::Fwm => fwm_exact(p, grid, config.pump)?,
        ProfileKind::Overall => biphoton_spectrum(p, grid, config.sinc, config.pump)?.intensity(),
    };
    if !config.spectrum.compare {
        return Ok((exact.values, None));
    }
    let analytic = match kind {
        ProfileKind::Eit => eit_analytic(p, grid, config.pathlength)?.lorentzian.values,
        ProfileKind::Fwm => fwm_analytic(p, grid)?.spectrum.values,
        ProfileKind::Overall => {
            let eit = eit_analytic(p, grid, config.pathlength)?.lorentzian;
            let fwm = fwm_analytic(p, grid)?.spectrum;
            eit.values.iter().zip(&fwm.values).map(|(a, b)| a * b).collect()
        }
    };
    Ok((exact.values, Some(analytic)))
}

pub fn spectrum(config: &RunConfig, stem: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for (i, p) in config.curves()?.iter().enumerate() {
        let grid = config.spectrum_grid(p).map_err(|e| config.locate(e))?;
        let (exact, analytic) = spectrum_values(config, p, &grid)?;
        let mut table = Table::new()
            .with("delta_gamma_units", grid.points().to_vec())
            .with("value", exact.clone());
        if let Some(a) = analytic {
            table = table.with("exact", exact).with("analytic", a);
        }
        let meta = json!({
            "curve": i + 1,
            "kind": config.spectrum.kind,
            "params": p,
            "summary": summary_json(p, config.pathlength),
            "validity_metrics": validity_metrics(p)?,
        });
        written.extend(emit(&curve_stem(config, stem, i), "spectrum", config, meta, Some(&table))?);
    }
    Ok(written)
}

/// Exponential fit of a wave packet with times in ns.
#[derive(Debug, Clone, Serialize)]
struct DecayFitNs {
    tau_ns: f64,
    t0_ns: f64,
    y0: f64,
    amplitude: f64,
    rms_residual: f64,
    points: usize,
}

pub fn wavepacket(config: &RunConfig, stem: &Path) -> Result<Vec<PathBuf>> {
    let w = &config.wavepacket;
    let grid = DetuningGrid::for_transform(w.grid_span, w.grid_points).map_err(|e| config.locate(e))?;
    let mut written = Vec::new();
    for (i, p) in config.curves()?.iter().enumerate() {
        let c = compare_decay(p, &grid, config.filter, config.sinc, config.pump)?;
        let tau_a = c.analytic_tau;
        let t_min = w.t_min.unwrap_or(-tau_a);
        let t_max = w.t_max.unwrap_or(10.0 * tau_a);
        let numeric = c.packet.window(t_min, t_max);
        let analytic = wavepacket_analytic(p, &numeric.times)?;
        let table = match w.bin_width {
            Some(width) => {
                let (starts, g_num) = numeric.rebin(width, t_min, t_max)?;
                let (_, g_ana) = analytic.rebin(width, t_min, t_max)?;
                let width_ns = to_physical_time(width);
                let tau_ns = starts.iter().map(|s| (s / width).round() * width_ns).collect();
                Table::new()
                    .with("tau_ns", tau_ns)
                    .with("g2_numeric", g_num)
                    .with("g2_analytic", g_ana)
            }
            None => Table::new()
                .with("tau_ns", numeric.times.iter().map(|t| to_physical_time(*t)).collect())
                .with("g2_numeric", numeric.values.clone())
                .with("g2_analytic", analytic.values),
        };
        let fit = w.fit.then(|| {
            json!({
                "fit": DecayFitNs {
                    tau_ns: to_physical_time(c.fit.tau),
                    t0_ns: to_physical_time(c.fit.t0),
                    y0: c.fit.y0,
                    amplitude: c.fit.amplitude,
                    rms_residual: c.fit.rms_residual,
                    points: c.fit.points,
                },
                "fit_window_ns": [to_physical_time(c.window.0), to_physical_time(c.window.1)],
                "relative_difference": c.relative_difference(),
            })
        });
        let meta = json!({
            "curve": i + 1,
            "params": p,
            "analytic_tau_ns": to_physical_time(tau_a),
            "analytic_amplitude": analytic_amplitude(p)?,
            "bin_width_ns": w.bin_width.map(to_physical_time),
            "window_ns": [to_physical_time(t_min), to_physical_time(t_max)],
            "negative_time_weight": c.packet.negative_time_weight,
            "raw_peak": c.packet.raw_peak,
            "source_grid": c.packet.source_grid,
            "decay": fit,
        });
        written.extend(emit(&curve_stem(config, stem, i), "wavepacket", config, meta, Some(&table))?);
    }
    Ok(written)
}

fn required<'a>(config: &RunConfig, v: &'a Option<Vec<f64>>, name: &str) -> Result<&'a [f64]> {
    v.as_deref().ok_or_else(|| Error::Config {
        path: config.source().to_path_buf(),
        line: 0,
        field: format!("sweep.{name}"),
        message: "required by this command".into(),
    })
}

pub fn map(config: &RunConfig, stem: &Path) -> Result<Vec<PathBuf>> {
    let oc2 = required(config, &config.sweep.omega_c_sq, "omega_c_sq")?;
    let gammas = required(config, &config.sweep.gamma, "gamma")?;
    let m = fwhm_diff_map(config.map_kind, oc2, gammas, &config.params).map_err(|e| config.locate(e))?;
    let mut cols: [Vec<f64>; 7] = Default::default();
    for (r, g) in gammas.iter().enumerate() {
        for (c, o) in oc2.iter().enumerate() {
            let row = [
                *g,
                *o,
                m.coupling_ratio(r, c, config.params.gamma_doppler),
                m.numeric_fwhm[r][c],
                m.analytic_fwhm[r][c],
                m.percent_diff[r][c],
                m.signed_percent_diff[r][c],
            ];
            for (col, v) in cols.iter_mut().zip(row) {
                col.push(v);
            }
        }
    }
    let names = [
        "gamma",
        "omega_c_sq",
        "x",
        "numeric_fwhm",
        "analytic_fwhm",
        "percent_diff",
        "signed_percent_diff",
    ];
    let table = names
        .iter()
        .zip(cols)
        .fold(Table::new(), |t, (n, v)| t.with(n, v));
    let meta = json!({
        "kind": m.kind,
        "rows": gammas.len(),
        "columns": oc2.len(),
        "failed_cells": m.failed_cells,
    });
    emit(stem, "map", config, meta, Some(&table))
}

pub fn ratios(config: &RunConfig, stem: &Path) -> Result<Vec<PathBuf>> {
    let alphas = required(config, &config.sweep.alpha_s, "alpha_s")?;
    let gammas = required(config, &config.sweep.gamma, "gamma")?;
    let oc2 = required(config, &config.sweep.omega_c_sq, "omega_c_sq")?;
    let curves = linewidth_ratio_curves(alphas, gammas, oc2, &config.params).map_err(|e| config.locate(e))?;
    let mut written = Vec::new();
    for c in &curves {
        let table = Table::new()
            .with("omega_c_sq", c.omega_c_sq.clone())
            .with("gamma_eit", c.gamma_eit.clone())
            .with("gamma_fwm", c.gamma_fwm.clone())
            .with("gamma_bi", c.gamma_bi.clone())
            .with("eit_over_bi", c.eit_over_bi.clone())
            .with("fwm_over_bi", c.fwm_over_bi.clone());
        let meta = json!({
            "alpha_s": c.alpha_s,
            "gamma": c.gamma,
            "failed_points": c.failed_points,
        });
        let name = format!("alpha_s_{}_gamma_{}", c.alpha_s, c.gamma);
        written.extend(emit(&suffixed(stem, &name), "ratios", config, meta, Some(&table))?);
    }
    Ok(written)
}

/// Origin of one input file, echoed into the fit output.
#[derive(Debug, Clone, Serialize)]
pub struct InputProvenance {
    pub path: PathBuf,
    pub sha256: String,
    pub rows: usize,
}

/// Named numeric columns read from a CSV file. Lines starting with `#` and
/// blank lines are skipped; the first remaining line is the header.
/// Each entry of `wanted` lists accepted names for one column; the names
/// actually found are returned alongside the data.
pub fn read_columns(
    path: &Path,
    wanted: &[&[&'static str]],
) -> Result<(Vec<Vec<f64>>, Vec<&'static str>, InputProvenance)> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let schema = |row: usize, column: &str, message: String| Error::Schema {
        path: path.to_path_buf(),
        row,
        column: column.to_string(),
        message,
    };
    let text = String::from_utf8(bytes.clone()).map_err(|_| schema(0, "", "file is not UTF-8".into()))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (header_row, header) = lines.next().ok_or_else(|| schema(0, "", "no header row".into()))?;
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    let mut index = Vec::new();
    let mut chosen = Vec::new();
    for alternatives in wanted {
        let found = alternatives.iter().find_map(|a| names.iter().position(|n| n == a).map(|i| (i, *a)));
        match found {
            Some((i, name)) => {
                index.push(i);
                chosen.push(name);
            }
            None => {
                return Err(schema(
                    header_row,
                    alternatives[0],
                    format!("missing column (header is `{header}`)"),
                ))
            }
        }
    }
    let mut columns = vec![Vec::new(); wanted.len()];
    for (row, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != names.len() {
            return Err(schema(row, "", format!("{} fields, header has {}", fields.len(), names.len())));
        }
        for (k, &i) in index.iter().enumerate() {
            let v: f64 = fields[i]
                .parse()
                .map_err(|_| schema(row, chosen[k], format!("`{}` is not a number", fields[i])))?;
            if !v.is_finite() {
                return Err(schema(row, chosen[k], format!("`{}` is not finite", fields[i])));
            }
            columns[k].push(v);
        }
    }
    let rows = columns[0].len();
    if rows == 0 {
        return Err(schema(0, "", "no data rows".into()));
    }
    let sha256 = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    Ok((
        columns,
        chosen,
        InputProvenance {
            path: path.to_path_buf(),
            sha256,
            rows,
        },
    ))
}

pub fn fit(config: &RunConfig, stem: &Path, inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    match config.fit.kind {
        FitKind::Wavepacket => fit_wavepacket(config, stem, inputs),
        FitKind::Eit => fit_eit(config, stem, inputs),
    }
}

fn fit_wavepacket(config: &RunConfig, stem: &Path, inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let [input] = inputs else {
        return Err(Error::invalid("inputs", "a wave-packet fit takes exactly one input file"));
    };
    let (cols, _, provenance) = read_columns(input, &[&["tau_ns"], &["g2", "g2_numeric"]])?;
    let times: Vec<f64> = cols[0].iter().map(|t| from_physical_time(*t)).collect();
    if let Some(k) = times.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(Error::Schema {
            path: input.clone(),
            row: k + 2,
            column: "tau_ns".into(),
            message: "times must be strictly increasing".into(),
        });
    }
    let f = fit_exp_decay_data(&times, &cols[1], config.fit.baseline_window)?;
    let table = Table::new()
        .with("tau_ns", cols[0].clone())
        .with("g2", cols[1].clone())
        .with("g2_fit", times.iter().map(|t| f.eval(*t)).collect());
    let meta = json!({
        "inputs": [provenance],
        "fit": DecayFitNs {
            tau_ns: to_physical_time(f.tau),
            t0_ns: to_physical_time(f.t0),
            y0: f.y0,
            amplitude: f.amplitude,
            rms_residual: f.rms_residual,
            points: f.points,
        },
    });
    emit(stem, "fit", config, meta, Some(&table))
}

fn fit_eit(config: &RunConfig, stem: &Path, inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let ratios = match &config.fit.power_ratios {
        Some(r) if r.len() == inputs.len() => r.clone(),
        Some(r) => {
            return Err(config.locate(Error::invalid(
                "power_ratios",
                format!("{} ratios for {} input files", r.len(), inputs.len()),
            )))
        }
        None if inputs.len() == 1 => vec![1.0],
        None => return Err(config.locate(Error::invalid("power_ratios", "required for several inputs"))),
    };
    let mut spectra = Vec::new();
    let mut provenance = Vec::new();
    for input in inputs {
        let (cols, names, prov) =
            read_columns(input, &[&["delta_gamma_units", "delta_mhz"], &["transmission", "value"]])?;
        let delta: Vec<f64> = if names[0] == "delta_mhz" {
            cols[0].iter().map(|d| from_mhz(*d)).collect()
        } else {
            cols[0].clone()
        };
        let grid = DetuningGrid::from_points(delta).map_err(|e| Error::Schema {
            path: input.clone(),
            row: 0,
            column: names[0].into(),
            message: e.to_string(),
        })?;
        spectra.push(RealSpectrum::measured(grid, cols[1].clone())?);
        provenance.push(prov);
    }
    let options = EstimateOptions {
        gamma_doppler: config.params.gamma_doppler,
        ..EstimateOptions::default()
    };
    let est = estimate_params_from_eit(&spectra, config.params.alpha_s, &ratios, &options)?;
    let mut written = Vec::new();
    for (i, s) in spectra.iter().enumerate() {
        let p = config
            .params
            .with_omega_c(est.omega_c0 * ratios[i].sqrt())
            .with_gamma(est.gammas[i]);
        let model = eit_exact(&p, &s.grid, PathlengthMode::ClassicalProbeHalf)?;
        let table = Table::new()
            .with("delta_gamma_units", s.grid.points().to_vec())
            .with("transmission", s.values.clone())
            .with("model", model.values);
        let meta = json!({ "input": provenance[i], "power_ratio": ratios[i], "omega_c": p.omega_c, "gamma": p.gamma });
        written.extend(emit(&suffixed(stem, &(i + 1).to_string()), "fit", config, meta, Some(&table))?);
    }
    let meta = json!({ "inputs": provenance, "power_ratios": ratios, "estimate": est });
    written.extend(emit(stem, "fit", config, meta, None)?);
    Ok(written)
}

pub fn validate(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let mut report = Vec::new();
    for p in config.curves()? {
        report.push(json!({
            "params": p,
            "validity_metrics": validity_metrics(&p)?,
            "summary": summary_json(&p, config.pathlength),
        }));
    }
    let text = serde_json::to_string_pretty(&report).expect("json");
    writeln!(out, "{text}").map_err(|source| Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}
