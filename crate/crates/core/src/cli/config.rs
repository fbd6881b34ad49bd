//! Run configuration: a TOML file whose dimensional values carry units.
//!
//! ```toml
//! [medium]
//! omega_c = "2.5 Gamma"
//! gamma = "0.05 Gamma"
//! alpha_s = 350
//! delta_p = "-2.0 GHz"
//!
//! [filter]
//! fwhm = "35 MHz"
//! ```
//!
//! Frequencies accept `Gamma`, `kHz`, `MHz` and `GHz` (ordinary frequency,
//! Γ/2π = 6 MHz), squared frequencies `Gamma^2`, times `ns`, `us` and
//! `Gamma^-1`. Optical depths and counts are bare numbers.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::Serialize;
use toml::{Spanned, Value};

use crate::analysis::ProfileKind;
use crate::error::{Error, Result};
use crate::medium::{MediumParams, PathlengthMode, PumpMode};
use crate::spectra::DetuningGrid;
use crate::temporal::FilterSpec;
use crate::units;

const SECTIONS: &[(&str, &[&str])] = &[
    ("medium", &["omega_c", "gamma", "alpha_s", "alpha_as", "gamma_doppler", "omega_p", "delta_p"]),
    ("grid", &["span", "points"]),
    ("filter", &["fwhm"]),
    ("modes", &["pathlength", "pump", "sinc"]),
    ("output", &["path", "format"]),
    ("sweep", &["omega_c", "gamma", "alpha_s", "omega_c_sq"]),
    ("spectrum", &["kind", "compare"]),
    ("wavepacket", &["bin_width", "t_min", "t_max", "grid_span", "grid_points", "fit"]),
    ("map", &["kind"]),
    ("fit", &["kind", "power_ratios", "baseline_window"]),
];

/// Physical dimension of a configured quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Frequency,
    FrequencySquared,
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    /// Data in CSV, metadata in a JSON sidecar.
    Csv,
    /// Data and metadata in one JSON file.
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputSettings {
    /// File stem; extensions and curve suffixes are appended.
    pub path: PathBuf,
    pub format: OutputFormat,
}

/// Half-width and point count of a spectrum grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSettings {
    pub span: f64,
    pub points: usize,
}

/// Curves to compute. `omega_c`, `gamma` and `alpha_s` lists are paired
/// element by element; `omega_c_sq` is the map and ratio axis.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Sweep {
    pub omega_c: Option<Vec<f64>>,
    pub gamma: Option<Vec<f64>>,
    pub alpha_s: Option<Vec<f64>>,
    pub omega_c_sq: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumSettings {
    pub kind: ProfileKind,
    /// Also emit the analytic approximation.
    pub compare: bool,
}

/// Times in Γ⁻¹. `None` windows default to `[−1, 10]/Γ_BI` per curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavepacketSettings {
    pub bin_width: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub grid_span: f64,
    pub grid_points: usize,
    pub fit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitKind {
    /// One wave packet, columns `tau_ns,g2`.
    Wavepacket,
    /// EIT spectra at several powers, columns `delta_gamma_units,transmission`.
    Eit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSettings {
    pub kind: FitKind,
    pub power_ratios: Option<Vec<f64>>,
    pub baseline_window: f64,
}

/// Fully resolved configuration, every value in Γ units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub params: MediumParams,
    pub grid: Option<GridSettings>,
    pub filter: FilterSpec,
    pub pathlength: PathlengthMode,
    pub pump: PumpMode,
    pub sinc: bool,
    pub output: OutputSettings,
    pub sweep: Sweep,
    pub spectrum: SpectrumSettings,
    pub wavepacket: WavepacketSettings,
    pub map_kind: ProfileKind,
    pub fit: FitSettings,
    #[serde(skip)]
    source: PathBuf,
    #[serde(skip)]
    lines: HashMap<String, usize>,
}

type Section = BTreeMap<String, Spanned<Value>>;

struct Doc<'a> {
    path: &'a Path,
    sections: BTreeMap<String, Spanned<Section>>,
    lines: HashMap<String, usize>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

impl<'a> Doc<'a> {
    fn parse(path: &'a Path, text: &'a str) -> Result<Self> {
        let sections: BTreeMap<String, Spanned<Section>> = toml::from_str(text).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            line: e.span().map_or(0, |s| line_of(text, s.start)),
            field: String::new(),
            message: e.message().trim().to_string(),
        })?;
        let mut lines = HashMap::new();
        for (name, section) in &sections {
            let Some((_, keys)) = SECTIONS.iter().find(|(s, _)| s == name) else {
                return Err(Error::Config {
                    path: path.to_path_buf(),
                    line: line_of(text, section.span().start),
                    field: name.clone(),
                    message: format!(
                        "unknown section; expected one of {}",
                        SECTIONS.iter().map(|(s, _)| *s).collect::<Vec<_>>().join(", ")
                    ),
                });
            };
            for (key, value) in section.get_ref() {
                let line = line_of(text, value.span().start);
                if !keys.contains(&key.as_str()) {
                    return Err(Error::Config {
                        path: path.to_path_buf(),
                        line,
                        field: format!("{name}.{key}"),
                        message: format!("unknown key; expected one of {}", keys.join(", ")),
                    });
                }
                lines.insert(format!("{name}.{key}"), line);
            }
        }
        Ok(Self {
            path,
            sections,
            lines,
        })
    }

    fn get(&self, section: &str, key: &str) -> Option<&Spanned<Value>> {
        self.sections.get(section)?.get_ref().get(key)
    }

    fn error(&self, section: &str, key: &str, message: impl Into<String>) -> Error {
        let field = format!("{section}.{key}");
        Error::Config {
            path: self.path.to_path_buf(),
            line: self.lines.get(&field).copied().unwrap_or(0),
            field,
            message: message.into(),
        }
    }

    fn quantity(&self, section: &str, key: &str, dim: Dim) -> Result<Option<f64>> {
        let Some(v) = self.get(section, key) else {
            return Ok(None);
        };
        quantity_value(v.get_ref(), dim)
            .map(Some)
            .map_err(|m| self.error(section, key, m))
    }

    fn number(&self, section: &str, key: &str) -> Result<Option<f64>> {
        let Some(v) = self.get(section, key) else {
            return Ok(None);
        };
        plain_number(v.get_ref())
            .map(Some)
            .map_err(|m| self.error(section, key, m))
    }

    fn count(&self, section: &str, key: &str) -> Result<Option<usize>> {
        match self.get(section, key).map(|v| v.get_ref()) {
            None => Ok(None),
            Some(Value::Integer(n)) if *n > 0 => Ok(Some(*n as usize)),
            Some(_) => Err(self.error(section, key, "expected a positive integer")),
        }
    }

    fn boolean(&self, section: &str, key: &str) -> Result<Option<bool>> {
        match self.get(section, key).map(|v| v.get_ref()) {
            None => Ok(None),
            Some(Value::Boolean(b)) => Ok(Some(*b)),
            Some(_) => Err(self.error(section, key, "expected true or false")),
        }
    }

    fn choice<T: Copy>(&self, section: &str, key: &str, options: &[(&str, T)]) -> Result<Option<T>> {
        let Some(v) = self.get(section, key) else {
            return Ok(None);
        };
        let names = options.iter().map(|(n, _)| format!("\"{n}\"")).collect::<Vec<_>>().join(", ");
        match v.get_ref() {
            Value::String(s) => options
                .iter()
                .find(|(n, _)| n == s)
                .map(|(_, t)| Some(*t))
                .ok_or_else(|| self.error(section, key, format!("`{s}` is not one of {names}"))),
            _ => Err(self.error(section, key, format!("expected one of {names}"))),
        }
    }

    fn string(&self, section: &str, key: &str) -> Result<Option<String>> {
        match self.get(section, key).map(|v| v.get_ref()) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(self.error(section, key, "expected a string")),
        }
    }

    /// A list of values, or for axes an inline table
    /// `{ from = …, to = …, points = n, spacing = "linear" | "log" }`.
    fn list(&self, section: &str, key: &str, dim: Option<Dim>) -> Result<Option<Vec<f64>>> {
        let Some(v) = self.get(section, key) else {
            return Ok(None);
        };
        let one = |v: &Value| match dim {
            Some(d) => quantity_value(v, d),
            None => plain_number(v),
        };
        let err = |m: String| self.error(section, key, m);
        let values = match v.get_ref() {
            Value::Array(items) => items
                .iter()
                .enumerate()
                .map(|(i, item)| one(item).map_err(|m| format!("element {i}: {m}")))
                .collect::<std::result::Result<Vec<f64>, String>>()
                .map_err(err)?,
            Value::Table(t) => {
                let field = |k: &str| t.get(k).ok_or_else(|| format!("range needs `{k}`"));
                let from = one(field("from").map_err(err)?).map_err(|m| err(format!("from: {m}")))?;
                let to = one(field("to").map_err(err)?).map_err(|m| err(format!("to: {m}")))?;
                let points = match field("points").map_err(err)? {
                    Value::Integer(n) if *n >= 2 => *n as usize,
                    _ => return Err(err("points: expected an integer >= 2".into())),
                };
                if let Some(k) = t.keys().find(|k| !["from", "to", "points", "spacing"].contains(&k.as_str())) {
                    return Err(err(format!("unknown range key `{k}`")));
                }
                let log = match t.get("spacing") {
                    None => false,
                    Some(Value::String(s)) if s == "linear" => false,
                    Some(Value::String(s)) if s == "log" => true,
                    Some(_) => return Err(err("spacing: expected \"linear\" or \"log\"".into())),
                };
                if log && !(from > 0.0 && to > 0.0) {
                    return Err(err("log spacing needs positive end points".into()));
                }
                let last = (points - 1) as f64;
                (0..points)
                    .map(|k| {
                        let s = k as f64 / last;
                        if log {
                            from * (to / from).powf(s)
                        } else {
                            from + (to - from) * s
                        }
                    })
                    .collect()
            }
            _ => return Err(err("expected an array or a { from, to, points } range".into())),
        };
        if values.is_empty() {
            return Err(err("list is empty".into()));
        }
        Ok(Some(values))
    }
}

fn plain_number(v: &Value) -> std::result::Result<f64, String> {
    match v {
        Value::Integer(n) => Ok(*n as f64),
        Value::Float(x) => Ok(*x),
        Value::String(s) => s.trim().parse().map_err(|_| format!("`{s}` is not a number")),
        _ => Err("expected a number".into()),
    }
}

fn quantity_value(v: &Value, dim: Dim) -> std::result::Result<f64, String> {
    let example = match dim {
        Dim::Frequency => "\"0.05 Gamma\" or \"35 MHz\"",
        Dim::FrequencySquared => "\"4 Gamma^2\"",
        Dim::Time => "\"3.2 ns\"",
    };
    match v {
        Value::String(s) => parse_quantity(s, dim),
        Value::Integer(_) | Value::Float(_) => Err(format!("missing unit, write e.g. {example}")),
        _ => Err(format!("expected a quantity such as {example}")),
    }
}

/// Parses `"<number> <unit>"` into Γ units.
pub fn parse_quantity(text: &str, dim: Dim) -> std::result::Result<f64, String> {
    let s = text.trim();
    let split = s
        .find(|c: char| c.is_alphabetic() || c == 'Γ')
        .ok_or_else(|| format!("`{s}` has no unit"))?;
    let (number, unit) = s.split_at(split);
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("`{}` is not a number", number.trim()))?;
    let unit = unit.trim();
    let converted = match (dim, unit) {
        (Dim::Frequency, "Gamma" | "Γ") => value,
        (Dim::Frequency, "kHz") => units::from_mhz(value * 1e-3),
        (Dim::Frequency, "MHz") => units::from_mhz(value),
        (Dim::Frequency, "GHz") => units::from_mhz(value * 1e3),
        (Dim::FrequencySquared, "Gamma^2" | "Γ^2" | "Γ²") => value,
        (Dim::Time, "ns") => units::from_physical_time(value),
        (Dim::Time, "us" | "µs") => units::from_physical_time(value * 1e3),
        (Dim::Time, "Gamma^-1" | "Γ^-1" | "Γ⁻¹") => value,
        _ => {
            let allowed = match dim {
                Dim::Frequency => "Gamma, kHz, MHz, GHz",
                Dim::FrequencySquared => "Gamma^2",
                Dim::Time => "ns, us, Gamma^-1",
            };
            return Err(format!("unit `{unit}` not accepted here (use {allowed})"));
        }
    };
    if !converted.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(converted)
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(path, &text)
    }

    /// Parses and validates `text`; `path` is used in diagnostics only.
    pub fn parse(path: &Path, text: &str) -> Result<Self> {
        let doc = Doc::parse(path, text)?;
        use Dim::*;

        let need = |key: &str, v: Option<f64>| v.ok_or_else(|| doc.error("medium", key, "required"));
        let sweep = Sweep {
            omega_c: doc.list("sweep", "omega_c", Some(Frequency))?,
            gamma: doc.list("sweep", "gamma", Some(Frequency))?,
            alpha_s: doc.list("sweep", "alpha_s", None)?,
            omega_c_sq: doc.list("sweep", "omega_c_sq", Some(FrequencySquared))?,
        };
        // Swept quantities may be left out of [medium]; the first sweep value stands in.
        let first = |v: &Option<Vec<f64>>| v.as_ref().map(|l| l[0]);
        let omega_c = match doc.quantity("medium", "omega_c", Frequency)? {
            Some(v) => v,
            None => first(&sweep.omega_c)
                .or_else(|| first(&sweep.omega_c_sq).map(f64::sqrt))
                .map_or_else(|| need("omega_c", None), Ok)?,
        };
        let gamma = match doc.quantity("medium", "gamma", Frequency)? {
            Some(v) => v,
            None => first(&sweep.gamma).map_or_else(|| need("gamma", None), Ok)?,
        };
        let alpha_s = match doc.number("medium", "alpha_s")? {
            Some(v) => v,
            None => first(&sweep.alpha_s).map_or_else(|| need("alpha_s", None), Ok)?,
        };
        let mut params = MediumParams::new(omega_c, gamma, alpha_s);
        if let Some(v) = doc.number("medium", "alpha_as")? {
            params.alpha_as = v;
        }
        if let Some(v) = doc.quantity("medium", "gamma_doppler", Frequency)? {
            params.gamma_doppler = v;
        }
        if let Some(v) = doc.quantity("medium", "omega_p", Frequency)? {
            params.omega_p = v;
        }
        if let Some(v) = doc.quantity("medium", "delta_p", Frequency)? {
            params.delta_p = v;
        }

        let grid = match (doc.quantity("grid", "span", Frequency)?, doc.count("grid", "points")?) {
            (Some(span), Some(points)) => Some(GridSettings { span, points }),
            (None, None) => None,
            (Some(_), None) => return Err(doc.error("grid", "points", "required when span is given")),
            (None, Some(_)) => return Err(doc.error("grid", "span", "required when points is given")),
        };

        let filter = match doc.get("filter", "fwhm").map(|v| v.get_ref()) {
            None => FilterSpec::None,
            Some(Value::String(s)) if s.trim() == "none" => FilterSpec::None,
            Some(_) => FilterSpec::LorentzianEtalon {
                fwhm: doc.quantity("filter", "fwhm", Frequency)?.unwrap(),
            },
        };

        let pathlength = doc
            .choice(
                "modes",
                "pathlength",
                &[("quarter", PathlengthMode::BiphotonQuarter), ("half", PathlengthMode::ClassicalProbeHalf)],
            )?
            .unwrap_or_default();
        let pump = doc
            .choice(
                "modes",
                "pump",
                &[("exact", PumpMode::ExactPumpDenominator), ("constant", PumpMode::ConstantPumpRatio)],
            )?
            .unwrap_or_default();
        let sinc = doc.boolean("modes", "sinc")?.unwrap_or(true);

        let output = OutputSettings {
            path: doc.string("output", "path")?.map_or_else(|| PathBuf::from("biphoton_out"), PathBuf::from),
            format: doc
                .choice("output", "format", &[("csv", OutputFormat::Csv), ("json", OutputFormat::Json)])?
                .unwrap_or(OutputFormat::Csv),
        };

        let kinds = [("eit", ProfileKind::Eit), ("fwm", ProfileKind::Fwm), ("overall", ProfileKind::Overall)];
        let spectrum = SpectrumSettings {
            kind: doc.choice("spectrum", "kind", &kinds)?.unwrap_or(ProfileKind::Eit),
            compare: doc.boolean("spectrum", "compare")?.unwrap_or(false),
        };
        let wavepacket = WavepacketSettings {
            bin_width: doc.quantity("wavepacket", "bin_width", Time)?,
            t_min: doc.quantity("wavepacket", "t_min", Time)?,
            t_max: doc.quantity("wavepacket", "t_max", Time)?,
            grid_span: doc.quantity("wavepacket", "grid_span", Frequency)?.unwrap_or(400.0),
            grid_points: doc.count("wavepacket", "grid_points")?.unwrap_or(1 << 16),
            fit: doc.boolean("wavepacket", "fit")?.unwrap_or(true),
        };
        let map_kind = doc.choice("map", "kind", &kinds)?.unwrap_or(ProfileKind::Eit);
        let fit = FitSettings {
            kind: doc
                .choice("fit", "kind", &[("wavepacket", FitKind::Wavepacket), ("eit", FitKind::Eit)])?
                .unwrap_or(FitKind::Wavepacket),
            power_ratios: doc.list("fit", "power_ratios", None)?,
            baseline_window: doc.number("fit", "baseline_window")?.unwrap_or(0.2),
        };

        let config = RunConfig {
            params,
            grid,
            filter,
            pathlength,
            pump,
            sinc,
            output,
            sweep,
            spectrum,
            wavepacket,
            map_kind,
            fit,
            source: path.to_path_buf(),
            lines: doc.lines,
        };
        config.check()?;
        Ok(config)
    }

    /// Turns a parameter error into a diagnostic pointing at the config line
    /// that set the field.
    pub fn locate(&self, err: Error) -> Error {
        self.locate_from(err, "medium")
    }

    fn locate_from(&self, err: Error, first: &str) -> Error {
        let Error::InvalidParameter { field, reason } = &err else {
            return err;
        };
        let candidates = [
            format!("{first}.{field}"),
            format!("medium.{field}"),
            format!("sweep.{field}"),
            format!("grid.{field}"),
            format!("wavepacket.{field}"),
            format!("fit.{field}"),
        ];
        let hit = candidates.iter().find(|c| self.lines.contains_key(*c));
        let field_name = hit.cloned().unwrap_or_else(|| field.to_string());
        Error::Config {
            path: self.source.clone(),
            line: hit.and_then(|c| self.lines.get(c)).copied().unwrap_or(0),
            field: field_name,
            message: reason.clone(),
        }
    }

    fn check(&self) -> Result<()> {
        self.params.validate().map_err(|e| self.locate(e))?;
        // Sweep lists are checked one value at a time; pairing is checked by `curves`.
        let base = self.params;
        let swept: [(&Option<Vec<f64>>, fn(MediumParams, f64) -> MediumParams); 3] = [
            (&self.sweep.omega_c, MediumParams::with_omega_c),
            (&self.sweep.gamma, MediumParams::with_gamma),
            (&self.sweep.alpha_s, MediumParams::with_alpha_s),
        ];
        for (list, set) in swept {
            for v in list.iter().flatten() {
                set(base, *v).validate().map_err(|e| self.locate_from(e, "sweep"))?;
            }
        }
        self.filter.validate().map_err(|e| self.locate(e))?;
        if let Some(g) = self.grid {
            if !(g.span > 0.0) {
                return Err(self.locate(Error::invalid("span", "must be > 0")));
            }
            if g.points < 2 {
                return Err(self.locate(Error::invalid("points", "need at least 2 points")));
            }
        }
        let w = &self.wavepacket;
        if !w.grid_points.is_power_of_two() {
            return Err(self.locate(Error::invalid("grid_points", "must be a power of two")));
        }
        if !(w.grid_span > 0.0) {
            return Err(self.locate(Error::invalid("grid_span", "must be > 0")));
        }
        if matches!(w.bin_width, Some(b) if !(b > 0.0)) {
            return Err(self.locate(Error::invalid("bin_width", "must be > 0")));
        }
        if let (Some(a), Some(b)) = (w.t_min, w.t_max) {
            if !(a < b) {
                return Err(self.locate(Error::invalid("t_max", "must exceed t_min")));
            }
        }
        if !(self.fit.baseline_window > 0.0 && self.fit.baseline_window < 0.5) {
            return Err(self.locate(Error::invalid("baseline_window", "must lie in (0, 0.5)")));
        }
        if let Some(r) = &self.fit.power_ratios {
            if r.iter().any(|v| !(*v > 0.0)) {
                return Err(self.locate(Error::invalid("power_ratios", "must be > 0")));
            }
        }
        for (name, axis) in [("omega_c_sq", &self.sweep.omega_c_sq)] {
            if let Some(a) = axis {
                if a.iter().any(|v| !(*v > 0.0)) || a.windows(2).any(|w| !(w[0] < w[1])) {
                    return Err(self.locate(Error::invalid(name, "must be positive and strictly increasing")));
                }
            }
        }
        Ok(())
    }

    /// Parameter sets for spectrum, wavepacket and validate: the paired
    /// `omega_c`/`gamma`/`alpha_s` sweep lists, or `params` alone.
    pub fn curves(&self) -> Result<Vec<MediumParams>> {
        let lists = [
            ("omega_c", &self.sweep.omega_c),
            ("gamma", &self.sweep.gamma),
            ("alpha_s", &self.sweep.alpha_s),
        ];
        let mut len = None;
        for (name, list) in lists {
            if let Some(l) = list {
                match len {
                    Some(n) if n != l.len() && l.len() != 1 => {
                        return Err(self.locate(Error::invalid(name, format!("has {} values, expected {n}", l.len()))));
                    }
                    _ => len = Some(len.unwrap_or(0).max(l.len())),
                }
            }
        }
        let Some(n) = len else {
            return Ok(vec![self.params]);
        };
        let pick = |l: &Option<Vec<f64>>, i: usize| l.as_ref().map(|v| if v.len() == 1 { v[0] } else { v[i] });
        Ok((0..n)
            .map(|i| {
                let mut p = self.params;
                if let Some(v) = pick(&self.sweep.omega_c, i) {
                    p.omega_c = v;
                }
                if let Some(v) = pick(&self.sweep.gamma, i) {
                    p.gamma = v;
                }
                if let Some(v) = pick(&self.sweep.alpha_s, i) {
                    // α_as follows α_s in proportion.
                    p.alpha_as = v * self.params.alpha_as / self.params.alpha_s;
                    p.alpha_s = v;
                }
                p
            })
            .collect())
    }

    pub fn is_sweep(&self) -> bool {
        self.sweep.omega_c.is_some() || self.sweep.gamma.is_some() || self.sweep.alpha_s.is_some()
    }

    /// Spectrum grid for one curve: the configured one, or a default that
    /// covers the features of `p`.
    pub fn spectrum_grid(&self, p: &MediumParams) -> Result<DetuningGrid> {
        match self.grid {
            Some(g) => DetuningGrid::linspace(g.span, g.points),
            None => DetuningGrid::default_for(p, self.pathlength),
        }
    }

    pub fn source(&self) -> &Path {
        &self.source
    }
}
