//! Line-oriented `key = value` configuration with `[section]` headers.
//!
//! ```text
//! # Earth, one metre apart
//! [body]
//! preset = earth
//! [protocol]
//! h = 1
//! d = 0.3e-6
//! ```
//!
//! Keys before any header belong to the unnamed section `""`. Later entries
//! override earlier ones, except for keys declared repeatable.

use std::path::PathBuf;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spacetime::{PhysicalConstants, EARTH_MASS, EARTH_RADIUS};
use crate::switch_model::ModelParams;
use crate::trigger::{Frame, GridSpec, DEFAULT_VALIDITY_FACTOR};

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub section: String,
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub entries: Vec<Entry>,
}

pub fn parse_config(text: &str) -> Result<RawConfig> {
    let mut section = String::new();
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::Config { line, msg: "unterminated section header".into() })?
                .trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                return Err(Error::Config { line, msg: format!("bad section name {name:?}") });
            }
            section = name.to_string();
            continue;
        }
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| Error::Config { line, msg: format!("expected key = value, got {content:?}") })?;
        let key = k.trim();
        if key.is_empty() {
            return Err(Error::Config { line, msg: "empty key".into() });
        }
        entries.push(Entry { section: section.clone(), key: key.to_string(), value: v.trim().to_string(), line });
    }
    Ok(RawConfig { entries })
}

impl RawConfig {
    /// Append `other`, whose entries take precedence.
    pub fn extend(&mut self, other: RawConfig) {
        self.entries.extend(other.entries);
    }
}

fn bad(e: &Entry, msg: impl std::fmt::Display) -> Error {
    Error::Config { line: e.line, msg: format!("[{}] {}: {msg}", e.section, e.key) }
}

pub fn parse_f64(e: &Entry) -> Result<f64> {
    let v: f64 = e.value.parse().map_err(|_| bad(e, format!("not a number: {:?}", e.value)))?;
    if !v.is_finite() {
        return Err(bad(e, "must be finite"));
    }
    Ok(v)
}

fn parse_positive(e: &Entry) -> Result<f64> {
    let v = parse_f64(e)?;
    if v <= 0.0 {
        return Err(bad(e, "must be positive"));
    }
    Ok(v)
}

fn parse_usize(e: &Entry) -> Result<usize> {
    e.value.parse().map_err(|_| bad(e, format!("not a non-negative integer: {:?}", e.value)))
}

/// Complex literal: `1`, `-0.5i`, `0.6+0.8i`, `1e-3-2e-3i`, `i`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().filter(|v: &f64| v.is_finite()).map(|v| Complex64::new(v, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => t.parse().ok(),
        }
    };
    let (re, im) = match split {
        Some(p) => (body[..p].parse().ok()?, imag(&body[p..])?),
        None => (0.0, imag(body)?),
    };
    let z = Complex64::new(re, im);
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

fn complex(e: &Entry) -> Result<Complex64> {
    parse_complex(&e.value).ok_or_else(|| bad(e, format!("not a complex number: {:?}", e.value)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: String,
    pub scale: Scale,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        if n == 1 {
            return vec![self.min];
        }
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i + 1 == n {
                    return self.max;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * f,
                    Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Timing,
    Switch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub engine: Engine,
    pub axes: Vec<Axis>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriggerMode {
    Analytic,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolSpec {
    pub h: f64,
    pub d: f64,
    /// Explicit ascent duration; otherwise `ascent_fraction * dt_r`.
    pub dt_v: Option<f64>,
    pub ascent_fraction: f64,
    /// Explicit hold at the lower radius; otherwise the matching value.
    pub dt_s: Option<f64>,
    pub dtau_1: f64,
    pub epsilon: f64,
    pub feasibility_factor: f64,
    /// Radius for the static-agent baseline; defaults to the body radius.
    pub baseline_radius: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchSpec {
    pub run_id: String,
    pub alpha: [Complex64; 5],
    pub model: ModelParams,
    /// Draw model and input at random from this seed.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriggerSpec {
    pub mass: f64,
    /// Alarm time; defaults to the protocol's crossing proper time.
    pub tau_star: Option<f64>,
    pub delta_over_sigma: f64,
    pub amp_over_delta: f64,
    /// Coupling override in units of `hbar omega`; 0 gives a free oscillator.
    pub v0_scale: Option<f64>,
    pub mode: TriggerMode,
    pub grid: GridSpec,
    pub samples: usize,
    pub validity_factor: f64,
    pub hold: f64,
    pub fire: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Resolved constants; see [`ScenarioConfig::resolve_constants`].
    pub constants: PhysicalConstants,
    pub constants_file: Option<PathBuf>,
    /// Inline `c`, `g`, `hbar` overrides, applied after any constants file.
    pub constant_overrides: [Option<f64>; 3],
    pub mass: f64,
    pub radius: f64,
    pub protocol: ProtocolSpec,
    pub switch: SwitchSpec,
    pub trigger: TriggerSpec,
    pub sweep: Option<SweepSpec>,
    pub out_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let mut alpha = [Complex64::new(0.0, 0.0); 5];
        alpha[0] = Complex64::new(1.0, 0.0);
        ScenarioConfig {
            constants: PhysicalConstants::CODATA_2018,
            constants_file: None,
            constant_overrides: [None; 3],
            mass: EARTH_MASS,
            radius: EARTH_RADIUS,
            protocol: ProtocolSpec {
                h: 1.0,
                d: 0.3e-6,
                dt_v: None,
                ascent_fraction: 0.01,
                dt_s: None,
                dtau_1: 1e-17,
                epsilon: 1e-19,
                feasibility_factor: crate::timing::DEFAULT_FEASIBILITY_FACTOR,
                baseline_radius: None,
            },
            switch: SwitchSpec { run_id: "run".into(), alpha, model: ModelParams::default(), seed: None },
            trigger: TriggerSpec {
                mass: 1e-25,
                tau_star: None,
                delta_over_sigma: 20.0,
                amp_over_delta: 20.0,
                v0_scale: None,
                mode: TriggerMode::Both,
                grid: GridSpec::default(),
                samples: 101,
                validity_factor: DEFAULT_VALIDITY_FACTOR,
                hold: 0.99,
                fire: 0.95,
            },
            sweep: None,
            out_dir: None,
            format: Format::Csv,
        }
    }
}

/// Body presets selectable with `[body] preset = NAME`.
pub fn body_preset(name: &str) -> Option<(f64, f64)> {
    match name {
        "earth" => Some((EARTH_MASS, EARTH_RADIUS)),
        "small-mass" => Some((1e-10, 1e-15)),
        _ => None,
    }
}

fn target_level(e: &Entry) -> Result<usize> {
    match e.value.as_str() {
        "e1" => Ok(0),
        "e2" => Ok(1),
        "e3" => Ok(2),
        "e4" => Ok(3),
        "e5" => Ok(4),
        _ => Err(bad(e, "expected one of e1..e5")),
    }
}

/// Parameters a sweep may vary, per engine.
pub const TIMING_SWEEP_PARAMS: &[&str] = &["h", "d", "mass", "radius", "dt_v", "ascent_fraction"];
pub const SWITCH_SWEEP_PARAMS: &[&str] = &[
    "c1a", "c4a", "c1b", "c2b", "f_ba", "f_ab", "delta_1a", "delta_4a", "delta_1b", "delta_2b", "gamma_ba", "gamma_ab",
];

impl ScenarioConfig {
    /// Built-in constants, then the constants file (`env_file` wins over the
    /// configured one), then inline overrides.
    pub fn resolve_constants(&mut self, env_file: Option<&std::path::Path>) -> Result<()> {
        let mut k = PhysicalConstants::CODATA_2018;
        if let Some(path) = env_file.or(self.constants_file.as_deref()) {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Usage(format!("cannot read constants file {}: {e}", path.display()))
            })?;
            k = load_constants(&text, k)?;
        }
        let [c, g, hbar] = self.constant_overrides;
        self.constants = PhysicalConstants::new(c.unwrap_or(k.c), g.unwrap_or(k.g), hbar.unwrap_or(k.hbar))?;
        Ok(())
    }

    /// Set one sweepable parameter by name.
    pub fn set_param(&mut self, name: &str, v: f64) -> Result<()> {
        let m = &mut self.switch.model;
        let p = &mut self.protocol;
        match name {
            "h" => p.h = v,
            "d" => p.d = v,
            "dt_v" => p.dt_v = Some(v),
            "ascent_fraction" => p.ascent_fraction = v,
            "mass" => self.mass = v,
            "radius" => self.radius = v,
            "c1a" => m.c1a = Complex64::new(v, 0.0),
            "c4a" => m.c4a = Complex64::new(v, 0.0),
            "c1b" => m.c1b = Complex64::new(v, 0.0),
            "c2b" => m.c2b = Complex64::new(v, 0.0),
            "f_ba" => m.f_ba = Complex64::new(v, 0.0),
            "f_ab" => m.f_ab = Complex64::new(v, 0.0),
            "delta_1a" => m.delta_1a = v,
            "delta_4a" => m.delta_4a = v,
            "delta_1b" => m.delta_1b = v,
            "delta_2b" => m.delta_2b = v,
            "gamma_ba" => m.gamma_ba = v,
            "gamma_ab" => m.gamma_ab = v,
            _ => return Err(Error::Usage(format!("unknown parameter {name}"))),
        }
        Ok(())
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let mut cfg = ScenarioConfig::default();
        let mut axes: Vec<(Axis, usize)> = Vec::new();
        let mut engine: Option<(Engine, usize)> = None;
        for e in &raw.entries {
            cfg.apply(e, &mut axes, &mut engine)?;
        }
        if let Some((engine, engine_line)) = engine {
            if axes.is_empty() {
                return Err(Error::Config { line: engine_line, msg: "[sweep] needs at least one axis".into() });
            }
            if axes.len() > 2 {
                return Err(Error::Config { line: axes[2].1, msg: "[sweep] takes at most two axes".into() });
            }
            let allowed = match engine {
                Engine::Timing => TIMING_SWEEP_PARAMS,
                Engine::Switch => SWITCH_SWEEP_PARAMS,
            };
            for (a, line) in &axes {
                if !allowed.contains(&a.param.as_str()) {
                    return Err(Error::Config {
                        line: *line,
                        msg: format!("parameter {} cannot be swept by this engine (allowed: {})", a.param, allowed.join(", ")),
                    });
                }
            }
            cfg.sweep = Some(SweepSpec { engine, axes: axes.into_iter().map(|(a, _)| a).collect() });
        } else if let Some((_, line)) = axes.first() {
            return Err(Error::Config { line: *line, msg: "[sweep] axis given without engine".into() });
        }
        Ok(cfg)
    }

    fn apply(&mut self, e: &Entry, axes: &mut Vec<(Axis, usize)>, engine: &mut Option<(Engine, usize)>) -> Result<()> {
        let p = &mut self.protocol;
        let s = &mut self.switch;
        let m = &mut s.model;
        let t = &mut self.trigger;
        match (e.section.as_str(), e.key.as_str()) {
            ("constants", "c") => self.constant_overrides[0] = Some(parse_positive(e)?),
            ("constants", "g") => self.constant_overrides[1] = Some(parse_positive(e)?),
            ("constants", "hbar") => self.constant_overrides[2] = Some(parse_positive(e)?),
            ("constants", "file") => self.constants_file = Some(PathBuf::from(&e.value)),

            ("body", "preset") => {
                let (mass, radius) = body_preset(&e.value).ok_or_else(|| bad(e, "unknown body preset (earth, small-mass)"))?;
                self.mass = mass;
                self.radius = radius;
            }
            ("body", "mass") => self.mass = parse_positive(e)?,
            ("body", "radius") => self.radius = parse_positive(e)?,

            ("protocol", "h") => p.h = parse_positive(e)?,
            ("protocol", "d") => p.d = parse_positive(e)?,
            ("protocol", "dt_v") => p.dt_v = Some(parse_f64(e)?),
            ("protocol", "ascent_fraction") => p.ascent_fraction = parse_f64(e)?,
            ("protocol", "dt_s") => p.dt_s = Some(parse_f64(e)?),
            ("protocol", "dtau_1") => p.dtau_1 = parse_positive(e)?,
            ("protocol", "epsilon") => p.epsilon = parse_positive(e)?,
            ("protocol", "feasibility_factor") => p.feasibility_factor = parse_positive(e)?,
            ("protocol", "baseline_radius") => p.baseline_radius = Some(parse_positive(e)?),

            ("switch", "run_id") => {
                if e.value.is_empty() || e.value.contains([',', '"']) {
                    return Err(bad(e, "run id must be non-empty without commas or quotes"));
                }
                s.run_id = e.value.clone();
            }
            ("switch", "input") => {
                let i = target_level(e)?;
                s.alpha = [Complex64::new(0.0, 0.0); 5];
                s.alpha[i] = Complex64::new(1.0, 0.0);
            }
            ("switch", "alpha") => {
                let parts: Vec<&str> = e.value.split(',').collect();
                if parts.len() != 5 {
                    return Err(bad(e, "expected five comma-separated amplitudes"));
                }
                for (slot, part) in s.alpha.iter_mut().zip(parts) {
                    *slot = parse_complex(part).ok_or_else(|| bad(e, format!("not a complex number: {part:?}")))?;
                }
            }
            ("switch", "seed") => s.seed = Some(e.value.parse().map_err(|_| bad(e, "seed must be an unsigned integer"))?),
            ("switch", "c1a") => m.c1a = complex(e)?,
            ("switch", "c4a") => m.c4a = complex(e)?,
            ("switch", "c1b") => m.c1b = complex(e)?,
            ("switch", "c2b") => m.c2b = complex(e)?,
            ("switch", "f_ba") => m.f_ba = complex(e)?,
            ("switch", "f_ab") => m.f_ab = complex(e)?,
            ("switch", "delta_1a") => m.delta_1a = parse_f64(e)?,
            ("switch", "delta_4a") => m.delta_4a = parse_f64(e)?,
            ("switch", "delta_1b") => m.delta_1b = parse_f64(e)?,
            ("switch", "delta_2b") => m.delta_2b = parse_f64(e)?,
            ("switch", "gamma_ba") => m.gamma_ba = parse_f64(e)?,
            ("switch", "gamma_ab") => m.gamma_ab = parse_f64(e)?,

            ("trigger", "mass") => t.mass = parse_positive(e)?,
            ("trigger", "tau_star") => t.tau_star = Some(parse_positive(e)?),
            ("trigger", "delta_over_sigma") => t.delta_over_sigma = parse_positive(e)?,
            ("trigger", "amp_over_delta") => t.amp_over_delta = parse_positive(e)?,
            ("trigger", "v0") => {
                let v = parse_f64(e)?;
                if v < 0.0 {
                    return Err(bad(e, "must be non-negative"));
                }
                t.v0_scale = Some(v);
            }
            ("trigger", "mode") => {
                t.mode = match e.value.as_str() {
                    "analytic" => TriggerMode::Analytic,
                    "numeric" => TriggerMode::Numeric,
                    "both" => TriggerMode::Both,
                    _ => return Err(bad(e, "expected analytic, numeric or both")),
                }
            }
            ("trigger", "grid_points") => t.grid.points = parse_usize(e)?,
            ("trigger", "half_width") => t.grid.half_width = parse_positive(e)?,
            ("trigger", "frame") => {
                t.grid.frame = match e.value.as_str() {
                    "comoving" => Frame::CoMoving,
                    "lab" => Frame::Lab,
                    _ => return Err(bad(e, "expected comoving or lab")),
                }
            }
            ("trigger", "step_fraction") => t.grid.step_fraction = parse_positive(e)?,
            ("trigger", "samples") => t.samples = parse_usize(e)?.max(2),
            ("trigger", "validity_factor") => t.validity_factor = parse_positive(e)?,
            ("trigger", "hold_threshold") => t.hold = parse_f64(e)?,
            ("trigger", "fire_threshold") => t.fire = parse_f64(e)?,

            ("sweep", "engine") => {
                let kind = match e.value.as_str() {
                    "timing" => Engine::Timing,
                    "switch" => Engine::Switch,
                    _ => return Err(bad(e, "expected timing or switch")),
                };
                *engine = Some((kind, e.line));
            }
            ("sweep", "axis") => axes.push((parse_axis(e)?, e.line)),

            ("output", "dir") => self.out_dir = Some(PathBuf::from(&e.value)),
            ("output", "format") => {
                self.format = match e.value.as_str() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(bad(e, "expected csv or json")),
                }
            }
            _ => {
                return Err(Error::Config {
                    line: e.line,
                    msg: format!("unknown key {:?} in section [{}]", e.key, e.section),
                })
            }
        }
        Ok(())
    }
}

/// `axis = NAME linear|log MIN MAX COUNT`
fn parse_axis(e: &Entry) -> Result<Axis> {
    let f: Vec<&str> = e.value.split_whitespace().collect();
    if f.len() != 5 {
        return Err(bad(e, "expected: NAME linear|log MIN MAX COUNT"));
    }
    let scale = match f[1] {
        "linear" => Scale::Linear,
        "log" => Scale::Log,
        _ => return Err(bad(e, "scale must be linear or log")),
    };
    let num = |s: &str| -> Result<f64> {
        s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| bad(e, format!("not a number: {s:?}")))
    };
    let (min, max) = (num(f[2])?, num(f[3])?);
    let count: usize = f[4].parse().map_err(|_| bad(e, "count must be a positive integer"))?;
    if count == 0 {
        return Err(bad(e, "count must be positive"));
    }
    if min > max {
        return Err(bad(e, "min exceeds max"));
    }
    if scale == Scale::Log && min <= 0.0 {
        return Err(bad(e, "log axis needs positive bounds"));
    }
    Ok(Axis { param: f[0].to_string(), scale, min, max, count })
}

/// Constants from a file of `c`, `g`, `hbar` keys, bare or under
/// `[constants]`.
pub fn load_constants(text: &str, base: PhysicalConstants) -> Result<PhysicalConstants> {
    let raw = parse_config(text)?;
    let mut k = base;
    for e in &raw.entries {
        match (e.section.as_str(), e.key.as_str()) {
            ("" | "constants", "c") => k.c = parse_positive(e)?,
            ("" | "constants", "g") => k.g = parse_positive(e)?,
            ("" | "constants", "hbar") => k.hbar = parse_positive(e)?,
            _ => {
                return Err(Error::Config {
                    line: e.line,
                    msg: format!("unknown constant {:?}", e.key),
                })
            }
        }
    }
    PhysicalConstants::new(k.c, k.g, k.hbar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_comments_and_overrides() {
        let raw = parse_config("# top\nh0 = 1\n[protocol]\nh = 2 # metres\n\n[protocol]\nh = 3\n").unwrap();
        assert_eq!(raw.entries.len(), 3);
        assert_eq!(raw.entries[0].section, "");
        assert_eq!(raw.entries[2].line, 7);
        let raw = parse_config("[protocol]\nh = 2\nh = 3e0\n").unwrap();
        assert_eq!(ScenarioConfig::from_raw(&raw).unwrap().protocol.h, 3.0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("[protocol]\nh = 1\nbogus = 2\n", 3),
            ("[protocol]\n\nh = abc\n", 3),
            ("[body\n", 1),
            ("[body]\nmass 5\n", 2),
            ("[protocol]\nd = -1\n", 2),
            ("[switch]\nc1a = 1+\n", 2),
        ];
        for (text, line) in cases {
            let err = parse_config(text).and_then(|r| ScenarioConfig::from_raw(&r)).unwrap_err();
            match err {
                Error::Config { line: l, .. } => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other}"),
            }
        }
    }

    #[test]
    fn complex_literals() {
        let c = |re, im| Some(Complex64::new(re, im));
        assert_eq!(parse_complex("1"), c(1.0, 0.0));
        assert_eq!(parse_complex("0.6+0.8i"), c(0.6, 0.8));
        assert_eq!(parse_complex("-0.6-0.8i"), c(-0.6, -0.8));
        assert_eq!(parse_complex("1e-3-2e-3i"), c(1e-3, -2e-3));
        assert_eq!(parse_complex("2.5e+1i"), c(0.0, 25.0));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("x"), None);
        assert_eq!(parse_complex("nan"), None);
    }

    #[test]
    fn axes() {
        let a = Axis { param: "h".into(), scale: Scale::Log, min: 0.1, max: 100.0, count: 4 };
        let v = a.values();
        assert_eq!(v[0], 0.1);
        assert_eq!(v[3], 100.0);
        assert!((v[1] - 1.0).abs() < 1e-12 && (v[2] - 10.0).abs() < 1e-12);
        let raw = parse_config("[sweep]\nengine = timing\naxis = c1a linear 0 1 3\n").unwrap();
        assert!(matches!(ScenarioConfig::from_raw(&raw), Err(Error::Config { line: 3, .. })));
        let raw = parse_config("[sweep]\naxis = h log 1 2 3\n").unwrap();
        assert!(ScenarioConfig::from_raw(&raw).is_err());
    }

    #[test]
    fn constants_file() {
        let k = load_constants("c = 3e8\n[constants]\nhbar = 1e-34\n", PhysicalConstants::CODATA_2018).unwrap();
        assert_eq!(k.c, 3e8);
        assert_eq!(k.hbar, 1e-34);
        assert_eq!(k.g, PhysicalConstants::CODATA_2018.g);
        assert!(load_constants("[x]\nc = 1\n", PhysicalConstants::CODATA_2018).is_err());
    }
}
