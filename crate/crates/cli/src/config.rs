// Copyright 2026 The spinlock Contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: presets, the `key = value` file format and the merge
//! of file settings with command-line flags.
//!
//! Frequencies are in rad/s. A trailing `*2pi` multiplies by 2π, so
//! `omega1 = 2000*2pi` is a 2 kHz drive.

use std::f64::consts::TAU;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use spinlock_core::hamiltonians::PhysicalParams;
use spinlock_core::integrator::{
    Engine, IntegrationSettings, StepControl, DEFAULT_DT, DEFAULT_SAMPLE_SPACING,
};
use thiserror::Error;

pub const PRESET_OMEGA_D: f64 = TAU * 5000.0;
pub const PRESET_TAU_C: f64 = 1e-6;
pub const PRESET_T_END: f64 = 0.05;
/// Drive strengths of the `fig3` grid (Hz). Chosen to bracket the `fig2`
/// value; not taken from any published legend.
pub const FIG3_OMEGA1_HZ: [f64; 4] = [500.0, 1000.0, 2000.0, 4000.0];

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// No drive: dipolar dephasing only.
    Fig1,
    /// Locking at a 2 kHz drive.
    Fig2,
    /// Drive-strength grid.
    Fig3,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig1, Preset::Fig2, Preset::Fig3];

    pub fn omega1_grid(self) -> Vec<f64> {
        match self {
            Preset::Fig1 => vec![0.0],
            Preset::Fig2 => vec![TAU * 2000.0],
            Preset::Fig3 => FIG3_OMEGA1_HZ.iter().map(|hz| TAU * hz).collect(),
        }
    }

    /// Every field the preset fixes.
    pub fn layer(self) -> ConfigLayer {
        ConfigLayer {
            preset: Some(self),
            omega1: Some(self.omega1_grid()),
            omega_d: Some(vec![PRESET_OMEGA_D]),
            tau_c: Some(vec![PRESET_TAU_C]),
            m0: Some(1.0),
            t_end: Some(PRESET_T_END),
            dt: Some(DEFAULT_DT),
            sample_spacing: Some(DEFAULT_SAMPLE_SPACING),
            ..ConfigLayer::default()
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
        })
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Preset::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| format!("unknown preset {s:?} (expected fig1, fig2 or fig3)"))
    }
}

/// A frequency in rad/s, or in Hz with a `*2pi` suffix.
pub fn parse_frequency(s: &str) -> Result<f64, ConfigError> {
    let s = s.trim();
    let (number, factor) = match s.to_ascii_lowercase().strip_suffix("2pi") {
        Some(head) if head.trim_end().ends_with('*') => {
            let head = head.trim_end();
            (s[..head.len() - 1].trim().to_string(), TAU)
        }
        _ => (s.to_string(), 1.0),
    };
    match number.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v * factor),
        _ => err(format!("invalid frequency {s:?}")),
    }
}

fn parse_number(key: &str, s: &str) -> Result<f64, ConfigError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(format!("{key}: invalid number {:?}", s.trim())),
    }
}

/// Comma-separated values; frequencies may carry the `*2pi` suffix.
pub fn parse_list(key: &str, s: &str, frequency: bool) -> Result<Vec<f64>, ConfigError> {
    let values = s
        .split(',')
        .map(|item| {
            if frequency {
                parse_frequency(item).map_err(|e| ConfigError(format!("{key}: {e}")))
            } else {
                parse_number(key, item)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return err(format!("{key}: empty list"));
    }
    Ok(values)
}

/// A partial configuration. Layers stack: preset, then file, then flags.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigLayer {
    pub preset: Option<Preset>,
    pub omega1: Option<Vec<f64>>,
    pub omega_d: Option<Vec<f64>>,
    pub tau_c: Option<Vec<f64>>,
    pub m0: Option<f64>,
    pub engine: Option<Engine>,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub rtol: Option<f64>,
    pub sample_spacing: Option<f64>,
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 11] = [
    "preset",
    "omega1",
    "omega_d",
    "tau_c",
    "m0",
    "engine",
    "t_end",
    "dt",
    "rtol",
    "sample_spacing",
    "out",
];

impl ConfigLayer {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped;
    /// unknown or repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut layer = ConfigLayer::default();
        let mut seen = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!("line {}: expected key = value", n + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return err(format!("line {}: unknown key {key:?}", n + 1));
            }
            if seen.contains(&key) {
                return err(format!("line {}: {key} given twice", n + 1));
            }
            seen.push(key);
            layer.set(key, value)?;
        }
        if layer.dt.is_some() && layer.rtol.is_some() {
            return err("dt and rtol are mutually exclusive");
        }
        Ok(layer)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "preset" => self.preset = Some(value.parse().map_err(ConfigError)?),
            "omega1" => self.omega1 = Some(parse_list(key, value, true)?),
            "omega_d" => self.omega_d = Some(parse_list(key, value, true)?),
            "tau_c" => self.tau_c = Some(parse_list(key, value, false)?),
            "m0" => self.m0 = Some(parse_number(key, value)?),
            "engine" => self.engine = Some(value.parse().map_err(ConfigError)?),
            "t_end" => self.t_end = Some(parse_number(key, value)?),
            "dt" => self.dt = Some(parse_number(key, value)?),
            "rtol" => self.rtol = Some(parse_number(key, value)?),
            "sample_spacing" => self.sample_spacing = Some(parse_number(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            _ => unreachable!("keys are checked by the caller"),
        }
        Ok(())
    }

    /// Writes the set fields back out, frequencies in rad/s. Parsing the
    /// result gives back the same layer.
    pub fn to_text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(", ");
        let mut lines = Vec::new();
        let mut put = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                lines.push(format!("{key} = {v}"));
            }
        };
        put("preset", self.preset.map(|p| p.to_string()));
        put("omega1", self.omega1.as_deref().map(list));
        put("omega_d", self.omega_d.as_deref().map(list));
        put("tau_c", self.tau_c.as_deref().map(list));
        put("m0", self.m0.map(|v| v.to_string()));
        put("engine", self.engine.map(|e| e.to_string()));
        put("t_end", self.t_end.map(|v| v.to_string()));
        put("dt", self.dt.map(|v| v.to_string()));
        put("rtol", self.rtol.map(|v| v.to_string()));
        put("sample_spacing", self.sample_spacing.map(|v| v.to_string()));
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        lines.push(String::new());
        lines.join("\n")
    }

    /// `over` wins wherever it sets a field. Choosing a step mode in `over`
    /// clears the other mode from `self`.
    pub fn overlay(self, over: ConfigLayer) -> ConfigLayer {
        let step_from_over = over.dt.is_some() || over.rtol.is_some();
        ConfigLayer {
            preset: over.preset.or(self.preset),
            omega1: over.omega1.or(self.omega1),
            omega_d: over.omega_d.or(self.omega_d),
            tau_c: over.tau_c.or(self.tau_c),
            m0: over.m0.or(self.m0),
            engine: over.engine.or(self.engine),
            t_end: over.t_end.or(self.t_end),
            dt: if step_from_over { over.dt } else { self.dt },
            rtol: if step_from_over { over.rtol } else { self.rtol },
            sample_spacing: over.sample_spacing.or(self.sample_spacing),
            out: over.out.or(self.out),
        }
    }

    /// Expands the preset underneath the explicit fields and fills defaults.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let layer = match self.preset {
            Some(p) => p.layer().overlay(self.clone()),
            None => self.clone(),
        };
        if layer.dt.is_some() && layer.rtol.is_some() {
            return err("dt and rtol are mutually exclusive");
        }
        let required = |name: &str, v: &Option<Vec<f64>>| match v {
            Some(list) if !list.is_empty() => Ok(list.clone()),
            _ => err(format!(
                "{name} is required (give --{} or a preset)",
                name.replace('_', "-")
            )),
        };
        let step = match (layer.dt, layer.rtol) {
            (_, Some(rtol)) => StepControl::Adaptive { rtol },
            (dt, None) => StepControl::Fixed {
                dt: dt.unwrap_or(DEFAULT_DT),
            },
        };
        Ok(RunConfig {
            preset: layer.preset,
            omega1: required("omega1", &layer.omega1)?,
            omega_d: required("omega_d", &layer.omega_d)?,
            tau_c: required("tau_c", &layer.tau_c)?,
            m0: layer.m0.unwrap_or(1.0),
            engine: layer.engine.unwrap_or(Engine::Observable9),
            settings: IntegrationSettings {
                t_end: layer.t_end.unwrap_or(PRESET_T_END),
                step,
                sample_spacing: layer.sample_spacing.unwrap_or(DEFAULT_SAMPLE_SPACING),
            },
            out: layer.out,
        })
    }
}

/// A fully specified run. Lists describe a sweep grid; single-point commands
/// require one value each.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    pub omega1: Vec<f64>,
    pub omega_d: Vec<f64>,
    pub tau_c: Vec<f64>,
    pub m0: f64,
    pub engine: Engine,
    pub settings: IntegrationSettings,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_preset(preset: Preset) -> RunConfig {
        preset.layer().resolve().expect("presets are complete")
    }

    /// Grid points in order: `omega1` outermost, then `omega_d`, then `tau_c`.
    pub fn grid(&self) -> Vec<PhysicalParams> {
        let mut out = Vec::new();
        for &w1 in &self.omega1 {
            for &wd in &self.omega_d {
                for &tc in &self.tau_c {
                    out.push(PhysicalParams::on_resonance(w1, wd, tc, self.m0));
                }
            }
        }
        out
    }

    /// The single parameter point of a non-sweep run.
    pub fn single(&self) -> Result<PhysicalParams, ConfigError> {
        match self.grid().as_slice() {
            [p] => Ok(*p),
            g => err(format!(
                "this command takes one parameter point, got {} (use `sweep` for grids)",
                g.len()
            )),
        }
    }

    pub fn to_layer(&self) -> ConfigLayer {
        let (dt, rtol) = match self.settings.step {
            StepControl::Fixed { dt } => (Some(dt), None),
            StepControl::Adaptive { rtol } => (None, Some(rtol)),
        };
        ConfigLayer {
            preset: self.preset,
            omega1: Some(self.omega1.clone()),
            omega_d: Some(self.omega_d.clone()),
            tau_c: Some(self.tau_c.clone()),
            m0: Some(self.m0),
            engine: Some(self.engine),
            t_end: Some(self.settings.t_end),
            dt,
            rtol,
            sample_spacing: Some(self.settings.sample_spacing),
            out: self.out.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_suffix() {
        assert_eq!(parse_frequency("12.5").unwrap(), 12.5);
        assert_eq!(parse_frequency("2000*2pi").unwrap(), 2000.0 * TAU);
        assert_eq!(parse_frequency(" 5e3 * 2PI ").unwrap(), 5000.0 * TAU);
        assert_eq!(parse_frequency("-5000*2pi").unwrap(), -5000.0 * TAU);
        assert!(parse_frequency("2pi").is_err());
        assert!(parse_frequency("2000 2pi").is_err());
        assert!(parse_frequency("inf").is_err());
    }

    #[test]
    fn preset_snapshot() {
        let fig2 = RunConfig::from_preset(Preset::Fig2).to_layer().to_text();
        assert_eq!(
            fig2,
            "preset = fig2\n\
             omega1 = 12566.370614359172\n\
             omega_d = 31415.926535897932\n\
             tau_c = 0.000001\n\
             m0 = 1\n\
             engine = observable9\n\
             t_end = 0.05\n\
             dt = 0.0000001\n\
             sample_spacing = 0.00001\n"
        );
        for p in Preset::ALL {
            assert_eq!(RunConfig::from_preset(p), RunConfig::from_preset(p));
        }
        let fig3 = RunConfig::from_preset(Preset::Fig3);
        assert_eq!(fig3.grid().len(), 4);
        assert_eq!(fig3.omega1[3], TAU * 4000.0);
        assert_eq!(RunConfig::from_preset(Preset::Fig1).omega1, vec![0.0]);
    }

    #[test]
    fn round_trip_is_idempotent() {
        let text = "# demo\npreset = fig3\nomega1 = 500*2pi, 1000*2pi\ntau_c = 2e-6\nrtol = 1e-9\nout = runs/a.csv\n";
        let once = ConfigLayer::parse(text).unwrap();
        let written = once.to_text();
        let twice = ConfigLayer::parse(&written).unwrap();
        assert_eq!(once, twice);
        assert_eq!(written, twice.to_text());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "omega1 = 1\nomega1 = 2",
            "omega2 = 1",
            "omega1 1",
            "dt = 1e-7\nrtol = 1e-9",
            "engine = euler",
            "preset = fig4",
            "tau_c = 1e-6,",
        ] {
            assert!(ConfigLayer::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn overlay_and_resolve() {
        let file = ConfigLayer::parse("preset = fig2\ntau_c = 2e-6").unwrap();
        let flags = ConfigLayer {
            rtol: Some(1e-9),
            m0: Some(0.5),
            ..ConfigLayer::default()
        };
        let cfg = file.overlay(flags).resolve().unwrap();
        assert_eq!(cfg.tau_c, vec![2e-6]);
        assert_eq!(cfg.m0, 0.5);
        assert_eq!(cfg.omega1, vec![TAU * 2000.0]);
        assert_eq!(cfg.settings.step, StepControl::Adaptive { rtol: 1e-9 });

        let missing = ConfigLayer {
            omega1: Some(vec![1.0]),
            ..ConfigLayer::default()
        };
        assert!(missing.resolve().unwrap_err().0.contains("omega_d"));
        assert!(RunConfig::from_preset(Preset::Fig3).single().is_err());
    }
}
