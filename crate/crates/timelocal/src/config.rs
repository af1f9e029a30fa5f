//! Run configuration: built-in defaults, overridden by a flat `key = value`
//! file, overridden by command-line flags.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use timelocal_core::analysis::{DEFAULT_F_FLOOR, DEFAULT_NONINVERTIBLE_TOL, DEFAULT_RHO_FLOOR};
use timelocal_core::propagation::DEFAULT_STEP;
use timelocal_core::{Settings, Window};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScenarioKind {
    /// Resonant coupling for all times.
    Resonant,
    /// tanh switch of the coupling at a ground-state passage.
    #[default]
    Switched,
    /// Ideal step switch at a ground-state passage.
    Instantaneous,
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "resonant" => Ok(Self::Resonant),
            "switched" => Ok(Self::Switched),
            "instantaneous" => Ok(Self::Instantaneous),
            _ => Err(Error::Config(format!(
                "unknown scenario '{s}' (expected resonant, switched or instantaneous)"
            ))),
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Resonant => "resonant",
            Self::Switched => "switched",
            Self::Instantaneous => "instantaneous",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Config(format!(
                "unknown format '{s}' (expected csv or json)"
            ))),
        }
    }
}

fn parse_window(s: &str) -> Result<Window> {
    match s {
        "rectangular" => Ok(Window::Rectangular),
        "hann" => Ok(Window::Hann),
        _ => Err(Error::Config(format!(
            "unknown window '{s}' (expected rectangular or hann)"
        ))),
    }
}

pub fn window_name(w: Window) -> &'static str {
    match w {
        Window::Rectangular => "rectangular",
        Window::Hann => "hann",
    }
}

/// Everything a command needs. All quantities are in scaled units.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: ScenarioKind,
    pub omega_r: f64,
    pub omega_max: f64,
    pub omega_min: f64,
    pub k: f64,
    pub n_switch: u32,
    pub t_end: f64,
    pub step: f64,
    pub f_floor: f64,
    pub rho_floor: f64,
    pub noninvertible_tol: f64,
    pub window: Window,
    pub out: PathBuf,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: ScenarioKind::Switched,
            omega_r: 0.3,
            omega_max: 0.3,
            omega_min: 0.2,
            k: 1.6,
            n_switch: 0,
            t_end: 40.0,
            step: DEFAULT_STEP,
            f_floor: DEFAULT_F_FLOOR,
            rho_floor: DEFAULT_RHO_FLOOR,
            noninvertible_tol: DEFAULT_NONINVERTIBLE_TOL,
            window: Window::Rectangular,
            out: PathBuf::from("out"),
            format: OutputFormat::Csv,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layer alone.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub scenario: Option<ScenarioKind>,
    pub omega_r: Option<f64>,
    pub omega_max: Option<f64>,
    pub omega_min: Option<f64>,
    pub k: Option<f64>,
    pub n_switch: Option<u32>,
    pub t_end: Option<f64>,
    pub step: Option<f64>,
    pub window: Option<Window>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

fn number<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("'{value}' is not a valid value for {key}"))
}

impl RunConfig {
    /// Defaults, then `file` if given, then `overrides`; validated.
    pub fn load(file: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            cfg.apply_text(&text)
                .map_err(|(line, message)| Error::ConfigFile {
                    path: path.to_path_buf(),
                    line,
                    message,
                })?;
        }
        cfg.apply_overrides(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies `key = value` lines; errors carry the 1-based line number.
    pub fn apply_text(&mut self, text: &str) -> std::result::Result<(), (usize, String)> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| (i + 1, format!("expected 'key = value', got '{line}'")))?;
            self.set(key.trim(), value.trim()).map_err(|m| (i + 1, m))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "scenario" => self.scenario = value.parse().map_err(|e: Error| e.to_string())?,
            "omega_r" => self.omega_r = number(key, value)?,
            "omega_max" => self.omega_max = number(key, value)?,
            "omega_min" => self.omega_min = number(key, value)?,
            "k" => self.k = number(key, value)?,
            "n_switch" => self.n_switch = number(key, value)?,
            "t_end" => self.t_end = number(key, value)?,
            "step" => self.step = number(key, value)?,
            "f_floor" => self.f_floor = number(key, value)?,
            "rho_floor" => self.rho_floor = number(key, value)?,
            "noninvertible_tol" => self.noninvertible_tol = number(key, value)?,
            "window" => self.window = parse_window(value).map_err(|e| e.to_string())?,
            "out" => self.out = PathBuf::from(value),
            "format" => self.format = value.parse().map_err(|e: Error| e.to_string())?,
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = o.$field.clone() { self.$field = v; })*
            };
        }
        take!(
            scenario, omega_r, omega_max, omega_min, k, n_switch, t_end, step, window, out, format
        );
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("omega_r", self.omega_r),
            ("omega_max", self.omega_max),
            ("k", self.k),
            ("t_end", self.t_end),
            ("step", self.step),
            ("f_floor", self.f_floor),
            ("rho_floor", self.rho_floor),
            ("noninvertible_tol", self.noninvertible_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.omega_min >= 0.0 && self.omega_min <= self.omega_max) {
            return Err(Error::Config(format!(
                "omega_min must lie in [0, omega_max], got {}",
                self.omega_min
            )));
        }
        if self.step >= self.t_end {
            return Err(Error::Config("step must be smaller than t_end".into()));
        }
        if self.scenario != ScenarioKind::Resonant && self.omega_r != self.omega_max {
            return Err(Error::Config(format!(
                "the {} scenario is resonant before the switch, so omega_r ({}) must equal omega_max ({})",
                self.scenario, self.omega_r, self.omega_max
            )));
        }
        Ok(())
    }

    pub fn settings(&self) -> Settings {
        Settings {
            step: self.step,
            f_floor: self.f_floor,
            rho_floor: self.rho_floor,
            noninvertible_tol: self.noninvertible_tol,
            window: self.window,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut cfg = RunConfig::default();
        cfg.apply_text("# comment\n\nk = 0.5   # slow\nscenario=resonant\nwindow = hann\n")
            .unwrap();
        assert_eq!(cfg.k, 0.5);
        assert_eq!(cfg.scenario, ScenarioKind::Resonant);
        assert_eq!(cfg.window, Window::Hann);
        cfg.apply_overrides(&Overrides {
            k: Some(2.0),
            ..Overrides::default()
        });
        assert_eq!(cfg.k, 2.0);
        assert_eq!(cfg.scenario, ScenarioKind::Resonant);
    }

    #[test]
    fn bad_lines_report_position() {
        let mut cfg = RunConfig::default();
        assert_eq!(cfg.apply_text("k = 1\nbogus = 2").unwrap_err().0, 2);
        assert_eq!(cfg.apply_text("step = fast").unwrap_err().0, 1);
        assert_eq!(cfg.apply_text("no equals sign").unwrap_err().0, 1);
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = [
            RunConfig {
                step: 0.0,
                ..RunConfig::default()
            },
            RunConfig {
                omega_min: 0.4,
                ..RunConfig::default()
            },
            RunConfig {
                omega_r: 0.5,
                ..RunConfig::default()
            },
            RunConfig {
                k: -1.0,
                ..RunConfig::default()
            },
        ];
        for cfg in bad {
            assert_eq!(cfg.validate().unwrap_err().exit_code(), 1);
        }
        let resonant = RunConfig {
            scenario: ScenarioKind::Resonant,
            omega_r: 0.5,
            ..RunConfig::default()
        };
        assert!(resonant.validate().is_ok());
    }
}
