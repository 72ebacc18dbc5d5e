//! Run configuration: experiment defaults, `key = value` files and flag overrides.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use rotorlab::{QuasiMomentumEnsemble, Resolution, RotorParams};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Figure1,
    Figure2a,
    Figure2b,
    ExactResonance,
    MapPortrait,
    Sweep,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Self::Figure1,
        Self::Figure2a,
        Self::Figure2b,
        Self::ExactResonance,
        Self::MapPortrait,
        Self::Sweep,
    ];

    /// Name used in config files and output file stems.
    pub fn name(self) -> &'static str {
        match self {
            Self::Figure1 => "figure1",
            Self::Figure2a => "figure2a",
            Self::Figure2b => "figure2b",
            Self::ExactResonance => "exact_resonance",
            Self::MapPortrait => "map_portrait",
            Self::Sweep => "sweep",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == s)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the kicking period is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Period {
    Detuning(f64),
    Tau(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub period: Period,
    pub ell: u32,
    pub k1: f64,
    pub k2: f64,
    pub beta: f64,
    pub center: f64,
    pub halfwidth: f64,
    pub count: usize,
    pub t_max: u32,
    pub n_max: usize,
    /// Largest basis the automatic doubling may reach.
    pub n_max_ceiling: usize,
    pub sigma: f64,
    pub output: PathBuf,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Initial conditions in a map portrait.
    pub orbits: usize,
    /// Detunings visited by a sweep.
    pub epsilons: Vec<f64>,
}

impl RunConfig {
    pub fn defaults(experiment: Experiment) -> Self {
        let mut c = Self {
            experiment,
            period: Period::Detuning(0.01),
            ell: 1,
            k1: 0.8 * PI,
            k2: 0.6 * PI,
            beta: 0.5,
            center: 0.5,
            halfwidth: 0.0,
            count: 1,
            t_max: 650,
            n_max: 128,
            n_max_ceiling: Resolution::default().max_n_max,
            sigma: rotorlab::theory::DEFAULT_SIGMA,
            output: PathBuf::from("."),
            threads: 0,
            orbits: 25,
            epsilons: vec![0.005, 0.01, 0.02, 0.04],
        };
        match experiment {
            Experiment::Figure1 | Experiment::Sweep => {}
            Experiment::Figure2a => {
                c.halfwidth = 0.025;
                c.count = 5000;
            }
            Experiment::Figure2b => {
                c.halfwidth = 0.5;
                c.count = 5000;
            }
            Experiment::ExactResonance => {
                c.period = Period::Detuning(0.0);
                c.t_max = 100;
            }
            Experiment::MapPortrait => c.t_max = 400,
        }
        c
    }

    /// Applies every assignment of a config file on top of `self`.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::config("--config", format!("{}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut seen: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Syntax {
                    line: i + 1,
                    reason: format!("expected `key = value`, got `{line}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(CliError::config(key, "assigned twice"));
            }
            seen.push(key.to_string());
            self.set(key, value)?;
        }
        Ok(())
    }

    /// Assigns a single key. Keys are case-sensitive.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "experiment" => {
                let e = Experiment::parse(value).ok_or_else(|| CliError::config(key, format!("unknown experiment `{value}`")))?;
                if e != self.experiment {
                    return Err(CliError::config(key, format!("file is for `{e}` but `{}` was requested", self.experiment)));
                }
            }
            "epsilon" => self.period = Period::Detuning(real(key, value)?),
            "tau" => self.period = Period::Tau(real(key, value)?),
            "ell" => self.ell = integer(key, value)?,
            "k1" => self.k1 = real(key, value)?,
            "k2" => self.k2 = real(key, value)?,
            "beta" => self.beta = real(key, value)?,
            "center" => self.center = real(key, value)?,
            "halfwidth" => self.halfwidth = real(key, value)?,
            "count" => self.count = integer(key, value)?,
            "t_max" => self.t_max = integer(key, value)?,
            "n_max" => self.n_max = integer(key, value)?,
            "n_max_ceiling" => self.n_max_ceiling = integer(key, value)?,
            "sigma" => self.sigma = real(key, value)?,
            "output" => self.output = PathBuf::from(value),
            "threads" => self.threads = integer(key, value)?,
            "orbits" => self.orbits = integer(key, value)?,
            "epsilons" => {
                self.epsilons = value
                    .split(',')
                    .map(|v| real(key, v.trim()))
                    .collect::<Result<_>>()?;
            }
            _ => return Err(CliError::config(key, "unknown key")),
        }
        Ok(())
    }

    /// Checks every field before any computation starts.
    pub fn validate(&self) -> Result<()> {
        self.rotor_params()?;
        if self.t_max == 0 {
            return Err(CliError::config("t_max", "must be at least 1"));
        }
        self.resolution().validate().map_err(|_| CliError::config("n_max", format!("invalid basis size {}", self.n_max)))?;
        if self.n_max_ceiling < self.n_max {
            return Err(CliError::config("n_max_ceiling", format!("{} is below n_max = {}", self.n_max_ceiling, self.n_max)));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(CliError::config("sigma", format!("must be positive, got {}", self.sigma)));
        }
        match self.experiment {
            Experiment::Figure2a | Experiment::Figure2b => {
                self.ensemble()?;
            }
            Experiment::ExactResonance => {
                if self.rotor_params()?.epsilon() != 0.0 {
                    return Err(CliError::config("epsilon", "exact resonance needs tau = 2 pi ell"));
                }
            }
            Experiment::MapPortrait => {
                if self.orbits == 0 {
                    return Err(CliError::config("orbits", "must be at least 1"));
                }
                if self.rotor_params()?.epsilon() == 0.0 {
                    return Err(CliError::config("epsilon", "the map needs a nonzero detuning"));
                }
            }
            Experiment::Sweep => {
                if self.epsilons.is_empty() {
                    return Err(CliError::config("epsilons", "empty list"));
                }
                for &e in &self.epsilons {
                    if !(e.is_finite() && e != 0.0) {
                        return Err(CliError::config("epsilons", format!("detunings must be finite and nonzero, got {e}")));
                    }
                    self.rotor_params_at(e)?;
                }
            }
            Experiment::Figure1 => {}
        }
        Ok(())
    }

    pub fn rotor_params(&self) -> Result<RotorParams> {
        let p = match self.period {
            Period::Detuning(e) => RotorParams::near_resonance(self.ell, e, self.k1, self.k2, self.beta),
            Period::Tau(tau) => RotorParams::from_tau(tau, self.ell, self.k1, self.k2, self.beta),
        };
        p.map_err(field_error)
    }

    pub fn rotor_params_at(&self, epsilon: f64) -> Result<RotorParams> {
        RotorParams::near_resonance(self.ell, epsilon, self.k1, self.k2, self.beta).map_err(field_error)
    }

    pub fn ensemble(&self) -> Result<QuasiMomentumEnsemble> {
        QuasiMomentumEnsemble::new(self.center, self.halfwidth, self.count).map_err(field_error)
    }

    pub fn resolution(&self) -> Resolution {
        Resolution {
            max_n_max: self.n_max_ceiling,
            ..Resolution::with_n_max(self.n_max)
        }
    }
}

fn field_error(e: rotorlab::Error) -> CliError {
    match e {
        rotorlab::Error::InvalidParameter { name, reason } => CliError::config(name, reason),
        other => other.into(),
    }
}

/// Parses `1.5`, `pi`, `0.8*pi`, `2*pi/3` and the like.
pub fn parse_real(value: &str) -> Option<f64> {
    let mut product = 1.0;
    let mut divide = false;
    let mut rest = value.trim();
    loop {
        let end = rest.find(['*', '/']).unwrap_or(rest.len());
        let factor = match rest[..end].trim() {
            "pi" => PI,
            s => s.parse::<f64>().ok()?,
        };
        if divide {
            product /= factor;
        } else {
            product *= factor;
        }
        if end == rest.len() {
            return Some(product);
        }
        divide = rest.as_bytes()[end] == b'/';
        rest = &rest[end + 1..];
    }
}

fn real(key: &str, value: &str) -> Result<f64> {
    parse_real(value).ok_or_else(|| CliError::config(key, format!("not a number: `{value}`")))
}

fn integer<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| CliError::config(key, format!("not a non-negative integer: `{value}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_expressions() {
        assert_eq!(parse_real("0.8*pi"), Some(0.8 * PI));
        assert_eq!(parse_real("pi / 2"), Some(PI / 2.0));
        assert_eq!(parse_real("-1e-2"), Some(-0.01));
        assert_eq!(parse_real("2*"), None);
        assert_eq!(parse_real("Pi"), None);
    }

    #[test]
    fn comments_and_blank_lines() {
        let mut c = RunConfig::defaults(Experiment::Figure1);
        c.apply_text("# header\n\nk1 = 0.5*pi  # trailing\n t_max=20\n").unwrap();
        assert_eq!(c.k1, 0.5 * PI);
        assert_eq!(c.t_max, 20);
    }
}
