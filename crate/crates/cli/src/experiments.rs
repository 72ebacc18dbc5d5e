//! The experiments behind each subcommand.

use std::f64::consts::PI;

use log::{info, warn};
use rayon::prelude::*;
use rotorlab::classical::{island_geometry, MapState, PseudoclassicalMap};
use rotorlab::fidelity::{atom_fidelity, rotor_fidelity, rotor_overlap_series};
use rotorlab::theory::{
    ensemble_regime_warning, exact_resonance_fidelity, harmonic_ensemble_fidelity,
    harmonic_resonant_fidelity, smooth_curve,
};
use rotorlab::{CurveKind, FidelityCurve, RotorParams};

use crate::config::{Experiment, RunConfig};
use crate::error::Result;
use crate::output::{real, Artifact, Meta, Table};

pub fn run(config: &RunConfig) -> Result<Artifact> {
    config.validate()?;
    info!("running {} with t_max = {}, n_max = {}", config.experiment, config.t_max, config.n_max);
    match config.experiment {
        Experiment::Figure1 => figure1(config),
        Experiment::Figure2a | Experiment::Figure2b => figure2(config),
        Experiment::ExactResonance => exact_resonance(config),
        Experiment::MapPortrait => map_portrait(config),
        Experiment::Sweep => sweep(config),
    }
}

fn artifact(config: &RunConfig, table: Table, meta: Meta) -> Artifact {
    Artifact {
        stem: config.experiment.name().to_string(),
        table,
        meta,
    }
}

/// Parameters and every derived quantity, shared by all runs.
fn base_meta(config: &RunConfig, p: &RotorParams, n_max_used: Option<usize>) -> Meta {
    let mut m = Meta::default();
    m.text("experiment", config.experiment);
    m.text("version", env!("CARGO_PKG_VERSION"));
    m.real("tau", p.tau());
    m.real("epsilon", p.epsilon());
    m.text("ell", p.ell());
    m.real("k1", p.k1());
    m.real("k2", p.k2());
    m.real("beta", p.beta());
    m.real("center", config.center);
    m.real("halfwidth", config.halfwidth);
    m.text("count", config.count);
    m.text("t_max", config.t_max);
    m.text("n_max", config.n_max);
    m.text("n_max_ceiling", config.n_max_ceiling);
    m.real("sigma", config.sigma);
    m.text("threads", rayon::current_num_threads());

    let d = p.derived();
    m.real("ktilde1", d.ktilde1);
    m.real("ktilde2", d.ktilde2);
    m.real("beta_bar", d.beta_bar);
    m.real("omega1", d.omega1);
    m.real("omega2", d.omega2);
    m.real("omega_plus", d.omega_plus);
    m.real("omega_minus", d.omega_minus);
    m.real("delta_k", d.delta_k);
    match d.beating_period {
        Some(t) => m.real("beating_period", t),
        None => m.text("beating_period", "none"),
    }
    m.real("min_half_period", d.min_half_period());
    for (label, k) in [("k1", p.k1()), ("k2", p.k2())] {
        match island_geometry(p, k, 0) {
            Ok(g) => {
                m.real(&format!("island_halfwidth_action_{label}"), g.halfwidth_action);
                m.real(&format!("island_halfwidth_beta_{label}"), g.halfwidth_beta);
            }
            Err(_) => {
                m.text(&format!("island_halfwidth_action_{label}"), "none");
                m.text(&format!("island_halfwidth_beta_{label}"), "none");
            }
        }
    }
    match n_max_used {
        Some(n) => m.text("n_max_used", n),
        None => m.text("n_max_used", "none"),
    }
    m
}

fn figure1(config: &RunConfig) -> Result<Artifact> {
    let p = config.rotor_params()?;
    let series = rotor_overlap_series(&p, &config.resolution(), config.t_max)?;
    let numeric = rotor_fidelity(&series)?.starting_at(1);
    let raw = FidelityCurve::tabulate(1..=config.t_max, CurveKind::AnalyticHarmonicResonant, |t| {
        harmonic_resonant_fidelity(&p, t)
    })?;
    let smoothed = smooth_curve(&raw, config.sigma)?;

    let mut table = Table::new(&["t", "F_numeric", "F_eq11_raw", "F_eq11_smoothed"]);
    for (i, &t) in numeric.times().iter().enumerate() {
        table.push(vec![
            t.to_string(),
            real(numeric.values()[i]),
            real(raw.values()[i]),
            real(smoothed.values()[i]),
        ]);
    }
    let meta = base_meta(config, &p, Some(series.n_max));
    Ok(artifact(config, table, meta))
}

fn figure2(config: &RunConfig) -> Result<Artifact> {
    let p = config.rotor_params()?;
    let ensemble = config.ensemble()?;
    let atom = atom_fidelity(&ensemble, &p, &config.resolution(), config.t_max)?;
    let numeric = atom.curve.starting_at(1);
    let numeric_smoothed = smooth_curve(&numeric, config.sigma)?;
    let mut meta = base_meta(config, &p, Some(atom.n_max_used));

    let mut header = vec!["t", "F_numeric_ensemble", "F_numeric_smoothed"];
    let mut theory = None;
    if config.experiment == Experiment::Figure2a {
        header.extend(["F_eq10_raw", "F_eq10_smoothed"]);
        let b = config.halfwidth;
        if b > 0.0 {
            if let Some(w) = ensemble_regime_warning(&p, b) {
                warn!("{w}");
                meta.text("regime_warning", w);
            }
            let raw = FidelityCurve::tabulate(1..=config.t_max, CurveKind::AnalyticHarmonicEnsemble, |t| {
                harmonic_ensemble_fidelity(&p, b, t)
            })?;
            let smoothed = smooth_curve(&raw, config.sigma)?;
            theory = Some((raw, smoothed));
        } else {
            meta.text("eq10", "undefined for halfwidth = 0");
        }
    }

    let mut table = Table::new(&header);
    for (i, &t) in numeric.times().iter().enumerate() {
        let mut row = vec![t.to_string(), real(numeric.values()[i]), real(numeric_smoothed.values()[i])];
        if config.experiment == Experiment::Figure2a {
            match &theory {
                Some((raw, smoothed)) => row.extend([real(raw.values()[i]), real(smoothed.values()[i])]),
                None => row.extend([real(f64::NAN), real(f64::NAN)]),
            }
        }
        table.push(row);
    }
    Ok(artifact(config, table, meta))
}

fn exact_resonance(config: &RunConfig) -> Result<Artifact> {
    let p = config.rotor_params()?;
    let series = rotor_overlap_series(&p, &config.resolution(), config.t_max)?;
    let numeric = rotor_fidelity(&series)?.starting_at(1);
    let mut table = Table::new(&["t", "F_numeric", "F_eq4"]);
    let mut worst = 0.0f64;
    for (t, value) in numeric.iter() {
        let law = exact_resonance_fidelity(&p, t)?;
        worst = worst.max((value - law).abs());
        table.push(vec![t.to_string(), real(value), real(law)]);
    }
    let mut meta = base_meta(config, &p, Some(series.n_max));
    meta.real("max_abs_difference", worst);
    Ok(artifact(config, table, meta))
}

fn map_portrait(config: &RunConfig) -> Result<Artifact> {
    let p = config.rotor_params()?;
    let k = p.k1();
    let map = PseudoclassicalMap::new(&p, k);
    let g = island_geometry(&p, k, 0)?;
    // launch on the line through the elliptic point, past the separatrix
    let span = if g.halfwidth_action > 0.0 { 1.5 * g.halfwidth_action } else { PI };
    let n = config.orbits;
    let mut table = Table::new(&["orbit", "step", "theta", "action", "motion"]);
    for j in 0..n {
        let offset = if n == 1 { 0.0 } else { -span + 2.0 * span * j as f64 / (n - 1) as f64 };
        let s0 = MapState::new(PI, g.center_action + offset);
        let motion = format!("{:?}", map.classify(s0)).to_lowercase();
        for (step, s) in map.orbit(s0, config.t_max as usize).states.iter().enumerate() {
            table.push(vec![j.to_string(), step.to_string(), real(s.theta), real(s.action), motion.clone()]);
        }
    }
    let mut meta = base_meta(config, &p, None);
    meta.real("island_center_action", g.center_action);
    meta.real("island_libration_frequency", g.libration_frequency_center);
    meta.real("island_min_half_period", g.min_half_period);
    Ok(artifact(config, table, meta))
}

struct SweepRow {
    epsilon: f64,
    omega1: f64,
    omega2: f64,
    period: f64,
    half: Option<(u32, f64)>,
    full: Option<(u32, f64)>,
    n_max: usize,
}

/// Largest smoothed value within a quarter period of `center`.
fn peak_near(curve: &FidelityCurve, center: f64, period: f64, t_max: u32) -> Option<(u32, f64)> {
    let lo = (center - 0.25 * period).ceil().max(1.0);
    let hi = (center + 0.25 * period).floor();
    if hi > f64::from(t_max) {
        return None;
    }
    curve.argmax_in(lo as u32, hi as u32)
}

fn sweep(config: &RunConfig) -> Result<Artifact> {
    let rows = config
        .epsilons
        .par_iter()
        .map(|&eps| -> Result<SweepRow> {
            let p = config.rotor_params_at(eps)?;
            let d = p.derived();
            let period = d.beating_period()?;
            let series = rotor_overlap_series(&p, &config.resolution(), config.t_max)?;
            let smoothed = smooth_curve(&rotor_fidelity(&series)?.starting_at(1), config.sigma)?;
            Ok(SweepRow {
                epsilon: eps,
                omega1: d.omega1,
                omega2: d.omega2,
                period,
                half: peak_near(&smoothed, 0.5 * period, period, config.t_max),
                full: peak_near(&smoothed, period, period, config.t_max),
                n_max: series.n_max,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new(&[
        "epsilon",
        "omega1",
        "omega2",
        "beating_period",
        "half_peak_t",
        "half_peak_value",
        "full_peak_t",
        "full_peak_value",
        "n_max_used",
    ]);
    let cell = |peak: Option<(u32, f64)>| match peak {
        Some((t, v)) => [t.to_string(), real(v)],
        None => ["none".to_string(), real(f64::NAN)],
    };
    for r in &rows {
        let mut row = vec![real(r.epsilon), real(r.omega1), real(r.omega2), real(r.period)];
        row.extend(cell(r.half));
        row.extend(cell(r.full));
        row.push(r.n_max.to_string());
        table.push(row);
    }
    let n_max_used = rows.iter().map(|r| r.n_max).max().unwrap_or(config.n_max);
    let mut meta = base_meta(config, &config.rotor_params()?, Some(n_max_used));
    meta.text("epsilons", config.epsilons.iter().map(|&e| real(e)).collect::<Vec<_>>().join(","));
    Ok(artifact(config, table, meta))
}
