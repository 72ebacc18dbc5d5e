//! Rotor overlaps and the fidelity of the atom, obtained by averaging
//! complex rotor overlaps over quasi-momentum before taking the modulus.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{CurveKind, FidelityCurve, QuasiMomentumEnsemble, Resolution, RotorParams, RotorState};
use crate::numeric::ComplexSum;
use crate::propagator::PropagatorPlan;

/// `<U_{k1}^t psi | U_{k2}^t psi>` for `t = 0..=t_max` at one quasi-momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapSeries {
    pub beta: f64,
    pub times: Vec<u32>,
    pub overlaps: Vec<Complex64>,
    /// Basis size the series was finally computed with.
    pub n_max: usize,
}

impl OverlapSeries {
    pub fn t_max(&self) -> u32 {
        self.times.last().copied().unwrap_or(0)
    }
}

/// Evolve `|n = 0>` under both kick strengths and record their overlap.
///
/// When the state reaches the guard band the whole run restarts with twice
/// the basis size, up to `resolution.max_n_max`.
pub fn rotor_overlap_series(params: &RotorParams, resolution: &Resolution, t_max: u32) -> Result<OverlapSeries> {
    if t_max < 1 {
        return Err(Error::invalid("t_max", "must be at least 1"));
    }
    resolution.validate()?;
    let mut res = *resolution;
    loop {
        match overlap_series_at(params, &res, t_max) {
            Err(Error::UnderResolved { .. }) if 2 * res.n_max <= res.max_n_max => {
                log::debug!("beta = {}: escalating n_max {} -> {}", params.beta(), res.n_max, 2 * res.n_max);
                res.n_max *= 2;
            }
            other => return other,
        }
    }
}

fn overlap_series_at(params: &RotorParams, resolution: &Resolution, t_max: u32) -> Result<OverlapSeries> {
    let (first, second) = PropagatorPlan::pair(params, resolution)?;
    let mut scratch = first.scratch();
    let mut a = RotorState::initial(resolution.n_max)?;
    let mut b = a.clone();
    let mut overlaps = Vec::with_capacity(t_max as usize + 1);
    overlaps.push(a.inner(&b)?);
    for _ in 0..t_max {
        first.apply(&mut a, &mut scratch)?;
        second.apply(&mut b, &mut scratch)?;
        overlaps.push(a.inner(&b)?);
    }
    Ok(OverlapSeries {
        beta: params.beta(),
        times: (0..=t_max).collect(),
        overlaps,
        n_max: resolution.n_max,
    })
}

/// `|overlap|^2` per kick.
pub fn rotor_fidelity(series: &OverlapSeries) -> Result<FidelityCurve> {
    let values = series.overlaps.iter().map(|z| z.norm_sqr()).collect();
    FidelityCurve::new(series.times.clone(), values, CurveKind::Numeric)
}

/// Overlap series of every ensemble member, in member order.
///
/// Members run in parallel on the current rayon pool.
pub fn ensemble_overlaps(
    ensemble: &QuasiMomentumEnsemble,
    template: &RotorParams,
    resolution: &Resolution,
    t_max: u32,
) -> Result<Vec<OverlapSeries>> {
    (0..ensemble.count())
        .into_par_iter()
        .map(|j| {
            let params = ensemble.member_params(template, j)?;
            rotor_overlap_series(&params, resolution, t_max)
        })
        .collect()
}

/// `|mean_j overlap_j(t)|^2` with uniform weights, reduced in member order.
pub fn atom_fidelity_from_series(series: &[OverlapSeries]) -> Result<FidelityCurve> {
    let first = series
        .first()
        .ok_or_else(|| Error::invalid("ensemble", "needs at least one member"))?;
    if series.iter().any(|s| s.times != first.times) {
        return Err(Error::invalid("ensemble", "members sampled at different times"));
    }
    let weight = 1.0 / series.len() as f64;
    let values = (0..first.times.len())
        .map(|i| {
            let mut acc = ComplexSum::default();
            for s in series {
                acc += s.overlaps[i];
            }
            (acc.value() * weight).norm_sqr()
        })
        .collect();
    FidelityCurve::new(first.times.clone(), values, CurveKind::Numeric)
}

/// Mean over members of the individual rotor fidelities.
pub fn mean_rotor_fidelity(series: &[OverlapSeries]) -> Result<FidelityCurve> {
    let first = series
        .first()
        .ok_or_else(|| Error::invalid("ensemble", "needs at least one member"))?;
    let weight = 1.0 / series.len() as f64;
    let values = (0..first.times.len())
        .map(|i| series.iter().map(|s| s.overlaps[i].norm_sqr()).sum::<f64>() * weight)
        .collect();
    FidelityCurve::new(first.times.clone(), values, CurveKind::Numeric)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomFidelity {
    pub curve: FidelityCurve,
    /// Largest basis size any member needed.
    pub n_max_used: usize,
}

/// Fidelity of the atom for a uniform quasi-momentum ensemble.
pub fn atom_fidelity(
    ensemble: &QuasiMomentumEnsemble,
    template: &RotorParams,
    resolution: &Resolution,
    t_max: u32,
) -> Result<AtomFidelity> {
    let series = ensemble_overlaps(ensemble, template, resolution, t_max)?;
    let n_max_used = series.iter().map(|s| s.n_max).max().unwrap_or(resolution.n_max);
    Ok(AtomFidelity {
        curve: atom_fidelity_from_series(&series)?,
        n_max_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn equal_kicks_keep_unit_overlap() {
        let p = RotorParams::near_resonance(1, 0.01, 2.0, 2.0, 0.47).unwrap();
        let s = rotor_overlap_series(&p, &Resolution::with_n_max(64), 50).unwrap();
        assert_eq!(s.overlaps[0], Complex64::new(1.0, 0.0));
        for z in &s.overlaps {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn escalation_reports_final_basis() {
        let p = RotorParams::from_tau(2.0 * PI, 1, 0.8 * PI, 0.6 * PI, 0.5).unwrap();
        let s = rotor_overlap_series(&p, &Resolution::with_n_max(16), 30).unwrap();
        // 30 kicks of 0.8 pi spread the resonant rotor to |n| ~ 75
        assert!(s.n_max >= 128, "n_max = {}", s.n_max);
    }

    #[test]
    fn escalation_gives_up_at_the_ceiling() {
        let p = RotorParams::from_tau(2.0 * PI, 1, 0.8 * PI, 0.6 * PI, 0.5).unwrap();
        let res = Resolution {
            max_n_max: 64,
            ..Resolution::with_n_max(16)
        };
        assert!(matches!(rotor_overlap_series(&p, &res, 40), Err(Error::UnderResolved { .. })));
    }

    #[test]
    fn fidelity_is_squared_modulus() {
        let series = OverlapSeries {
            beta: 0.5,
            times: vec![0, 1, 2],
            overlaps: vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.6, 0.8)],
            n_max: 1,
        };
        let f = rotor_fidelity(&series).unwrap();
        assert_eq!(f.values()[0], 1.0);
        assert_eq!(f.values()[1], 0.0);
        assert!((f.values()[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn opposite_phases_cancel_in_the_average() {
        let mk = |z: Complex64| OverlapSeries {
            beta: 0.5,
            times: vec![0, 1],
            overlaps: vec![Complex64::new(1.0, 0.0), z],
            n_max: 1,
        };
        let series = [mk(Complex64::new(0.0, 1.0)), mk(Complex64::new(0.0, -1.0))];
        let atom = atom_fidelity_from_series(&series).unwrap();
        let mean = mean_rotor_fidelity(&series).unwrap();
        assert_eq!(atom.values(), &[1.0, 0.0]);
        assert_eq!(mean.values(), &[1.0, 1.0]);
    }

    #[test]
    fn rejects_empty_runs() {
        let p = RotorParams::near_resonance(1, 0.01, 2.0, 2.0, 0.47).unwrap();
        assert!(rotor_overlap_series(&p, &Resolution::default(), 0).is_err());
        assert!(atom_fidelity_from_series(&[]).is_err());
    }
}
