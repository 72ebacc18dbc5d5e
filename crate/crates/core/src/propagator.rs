//! One-kick Floquet evolution of a rotor at fixed quasi-momentum.
//!
//! The free part `exp(-i tau (n + beta)^2 / 2)` is diagonal in momentum and
//! the kick `exp(-i k cos theta)` is diagonal in angle, so each kick is a
//! phase multiplication, an FFT to the angle grid, a second phase
//! multiplication and an FFT back.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::model::{Resolution, RotorParams, RotorState};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Smallest power of two holding the basis twice over.
pub fn default_grid_size(n_max: usize) -> usize {
    (2 * (2 * n_max + 1)).next_power_of_two()
}

/// Precomputed phases and transforms for one kick strength.
#[derive(Clone)]
pub struct PropagatorPlan {
    params: RotorParams,
    k: f64,
    resolution: Resolution,
    kinetic_phases: Arc<[Complex64]>,
    kick_phases: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for PropagatorPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PropagatorPlan")
            .field("k", &self.k)
            .field("n_max", &self.resolution.n_max)
            .field("grid_size", &self.grid_size())
            .finish_non_exhaustive()
    }
}

/// Per-worker buffers for [`PropagatorPlan::apply`].
#[derive(Debug, Clone)]
pub struct FloquetScratch {
    grid: Vec<Complex64>,
    fft: Vec<Complex64>,
}

fn kinetic_table(params: &RotorParams, n_max: usize) -> Arc<[Complex64]> {
    let n = n_max as i64;
    (-n..=n)
        .map(|m| {
            let p = m as f64 + params.beta();
            Complex64::from_polar(1.0, -0.5 * params.tau() * p * p)
        })
        .collect()
}

fn kick_table(k: f64, grid_size: usize) -> Vec<Complex64> {
    (0..grid_size)
        .map(|j| {
            let theta = TAU * j as f64 / grid_size as f64;
            Complex64::from_polar(1.0, -k * theta.cos())
        })
        .collect()
}

impl PropagatorPlan {
    pub fn new(params: &RotorParams, k: f64, resolution: &Resolution) -> Result<Self> {
        Self::with_grid_size(params, k, resolution, default_grid_size(resolution.n_max))
    }

    pub fn with_grid_size(
        params: &RotorParams,
        k: f64,
        resolution: &Resolution,
        grid_size: usize,
    ) -> Result<Self> {
        resolution.validate()?;
        if !k.is_finite() {
            return Err(Error::invalid("k", "kick strength must be finite"));
        }
        if grid_size < 2 * resolution.n_max + 1 {
            return Err(Error::invalid(
                "grid_size",
                format!("{grid_size} points alias a basis of {} states", 2 * resolution.n_max + 1),
            ));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            params: *params,
            k,
            resolution: *resolution,
            kinetic_phases: kinetic_table(params, resolution.n_max),
            kick_phases: kick_table(k, grid_size),
            forward: planner.plan_fft_forward(grid_size),
            inverse: planner.plan_fft_inverse(grid_size),
        })
    }

    /// Plans for `k1` and `k2` sharing one kinetic table and one pair of transforms.
    pub fn pair(params: &RotorParams, resolution: &Resolution) -> Result<(Self, Self)> {
        let first = Self::new(params, params.k1(), resolution)?;
        let second = first.with_kick(params.k2());
        Ok((first, second))
    }

    /// Same plan with a different kick strength.
    pub fn with_kick(&self, k: f64) -> Self {
        Self {
            k,
            kick_phases: kick_table(k, self.grid_size()),
            ..self.clone()
        }
    }

    pub fn params(&self) -> &RotorParams {
        &self.params
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.resolution.n_max
    }

    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    pub fn grid_size(&self) -> usize {
        self.kick_phases.len()
    }

    pub fn kinetic_phases(&self) -> &[Complex64] {
        &self.kinetic_phases
    }

    pub fn kick_phases(&self) -> &[Complex64] {
        &self.kick_phases
    }

    pub fn scratch(&self) -> FloquetScratch {
        let len = self
            .forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len());
        FloquetScratch {
            grid: vec![ZERO; self.grid_size()],
            fft: vec![ZERO; len],
        }
    }

    /// Apply one Floquet period in place.
    ///
    /// Fails with [`Error::UnderResolved`] when the population reaching the
    /// guard band, or pushed past the basis edge, exceeds the tolerance.
    pub fn apply(&self, state: &mut RotorState, scratch: &mut FloquetScratch) -> Result<()> {
        let n_max = self.n_max();
        if state.n_max() != n_max {
            return Err(Error::DimensionMismatch {
                expected: n_max,
                found: state.n_max(),
            });
        }
        let g = self.grid_size();
        let grid = &mut scratch.grid;
        grid.fill(ZERO);
        for (i, (a, phase)) in state
            .amplitudes()
            .iter()
            .zip(self.kinetic_phases.iter())
            .enumerate()
        {
            let n = i as i64 - n_max as i64;
            grid[n.rem_euclid(g as i64) as usize] = a * phase;
        }

        // inverse transform yields psi(theta_j) = sum_n a_n exp(i n theta_j)
        self.inverse.process_with_scratch(grid, &mut scratch.fft);
        for (psi, kick) in grid.iter_mut().zip(&self.kick_phases) {
            *psi *= kick;
        }
        self.forward.process_with_scratch(grid, &mut scratch.fft);

        let scale = 1.0 / g as f64;
        let inner_edge = n_max - self.resolution.n_guard;
        let mut tail = 0.0;
        for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
            let n = i as i64 - n_max as i64;
            let idx = n.rem_euclid(g as i64) as usize;
            *a = grid[idx] * scale;
            if n.unsigned_abs() as usize >= inner_edge {
                tail += a.norm_sqr();
            }
            grid[idx] = ZERO;
        }
        let discarded: f64 = grid.iter().map(|c| c.norm_sqr()).sum::<f64>() * scale * scale;
        let tail = tail + discarded;
        if tail > self.resolution.tail_tol {
            return Err(Error::UnderResolved {
                n_max,
                tail,
                tolerance: self.resolution.tail_tol,
            });
        }
        Ok(())
    }
}

/// One Floquet period applied to a copy of `state`.
pub fn apply_floquet(state: &RotorState, plan: &PropagatorPlan) -> Result<RotorState> {
    let mut out = state.clone();
    plan.apply(&mut out, &mut plan.scratch())?;
    Ok(out)
}

/// States after `1..=t` kicks.
pub fn evolve(state: &RotorState, plan: &PropagatorPlan, t: usize) -> Result<Vec<RotorState>> {
    let mut scratch = plan.scratch();
    let mut current = state.clone();
    let mut trajectory = Vec::with_capacity(t);
    for _ in 0..t {
        plan.apply(&mut current, &mut scratch)?;
        trajectory.push(current.clone());
    }
    Ok(trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn res(n_max: usize) -> Resolution {
        Resolution::with_n_max(n_max)
    }

    #[test]
    fn grid_is_oversampled_power_of_two() {
        assert_eq!(default_grid_size(128), 1024);
        assert_eq!(default_grid_size(1), 8);
        assert_eq!(default_grid_size(8), 64);
    }

    #[test]
    fn phases_are_unimodular() {
        let p = RotorParams::near_resonance(1, 0.01, 2.5, 1.9, 0.43).unwrap();
        let plan = PropagatorPlan::new(&p, p.k1(), &res(64)).unwrap();
        for z in plan.kinetic_phases().iter().chain(plan.kick_phases()) {
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_aliasing_grid_and_mismatched_state() {
        let p = RotorParams::near_resonance(1, 0.01, 1.0, 1.0, 0.5).unwrap();
        assert!(PropagatorPlan::with_grid_size(&p, 1.0, &res(16), 32).is_err());
        let plan = PropagatorPlan::with_grid_size(&p, 1.0, &res(16), 33).unwrap();
        let s = RotorState::initial(8).unwrap();
        assert!(apply_floquet(&s, &plan).is_err());
    }

    #[test]
    fn kick_free_step_is_kinetic_phase_only() {
        let p = RotorParams::near_resonance(1, 0.37, 0.0, 0.0, 0.21).unwrap();
        let plan = PropagatorPlan::new(&p, 0.0, &res(8)).unwrap();
        let amps: Vec<Complex64> = (0..17)
            .map(|i| Complex64::new((i as f64 * 0.3).sin(), (i as f64 * 0.7).cos()) * 0.01)
            .collect();
        // keep the guard band empty
        let amps: Vec<Complex64> =
            amps.iter().enumerate().map(|(i, a)| if (5..12).contains(&i) { *a } else { ZERO }).collect();
        let s = RotorState::from_amplitudes(amps).unwrap();
        let out = apply_floquet(&s, &plan).unwrap();
        for ((a, b), phase) in s.amplitudes().iter().zip(out.amplitudes()).zip(plan.kinetic_phases()) {
            assert!((a * phase - b).norm() < 1e-15);
        }
    }

    #[test]
    fn resonant_free_phase_is_global() {
        let p = RotorParams::from_tau(2.0 * PI, 1, 1.0, 1.0, 0.5).unwrap();
        let plan = PropagatorPlan::new(&p, 1.0, &res(32)).unwrap();
        let expected = Complex64::from_polar(1.0, -PI / 4.0);
        for z in plan.kinetic_phases() {
            assert!((z - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn opposite_kicks_cancel_at_double_resonance() {
        let p = RotorParams::from_tau(4.0 * PI, 2, 1.7, 1.7, 0.0).unwrap();
        let forward = PropagatorPlan::new(&p, 1.7, &res(64)).unwrap();
        let backward = forward.with_kick(-1.7);
        let s0 = RotorState::initial(64).unwrap();
        let s1 = apply_floquet(&s0, &forward).unwrap();
        assert!(s1.population(0) < 0.9);
        let s2 = apply_floquet(&s1, &backward).unwrap();
        let overlap = s0.inner(&s2).unwrap();
        assert!((overlap.norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn empty_trajectory_for_zero_kicks() {
        let p = RotorParams::near_resonance(1, 0.01, 1.0, 1.0, 0.5).unwrap();
        let plan = PropagatorPlan::new(&p, 1.0, &res(16)).unwrap();
        assert!(evolve(&RotorState::initial(16).unwrap(), &plan, 0).unwrap().is_empty());
    }

    #[test]
    fn strong_kick_trips_the_tail_check() {
        let p = RotorParams::from_tau(2.0 * PI, 1, 40.0, 40.0, 0.5).unwrap();
        let plan = PropagatorPlan::new(&p, 40.0, &res(32)).unwrap();
        let err = apply_floquet(&RotorState::initial(32).unwrap(), &plan).unwrap_err();
        assert!(matches!(err, Error::UnderResolved { n_max: 32, .. }));
    }
}
