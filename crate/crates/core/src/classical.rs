//! The pseudo-classical map of the nearly resonant rotor and its resonance
//! islands.
//!
//! One step reads
//!
//! ```text
//! theta' = theta + I + pi ell + tau beta   (mod 2 pi)
//! I'     = I + ktilde sin(theta')
//! ```
//!
//! with `ktilde = |epsilon| k`. Inside an island the motion is that of the
//! pendulum `H = (I - I_res)^2 / 2 + ktilde cos(theta)`, whose stable centre
//! sits at `theta = pi`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::model::RotorParams;

/// Relative energy band around the separatrix classified as `NearSeparatrix`.
pub const SEPARATRIX_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapState {
    pub theta: f64,
    pub action: f64,
}

impl MapState {
    pub fn new(theta: f64, action: f64) -> Self {
        Self {
            theta: theta.rem_euclid(TAU),
            action,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapOrbit {
    pub states: Vec<MapState>,
}

impl MapOrbit {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn actions(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(|s| s.action)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IslandGeometry {
    pub center_action: f64,
    /// Separatrix halfwidth `2 sqrt(ktilde)` in action.
    pub halfwidth_action: f64,
    /// The same halfwidth in quasi-momentum units.
    pub halfwidth_beta: f64,
    pub libration_frequency_center: f64,
    pub min_half_period: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Motion {
    Librational,
    Rotational,
    NearSeparatrix,
}

/// Island `m` of the map driven by kick strength `k`.
pub fn island_geometry(params: &RotorParams, k: f64, m: i64) -> Result<IslandGeometry> {
    if params.epsilon() == 0.0 {
        return Err(Error::invalid("epsilon", "islands need a non-zero detuning"));
    }
    let ktilde = params.scaled_kick(k);
    let omega = ktilde.sqrt();
    let halfwidth_action = 2.0 * omega;
    Ok(IslandGeometry {
        center_action: island_center(params, m),
        halfwidth_action,
        halfwidth_beta: halfwidth_action / params.tau(),
        libration_frequency_center: omega,
        min_half_period: PI / omega,
    })
}

/// `I_res = (2m + ell) pi - tau beta`.
pub fn island_center(params: &RotorParams, m: i64) -> f64 {
    (2.0 * m as f64 + f64::from(params.ell())) * PI - params.tau() * params.beta()
}

/// Map for one of the two kick strengths of a [`RotorParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoclassicalMap {
    params: RotorParams,
    ktilde: f64,
    advance: f64,
}

impl PseudoclassicalMap {
    pub fn new(params: &RotorParams, k: f64) -> Self {
        let advance = (PI * f64::from(params.ell()) + params.tau() * params.beta()).rem_euclid(TAU);
        Self {
            params: *params,
            ktilde: params.scaled_kick(k),
            advance,
        }
    }

    pub fn ktilde(&self) -> f64 {
        self.ktilde
    }

    /// Angle first, then action from the updated angle.
    pub fn step(&self, s: MapState) -> MapState {
        let theta = (s.theta + s.action + self.advance).rem_euclid(TAU);
        MapState {
            theta,
            action: s.action + self.ktilde * theta.sin(),
        }
    }

    pub fn step_inverse(&self, s: MapState) -> MapState {
        let action = s.action - self.ktilde * s.theta.sin();
        MapState {
            theta: (s.theta - action - self.advance).rem_euclid(TAU),
            action,
        }
    }

    /// `t + 1` states starting with `s0`.
    pub fn orbit(&self, s0: MapState, t: usize) -> MapOrbit {
        let mut states = Vec::with_capacity(t + 1);
        let mut s = s0;
        states.push(s);
        for _ in 0..t {
            s = self.step(s);
            states.push(s);
        }
        MapOrbit { states }
    }

    /// Index of the island whose centre is nearest to `action`.
    pub fn nearest_island(&self, action: f64) -> i64 {
        let p = &self.params;
        ((action + p.tau() * p.beta() - PI * f64::from(p.ell())) / TAU).round() as i64
    }

    pub fn island(&self, m: i64) -> Result<IslandGeometry> {
        let k = self.ktilde / self.params.epsilon().abs();
        island_geometry(&self.params, k, m)
    }

    /// Pendulum energy relative to the nearest island centre.
    pub fn pendulum_energy(&self, s: MapState) -> f64 {
        let center = island_center(&self.params, self.nearest_island(s.action));
        let di = s.action - center;
        0.5 * di * di + self.ktilde * s.theta.cos()
    }

    pub fn classify(&self, s0: MapState) -> Motion {
        let h = self.pendulum_energy(s0);
        let separatrix = self.ktilde;
        if (h - separatrix).abs() < SEPARATRIX_TOLERANCE * separatrix {
            Motion::NearSeparatrix
        } else if h < separatrix {
            Motion::Librational
        } else {
            Motion::Rotational
        }
    }
}

/// One map step for kick strength `k1` of `params`.
pub fn map_step(s: MapState, params: &RotorParams) -> MapState {
    PseudoclassicalMap::new(params, params.k1()).step(s)
}

pub fn iterate_orbit(s0: MapState, params: &RotorParams, t: usize) -> MapOrbit {
    PseudoclassicalMap::new(params, params.k1()).orbit(s0, t)
}

pub fn classify_motion(s0: MapState, params: &RotorParams) -> Motion {
    PseudoclassicalMap::new(params, params.k1()).classify(s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure(beta: f64) -> RotorParams {
        RotorParams::near_resonance(1, 0.01, 0.8 * PI, 0.6 * PI, beta).unwrap()
    }

    fn wrapped(d: f64) -> f64 {
        (d + PI).rem_euclid(TAU) - PI
    }

    #[test]
    fn free_rotation_without_kick() {
        let p = RotorParams::near_resonance(1, 0.01, 0.0, 0.0, 0.3).unwrap();
        let map = PseudoclassicalMap::new(&p, 0.0);
        let s0 = MapState::new(1.0, 0.2);
        let orbit = map.orbit(s0, 50);
        let advance = 0.2 + PI + p.tau() * 0.3;
        for (j, s) in orbit.states.iter().enumerate() {
            assert_eq!(s.action, 0.2);
            let expected = 1.0 + j as f64 * advance;
            assert!(wrapped(s.theta - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn half_turn_advance_returns_angle() {
        // ell = 1 and tau beta = pi give an advance of 2 pi
        let p = RotorParams::near_resonance(1, 0.01, 0.8 * PI, 0.6 * PI, PI / (2.0 * PI + 0.01)).unwrap();
        let map = PseudoclassicalMap::new(&p, p.k1());
        let s1 = map.step(MapState::new(0.7, 0.0));
        assert!(wrapped(s1.theta - 0.7).abs() < 1e-12);
        assert!((s1.action - map.ktilde() * 0.7f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn island_centre_and_hyperbolic_point_are_fixed() {
        let p = figure(0.5);
        let map = PseudoclassicalMap::new(&p, p.k1());
        let center = island_center(&p, 0);
        for theta in [PI, 0.0] {
            let s = MapState::new(theta, center);
            let s1 = map.step(s);
            assert!(wrapped(s1.theta - s.theta).abs() < 1e-12);
            assert!((s1.action - s.action).abs() < 1e-12);
        }
        assert_eq!(map.classify(MapState::new(PI, center)), Motion::Librational);
        assert_eq!(map.classify(MapState::new(0.0, center)), Motion::NearSeparatrix);
        assert_eq!(map.classify(MapState::new(PI, center + 1.0)), Motion::Rotational);
    }

    #[test]
    fn figure_island_geometry() {
        let p = figure(0.5);
        let g = island_geometry(&p, p.k1(), 0).unwrap();
        assert!(g.center_action.abs() < 0.01);
        assert!((g.halfwidth_beta - 0.0505).abs() < 5e-4);
        assert!((g.min_half_period - 19.8).abs() < 0.05);
        assert_eq!(g.halfwidth_beta, g.halfwidth_action / p.tau());
        assert!((g.min_half_period * g.libration_frequency_center - PI).abs() < 1e-14);
        assert!(island_geometry(&RotorParams::from_tau(2.0 * PI, 1, 1.0, 1.0, 0.5).unwrap(), 1.0, 0).is_err());
    }

    #[test]
    fn inverse_undoes_step() {
        let p = figure(0.37);
        let map = PseudoclassicalMap::new(&p, p.k1());
        let s0 = MapState::new(2.0, -0.1);
        let mut s = s0;
        for _ in 0..1000 {
            s = map.step(s);
        }
        for _ in 0..1000 {
            s = map.step_inverse(s);
        }
        assert!(wrapped(s.theta - s0.theta).abs() < 1e-10 * 1000.0);
        assert!((s.action - s0.action).abs() < 1e-10 * 1000.0);
    }

    #[test]
    fn nearest_island_picks_closest_centre() {
        let p = figure(0.5);
        let map = PseudoclassicalMap::new(&p, p.k1());
        assert_eq!(map.nearest_island(0.0), 0);
        assert_eq!(map.nearest_island(2.0 * PI + 0.3), 1);
        assert_eq!(map.nearest_island(-2.0 * PI), -1);
    }
}
