use crate::error::{Error, Result};
use crate::model::params::RotorParams;

/// Equidistant sampling of a uniform quasi-momentum distribution on the
/// half-open interval `[center - b, center + b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiMomentumEnsemble {
    center: f64,
    halfwidth: f64,
    members: Vec<f64>,
}

impl QuasiMomentumEnsemble {
    pub fn new(center: f64, halfwidth: f64, count: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&center) {
            return Err(Error::invalid("center", format!("must lie in [0, 1), got {center}")));
        }
        if !(0.0..=0.5).contains(&halfwidth) {
            return Err(Error::invalid("halfwidth", format!("must lie in [0, 1/2], got {halfwidth}")));
        }
        if count == 0 {
            return Err(Error::invalid("count", "ensemble needs at least one member"));
        }
        let left = center - halfwidth;
        let step = 2.0 * halfwidth / count as f64;
        let members = (0..count).map(|j| left + step * j as f64).collect();
        Ok(Self {
            center,
            halfwidth,
            members,
        })
    }

    /// A single rotor at `beta`.
    pub fn single(beta: f64) -> Result<Self> {
        Self::new(beta, 0.0, 1)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Member quasi-momenta, not yet reduced into the Brillouin zone.
    pub fn members(&self) -> &[f64] {
        &self.members
    }

    /// Parameters for member `j`, with its quasi-momentum reduced into `[0, 1)`.
    pub fn member_params(&self, template: &RotorParams, j: usize) -> Result<RotorParams> {
        template.with_beta(reduce_to_zone(self.members[j]))
    }
}

pub fn reduce_to_zone(beta: f64) -> f64 {
    let r = beta.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}
