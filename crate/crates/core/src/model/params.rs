use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Parameters of a pair of kicked-rotor evolutions that differ only in the
/// kick strength.
///
/// The kicking period is stored together with the resonance order and the
/// detuning so that `tau = 2 pi ell + epsilon` holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorParams {
    tau: f64,
    ell: u32,
    epsilon: f64,
    k1: f64,
    k2: f64,
    beta: f64,
}

impl RotorParams {
    /// Build from the detuning `epsilon` away from the resonance `tau = 2 pi ell`.
    pub fn near_resonance(ell: u32, epsilon: f64, k1: f64, k2: f64, beta: f64) -> Result<Self> {
        check_ell(ell)?;
        if !epsilon.is_finite() {
            return Err(Error::invalid("epsilon", "must be finite"));
        }
        let tau = TAU * f64::from(ell) + epsilon;
        Self::validated(tau, ell, epsilon, k1, k2, beta)
    }

    /// Build from the kicking period; the detuning is derived.
    pub fn from_tau(tau: f64, ell: u32, k1: f64, k2: f64, beta: f64) -> Result<Self> {
        check_ell(ell)?;
        if !tau.is_finite() {
            return Err(Error::invalid("tau", "must be finite"));
        }
        let epsilon = tau - TAU * f64::from(ell);
        Self::validated(tau, ell, epsilon, k1, k2, beta)
    }

    fn validated(tau: f64, ell: u32, epsilon: f64, k1: f64, k2: f64, beta: f64) -> Result<Self> {
        check_kick("k1", k1)?;
        check_kick("k2", k2)?;
        check_beta(beta)?;
        Ok(Self {
            tau,
            ell,
            epsilon,
            k1,
            k2,
            beta,
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// True when the kicking period sits exactly on the resonance.
    pub fn is_exact_resonance(&self) -> bool {
        self.epsilon == 0.0
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(Self { beta, ..*self })
    }

    pub fn with_kicks(&self, k1: f64, k2: f64) -> Result<Self> {
        Self::validated(self.tau, self.ell, self.epsilon, k1, k2, self.beta)
    }

    pub fn swapped(&self) -> Self {
        Self {
            k1: self.k2,
            k2: self.k1,
            ..*self
        }
    }

    /// Pseudo-classical kick strength `|epsilon| k`.
    pub fn scaled_kick(&self, k: f64) -> f64 {
        self.epsilon.abs() * k
    }

    /// Small-oscillation frequency `sqrt(|epsilon| k)` at the island centre.
    pub fn libration_frequency(&self, k: f64) -> f64 {
        self.scaled_kick(k).sqrt()
    }

    /// `tau (beta - 1/2)`, the quasi-momentum offset entering the pendulum.
    pub fn beta_bar(&self) -> f64 {
        self.tau * (self.beta - 0.5)
    }

    pub fn delta_k(&self) -> f64 {
        self.k2 - self.k1
    }

    pub fn omega1(&self) -> f64 {
        self.libration_frequency(self.k1)
    }

    pub fn omega2(&self) -> f64 {
        self.libration_frequency(self.k2)
    }

    pub fn derived(&self) -> DerivedQuantities {
        DerivedQuantities::of(self)
    }
}

fn check_ell(ell: u32) -> Result<()> {
    if ell == 0 {
        return Err(Error::invalid("ell", "resonance order must be a positive integer"));
    }
    Ok(())
}

fn check_kick(name: &'static str, k: f64) -> Result<()> {
    if !k.is_finite() || k < 0.0 {
        return Err(Error::invalid(name, format!("kick strength must be finite and >= 0, got {k}")));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::invalid("beta", format!("quasi-momentum must lie in [0, 1), got {beta}")));
    }
    Ok(())
}

/// Every scalar derived from a [`RotorParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub ktilde1: f64,
    pub ktilde2: f64,
    pub beta_bar: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub delta_k: f64,
    /// `2 pi / |omega_1 - omega_2|`; absent when the two frequencies coincide.
    pub beating_period: Option<f64>,
}

impl DerivedQuantities {
    pub fn of(params: &RotorParams) -> Self {
        let omega1 = params.omega1();
        let omega2 = params.omega2();
        let omega_minus = omega1 - omega2;
        let beating_period = if omega_minus == 0.0 {
            None
        } else {
            Some(TAU / omega_minus.abs())
        };
        Self {
            ktilde1: params.scaled_kick(params.k1),
            ktilde2: params.scaled_kick(params.k2),
            beta_bar: params.beta_bar(),
            omega1,
            omega2,
            omega_plus: omega1 + omega2,
            omega_minus,
            delta_k: params.delta_k(),
            beating_period,
        }
    }

    pub fn beating_period(&self) -> Result<f64> {
        self.beating_period.ok_or(Error::DegenerateBeating)
    }

    /// Minimal half-period `pi / omega` of libration for the stronger kick.
    pub fn min_half_period(&self) -> f64 {
        PI / self.omega1.max(self.omega2)
    }
}

/// Free function form of [`RotorParams::derived`].
pub fn derived_quantities(params: &RotorParams) -> DerivedQuantities {
    params.derived()
}
