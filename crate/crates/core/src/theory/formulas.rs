use std::f64::consts::PI;

use crate::classical::island_geometry;
use crate::error::{Error, Result};
use crate::model::RotorParams;
use crate::theory::bessel::bessel_j0;

/// Divisors smaller than this mark a sample as singular (`+inf`).
pub const SINGULAR_DIVISOR: f64 = 1e-9;

/// Below this argument removable singularities switch to their series.
const SERIES_SWITCH: f64 = 1e-6;

fn require_detuned(params: &RotorParams) -> Result<()> {
    if params.epsilon() == 0.0 {
        return Err(Error::invalid("epsilon", "detuning must be non-zero"));
    }
    Ok(())
}

fn require_kicked(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::invalid("t", "formula holds for t >= 1"));
    }
    Ok(())
}

/// `|W_t| = |sin(pi t ell (beta - 1/2)) / sin(pi ell (beta - 1/2))|`, with
/// the limit `t` at resonant quasi-momenta.
pub fn resonant_walk_amplitude(ell: u32, beta: f64, t: u32) -> f64 {
    let u = f64::from(ell) * (beta - 0.5);
    // sin(pi t (j + r)) = +-sin(pi t r) for integer j and t
    let r = u - u.round();
    let t = f64::from(t);
    let x = PI * r;
    if x.abs() < SERIES_SWITCH {
        (t * (1.0 - (t * t - 1.0) * x * x / 6.0)).abs()
    } else {
        ((t * x).sin() / x.sin()).abs()
    }
}

/// Rotor fidelity exactly on resonance, `J0(|W_t| dk)^2`.
pub fn exact_resonance_fidelity(params: &RotorParams, t: u32) -> Result<f64> {
    if !params.is_exact_resonance() {
        return Err(Error::invalid(
            "epsilon",
            format!("exact-resonance law needs tau = 2 pi ell, detuning is {}", params.epsilon()),
        ));
    }
    let w = resonant_walk_amplitude(params.ell(), params.beta(), t);
    Ok(bessel_j0(w * params.delta_k()).powi(2))
}

/// Short-time pseudo-classical rotor fidelity `J0(B(beta, t))^2` with
/// `B = 2 dk sin(beta_bar t / 2) / beta_bar`.
pub fn pseudoclassical_fidelity(params: &RotorParams, t: u32) -> Result<f64> {
    require_detuned(params)?;
    let t = f64::from(t);
    let half_angle = 0.5 * params.beta_bar() * t;
    let sinc = if half_angle.abs() < SERIES_SWITCH {
        1.0 - half_angle * half_angle / 6.0
    } else {
        half_angle.sin() / half_angle
    };
    let b = params.delta_k() * t * sinc;
    Ok(bessel_j0(b).powi(2))
}

/// Coefficients of the quadratic phase in the harmonic approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HarmonicCoefficients {
    pub fn at(params: &RotorParams, t: f64) -> Result<Self> {
        require_detuned(params)?;
        let (w1, w2) = (params.omega1(), params.omega2());
        let (s1, c1) = (w1 * t).sin_cos();
        let (s2, c2) = (w2 * t).sin_cos();
        if c1.abs() < SINGULAR_DIVISOR || c2.abs() < SINGULAR_DIVISOR {
            return Err(Error::Singular { t });
        }
        let (tan1, tan2) = (s1 / c1, s2 / c2);
        Ok(Self {
            a: w2 * tan2 - w1 * tan1,
            b: 1.0 / c2 - 1.0 / c1,
            c: tan2 / w2 - tan1 / w1,
        })
    }
}

/// Warning text when the ensemble formula is used outside `epsilon << b^2`.
pub fn ensemble_regime_warning(params: &RotorParams, b: f64) -> Option<String> {
    (params.epsilon().abs() > b * b).then(|| {
        format!(
            "ensemble formula assumes epsilon << b^2, but epsilon = {} and b^2 = {}",
            params.epsilon(),
            b * b
        )
    })
}

/// Harmonic-approximation fidelity of a uniform ensemble of halfwidth `b`
/// about the resonant quasi-momentum.
///
/// Returns `+inf` where the divisor vanishes; those samples are artifacts of
/// the stationary-phase evaluation and are kept for the smoothing stage.
pub fn harmonic_ensemble_fidelity(params: &RotorParams, b: f64, t: u32) -> Result<f64> {
    require_detuned(params)?;
    require_kicked(t)?;
    if b.is_nan() || b <= 0.0 {
        return Err(Error::invalid("b", format!("ensemble halfwidth must be positive, got {b}")));
    }
    let weaker = params.k1().min(params.k2());
    let halfwidth = island_geometry(params, weaker, 0)?.halfwidth_beta;
    if b > halfwidth {
        return Err(Error::OutsideIsland { b, halfwidth });
    }
    // equal kicks make the divisor vanish identically; the evolutions coincide
    if params.delta_k() == 0.0 {
        return Ok(1.0);
    }
    let eps = params.epsilon();
    let (w1, w2) = (params.omega1(), params.omega2());
    let (wp, wm) = (w1 + w2, w1 - w2);
    let t = f64::from(t);
    let divisor = (4.0 * w1 * w2 - wp * wp * (wm * t).cos() - wm * wm * (wp * t).cos()).abs();
    if divisor < SINGULAR_DIVISOR {
        return Ok(f64::INFINITY);
    }
    Ok(eps * eps * w1 * w2 / (8.0 * PI * PI * b * b * divisor))
}

/// Harmonic-approximation fidelity of the resonant rotor (`beta_bar = 0`).
pub fn harmonic_resonant_fidelity(params: &RotorParams, t: u32) -> Result<f64> {
    require_detuned(params)?;
    require_kicked(t)?;
    if params.beta_bar().abs() > 1e-12 {
        return Err(Error::invalid(
            "beta",
            format!("resonant formula needs beta = 1/2, got {}", params.beta()),
        ));
    }
    if params.delta_k() == 0.0 {
        return Ok(1.0);
    }
    let (w1, w2) = (params.omega1(), params.omega2());
    let t = f64::from(t);
    let divisor = (w2 * (w1 * t).cos() * (w2 * t).sin() - w1 * (w2 * t).cos() * (w1 * t).sin()).abs();
    if divisor < SINGULAR_DIVISOR {
        return Ok(f64::INFINITY);
    }
    Ok(params.epsilon().abs() / (2.0 * PI) / divisor)
}
