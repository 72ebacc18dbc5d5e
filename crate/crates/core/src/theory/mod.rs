//! Closed-form fidelity predictions and the smoothing applied to them.

pub mod bessel;
pub mod formulas;
pub mod smoothing;

pub use bessel::{bessel_j0, j0_extended};
pub use formulas::{
    ensemble_regime_warning, exact_resonance_fidelity, harmonic_ensemble_fidelity,
    harmonic_resonant_fidelity, pseudoclassical_fidelity, resonant_walk_amplitude,
    HarmonicCoefficients, SINGULAR_DIVISOR,
};
pub use smoothing::{smooth_curve, DEFAULT_SIGMA};
