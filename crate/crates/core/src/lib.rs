//! Fidelity of quantum kicked rotors near quantum resonance.
//!
//! The crate couples exact Floquet numerics for rotors at fixed
//! quasi-momentum with the closed-form predictions of the pseudo-classical
//! (pendulum) description:
//!
//! * [`model`]: parameters, states, quasi-momentum ensembles, curves;
//! * [`propagator`]: FFT-based one-kick Floquet operator;
//! * [`fidelity`]: rotor overlaps and the ensemble-averaged fidelity;
//! * [`theory`]: Bessel laws, harmonic revival formulas, smoothing;
//! * [`classical`]: the pseudo-classical map and its resonance islands.

pub mod classical;
pub mod error;
pub mod fidelity;
pub mod model;
pub mod numeric;
pub mod propagator;
pub mod theory;

pub use error::{Error, Result};
pub use model::{
    derived_quantities, initial_state, CurveKind, DerivedQuantities, FidelityCurve,
    QuasiMomentumEnsemble, Resolution, RotorParams, RotorState,
};
