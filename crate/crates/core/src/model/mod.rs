//! Parameters, states, ensembles and fidelity curves.

pub mod curve;
pub mod ensemble;
pub mod params;
pub mod state;

pub use curve::{CurveKind, FidelityCurve};
pub use ensemble::QuasiMomentumEnsemble;
pub use params::{derived_quantities, DerivedQuantities, RotorParams};
pub use state::{initial_state, Resolution, RotorState};
