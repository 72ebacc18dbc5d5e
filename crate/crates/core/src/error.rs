use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Population leaked into the guard band of the momentum basis.
    #[error("state under-resolved at n_max = {n_max}: tail population {tail:.3e} exceeds {tolerance:.1e}")]
    UnderResolved {
        n_max: usize,
        tail: f64,
        tolerance: f64,
    },

    #[error("degenerate beating: omega_1 = omega_2, beating period is infinite")]
    DegenerateBeating,

    #[error("ensemble halfwidth b = {b} exceeds the island halfwidth {halfwidth} in quasi-momentum")]
    OutsideIsland { b: f64, halfwidth: f64 },

    #[error("harmonic coefficients are singular at t = {t} (cos(omega t) = 0)")]
    Singular { t: f64 },

    #[error("curve is not integrable: non-finite sample at t = {t}")]
    NonIntegrable { t: u32 },

    #[error("state dimension mismatch: expected n_max = {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
