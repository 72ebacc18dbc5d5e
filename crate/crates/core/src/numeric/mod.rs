//! Extended-precision scalars and compensated reductions.

pub mod dd;
pub mod sum;

pub use dd::DoubleDouble;
pub use sum::{ComplexSum, NeumaierSum};
