//! Exact rational arithmetic, dense linear algebra and linear programming.

pub mod linalg;
pub mod lp;
pub mod scalar;

pub use scalar::Rational;
