//! Exact polyhedral convex calculus: normal cones, subdifferentials,
//! coderivatives and optimal value functions over rational data, with
//! verifiers for the calculus rules.

pub mod arith;
pub mod error;
pub mod function;
pub mod mapping;
pub mod normal;
pub mod ovf;
pub mod polyhedra;
pub mod report;
pub mod separation;

pub use arith::Rational;
pub use error::{Error, Result};
