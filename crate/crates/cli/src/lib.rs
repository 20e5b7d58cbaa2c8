//! Command-line front end for the polyhedral calculus: instance parsing,
//! per-rule commands and the seeded verification harness.

pub mod commands;
pub mod gen;
pub mod harness;
pub mod input;
