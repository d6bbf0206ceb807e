//! Exact vector metric spaces over Riesz spaces, with checkers for
//! convergence, continuity, equivalence and function-space constructions.

pub mod battery;
pub mod builtin;
pub mod continuity;
pub mod error;
pub mod linalg;
pub(crate) mod literal;
pub mod maps;
pub mod operators;
pub mod point;
pub mod report;
pub mod riesz;
pub mod runner;
pub mod scenario;
pub mod scalar;
pub mod sequence;
pub mod vmetric;
