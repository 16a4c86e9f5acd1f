//! Evaluation, fuzzing and sharpness certification for refinements and
//! reverses of the Schwarz inequality and of the generalized triangle
//! inequality in finite-dimensional real and complex inner product spaces.
//!
//! Inner products are linear in the first argument and conjugate-linear in
//! the second.

pub mod catalog;
pub mod error;
pub mod json;
pub mod space;
pub mod tolerance;
pub mod triangle;
pub mod verify;

pub use catalog::{
    BoundId, BoundInputs, BoundParams, BoundReport, Direction, ParamSet, TargetQuantity,
};
pub use error::{Error, Result};
pub use space::{ComplexifiedVector, Field, Scalar, Space, Vector};
pub use tolerance::Tolerance;
