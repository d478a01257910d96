//! Variable exponent Lebesgue spaces on grids: norms, averaging and
//! fractional maximal operators, the K₀ condition, and explicit
//! constructions of exponents where boundedness breaks down.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod exponent;
pub mod geometry;
pub mod grid;
pub mod k0;
pub mod numeric;
pub mod operators;
pub mod report;
pub mod vnorm;

pub use error::{Error, Result};
