pub mod antilinear;
pub mod cli;
pub mod combinatorics;
pub mod detsqrt;
pub mod error;
pub mod gaussian;
pub mod pairing;
pub mod sampling;
pub mod symmetric_algebra;
pub mod verify;

pub use error::{Error, Result};
