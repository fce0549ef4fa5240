//! SU(2)-covariant spherical Wigner functions and their integrated negativity
//! for spin-j states.
//!
//! Basis vectors are ordered `m = j, j-1, ..., -j` everywhere (row 0 is `m = j`).

pub mod error;
pub mod kernel;
pub mod negativity;
pub mod numerics;
pub mod planar;
pub mod spin;
pub mod states;
pub mod suite;
pub mod wigner;

pub use error::{Error, Result};
pub use numerics::HalfInt;
