//! Exact and floating-point special-function substrate.

pub mod cg;
pub mod chebyshev;
pub mod factorial;
pub mod halfint;
pub mod legendre;
pub mod quadrature;

pub use cg::{clebsch_gordan, coupling_table, diagonal_table, ExactCoeff};
pub use factorial::{double_factorial_ratio, ln_factorial, nj_constant};
pub use halfint::{validate_pair, HalfInt};
pub use legendre::{legendre_p, LegendreSeries};
