//! Exact symmetric Krawtchouk polynomials and the su(2) models they live in.
//!
//! Everything is computed over arbitrary-precision rationals, so every
//! identity checked here is checked exactly, with no tolerance.

pub mod diffop;
pub mod error;
pub mod hypergeometric;
pub mod krawtchouk;
pub mod matrix;
pub mod model_bargmann;
pub mod model_bg;
pub mod model_fd;
pub mod pade_kummer;
pub mod poly;
pub mod scalar;
pub mod su2_rep;
pub mod verify;

pub use error::{Counterexample, KrwError, Result};
pub use matrix::RationalMatrix;
pub use poly::{residue_pair, series_exp, DensePoly, LaurentPoly, TruncSeries};
pub use scalar::{binomial, factorial, pochhammer, ExactScalar};
