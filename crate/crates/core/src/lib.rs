//! Zeros of rational harmonic functions `f(z) = R(z) - conj(z)`.
//!
//! The crate locates and certifies the zeros of such functions, classifies
//! them by sense (sign of `|R'(z)| - 1`), counts them against the
//! `5(deg R - 1)` bound, and implements pole perturbations `R + eps/(z - z0)^k`
//! that create new zeros near `z0`. Winding numbers along circles and
//! annular sectors serve as certificates, and phase portraits visualize the
//! result.
//!
//! Data-parallel loops (Newton seeds, pixel rows, batches of instances) run on
//! rayon when the `parallel` feature is enabled and fall back to plain
//! iterators otherwise.

pub mod cli;
pub mod contour;
pub mod error;
pub mod harmonic;
pub mod par;
pub mod perturb;
pub mod polynomial;
pub mod portrait;
pub mod random;
pub mod rational;
mod serde_complex;

pub use num_complex::Complex64;

pub use contour::{Contour, WindingResult};
pub use error::{Error, Result};
pub use harmonic::{CensusOptions, HarmonicLens, Sense, SenseClass, ZeroCensus, ZeroRecord};
pub use polynomial::{ComplexPolynomial, RealPolynomial};
pub use rational::{Pole, RationalFunction};

/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
