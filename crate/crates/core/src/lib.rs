//! Randomized two-sided sketches for low-rank matrix approximation.
//!
//! A [`sketch::SketchState`] summarizes an `m × n` matrix `A` by the pair
//! `Y = AΩ`, `W = ΨA` for random test matrices `Ω`, `Ψ`. The sketch is
//! linear, so it can absorb updates `A ← θA + ηH` without revisiting `A`.
//! The [`approx`] module rebuilds low-rank approximations from the sketch:
//! plain rank-k, conjugate-symmetric, positive-semidefinite, their
//! fixed-rank variants, and three competitor reconstructions.
//!
//! The remaining modules support experiments: synthetic inputs and error
//! metrics ([`zoo`]), a priori sketch-size rules ([`params`]) and the
//! trial runner behind the `sketchlr` binary ([`harness`]).

pub mod approx;
pub mod error;
pub mod harness;
pub mod kernels;
pub mod params;
pub mod randgen;
pub mod sketch;
pub mod zoo;

pub use error::{Error, Result};
pub use kernels::{Field, Matrix, Scalar};
pub use num_complex::Complex64;
