//! Numerical toolkit for weighted Hardy spaces `H²(β)` and the Hermitian
//! weighted composition operators `W_{ψ,φ} f = ψ·(f∘φ)` they support.
//!
//! The crate classifies a space from its weights, synthesizes the candidate
//! symbols `ψ`, `φ`, builds exact finite sections of `W_{ψ,φ}` and checks
//! Hermitianness through several independent routes.

// `!(x < 1.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod operators;
pub mod series;
pub mod spaces;
pub mod symbols;
pub mod verify;

pub use error::{Result, WcoError};
pub use num_complex::Complex64;
pub use operators::OperatorMatrix;
pub use series::{binomial_series, exp_series, TruncatedSeries};
pub use spaces::{classify_space, SpaceClass, WeightSequence};
pub use symbols::{SelfMapInterval, SymbolPair, SymbolParams, Triviality};
pub use verify::{SpaceSpec, VerificationReport};

/// Default truncation order for verification runs.
pub const DEFAULT_ORDER: usize = 64;
