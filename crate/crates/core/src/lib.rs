//! Exact computer algebra for Poisson structures on polynomial rings.
//!
//! The crate covers sparse rational polynomials, exterior forms with
//! polynomial coefficients, multiderivations (polyvector fields), Poisson
//! structures with two independent integrability checks, and the
//! Lichnerowicz-Poisson cochain complex restricted to finite graded slices.
//!
//! Everything is `no_std` with `alloc`; file formats and the command line
//! live in the `poisson-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod catalog;
pub mod cohomology;
mod error;
pub mod exterior;
pub mod linalg;
pub mod multivector;
pub mod poisson;
pub mod poly;
mod text;

pub use error::{Error, Result};
pub use exterior::{ExteriorForm, IndexTuple, Shuffle, VectorField};
pub use multivector::{Bivector, MultiDerivation};
pub use poisson::{Order2Equivalence, PoissonStructure};
pub use poly::{Monomial, Polynomial, Rational, WeightVector};
