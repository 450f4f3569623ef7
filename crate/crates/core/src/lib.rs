//! Fourier analysis on Kac-type compact quantum groups at desk scale.
//!
//! The crate covers the duals of `O_N⁺`, `S_{N+2}⁺`, free groups, lattices `ℤ^d` and
//! rational rotation algebras: dimensions and fusion counts, norm engines on both
//! sides of the Fourier transform, Paley admissibility constants, and numerical
//! checks of Hardy–Littlewood, rapid decay and Haagerup inequalities.

pub mod cli;
pub mod elements;
pub mod error;
pub mod fusion;
pub mod hl;
pub mod norms;
pub mod report;
pub mod weights;

pub use error::{Error, Result};
