//! Exact discrete exterior calculus on cubical lattices, the higher brackets (infinitesimal
//! cumulants) of its differentials, and the cumulant morphisms between lattice scales.

pub mod algebra;
pub mod brackets;
pub mod coalgebra;
pub mod combinatorics;
pub mod error;
pub mod lattice;
pub mod multiscale;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{LaurentH, Rational, Valuation};
