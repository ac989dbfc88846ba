//! The symmetric coalgebra `S*V`, the cumulant bijection and the brackets of a differential.

mod brackets;
mod sign;
pub mod sym;
pub mod words;

pub use brackets::{bracket_conjugation, bracket_direct, bracket_multilinear, bracket_recursive};
pub use sign::{blocks_sign, koszul_sign, subset_sign};
pub use sym::{SymElement, SymTensor, SymWord};
pub use words::{Word, WordSum};
