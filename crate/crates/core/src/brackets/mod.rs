//! Closed forms of the higher brackets of the lattice differentials.
//!
//! All forms are evaluated on ordered tuples with maps composed factor by factor; the
//! grading involutions inside the formulas already carry the signs.

mod closed;
mod qft;
mod table;

pub use closed::{closed_bracket, delta_bracket_closed, partial_bracket_closed, BracketRequest};
pub use qft::{binary_qft_check, valuation_bound, ValuationEntry, ValuationReport};
pub use table::bracket_table_n3;
