//! Maps between a lattice and its coarsening by a factor two, and the cumulants they induce.
//!
//! Crumbling sends coarse chains to fine ones; integration sends fine cochains to coarse ones.
//! Neither respects the products, and the failure is measured by the cumulants `σ_k`.

mod checks;
mod cumulant;
mod maps;
mod tower;

pub use checks::{
    field_degree, intertwine_check, intertwine_sides, long_hand_check, sigma_divisibility_check, IntertwineEntry,
    IntertwineReport, ScaleMap, SigmaEntry, SigmaReport,
};
pub use cumulant::{
    sigma_composed, sigma_direct, sigma_extend, sigma_multilinear, sigma_recursive, tensor_cumulant, tensor_vector,
    TensorLetter,
};
pub use maps::{check_chain_map, check_cochain_map, check_duality, crumble, integrate, pairing, GeneratorCheck, ScalePair};
pub use tower::{homogeneous_fields, scale_tower, PairReport, TowerConfig, TowerReport};
