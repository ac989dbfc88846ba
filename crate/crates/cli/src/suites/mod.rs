//! The verification suites behind `cubical verify`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::report::CheckResult;

pub mod brackets;
pub mod coalgebra;
pub mod lattice;
pub mod multiscale;

/// Every check owns its generator, so results do not depend on which checks run or in what order.
pub(crate) fn rng_for(seed: u64, salt: &str) -> ChaCha8Rng {
    let mut s = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in salt.bytes() {
        s = s.rotate_left(5) ^ u64::from(b);
        s = s.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(s)
}

/// Runs the four suites on separate threads and collects their checks.
pub fn run_all(config: &RunConfig) -> Vec<CheckResult> {
    let suites: [fn(&RunConfig) -> Vec<CheckResult>; 4] = [coalgebra::run, lattice::run, brackets::run, multiscale::run];
    std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|suite| s.spawn(move || suite(config))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite panicked")).collect()
    })
}
