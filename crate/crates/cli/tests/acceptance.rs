//! Acceptance run: every criterion at its stated size and time limit, one PASS/FAIL line each.

use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::Result;
use cubical_cli::converge;
use cubical_cli::report::{CheckResult, Outcome};
use cubical_cli::suites::{brackets, coalgebra, lattice, multiscale};
use cubical_cli::RunConfig;
use cubical_cumulants::lattice::Role;
use cubical_cumulants::multiscale::{check_chain_map, check_cochain_map, check_duality};

const SEED: u64 = 2024;

struct Criterion {
    name: &'static str,
    limit: Duration,
    body: fn() -> Result<Vec<(String, bool)>>,
}

fn outcome(name: &str, o: Result<Outcome>) -> (String, bool) {
    match o {
        Ok(o) => (name.to_string(), o.pass),
        Err(e) => (format!("{name}: {e:#}"), false),
    }
}

fn checks(cs: Vec<CheckResult>) -> Vec<(String, bool)> {
    cs.into_iter().map(|c| (c.id, c.pass)).collect()
}

fn cfg(n: usize) -> RunConfig {
    RunConfig { n, period: 1, samples: 20, k_max: 4, degree: 4, seed: SEED, ..RunConfig::default() }
}

fn tau() -> Result<Vec<(String, bool)>> {
    Ok(vec![outcome("tau_bijection", coalgebra::tau_bijection(SEED, 200))])
}

fn bracket_agreement() -> Result<Vec<(String, bool)>> {
    Ok(vec![
        outcome("bracket_routes", coalgebra::bracket_routes(SEED, 100, 4)),
        outcome("coderivation_square", coalgebra::coderivation_square(SEED, 100)),
    ])
}

fn surjections() -> Result<Vec<(String, bool)>> {
    Ok(vec![outcome("surjection_sum", coalgebra::surjection_sum(10))])
}

fn lattice_identities() -> Result<Vec<(String, bool)>> {
    // 5 * samples = 100 elements per identity and dimension
    Ok(checks(lattice::identities(&cfg(3))))
}

fn homology() -> Result<Vec<(String, bool)>> {
    Ok((1..=3).map(|n| outcome(&format!("homology n={n}"), lattice::homology(n, 1))).collect())
}

fn oracle() -> Result<Vec<(String, bool)>> {
    let c = cfg(2);
    Ok(vec![
        outcome("delta_oracle", brackets::oracle(&c, Role::Cochain, 50)),
        outcome("partial_oracle", brackets::oracle(&c, Role::Chain, 50)),
    ])
}

fn bracket_valuations() -> Result<Vec<(String, bool)>> {
    Ok(vec![outcome("valuations", brackets::valuations(&cfg(2)))])
}

fn scale_maps() -> Result<Vec<(String, bool)>> {
    // fine period 2N = 2
    let c = cfg(2);
    Ok(vec![
        outcome("chain_map", multiscale::generator_check(&c, check_chain_map, 2)),
        outcome("cochain_map", multiscale::generator_check(&c, check_cochain_map, 2)),
        outcome("duality", multiscale::generator_check(&c, check_duality, 2)),
    ])
}

fn sigma() -> Result<Vec<(String, bool)>> {
    let c = cfg(2);
    Ok(vec![
        outcome("sigma_routes", multiscale::sigma_routes(&c)),
        outcome("tensor_cumulant", multiscale::tensor_cumulants(&c)),
        outcome("sigma_valuations", multiscale::sigma_valuations(&c)),
        outcome("intertwining", multiscale::intertwining(&RunConfig { order_max: 3, ..c }, &[3, 3])),
    ])
}

fn convergence() -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for n in [1, 2] {
        let c = RunConfig { n, seed: SEED, levels: vec![3, 4, 5, 6], ..RunConfig::converge() };
        for r in converge::run(&c) {
            out.push((format!("{} n={n}", r.id), r.pass));
        }
    }
    Ok(out)
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { name: "cumulant bijection, 200 words", limit: Duration::from_secs(10), body: tau },
        Criterion { name: "bracket triple agreement and D o D = 0", limit: Duration::from_secs(30), body: bracket_agreement },
        Criterion { name: "alternating surjection sum, s <= 10", limit: Duration::from_secs(1), body: surjections },
        Criterion { name: "lattice identities, n <= 3, N = 1", limit: Duration::from_secs(60), body: lattice_identities },
        Criterion { name: "degree-zero homology rank 2^n, n = 1..3", limit: Duration::from_secs(30), body: homology },
        Criterion { name: "closed-form vs generic brackets, 50 sets", limit: Duration::from_secs(300), body: oracle },
        Criterion { name: "bracket valuations on polynomial fields", limit: Duration::from_secs(300), body: bracket_valuations },
        Criterion { name: "crumbling, integration and duality, N = 2", limit: Duration::from_secs(60), body: scale_maps },
        Criterion { name: "cumulant routes, tensor formula, valuations, intertwining", limit: Duration::from_secs(600), body: sigma },
        Criterion { name: "convergence rates over levels 3..6", limit: Duration::from_secs(300), body: convergence },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.body)();
        let elapsed = start.elapsed();
        let (pass, parts) = match result {
            Ok(parts) => (parts.iter().all(|(_, ok)| *ok) && elapsed < c.limit, parts),
            Err(e) => (false, vec![(format!("{e:#}"), false)]),
        };
        // straight to the handle, so the lines show up without --nocapture
        let mut err = std::io::stderr().lock();
        let _ = writeln!(
            err,
            "{} {} ({:.2?} of {:?})",
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed,
            c.limit
        );
        for (part, _) in parts.iter().filter(|(_, ok)| !ok) {
            let _ = writeln!(err, "    failed: {part}");
        }
        if !pass {
            failed.push(c.name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
