use anyhow::Result;
use cubical_cumulants::algebra::Homogeneous;
use cubical_cumulants::brackets::{
    binary_qft_check, bracket_table_n3, closed_bracket, partial_bracket_closed, BracketRequest,
};
use cubical_cumulants::coalgebra::{bracket_conjugation, bracket_direct, bracket_multilinear, bracket_recursive};
use cubical_cumulants::lattice::{Cell, LatticeAlgebra, LatticeElement, LatticeSpec, Normalization, Role};
use cubical_cumulants::poly::PolynomialField;
use cubical_cumulants::scalar::int;
use cubical_cumulants::LaurentH;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::rng_for;
use crate::config::RunConfig;
use crate::report::{run_check, CheckResult, Outcome};

const CHAIN_NORMALIZATIONS: [Normalization; 3] = [Normalization::OverTwoStep, Normalization::OverStep, Normalization::Raw];

pub fn run(cfg: &RunConfig) -> Vec<CheckResult> {
    let sets = cfg.samples * 5 / 2;
    vec![
        run_check(
            "brackets.delta_oracle",
            "closed-form cochain brackets with delta/2h equal the generic brackets, per direction and summed",
            || oracle(cfg, Role::Cochain, sets),
        ),
        run_check(
            "brackets.partial_oracle",
            "closed-form chain brackets equal the generic brackets for every normalization, per direction and summed",
            || oracle(cfg, Role::Chain, sets),
        ),
        run_check(
            "brackets.routes",
            "closed-form brackets agree with the conjugation, subset-sum and recursive routes on homogeneous inputs",
            || routes(cfg, sets),
        ),
        run_check(
            "brackets.case_tables",
            "the n = 3 case tables for the chain 2- and 3-brackets agree with the closed form",
            || case_tables(cfg.seed),
        ),
        run_check(
            "brackets.valuations",
            "on polynomial samples the k-bracket of delta/2h has valuation >= k-1 and of d/2h, d/h >= k-2",
            || valuations(cfg),
        ),
    ]
}

/// Dimensions used by the finite-basis bracket checks.
fn dims(cfg: &RunConfig) -> Vec<usize> {
    (1..=cfg.n.min(2)).collect()
}

pub fn dense(spec: &LatticeSpec, role: Role, rng: &mut ChaCha8Rng) -> Result<LatticeElement> {
    let entries: Vec<_> = spec
        .cells()
        .into_iter()
        .filter_map(|c| rng.gen_bool(0.5).then(|| (c, LaurentH::from_int(rng.gen_range(-2..=2)))))
        .collect();
    Ok(LatticeElement::from_entries(spec, role, entries)?)
}

pub fn oracle(cfg: &RunConfig, role: Role, sets: usize) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, if role == Role::Chain { "partial_oracle" } else { "delta_oracle" });
    let dims = dims(cfg);
    let mut failures = Vec::new();
    for t in 0..sets {
        let n = dims[t % dims.len()];
        let k = 1 + (t / dims.len()) % cfg.k_max;
        let norm = match role {
            Role::Cochain => Normalization::OverTwoStep,
            Role::Chain => CHAIN_NORMALIZATIONS[t % 3],
        };
        let spec = LatticeSpec::periodic(n, cfg.period)?;
        let alg = LatticeAlgebra::new(&spec, role, norm);
        let inputs = (0..k).map(|_| dense(&spec, role, &mut rng)).collect::<Result<Vec<_>>>()?;
        let request = BracketRequest::new(role, norm);
        let mut total = LatticeElement::zero(&spec, role);
        let mut ok = true;
        for u in 0..n {
            let closed = closed_bracket(&request.along(u), &inputs)?;
            ok &= closed == bracket_multilinear(&alg.along(u), &inputs, bracket_direct)?;
            total = total.plus(&closed)?;
        }
        ok &= total == bracket_multilinear(&alg, &inputs, bracket_direct)?;
        ok &= total == closed_bracket(&request, &inputs)?;
        if !ok {
            failures.push(json!({ "set": t, "n": n, "k": k, "normalization": norm }));
        }
    }
    Ok(Outcome::new(
        failures.is_empty(),
        json!({ "sets": sets, "dimensions": dims, "N": cfg.period, "k_max": cfg.k_max, "failures": failures }),
    ))
}

pub fn routes(cfg: &RunConfig, sets: usize) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, "routes");
    let dims = dims(cfg);
    let mut failures = Vec::new();
    for t in 0..sets {
        let n = dims[t % dims.len()];
        let spec = LatticeSpec::periodic(n, cfg.period)?;
        let role = if t % 2 == 0 { Role::Chain } else { Role::Cochain };
        let u = rng.gen_range(0..n);
        let alg = LatticeAlgebra::new(&spec, role, Normalization::OverTwoStep).along(u);
        let k = 2 + t % 2;
        let letters = (0..k)
            .map(|_| {
                let d = rng.gen_range(0..=n as i32);
                Ok(Homogeneous::new(d, dense(&spec, role, &mut rng)?.degree_part(d)))
            })
            .collect::<Result<Vec<_>>>()?;
        let elems: Vec<_> = letters.iter().map(|l| l.elem.clone()).collect();
        let closed = closed_bracket(&BracketRequest::new(role, Normalization::OverTwoStep).along(u), &elems)?;
        let ok = closed == bracket_direct(&alg, &letters)?
            && closed == bracket_conjugation(&alg, &letters)?
            && closed == bracket_recursive(&alg, &letters)?;
        if !ok {
            failures.push(t);
        }
    }
    Ok(Outcome::new(failures.is_empty(), json!({ "sets": sets, "failures": failures })))
}

fn random_monomial(spec: &LatticeSpec, rng: &mut ChaCha8Rng, ty: u32) -> Result<LatticeElement> {
    let entries: Vec<_> = spec
        .vertices()
        .into_iter()
        .filter_map(|p| {
            rng.gen_bool(0.6)
                .then(|| (Cell::new(&p, ty), LaurentH::monomial(int(rng.gen_range(-3..=3)), rng.gen_range(0..=1))))
        })
        .collect();
    Ok(LatticeElement::from_entries(spec, Role::Chain, entries)?)
}

/// Every row of the tables: `u` lies in input `i` iff bit `i` of the pattern is set.
pub fn case_tables(seed: u64) -> Result<Outcome> {
    let mut rng = rng_for(seed, "case_tables");
    let spec = LatticeSpec::periodic(3, 1)?;
    let mut failures = Vec::new();
    let mut evaluated = 0;
    for k in 2..=3usize {
        for pattern in 0..1u32 << k {
            for _ in 0..4 {
                let u = rng.gen_range(0..3);
                let mut types: Vec<u32> = (0..k).map(|i| (pattern >> i & 1) << u).collect();
                for axis in (0..3).filter(|&a| a != u) {
                    let slot = rng.gen_range(0..=k);
                    if slot < k {
                        types[slot] |= 1 << axis;
                    }
                }
                let inputs = types.iter().map(|&ty| random_monomial(&spec, &mut rng, ty)).collect::<Result<Vec<_>>>()?;
                evaluated += 1;
                if bracket_table_n3(&inputs, u)? != partial_bracket_closed(&inputs, u)? {
                    failures.push(json!({ "k": k, "pattern": pattern, "u": u }));
                }
            }
        }
    }
    Ok(Outcome::new(failures.is_empty(), json!({ "evaluated": evaluated, "failures": failures })))
}

pub fn valuations(cfg: &RunConfig) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, "valuations");
    let mut entries = Vec::new();
    let mut pass = true;
    for n in dims(cfg) {
        let spec = LatticeSpec::window(n, cfg.radius)?;
        let types: Vec<u32> = (0..1u32 << n).collect();
        let fields: Vec<_> = (0..cfg.samples).map(|_| PolynomialField::random(&mut rng, n, &types, cfg.degree)).collect();
        for (role, norm) in [
            (Role::Cochain, Normalization::OverTwoStep),
            (Role::Chain, Normalization::OverTwoStep),
            (Role::Chain, Normalization::OverStep),
            (Role::Chain, Normalization::Raw),
        ] {
            let report = binary_qft_check(&spec, role, norm, cfg.k_max, &fields)?;
            pass &= report.passed();
            for e in report.entries {
                entries.push(json!({ "n": n, "entry": e }));
            }
        }
    }
    Ok(Outcome::new(pass, json!({ "samples": cfg.samples, "degree": cfg.degree, "entries": entries })))
}
