use anyhow::Result;
use cubical_cumulants::algebra::{
    check_algebra_axioms, random_exterior_algebra, random_homogeneous, AlgVector, GradedBasisAlgebra, Homogeneous,
};
use cubical_cumulants::coalgebra::sym::{coderivation_extend, conjugated_coderivation, reduced_coproduct, tau, tau_inv};
use cubical_cumulants::coalgebra::{bracket_conjugation, bracket_direct, bracket_recursive, SymElement};
use cubical_cumulants::combinatorics::surjection_count;
use cubical_cumulants::LaurentH;
use num::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::rng_for;
use crate::config::RunConfig;
use crate::report::{run_check, CheckResult, Outcome};

pub fn run(cfg: &RunConfig) -> Vec<CheckResult> {
    vec![
        run_check(
            "coalgebra.algebra_axioms",
            "random test algebras are graded commutative and associative with a square-zero differential",
            || algebra_axioms(cfg),
        ),
        run_check(
            "coalgebra.tau_bijection",
            "tau is invertible and a map of coalgebras",
            || tau_bijection(cfg.seed, 10 * cfg.samples),
        ),
        run_check(
            "coalgebra.bracket_routes",
            "conjugation, subset-sum and commutator-recursion brackets coincide",
            || bracket_routes(cfg.seed, 5 * cfg.samples, cfg.k_max),
        ),
        run_check(
            "coalgebra.coderivation_square",
            "the conjugated coderivation squares to zero and is the coderivation of the brackets",
            || coderivation_square(cfg.seed, 2 * cfg.samples),
        ),
        run_check(
            "coalgebra.surjection_sum",
            "alternating sum of surjection counts equals one",
            || surjection_sum(10),
        ),
    ]
}

pub fn random_algebras(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<GradedBasisAlgebra>> {
    (0..count)
        .map(|i| Ok(random_exterior_algebra(rng, 4, if i % 2 == 0 { 1 } else { -1 })?))
        .collect()
}

/// Scales one off-diagonal product constant so that graded commutativity fails there.
pub fn corrupt(alg: &GradedBasisAlgebra) -> Result<GradedBasisAlgebra> {
    let mut file = alg.to_file();
    let target = file.products.iter_mut().find(|p| p.left != p.right);
    let Some(p) = target else { anyhow::bail!("algebra has no off-diagonal product to corrupt") };
    for e in &mut p.value {
        e.1 = e.1.scale(&cubical_cumulants::scalar::int(2));
    }
    Ok(GradedBasisAlgebra::from_file(&file)?)
}

pub fn algebra_axioms(cfg: &RunConfig) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, "algebra_axioms");
    let mut algebras = random_algebras(&mut rng, cfg.samples)?;
    if cfg.corrupt_products {
        algebras[0] = corrupt(&algebras[0])?;
    }
    let mut witnesses = Vec::new();
    for (i, alg) in algebras.iter().enumerate() {
        let report = check_algebra_axioms(alg);
        if !report.is_ok() {
            witnesses.push(json!({ "algebra": i, "violations": report.violations.iter().take(3).collect::<Vec<_>>() }));
        }
    }
    Ok(Outcome::new(
        witnesses.is_empty(),
        json!({ "algebras": algebras.len(), "corrupted": cfg.corrupt_products, "failures": witnesses }),
    ))
}

fn basis_word(alg: &GradedBasisAlgebra, rng: &mut ChaCha8Rng, max_len: usize) -> SymElement {
    let mut out = SymElement::zero();
    for _ in 0..3 {
        let k = rng.gen_range(1..=max_len);
        let idx: Vec<usize> = (0..k).map(|_| rng.gen_range(0..alg.dim())).collect();
        let c = LaurentH::from_int(rng.gen_range(-3..=3));
        out = out.plus(&SymElement::word(alg, &idx).scaled(&c));
    }
    out
}

fn nonzero_letters(alg: &GradedBasisAlgebra, rng: &mut ChaCha8Rng, k: usize) -> Vec<Homogeneous<AlgVector>> {
    let degrees = alg.degrees().to_vec();
    (0..k)
        .map(|_| {
            let d = degrees[rng.gen_range(0..degrees.len())];
            loop {
                let x = random_homogeneous(alg, rng, d);
                if !x.elem.is_zero() {
                    break x;
                }
            }
        })
        .collect()
}

pub fn tau_bijection(seed: u64, words: usize) -> Result<Outcome> {
    let mut rng = rng_for(seed, "tau_bijection");
    let algebras = random_algebras(&mut rng, words.div_ceil(10))?;
    let mut failures = Vec::new();
    for t in 0..words {
        let alg = &algebras[t / 10];
        let w = basis_word(alg, &mut rng, 5);
        let inverse = tau(alg, &tau_inv(alg, &w)) == w && tau_inv(alg, &tau(alg, &w)) == w;
        let lhs = reduced_coproduct(alg, &tau(alg, &w));
        let rhs = reduced_coproduct(alg, &w)
            .map_factor(0, |x| Ok(tau(alg, x)))?
            .map_factor(1, |x| Ok(tau(alg, x)))?;
        if !inverse || lhs != rhs {
            failures.push(t);
        }
    }
    Ok(Outcome::new(failures.is_empty(), json!({ "words": words, "max_length": 5, "failures": failures })))
}

pub fn bracket_routes(seed: u64, inputs: usize, k_max: usize) -> Result<Outcome> {
    let mut rng = rng_for(seed, "bracket_routes");
    let algebras = random_algebras(&mut rng, inputs.div_ceil(4))?;
    let mut failures = Vec::new();
    let mut nonzero = 0;
    for t in 0..inputs {
        let alg = &algebras[t / 4];
        let k = 1 + t % k_max;
        let letters = nonzero_letters(alg, &mut rng, k);
        let direct = bracket_direct(alg, &letters)?;
        let mut ok = bracket_conjugation(alg, &letters)? == direct;
        if k >= 2 {
            ok &= bracket_recursive(alg, &letters)? == direct;
            nonzero += usize::from(!direct.is_zero());
        }
        let sym = SymElement::wedge(alg, &letters.iter().map(|x| x.elem.clone()).collect::<Vec<_>>());
        ok &= conjugated_coderivation(alg, &sym).p1() == direct;
        if !ok {
            failures.push(t);
        }
    }
    Ok(Outcome::new(
        failures.is_empty(),
        json!({ "inputs": inputs, "k_max": k_max, "nonzero_higher_brackets": nonzero, "failures": failures }),
    ))
}

pub fn coderivation_square(seed: u64, words: usize) -> Result<Outcome> {
    let mut rng = rng_for(seed, "coderivation_square");
    let algebras = random_algebras(&mut rng, words.div_ceil(2))?;
    let mut failures = Vec::new();
    for t in 0..words {
        let alg = &algebras[t / 2];
        let w = basis_word(alg, &mut rng, 4);
        let dw = conjugated_coderivation(alg, &w);
        let mut total = SymElement::zero();
        for k in 1..=4 {
            total = total.plus(&coderivation_extend(alg, &w, k, |sw| {
                let letters: Vec<_> = sw.indices().iter().map(|&i| alg.basis_letter(i)).collect();
                bracket_direct(alg, &letters)
            })?);
        }
        if !conjugated_coderivation(alg, &dw).is_zero() || total != dw {
            failures.push(t);
        }
    }
    Ok(Outcome::new(failures.is_empty(), json!({ "words": words, "max_length": 4, "failures": failures })))
}

pub fn surjection_sum(s_max: usize) -> Result<Outcome> {
    let mut sums = Vec::new();
    for s in 1..=s_max {
        let mut acc = BigInt::from(0);
        for t in 1..=s {
            let n = BigInt::from(surjection_count(s, t));
            if (s - t) % 2 == 0 {
                acc += n;
            } else {
                acc -= n;
            }
        }
        sums.push(acc.to_string());
    }
    Ok(Outcome::new(sums.iter().all(|x| x == "1"), json!({ "s_max": s_max, "sums": sums })))
}
