use anyhow::Result;
use cubical_cumulants::algebra::{
    random_exterior_algebra, random_graded_map, random_homogeneous, AlgVector, BasisMap, GradedBasisAlgebra,
    Homogeneous,
};
use cubical_cumulants::lattice::{LatticeSpec, Role};
use cubical_cumulants::multiscale::{
    check_chain_map, check_cochain_map, check_duality, homogeneous_fields, intertwine_check, scale_tower,
    sigma_composed, sigma_direct, sigma_divisibility_check, sigma_recursive, tensor_cumulant, tensor_vector,
    GeneratorCheck, ScaleMap, ScalePair, TensorLetter, TowerConfig,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::rng_for;
use crate::config::RunConfig;
use crate::report::{run_check, CheckResult, Outcome};

pub fn run(cfg: &RunConfig) -> Vec<CheckResult> {
    vec![
        run_check(
            "multiscale.chain_map",
            "crumbling coarse chains into fine ones commutes with the boundary",
            || generator_check(cfg, check_chain_map, cfg.n),
        ),
        run_check(
            "multiscale.cochain_map",
            "integration of fine cochains satisfies (1/2) coarse delta after integration = integration after delta",
            || generator_check(cfg, check_cochain_map, cfg.n),
        ),
        run_check(
            "multiscale.duality",
            "integration and crumbling are adjoint for the volume-weighted pairing",
            || generator_check(cfg, check_duality, cfg.n.min(2)),
        ),
        run_check(
            "multiscale.sigma_routes",
            "the partition formula, the recursion and the composed coalgebra map give the same cumulants",
            || sigma_routes(cfg),
        ),
        run_check(
            "multiscale.tensor_cumulant",
            "cumulants of a tensor product of maps follow from the cumulants of the factors",
            || tensor_cumulants(cfg),
        ),
        run_check(
            "multiscale.sigma_valuations",
            "on polynomial samples the cochain cumulant sigma_k has valuation >= k-1 and kills point values",
            || sigma_valuations(cfg),
        ),
        run_check(
            "multiscale.intertwining",
            "the cumulants intertwine the fine and coarse bracket coderivations order by order",
            || intertwining(cfg, &[cfg.order_max; 2]),
        ),
        run_check(
            "multiscale.tower",
            "every adjacent pair of a three-level tower passes, and so does the composite map",
            || tower(cfg),
        ),
    ]
}

/// Fine lattices have period `2N`, so the coarse one has period `N`.
pub fn generator_check(cfg: &RunConfig, f: fn(&ScalePair) -> cubical_cumulants::Result<GeneratorCheck>, n_max: usize) -> Result<Outcome> {
    let mut per_dim = Vec::new();
    let mut pass = true;
    for n in 1..=n_max {
        let pair = ScalePair::new(&LatticeSpec::periodic(n, 2 * cfg.period)?)?;
        let r = f(&pair)?;
        pass &= r.passed();
        per_dim.push(json!({ "n": n, "generators": r.generators, "failures": r.failures.iter().take(5).collect::<Vec<_>>() }));
    }
    Ok(Outcome::new(pass, json!({ "fine_period": 2 * cfg.period, "dimensions": per_dim })))
}

/// Nonzero homogeneous letters, degree zero half the time since it holds the unit.
pub fn random_letters(alg: &GradedBasisAlgebra, rng: &mut ChaCha8Rng, k: usize) -> Vec<Homogeneous<AlgVector>> {
    let degrees = alg.degrees().to_vec();
    (0..k)
        .map(|_| loop {
            let d = if rng.gen_bool(0.5) { 0 } else { degrees[rng.gen_range(0..degrees.len())] };
            let x = random_homogeneous(alg, rng, d);
            if !x.elem.is_zero() {
                break x;
            }
        })
        .collect()
}

pub fn sigma_routes(cfg: &RunConfig) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, "sigma_routes");
    let trials = 3 * cfg.samples;
    let k_max = cfg.k_max.min(4);
    let mut failures = Vec::new();
    let mut nonzero = 0;
    for t in 0..trials {
        let dd = if t % 2 == 0 { 1 } else { -1 };
        let v = random_exterior_algebra(&mut rng, 4, dd)?;
        let vbar = if t % 3 == 0 { v.clone() } else { random_exterior_algebra(&mut rng, 4, dd)? };
        let map = random_graded_map(&mut rng, &v, &vbar);
        let bar = |x: &AlgVector| Ok(map.apply(x));
        for k in 1..=k_max {
            let letters = random_letters(&v, &mut rng, k);
            let direct = sigma_direct(&v, &vbar, &bar, &letters)?;
            if direct != sigma_recursive(&v, &vbar, &bar, &letters)? || direct != sigma_composed(&v, &vbar, &bar, &letters)? {
                failures.push(json!({ "trial": t, "k": k }));
            }
            nonzero += usize::from(k > 1 && !direct.is_zero());
        }
    }
    Ok(Outcome::new(
        failures.is_empty(),
        json!({ "trials": trials, "k_max": k_max, "nonzero_higher_cumulants": nonzero, "failures": failures }),
    ))
}

struct TensorSetup {
    v: GradedBasisAlgebra,
    w: GradedBasisAlgebra,
    vbar: GradedBasisAlgebra,
    wbar: GradedBasisAlgebra,
    fv: BasisMap,
    fw: BasisMap,
}

impl TensorSetup {
    fn random(rng: &mut ChaCha8Rng) -> Result<Self> {
        let v = random_exterior_algebra(rng, 3, 1)?;
        let w = random_exterior_algebra(rng, 3, 1)?;
        let vbar = v.clone();
        let wbar = if rng.gen_bool(0.5) { w.clone() } else { random_exterior_algebra(rng, 3, 1)? };
        let fv = random_graded_map(rng, &v, &vbar);
        let fw = random_graded_map(rng, &w, &wbar);
        Ok(Self { v, w, vbar, wbar, fv, fw })
    }

    /// The factor formula and the direct cumulant of the tensor map.
    fn sides(&self, letters: &[TensorLetter]) -> Result<(AlgVector, AlgVector)> {
        let bar_v = |x: &AlgVector| Ok(self.fv.apply(x));
        let bar_w = |x: &AlgVector| Ok(self.fw.apply(x));
        let formula = tensor_cumulant(
            &self.w,
            &self.vbar,
            self.wbar.dim(),
            |xs: &[Homogeneous<AlgVector>]| sigma_direct(&self.v, &self.vbar, &bar_v, xs),
            |xs: &[Homogeneous<AlgVector>]| sigma_direct(&self.w, &self.wbar, &bar_w, xs),
            letters,
        )?;
        let vw = self.v.tensor(&self.w)?;
        let vwbar = self.vbar.tensor(&self.wbar)?;
        let f = self.fv.tensor(&self.fw, self.wbar.dim());
        let bar = |x: &AlgVector| Ok(f.apply(x));
        let joined: Vec<_> = letters
            .iter()
            .map(|(a, b)| Homogeneous::new(a.degree + b.degree, tensor_vector(&a.elem, &b.elem, self.w.dim())))
            .collect();
        Ok((formula, sigma_direct(&vw, &vwbar, &bar, &joined)?))
    }
}

pub fn tensor_cumulants(cfg: &RunConfig) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, "tensor_cumulant");
    let trials = cfg.samples;
    let mut failures = Vec::new();
    let mut nonzero = 0;
    for t in 0..trials {
        let s = TensorSetup::random(&mut rng)?;
        for k in 1..=3 {
            let va = random_letters(&s.v, &mut rng, k);
            let wa = random_letters(&s.w, &mut rng, k);
            let letters: Vec<TensorLetter> = va.into_iter().zip(wa).collect();
            let (formula, direct) = s.sides(&letters)?;
            if formula != direct {
                failures.push(json!({ "trial": t, "k": k }));
            }
            nonzero += usize::from(k > 1 && !direct.is_zero());
        }
    }
    Ok(Outcome::new(
        failures.is_empty(),
        json!({ "trials": trials, "k_max": 3, "nonzero_higher_cumulants": nonzero, "failures": failures }),
    ))
}

fn window_map(n: usize, radius: i64, role: Role) -> Result<ScaleMap> {
    Ok(ScaleMap::new(ScalePair::new(&LatticeSpec::window(n, radius)?)?, role))
}

/// Chains are run too; their valuations are recorded but not asserted.
pub fn sigma_valuations(cfg: &RunConfig) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, "sigma_valuations");
    let mut pass = true;
    let mut entries = Vec::new();
    for n in 1..=cfg.n.min(2) {
        let fields = homogeneous_fields(&mut rng, n, cfg.samples, cfg.degree.min(3));
        for role in [Role::Cochain, Role::Chain] {
            let report = sigma_divisibility_check(&window_map(n, cfg.radius, role)?, cfg.k_max.min(4), &fields)?;
            pass &= report.passed();
            for e in report.entries {
                entries.push(json!({ "n": n, "entry": e }));
            }
        }
    }
    Ok(Outcome::new(pass, json!({ "samples": cfg.samples, "entries": entries })))
}

/// `orders[n - 1]` is the highest order checked in dimension `n`; dimensions past its end are skipped.
pub fn intertwining(cfg: &RunConfig, orders: &[usize]) -> Result<Outcome> {
    let mut rng = rng_for(cfg.seed, "intertwining");
    let samples = cfg.samples.min(6);
    let mut pass = true;
    let mut reports = Vec::new();
    for (n, &order) in (1..=cfg.n).zip(orders) {
        let fields = homogeneous_fields(&mut rng, n, samples, 2);
        for role in [Role::Cochain, Role::Chain] {
            let radius = cfg.radius + 2 * order as i64;
            let report = intertwine_check(&window_map(n, radius, role)?, order, &fields)?;
            pass &= report.passed();
            reports.push(json!({ "n": n, "report": report }));
        }
    }
    Ok(Outcome::new(pass, json!({ "samples": samples, "reports": reports })))
}

pub fn tower(cfg: &RunConfig) -> Result<Outcome> {
    let mut pass = true;
    let mut reports = Vec::new();
    for role in [Role::Cochain, Role::Chain] {
        let config = TowerConfig {
            dim: 1,
            period: 4 * cfg.period,
            levels: vec![0, 1, 2],
            role,
            radius: cfg.radius + 4,
            k_max: 3,
            order_max: 2,
            samples: 4,
            degree: 2,
            seed: cfg.seed,
        };
        let report = scale_tower(&config)?;
        pass &= report.passed();
        reports.push(report);
    }
    Ok(Outcome::new(pass, json!({ "towers": reports })))
}
