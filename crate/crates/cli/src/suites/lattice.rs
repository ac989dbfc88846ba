use anyhow::Result;
use cubical_cumulants::lattice::{degree0_homology_rank, LatticeElement, LatticeSpec, Role};
use cubical_cumulants::scalar::int;
use cubical_cumulants::LaurentH;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::rng_for;
use crate::config::RunConfig;
use crate::report::{run_check, CheckResult, Outcome};

type Identity = fn(&LatticeSpec, &mut ChaCha8Rng) -> Result<bool>;

pub fn run(cfg: &RunConfig) -> Vec<CheckResult> {
    let mut out = identities(cfg);
    out.push(run_check(
        "lattice.homology_degree0",
        "degree-zero homology of the periodic chain complex has rank 2^n",
        || homology(cfg.n, cfg.period),
    ));
    out
}

/// The local identities, each on every dimension up to `cfg.n`.
pub fn identities(cfg: &RunConfig) -> Vec<CheckResult> {
    let identities: [(&str, &str, Identity); 6] = [
        ("lattice.wedge_algebra", "the pointwise wedge is graded commutative and associative", wedge_algebra),
        ("lattice.square_zero", "boundary and coboundary square to zero", square_zero),
        ("lattice.star_squared", "star squared is (-1)^{k(n-k)} in degree k", star_squared),
        (
            "lattice.star_conjugation",
            "star with the sign twist conjugates each boundary component into the coboundary component",
            star_conjugation,
        ),
        (
            "lattice.shifted_leibniz",
            "coboundary components obey the shifted Leibniz rule with either shift placement",
            shifted_leibniz,
        ),
        (
            "lattice.interior_shifts",
            "shifted interior products are shifted derivations of the wedge",
            interior_shifts,
        ),
    ];
    identities.iter().map(|(id, anchor, f)| run_check(id, anchor, || identity_check(cfg, id, *f))).collect()
}

fn identity_check(cfg: &RunConfig, id: &str, f: Identity) -> Result<Outcome> {
    let trials = 5 * cfg.samples;
    let mut rng = rng_for(cfg.seed, id);
    let mut failures = Vec::new();
    for n in 1..=cfg.n {
        let spec = cfg.lattice_spec(n)?;
        for t in 0..trials {
            if !f(&spec, &mut rng)? {
                failures.push(json!({ "n": n, "trial": t }));
            }
        }
    }
    Ok(Outcome::new(
        failures.is_empty(),
        json!({ "dimensions": (1..=cfg.n).collect::<Vec<_>>(), "trials": trials, "failures": failures }),
    ))
}

pub fn random_element(spec: &LatticeSpec, role: Role, rng: &mut ChaCha8Rng, terms: usize) -> Result<LatticeElement> {
    let cells = spec.cells();
    let entries: Vec<_> = (0..terms)
        .map(|_| {
            let c = cells[rng.gen_range(0..cells.len())].clone();
            (c, LaurentH::monomial(int(rng.gen_range(-3..=3)), rng.gen_range(0..=1)))
        })
        .collect();
    Ok(LatticeElement::from_entries(spec, role, entries)?)
}

fn sign(odd: i32) -> LaurentH {
    LaurentH::from_int(if odd.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn wedge_algebra(spec: &LatticeSpec, rng: &mut ChaCha8Rng) -> Result<bool> {
    let role = if rng.gen_bool(0.5) { Role::Chain } else { Role::Cochain };
    let x = random_element(spec, role, rng, 12)?;
    let y = random_element(spec, role, rng, 12)?;
    let z = random_element(spec, role, rng, 12)?;
    let mut ok = x.wedge(&y)?.wedge(&z)?.eq_on_overlap(&x.wedge(&y.wedge(&z)?)?)?;
    for dx in x.degrees() {
        for dy in y.degrees() {
            let (a, b) = (x.degree_part(dx), y.degree_part(dy));
            ok &= a.wedge(&b)?.eq_on_overlap(&b.wedge(&a)?.scaled(&sign(dx * dy)))?;
        }
    }
    Ok(ok)
}

fn square_zero(spec: &LatticeSpec, rng: &mut ChaCha8Rng) -> Result<bool> {
    let c = random_element(spec, Role::Chain, rng, 15)?;
    let f = random_element(spec, Role::Cochain, rng, 15)?;
    Ok(c.boundary()?.boundary()?.is_zero() && f.coboundary()?.coboundary()?.is_zero())
}

fn star_squared(spec: &LatticeSpec, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = random_element(spec, Role::Cochain, rng, 10)?;
    let n = spec.dim as i32;
    let mut ok = true;
    for k in x.degrees() {
        let part = x.degree_part(k);
        ok &= part.star().star() == part.scaled(&sign(k * (n - k)));
    }
    Ok(ok)
}

fn star_conjugation(spec: &LatticeSpec, rng: &mut ChaCha8Rng) -> Result<bool> {
    let f = random_element(spec, Role::Cochain, rng, 10)?;
    let dual = |x: &LatticeElement, u| -> Result<LatticeElement> {
        Ok(x.with_role(Role::Chain).boundary_dir(u)?.with_role(Role::Cochain))
    };
    let star_bar = |x: &LatticeElement| x.sign_twist().star();
    let mut ok = true;
    for u in 0..spec.dim {
        ok &= star_bar(&f).coboundary_dir(u)?.eq_on_overlap(&dual(&f, u)?.star())?;
        ok &= dual(&f.star(), u)?.eq_on_overlap(&star_bar(&f.coboundary_dir(u)?))?;
    }
    Ok(ok)
}

fn shifted_leibniz(spec: &LatticeSpec, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = random_element(spec, Role::Cochain, rng, 10)?;
    let y = random_element(spec, Role::Cochain, rng, 10)?;
    let mut ok = true;
    for u in 0..spec.dim {
        let d = |e: &LatticeElement| e.coboundary_dir(u);
        let back = |e: &LatticeElement| e.translate(u, false);
        let fwd = |e: &LatticeElement| e.translate(u, true);
        let lhs = d(&x.wedge(&y)?)?;
        let rhs = d(&x)?.wedge(&fwd(&y)?)?.plus(&back(&x)?.sign_twist().wedge(&d(&y)?)?)?;
        let opposite = d(&x)?.wedge(&back(&y)?)?.plus(&fwd(&x)?.sign_twist().wedge(&d(&y)?)?)?;
        ok &= lhs.eq_on_overlap(&rhs)? && lhs.eq_on_overlap(&opposite)?;
    }
    Ok(ok)
}

fn interior_shifts(spec: &LatticeSpec, rng: &mut ChaCha8Rng) -> Result<bool> {
    let x = random_element(spec, Role::Chain, rng, 10)?;
    let y = random_element(spec, Role::Chain, rng, 10)?;
    let mut ok = true;
    for u in 0..spec.dim {
        for forward in [false, true] {
            let t = |e: &LatticeElement| e.translate(u, forward);
            let ti = |e: &LatticeElement| t(&e.interior(u)?);
            let lhs = ti(&x.wedge(&y)?)?;
            let rhs = ti(&x)?.wedge(&t(&y)?)?.plus(&t(&x.sign_twist())?.wedge(&ti(&y)?)?)?;
            ok &= lhs.eq_on_overlap(&rhs)?;
        }
    }
    Ok(ok)
}

pub fn homology(n: usize, period: u32) -> Result<Outcome> {
    let rank = degree0_homology_rank(&LatticeSpec::periodic(n, period)?)?;
    let expected = 1usize << n;
    Ok(Outcome::new(rank == expected, json!({ "n": n, "N": period, "rank": rank, "expected": expected })))
}
