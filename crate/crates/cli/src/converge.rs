//! Numeric refinement study: lattice operators on fixed polynomial fields against their limits.

use anyhow::{bail, Result};
use cubical_cumulants::brackets::{closed_bracket, BracketRequest};
use cubical_cumulants::coalgebra::{bracket_direct, bracket_multilinear};
use cubical_cumulants::lattice::{sample_polynomial, LatticeElement, LatticeSpec, Mode, Normalization, Region, Role, Scale};
use cubical_cumulants::poly::{Polynomial, PolynomialField};
use cubical_cumulants::scalar::{format_rational, Rational};
use num::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::config::RunConfig;
use crate::continuum::Continuum;
use crate::report::{run_check, CheckResult, Outcome};
use crate::suites::rng_for;

/// Least acceptable `log2` ratio of errors between consecutive levels.
pub const MIN_RATE: f64 = 1.0;
pub const RATE_TOLERANCE: f64 = 0.1;

/// Extra lattice steps around the measured region, enough for every stencil used here.
const MARGIN: i64 = 8;

/// The fields held fixed while the lattice is refined.
#[derive(Debug, Clone)]
pub struct Fields {
    pub dim: usize,
    /// Cochain pair for the 2-bracket and the first-order comparison.
    pub f: PolynomialField,
    pub g: PolynomialField,
    /// Chain triple for the 3-bracket; the first two also feed the 2-bracket comparison.
    pub a: PolynomialField,
    pub b: PolynomialField,
    pub c: PolynomialField,
}

impl Fields {
    pub fn random(dim: usize, degree: u32, seed: u64) -> Self {
        let mut rng = rng_for(seed, "converge");
        let types: Vec<u32> = (0..1u32 << dim).collect();
        let mut next = || PolynomialField::random(&mut rng, dim, &types, degree);
        Self { dim, f: next(), g: next(), a: next(), b: next(), c: next() }
    }

    pub fn constant(dim: usize) -> Self {
        let field = |c: i64| {
            let mut f = PolynomialField::new(dim);
            for ty in 0..1u32 << dim {
                f.set(ty, Polynomial::constant(dim, Rational::from_integer((c + ty as i64).into()))).expect("fits");
            }
            f
        };
        Self { dim, f: field(1), g: field(2), a: field(3), b: field(-1), c: field(5) }
    }

    pub fn with_f(mut self, f: PolynomialField) -> Self {
        self.f = f;
        self
    }
}

/// One quantity across the levels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub levels: Vec<u32>,
    /// Exact sup-norms.
    pub norms: Vec<String>,
    pub approx: Vec<f64>,
    /// `log2(e_i / e_{i+1})`; `None` where both errors vanish, infinity where only the finer does.
    pub rates: Vec<Option<f64>>,
    pub pass: bool,
}

impl Series {
    pub fn new(levels: &[u32], norms: &[Rational]) -> Self {
        let approx: Vec<f64> = norms.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect();
        let mut pass = true;
        let rates = norms
            .windows(2)
            .map(|w| match (w[0].is_zero(), w[1].is_zero()) {
                (true, true) => None,
                (true, false) => {
                    pass = false;
                    Some(f64::NEG_INFINITY)
                }
                (false, true) => Some(f64::INFINITY),
                (false, false) => {
                    let r = (w[0].to_f64().unwrap() / w[1].to_f64().unwrap()).log2();
                    pass &= r >= MIN_RATE - RATE_TOLERANCE;
                    Some(r)
                }
            })
            .collect();
        Self { levels: levels.to_vec(), norms: norms.iter().map(format_rational).collect(), approx, rates, pass }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.norms.iter().all(|n| n.starts_with("0/"))
    }
}

/// Errors at one level, in the order of [`QUANTITIES`].
type LevelNorms = [Rational; 5];

pub const QUANTITIES: [(&str, &str); 5] = [
    ("converge.delta2", "the cochain 2-bracket of delta/2h on fixed fields vanishes at least linearly in h"),
    ("converge.partial3", "the chain 3-bracket of d/h on fixed fields vanishes at least linearly in h"),
    ("converge.delta1", "delta/2h of sampled forms converges to the exterior derivative"),
    ("converge.partial1", "d/h of sampled multivector fields converges to -2 times the divergence operator"),
    (
        "converge.schouten",
        "the chain 2-bracket of d/h converges to the symbolically computed bracket of the limit operator",
    ),
];

fn window(dim: usize, level: u32, interior: i64) -> Result<LatticeSpec> {
    Ok(LatticeSpec::new(dim, 1, 1, Mode::Window(Region::cube(dim, interior + MARGIN)), Scale::Numeric(level))?)
}

/// Sup-norm over the interior box; fails if part of it is not known.
fn interior_norm(x: &LatticeElement, interior: &Region) -> Result<Rational> {
    if let Some(d) = x.domain() {
        if &d.intersect(interior) != interior {
            bail!("window overflow: known region {d:?} does not cover the measured box {interior:?}");
        }
    }
    Ok(x.restrict(interior)?.sup_norm()?)
}

/// Measured half-width `radius · 2^{-coarsest}` in lattice steps of level `level`.
fn interior_steps(radius: i64, coarsest: u32, level: u32) -> i64 {
    radius << (level - coarsest)
}

fn level_norms(fields: &Fields, level: u32, interior: i64) -> Result<LevelNorms> {
    let n = fields.dim;
    let spec = window(n, level, interior)?;
    let region = Region::cube(n, interior);
    let cochain = |p: &PolynomialField| sample_polynomial(&spec, p, Role::Cochain);
    let chain = |p: &PolynomialField| sample_polynomial(&spec, p, Role::Chain);
    let delta = BracketRequest::new(Role::Cochain, Normalization::OverTwoStep);
    let partial = BracketRequest::new(Role::Chain, Normalization::OverStep);

    let (f, g) = (cochain(&fields.f)?, cochain(&fields.g)?);
    let (a, b, c) = (chain(&fields.a)?, chain(&fields.b)?, chain(&fields.c)?);

    let delta2 = closed_bracket(&delta, &[f.clone(), g])?;
    let partial3 = closed_bracket(&partial, &[a.clone(), b.clone(), c])?;

    let forms = Continuum::forms(n);
    let exact_d = cochain(&cubical_cumulants::algebra::DgAlgebra::diff(&forms, &fields.f)?)?;
    let delta1 = closed_bracket(&delta, &[f])?.minus(&exact_d)?;

    let multivectors = Continuum::multivectors(n);
    let exact_div = chain(&cubical_cumulants::algebra::DgAlgebra::diff(&multivectors, &fields.a)?)?;
    let partial1 = closed_bracket(&partial, &[a.clone()])?.minus(&exact_div)?;

    let symbolic = bracket_multilinear(&multivectors, &[fields.a.clone(), fields.b.clone()], bracket_direct)?;
    let schouten = closed_bracket(&partial, &[a, b])?.minus(&chain(&symbolic)?)?;

    Ok([
        interior_norm(&delta2, &region)?,
        interior_norm(&partial3, &region)?,
        interior_norm(&delta1, &region)?,
        interior_norm(&partial1, &region)?,
        interior_norm(&schouten, &region)?,
    ])
}

/// All quantities across the levels, levels computed in parallel.
pub fn study(fields: &Fields, levels: &[u32], radius: i64) -> Result<Vec<Series>> {
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.len() < 3 {
        bail!("a convergence study needs at least three levels, got {levels:?}");
    }
    let coarsest = levels[0];
    let per_level: Vec<Result<LevelNorms>> = std::thread::scope(|s| {
        let handles: Vec<_> = levels
            .iter()
            .map(|&l| s.spawn(move || level_norms(fields, l, interior_steps(radius, coarsest, l))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("level worker panicked")).collect()
    });
    let per_level = per_level.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((0..QUANTITIES.len())
        .map(|q| {
            let norms: Vec<Rational> = per_level.iter().map(|l| l[q].clone()).collect();
            Series::new(&levels, &norms)
        })
        .collect())
}

pub fn run(cfg: &RunConfig) -> Vec<CheckResult> {
    let fields = Fields::random(cfg.n, cfg.degree, cfg.seed);
    run_with(cfg, &fields)
}

pub fn run_with(cfg: &RunConfig, fields: &Fields) -> Vec<CheckResult> {
    match study(fields, &cfg.levels, cfg.radius) {
        Ok(series) => QUANTITIES
            .iter()
            .zip(series)
            .map(|((id, anchor), s)| {
                run_check(id, anchor, || {
                    Ok(Outcome::new(
                        s.pass,
                        json!({
                            "n": fields.dim,
                            "half_width": format!("{}/{}", cfg.radius, 1u64 << s.levels[0]),
                            "min_rate": MIN_RATE,
                            "tolerance": RATE_TOLERANCE,
                            "series": s,
                        }),
                    ))
                })
            })
            .collect(),
        Err(e) => QUANTITIES
            .iter()
            .map(|(id, anchor)| run_check(id, anchor, || Err(anyhow::anyhow!("{e:#}"))))
            .collect(),
    }
}
