use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{AlgVector, BasisMap, GradedBasisAlgebra, Homogeneous};
use crate::error::Result;
use crate::scalar::{int, LaurentH, Rational};

/// Random dg algebra: truncated graded-commutative algebra on 1 to `max_generators` generators
/// of mixed degrees with a random square-zero differential.
///
/// The differential is `T d0 T^-1` where `d0` pairs basis elements off (so `d0∘d0 = 0`) and
/// `T` is a random unitriangular degree-preserving change of basis. It is generally not a
/// derivation, which is exactly the situation where the brackets are nonzero.
pub fn random_exterior_algebra<R: Rng>(rng: &mut R, max_generators: usize, diff_degree: i32) -> Result<GradedBasisAlgebra> {
    let g = rng.gen_range(1..=max_generators.max(1));
    let gens: Vec<i32> = (0..g).map(|_| rng.gen_range(-1..=2)).collect();
    let base = GradedBasisAlgebra::exterior(&gens, diff_degree)?;
    let dim = base.dim();
    let deg = base.degrees().to_vec();

    // d0[tgt][src]: strictly upper triangular pairing
    let mut d0 = vec![vec![Rational::zero(); dim]; dim];
    let mut used = vec![false; dim];
    let mut order: Vec<usize> = (0..dim).collect();
    order.shuffle(rng);
    for src in order {
        if used[src] || !rng.gen_bool(0.8) {
            continue;
        }
        let candidates: Vec<usize> = (0..src).filter(|&t| !used[t] && deg[t] == deg[src] + diff_degree).collect();
        if let Some(&tgt) = candidates.choose(rng) {
            let c = *[-2i64, -1, 1, 2, 3].choose(rng).unwrap();
            d0[tgt][src] = int(c);
            used[src] = true;
            used[tgt] = true;
        }
    }

    let mut t = vec![vec![Rational::zero(); dim]; dim];
    for j in 0..dim {
        t[j][j] = Rational::one();
        for i in 0..j {
            if deg[i] == deg[j] {
                t[i][j] = int(*[-1i64, 0, 0, 1, 2].choose(rng).unwrap());
            }
        }
    }
    let t_inv = unitriangular_inverse(&t);
    let d = matmul(&matmul(&t, &d0), &t_inv);

    let differential = (0..dim)
        .map(|src| AlgVector::from_terms((0..dim).map(|row| (row, LaurentH::constant(d[row][src].clone())))))
        .collect();
    base.with_differential(differential)
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn unitriangular_inverse(t: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = t.len();
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        inv[j][j] = Rational::one();
        for i in (0..j).rev() {
            let mut acc = Rational::zero();
            for k in i + 1..=j {
                acc += &t[i][k] * &inv[k][j];
            }
            inv[i][j] = -acc;
        }
    }
    inv
}

fn random_coefficient<R: Rng>(rng: &mut R) -> LaurentH {
    let c = rng.gen_range(-3i64..=3);
    if rng.gen_bool(0.2) {
        LaurentH::monomial(int(c), rng.gen_range(-1..=1))
    } else {
        LaurentH::from_int(c)
    }
}

/// Random element of the given degree; zero when the algebra has nothing in that degree.
pub fn random_homogeneous<R: Rng>(alg: &GradedBasisAlgebra, rng: &mut R, degree: i32) -> Homogeneous<AlgVector> {
    let basis: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) == degree).collect();
    let mut v = AlgVector::zero();
    for &i in &basis {
        if rng.gen_bool(0.6) {
            v.add_term(i, random_coefficient(rng));
        }
    }
    Homogeneous::new(degree, v)
}

/// Random (generally inhomogeneous) element with a few terms.
pub fn random_element<R: Rng>(alg: &GradedBasisAlgebra, rng: &mut R) -> AlgVector {
    let terms = rng.gen_range(1..=3);
    AlgVector::from_terms((0..terms).map(|_| (rng.gen_range(0..alg.dim()), random_coefficient(rng))))
}

/// Random degree-preserving linear map; basis elements whose degree is absent from the target
/// map to zero.
pub fn random_graded_map<R: Rng>(rng: &mut R, source: &GradedBasisAlgebra, target: &GradedBasisAlgebra) -> BasisMap {
    let images = (0..source.dim())
        .map(|i| {
            let mut v = AlgVector::zero();
            for k in (0..target.dim()).filter(|&k| target.degree(k) == source.degree(i)) {
                if rng.gen_bool(0.5) {
                    v.add_term(k, LaurentH::from_int(rng.gen_range(-2..=2)));
                }
            }
            v
        })
        .collect();
    BasisMap::new(images)
}
