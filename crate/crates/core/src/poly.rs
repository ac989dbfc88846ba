//! Multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, parse_rational, LaurentH, Rational};

/// Sparse polynomial: exponent vector -> coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The coordinate function `x_j`.
    pub fn variable(vars: usize, j: usize) -> Self {
        let mut e = vec![0; vars];
        e[j] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        assert_eq!(exponents.len(), self.vars, "exponent vector has the wrong length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn plus(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Polynomial) -> Polynomial {
        self.plus(&other.scaled(&int(-1)))
    }

    pub fn scaled(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.vars);
        for (e, x) in self.terms() {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn times(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.vars);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn derivative(&self, j: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars);
        for (e, c) in self.terms() {
            if e[j] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            out.add_term(e2, c * int(i64::from(e[j])));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                m *= num::pow(x.clone(), k as usize);
            }
            acc += m;
        }
        acc
    }

    /// Value at `x_j = a_j h` as a polynomial in the formal variable `h`.
    pub fn evaluate_formal(&self, coords: &[i64]) -> LaurentH {
        let mut acc = LaurentH::zero();
        for (e, c) in self.terms() {
            let mut m = c.clone();
            for (&a, &k) in coords.iter().zip(e) {
                m *= num::pow(int(a), k as usize);
            }
            let total: u32 = e.iter().sum();
            acc += LaurentH::monomial(m, total as i32);
        }
        acc
    }

    /// Random polynomial with small integer coefficients and total degree at most `degree`.
    pub fn random<R: Rng>(rng: &mut R, vars: usize, degree: u32, terms: usize) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        for _ in 0..terms {
            let mut e = vec![0u32; vars];
            let mut budget = rng.gen_range(0..=degree);
            while budget > 0 && vars > 0 {
                e[rng.gen_range(0..vars)] += 1;
                budget -= 1;
            }
            p.add_term(e, int(rng.gen_range(-4..=4)));
        }
        p
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| if k == 1 { format!("x{j}") } else { format!("x{j}^{k}") })
                    .collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One polynomial per cell type (bitmask over axes); missing types are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialField {
    dim: usize,
    components: BTreeMap<u32, Polynomial>,
}

impl PolynomialField {
    pub fn new(dim: usize) -> Self {
        Self { dim, components: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, ty: u32, p: Polynomial) -> Result<()> {
        if p.vars() != self.dim || ty >= 1 << self.dim {
            return Err(Error::InvalidArgument(format!("component {ty} does not fit dimension {}", self.dim)));
        }
        if p.is_zero() {
            self.components.remove(&ty);
        } else {
            self.components.insert(ty, p);
        }
        Ok(())
    }

    pub fn with(mut self, ty: u32, p: Polynomial) -> Result<Self> {
        self.set(ty, p)?;
        Ok(self)
    }

    pub fn component(&self, ty: u32) -> Option<&Polynomial> {
        self.components.get(&ty)
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &Polynomial)> + '_ {
        self.components.iter().map(|(t, p)| (*t, p))
    }

    pub fn degree_bound(&self) -> u32 {
        self.components.values().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    /// Random field with the given cell types populated.
    pub fn random<R: Rng>(rng: &mut R, dim: usize, types: &[u32], degree: u32) -> PolynomialField {
        let mut f = PolynomialField::new(dim);
        for &t in types {
            let p = Polynomial::random(rng, dim, degree, 3);
            f.set(t, p).expect("type fits dimension");
        }
        f
    }

    pub fn to_terms(&self) -> Vec<FieldTerm> {
        let mut out = Vec::new();
        for (&ty, p) in &self.components {
            for (e, c) in p.terms() {
                out.push(FieldTerm {
                    cell_type: (0..self.dim).filter(|j| ty >> j & 1 == 1).collect(),
                    exponents: e.clone(),
                    coeff: format_rational(c),
                });
            }
        }
        out
    }

    pub fn from_terms(dim: usize, terms: &[FieldTerm]) -> Result<Self> {
        let mut comps: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for t in terms {
            if t.exponents.len() != dim || t.cell_type.iter().any(|&a| a >= dim) {
                return Err(Error::Parse(format!("field term does not fit dimension {dim}")));
            }
            let ty = t.cell_type.iter().fold(0u32, |m, &a| m | 1 << a);
            let c = parse_rational(&t.coeff)?;
            comps.entry(ty).or_insert_with(|| Polynomial::zero(dim)).add_term(t.exponents.clone(), c);
        }
        let mut f = PolynomialField::new(dim);
        for (ty, p) in comps {
            f.set(ty, p)?;
        }
        Ok(f)
    }
}

/// `c · x^e` placed on cells of the given type (axes listed explicitly).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldTerm {
    #[serde(rename = "type")]
    pub cell_type: Vec<usize>,
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calculus_basics() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let p = x.times(&x).times(&y).plus(&y.scaled(&int(3)));
        assert_eq!(p.derivative(0), x.times(&y).scaled(&int(2)));
        assert_eq!(p.evaluate(&[int(2), int(5)]), int(35));
        assert_eq!(p.total_degree(), Some(3));
        // x^2 y + 3y at (3h, h) = 9h^3 + 3h
        let v = p.evaluate_formal(&[3, 1]);
        assert_eq!(v, LaurentH::from_terms([(3, int(9)), (1, int(3))]));
    }

    #[test]
    fn field_roundtrip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f = PolynomialField::random(&mut rng, 2, &[0, 1, 3], 3);
        let back = PolynomialField::from_terms(2, &f.to_terms()).unwrap();
        assert_eq!(back, f);
    }
}
