//! Polynomial differential forms and multivector fields over the rationals, differentiated
//! symbolically. The brackets of these algebras are the continuum limits the lattice brackets
//! are compared against.

use cubical_cumulants::algebra::DgAlgebra;
use cubical_cumulants::lattice::Role;
use cubical_cumulants::poly::{Polynomial, PolynomialField};
use cubical_cumulants::scalar::{int, Rational};
use cubical_cumulants::{Error, LaurentH, Result};

/// `(-1)^{#{i in ty : i < u}}`.
fn sign_before(ty: u32, u: usize) -> i64 {
    if (ty & ((1u32 << u) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of `e_J ∧ e_K` against `e_{J∪K}`: one factor `-1` per pair `j ∈ J`, `k ∈ K` with `j > k`.
fn product_sign(j: u32, k: u32) -> i64 {
    let mut inversions = 0;
    for a in 0..32 {
        if j >> a & 1 == 1 {
            inversions += (k & ((1u32 << a) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Pointwise exterior algebra of polynomial fields on `R^n` with one of two differentials:
///
/// - forms: the de Rham `d = Σ_u ∂_u · du ∧`, the limit of `δ/2h`;
/// - multivectors: `-2 Σ_u ∂_u ∘ i_u`, the limit of `∂/h`, whose 2-bracket is the
///   Schouten-Nijenhuis bracket up to that factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Continuum {
    pub dim: usize,
    pub role: Role,
}

impl Continuum {
    pub fn forms(dim: usize) -> Self {
        Self { dim, role: Role::Cochain }
    }

    pub fn multivectors(dim: usize) -> Self {
        Self { dim, role: Role::Chain }
    }

    fn check(&self, x: &PolynomialField) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    fn accumulate(out: &mut PolynomialField, ty: u32, p: &Polynomial) -> Result<()> {
        let sum = match out.component(ty) {
            Some(q) => q.plus(p),
            None => p.clone(),
        };
        out.set(ty, sum)
    }

    /// `i_u` on multivectors: `e_I ↦ ±e_{I∖u}`, signed so that `e_u ∧ i_u(e_I) = e_I`.
    pub fn interior(&self, x: &PolynomialField, u: usize) -> Result<PolynomialField> {
        let mut out = PolynomialField::new(self.dim);
        for (ty, p) in x.components().filter(|(ty, _)| ty >> u & 1 == 1) {
            Self::accumulate(&mut out, ty & !(1 << u), &p.scaled(&int(sign_before(ty, u))))?;
        }
        Ok(out)
    }
}

impl DgAlgebra for Continuum {
    type Elem = PolynomialField;

    fn zero(&self) -> PolynomialField {
        PolynomialField::new(self.dim)
    }

    fn is_zero(&self, x: &PolynomialField) -> bool {
        x.components().next().is_none()
    }

    fn add(&self, x: &PolynomialField, y: &PolynomialField) -> Result<PolynomialField> {
        self.check(x)?;
        self.check(y)?;
        let mut out = x.clone();
        for (ty, p) in y.components() {
            Self::accumulate(&mut out, ty, p)?;
        }
        Ok(out)
    }

    fn scale(&self, c: &LaurentH, x: &PolynomialField) -> PolynomialField {
        let c: Rational = c.as_constant().expect("continuum fields only take constant scalars");
        let mut out = PolynomialField::new(self.dim);
        for (ty, p) in x.components() {
            out.set(ty, p.scaled(&c)).expect("same dimension");
        }
        out
    }

    fn mul(&self, x: &PolynomialField, y: &PolynomialField) -> Result<PolynomialField> {
        self.check(x)?;
        self.check(y)?;
        let mut out = PolynomialField::new(self.dim);
        for (j, p) in x.components() {
            for (k, q) in y.components() {
                if j & k == 0 {
                    Self::accumulate(&mut out, j | k, &p.times(q).scaled(&int(product_sign(j, k))))?;
                }
            }
        }
        Ok(out)
    }

    fn diff(&self, x: &PolynomialField) -> Result<PolynomialField> {
        self.check(x)?;
        let mut out = PolynomialField::new(self.dim);
        for u in 0..self.dim {
            match self.role {
                Role::Cochain => {
                    for (ty, p) in x.components().filter(|(ty, _)| ty >> u & 1 == 0) {
                        Self::accumulate(&mut out, ty | 1 << u, &p.derivative(u).scaled(&int(sign_before(ty, u))))?;
                    }
                }
                Role::Chain => {
                    for (ty, p) in self.interior(x, u)?.components() {
                        Self::accumulate(&mut out, ty, &p.derivative(u).scaled(&int(-2)))?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn diff_degree(&self) -> i32 {
        self.role.diff_degree()
    }

    fn homogeneous_parts(&self, x: &PolynomialField) -> Vec<(i32, PolynomialField)> {
        let mut parts: Vec<(i32, PolynomialField)> = Vec::new();
        for (ty, p) in x.components() {
            let d = ty.count_ones() as i32;
            let idx = match parts.iter().position(|(e, _)| *e == d) {
                Some(i) => i,
                None => {
                    parts.push((d, PolynomialField::new(self.dim)));
                    parts.len() - 1
                }
            };
            parts[idx].1.set(ty, p.clone()).expect("same dimension");
        }
        parts.sort_by_key(|(d, _)| *d);
        parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubical_cumulants::coalgebra::{bracket_direct, bracket_multilinear};
    use cubical_cumulants::scalar::rat;

    fn var(n: usize, j: usize) -> Polynomial {
        Polynomial::variable(n, j)
    }

    #[test]
    fn de_rham_squares_to_zero() {
        let alg = Continuum::forms(3);
        let f = PolynomialField::new(3)
            .with(0, var(3, 0).times(&var(3, 1)).times(&var(3, 2)))
            .unwrap()
            .with(0b010, var(3, 0).times(&var(3, 0)))
            .unwrap();
        let df = alg.diff(&f).unwrap();
        assert!(!alg.is_zero(&df));
        assert!(alg.is_zero(&alg.diff(&df).unwrap()));
        // d(xyz) has dx component yz
        assert_eq!(df.component(0b001), Some(&var(3, 1).times(&var(3, 2))));
    }

    #[test]
    fn de_rham_is_a_derivation() {
        let alg = Continuum::forms(2);
        let f = PolynomialField::new(2).with(0, var(2, 0).times(&var(2, 1))).unwrap();
        let g = PolynomialField::new(2).with(0b01, var(2, 1).times(&var(2, 1))).unwrap();
        let lhs = alg.diff(&alg.mul(&f, &g).unwrap()).unwrap();
        let rhs = alg.add(&alg.mul(&alg.diff(&f).unwrap(), &g).unwrap(), &alg.mul(&f, &alg.diff(&g).unwrap()).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let two = bracket_multilinear(&alg, &[f, g], bracket_direct).unwrap();
        assert!(alg.is_zero(&two));
    }

    #[test]
    fn divergence_bracket_of_vector_fields() {
        let alg = Continuum::multivectors(2);
        let x = PolynomialField::new(2).with(0b01, var(2, 1)).unwrap();
        let y = PolynomialField::new(2).with(0b10, var(2, 0).times(&var(2, 0))).unwrap();
        let b = bracket_multilinear(&alg, &[x.clone(), y.clone()], bracket_direct).unwrap();
        assert!(!alg.is_zero(&b));
        assert!(alg.homogeneous_parts(&b).iter().all(|(d, _)| *d == 1));
        assert!(alg.is_zero(&alg.diff(&alg.diff(&alg.mul(&x, &y).unwrap()).unwrap()).unwrap()));
        // the operator on a function times a bivector field
        let f = PolynomialField::new(2).with(0, var(2, 0)).unwrap();
        let w = PolynomialField::new(2).with(0b11, Polynomial::constant(2, rat(1, 1))).unwrap();
        let dfw = alg.diff(&alg.mul(&f, &w).unwrap()).unwrap();
        // -2 ∂_0 (i_0 (x e_01)) = -2 ∂_0 (x e_1) = -2 e_1
        assert_eq!(dfw.component(0b10), Some(&Polynomial::constant(2, rat(-2, 1))));
        assert_eq!(dfw.components().count(), 1);
    }

    #[test]
    fn signs() {
        assert_eq!(product_sign(0b01, 0b10), 1);
        assert_eq!(product_sign(0b10, 0b01), -1);
        assert_eq!(product_sign(0b101, 0b010), -1);
        assert_eq!(sign_before(0b011, 1), -1);
        assert_eq!(sign_before(0b011, 0), 1);
    }
}
