//! Graded commutative algebras with a square-zero differential.
//!
//! [`DgAlgebra`] is the interface every cumulant construction is written against. Two
//! implementations ship with the crate: [`GradedBasisAlgebra`] (finite basis, structure
//! constants) and [`crate::lattice::LatticeAlgebra`] (lattice chains or cochains).

mod axioms;
mod basis;
mod random;

pub use axioms::{check_algebra_axioms, AxiomReport, AxiomViolation};
pub use basis::{AlgVector, AlgebraFile, BasisMap, GradedBasisAlgebra, SparseEntry};
pub use random::{random_element, random_exterior_algebra, random_graded_map, random_homogeneous};

use std::fmt::Debug;

use crate::error::Result;
use crate::scalar::LaurentH;

/// A graded commutative associative algebra over Laurent polynomials in `h`, with a
/// square-zero map of degree `+1` or `-1`.
pub trait DgAlgebra {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, c: &LaurentH, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn diff(&self, x: &Self::Elem) -> Result<Self::Elem>;
    /// Declared degree of [`DgAlgebra::diff`], never inferred.
    fn diff_degree(&self) -> i32;
    /// Nonzero homogeneous components, keyed by degree.
    fn homogeneous_parts(&self, x: &Self::Elem) -> Vec<(i32, Self::Elem)>;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.add(x, &self.scale(&LaurentH::from_int(-1), y))
    }

    /// Equality up to whatever the algebra treats as unknown (e.g. values outside a window).
    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool> {
        Ok(self.is_zero(&self.sub(x, y)?))
    }

    /// The grading involution `x -> (-1)^|x| x`.
    fn sign_twist(&self, x: &Self::Elem) -> Result<Self::Elem> {
        let mut acc = self.zero();
        for (d, part) in self.homogeneous_parts(x) {
            let p = if d.rem_euclid(2) == 1 {
                self.scale(&LaurentH::from_int(-1), &part)
            } else {
                part
            };
            acc = self.add(&acc, &p)?;
        }
        Ok(acc)
    }

    fn sum<'a, I>(&self, items: I) -> Result<Self::Elem>
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for x in items {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }
}

/// An algebra element together with its (homogeneous) degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Homogeneous<E> {
    pub degree: i32,
    pub elem: E,
}

impl<E> Homogeneous<E> {
    pub fn new(degree: i32, elem: E) -> Self {
        Self { degree, elem }
    }
}

/// Product of the letters in order, `x_1 x_2 ... x_r`.
pub fn product<A: DgAlgebra>(alg: &A, letters: &[&Homogeneous<A::Elem>]) -> Result<Homogeneous<A::Elem>> {
    let (first, rest) = letters
        .split_first()
        .expect("product of an empty block is not defined without a unit");
    let mut acc = first.elem.clone();
    let mut degree = first.degree;
    for x in rest {
        acc = alg.mul(&acc, &x.elem)?;
        degree += x.degree;
    }
    Ok(Homogeneous::new(degree, acc))
}

/// Splits each input into homogeneous parts and returns every combination of parts.
///
/// Multilinear maps evaluated on inhomogeneous data are sums over these combinations.
pub fn homogeneous_expansion<A: DgAlgebra>(alg: &A, inputs: &[A::Elem]) -> Vec<Vec<Homogeneous<A::Elem>>> {
    let mut combos: Vec<Vec<Homogeneous<A::Elem>>> = vec![Vec::new()];
    for x in inputs {
        let parts = alg.homogeneous_parts(x);
        let mut next = Vec::with_capacity(combos.len() * parts.len());
        for c in &combos {
            for (d, p) in &parts {
                let mut c2 = c.clone();
                c2.push(Homogeneous::new(*d, p.clone()));
                next.push(c2);
            }
        }
        combos = next;
    }
    combos
}

/// Evaluates a multilinear map defined on homogeneous inputs at arbitrary inputs.
pub fn multilinear<A, F>(alg: &A, inputs: &[A::Elem], mut f: F) -> Result<A::Elem>
where
    A: DgAlgebra,
    F: FnMut(&[Homogeneous<A::Elem>]) -> Result<A::Elem>,
{
    let mut acc = alg.zero();
    for combo in homogeneous_expansion(alg, inputs) {
        acc = alg.add(&acc, &f(&combo)?)?;
    }
    Ok(acc)
}
