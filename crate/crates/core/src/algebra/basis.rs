use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DgAlgebra, Homogeneous};
use crate::error::{Error, Result};
use crate::scalar::LaurentH;

/// Sparse linear combination of basis elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgVector(BTreeMap<usize, LaurentH>);

impl AlgVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, LaurentH::one())
    }

    pub fn term(i: usize, c: LaurentH) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, LaurentH)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn add_term(&mut self, i: usize, c: LaurentH) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_default();
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &LaurentH)> + '_ {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> LaurentH {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn plus(&self, other: &AlgVector) -> AlgVector {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &LaurentH) -> AlgVector {
        if c.is_zero() {
            return AlgVector::zero();
        }
        AlgVector(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }
}

/// A finite-basis graded commutative algebra given by structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedBasisAlgebra {
    degrees: Vec<i32>,
    products: BTreeMap<(usize, usize), AlgVector>,
    differential: Vec<AlgVector>,
    diff_degree: i32,
}

impl GradedBasisAlgebra {
    /// Missing product entries are zero; `differential[i]` is the image of basis element `i`.
    pub fn new(
        degrees: Vec<i32>,
        products: BTreeMap<(usize, usize), AlgVector>,
        differential: Vec<AlgVector>,
        diff_degree: i32,
    ) -> Result<Self> {
        if diff_degree != 1 && diff_degree != -1 {
            return Err(Error::InvalidArgument(format!(
                "differential degree must be +1 or -1, got {diff_degree}"
            )));
        }
        let dim = degrees.len();
        if differential.len() != dim {
            return Err(Error::LengthMismatch { expected: dim, found: differential.len() });
        }
        let in_range = |v: &AlgVector| v.max_index().map_or(true, |m| m < dim);
        for (&(i, j), v) in &products {
            if i >= dim || j >= dim || !in_range(v) {
                return Err(Error::InvalidArgument(format!("product entry ({i},{j}) references a missing basis element")));
            }
        }
        if let Some(i) = differential.iter().position(|v| !in_range(v)) {
            return Err(Error::InvalidArgument(format!("differential of {i} references a missing basis element")));
        }
        let products = products.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Self { degrees, products, differential, diff_degree })
    }

    /// Graded-commutative algebra on generators with every generator squaring to zero.
    ///
    /// Basis elements are the subsets of generators (bitmask order, so index 0 is the unit).
    /// The differential is zero.
    pub fn exterior(generator_degrees: &[i32], diff_degree: i32) -> Result<Self> {
        let g = generator_degrees.len();
        if g > 16 {
            return Err(Error::InvalidArgument("at most 16 generators".into()));
        }
        let dim = 1usize << g;
        let degrees: Vec<i32> = (0..dim)
            .map(|m| (0..g).filter(|b| m >> b & 1 == 1).map(|b| generator_degrees[b]).sum())
            .collect();
        let mut products = BTreeMap::new();
        for a in 0..dim {
            for b in 0..dim {
                if a & b != 0 {
                    continue;
                }
                // merging a then b into ascending order passes each element of b over the
                // larger elements of a
                let mut odd = 0;
                for i in 0..g {
                    if a >> i & 1 == 0 {
                        continue;
                    }
                    for j in 0..i {
                        if b >> j & 1 == 1 {
                            odd += generator_degrees[i] * generator_degrees[j];
                        }
                    }
                }
                let sign = if odd.rem_euclid(2) == 0 { 1 } else { -1 };
                products.insert((a, b), AlgVector::term(a | b, LaurentH::from_int(sign)));
            }
        }
        Self::new(degrees, products, vec![AlgVector::zero(); dim], diff_degree)
    }

    pub fn with_differential(&self, differential: Vec<AlgVector>) -> Result<Self> {
        Self::new(self.degrees.clone(), self.products.clone(), differential, self.diff_degree)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Option<&AlgVector> {
        self.products.get(&(i, j))
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), AlgVector> {
        &self.products
    }

    pub fn basis_differential(&self, i: usize) -> &AlgVector {
        &self.differential[i]
    }

    pub fn differential(&self) -> &[AlgVector] {
        &self.differential
    }

    pub fn basis_letter(&self, i: usize) -> Homogeneous<AlgVector> {
        Homogeneous::new(self.degrees[i], AlgVector::basis(i))
    }

    pub fn multiply(&self, x: &AlgVector, y: &AlgVector) -> AlgVector {
        let mut out = AlgVector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(p) = self.products.get(&(i, j)) {
                    let c = a * b;
                    for (k, pc) in p.iter() {
                        out.add_term(k, &c * pc);
                    }
                }
            }
        }
        out
    }

    pub fn apply_differential(&self, x: &AlgVector) -> AlgVector {
        let mut out = AlgVector::zero();
        for (i, a) in x.iter() {
            for (k, dc) in self.differential[i].iter() {
                out.add_term(k, a * dc);
            }
        }
        out
    }

    /// Graded tensor product with differential `d⊗1 + id̄⊗d`.
    ///
    /// Basis element `(i, j)` has index `i * other.dim() + j`.
    pub fn tensor(&self, other: &GradedBasisAlgebra) -> Result<GradedBasisAlgebra> {
        if self.diff_degree != other.diff_degree {
            return Err(Error::InvalidArgument("tensor factors need the same differential degree".into()));
        }
        let m = other.dim();
        let idx = |i: usize, j: usize| i * m + j;
        let mut degrees = Vec::with_capacity(self.dim() * m);
        for i in 0..self.dim() {
            for j in 0..m {
                degrees.push(self.degrees[i] + other.degrees[j]);
            }
        }
        let mut products = BTreeMap::new();
        for (&(i, k), pv) in &self.products {
            for (&(j, l), pw) in &other.products {
                // (e_i ⊗ f_j)(e_k ⊗ f_l) = (-1)^{|f_j||e_k|} e_i e_k ⊗ f_j f_l
                let sign = if (other.degrees[j] * self.degrees[k]).rem_euclid(2) == 0 { 1 } else { -1 };
                let mut v = AlgVector::zero();
                for (a, ca) in pv.iter() {
                    for (b, cb) in pw.iter() {
                        v.add_term(idx(a, b), (ca * cb).scale(&crate::scalar::int(sign)));
                    }
                }
                products.insert((idx(i, j), idx(k, l)), v);
            }
        }
        let mut differential = Vec::with_capacity(self.dim() * m);
        for i in 0..self.dim() {
            for j in 0..m {
                let mut v = AlgVector::zero();
                for (a, ca) in self.differential[i].iter() {
                    v.add_term(idx(a, j), ca.clone());
                }
                let twist = if self.degrees[i].rem_euclid(2) == 0 { 1 } else { -1 };
                for (b, cb) in other.differential[j].iter() {
                    v.add_term(idx(i, b), cb.scale(&crate::scalar::int(twist)));
                }
                differential.push(v);
            }
        }
        GradedBasisAlgebra::new(degrees, products, differential, self.diff_degree)
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            basis_degrees: self.degrees.clone(),
            differential_degree: self.diff_degree,
            products: self
                .products
                .iter()
                .map(|(&(left, right), v)| ProductEntry { left, right, value: sparse_entries(v) })
                .collect(),
            differential: self
                .differential
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(source, v)| DifferentialEntry { source, value: sparse_entries(v) })
                .collect(),
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let dim = file.basis_degrees.len();
        let mut products = BTreeMap::new();
        for p in &file.products {
            let v = from_entries(&p.value);
            if products.insert((p.left, p.right), v).is_some() {
                return Err(Error::Parse(format!("duplicate product entry ({}, {})", p.left, p.right)));
            }
        }
        let mut differential = vec![AlgVector::zero(); dim];
        for d in &file.differential {
            if d.source >= dim {
                return Err(Error::Parse(format!("differential source {} out of range", d.source)));
            }
            differential[d.source] = differential[d.source].plus(&from_entries(&d.value));
        }
        Self::new(file.basis_degrees.clone(), products, differential, file.differential_degree)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra file serializes")
    }
}

fn sparse_entries(v: &AlgVector) -> Vec<SparseEntry> {
    v.iter().map(|(i, c)| SparseEntry(i, c.clone())).collect()
}

fn from_entries(entries: &[SparseEntry]) -> AlgVector {
    AlgVector::from_terms(entries.iter().map(|SparseEntry(i, c)| (*i, c.clone())))
}

/// `[index, coefficient]` pair of a sparse vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseEntry(pub usize, pub LaurentH);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: usize,
    pub right: usize,
    pub value: Vec<SparseEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub source: usize,
    pub value: Vec<SparseEntry>,
}

/// On-disk algebra definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub basis_degrees: Vec<i32>,
    pub differential_degree: i32,
    pub products: Vec<ProductEntry>,
    pub differential: Vec<DifferentialEntry>,
}

impl DgAlgebra for GradedBasisAlgebra {
    type Elem = AlgVector;

    fn zero(&self) -> AlgVector {
        AlgVector::zero()
    }
    fn is_zero(&self, x: &AlgVector) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &AlgVector, y: &AlgVector) -> Result<AlgVector> {
        Ok(x.plus(y))
    }
    fn scale(&self, c: &LaurentH, x: &AlgVector) -> AlgVector {
        x.scaled(c)
    }
    fn mul(&self, x: &AlgVector, y: &AlgVector) -> Result<AlgVector> {
        Ok(self.multiply(x, y))
    }
    fn diff(&self, x: &AlgVector) -> Result<AlgVector> {
        Ok(self.apply_differential(x))
    }
    fn diff_degree(&self) -> i32 {
        self.diff_degree
    }
    fn homogeneous_parts(&self, x: &AlgVector) -> Vec<(i32, AlgVector)> {
        let mut parts: BTreeMap<i32, AlgVector> = BTreeMap::new();
        for (i, c) in x.iter() {
            parts.entry(self.degrees[i]).or_default().add_term(i, c.clone());
        }
        parts.into_iter().collect()
    }
}

/// Linear map between two basis algebras, given by the images of basis elements.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMap {
    images: Vec<AlgVector>,
}

impl BasisMap {
    pub fn new(images: Vec<AlgVector>) -> Self {
        Self { images }
    }

    pub fn images(&self) -> &[AlgVector] {
        &self.images
    }

    pub fn apply(&self, x: &AlgVector) -> AlgVector {
        let mut out = AlgVector::zero();
        for (i, c) in x.iter() {
            for (k, ic) in self.images[i].iter() {
                out.add_term(k, c * ic);
            }
        }
        out
    }

    /// Fails with [`Error::GradingViolation`] when some basis image leaves the source degree.
    pub fn check_grading(&self, source: &GradedBasisAlgebra, target: &GradedBasisAlgebra) -> Result<()> {
        if self.images.len() != source.dim() {
            return Err(Error::LengthMismatch { expected: source.dim(), found: self.images.len() });
        }
        for (i, img) in self.images.iter().enumerate() {
            for (k, _) in img.iter() {
                if k >= target.dim() || target.degree(k) != source.degree(i) {
                    return Err(Error::GradingViolation(format!(
                        "basis element {i} (degree {}) maps onto target element {k}",
                        source.degree(i)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `f ⊗ g` on the tensor bases produced by [`GradedBasisAlgebra::tensor`]; degree-zero maps
    /// carry no Koszul sign.
    pub fn tensor(&self, other: &BasisMap, other_target_dim: usize) -> BasisMap {
        let mut images = Vec::with_capacity(self.images.len() * other.images.len());
        for fi in &self.images {
            for gj in &other.images {
                let mut v = AlgVector::zero();
                for (a, ca) in fi.iter() {
                    for (b, cb) in gj.iter() {
                        v.add_term(a * other_target_dim + b, ca * cb);
                    }
                }
                images.push(v);
            }
        }
        BasisMap { images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_signs() {
        let alg = GradedBasisAlgebra::exterior(&[1, 1], 1).unwrap();
        // a = 0b01, b = 0b10
        let ab = alg.multiply(&AlgVector::basis(1), &AlgVector::basis(2));
        let ba = alg.multiply(&AlgVector::basis(2), &AlgVector::basis(1));
        assert_eq!(ab, AlgVector::basis(3));
        assert_eq!(ba, AlgVector::term(3, LaurentH::from_int(-1)));
        assert!(alg.multiply(&AlgVector::basis(1), &AlgVector::basis(1)).is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let alg = GradedBasisAlgebra::exterior(&[1, 2], -1).unwrap();
        let d = vec![
            AlgVector::zero(),
            AlgVector::zero(),
            AlgVector::term(1, LaurentH::from_int(3)),
            AlgVector::zero(),
        ];
        let alg = alg.with_differential(d).unwrap();
        let back = GradedBasisAlgebra::from_json(&alg.to_json()).unwrap();
        assert_eq!(back, alg);
    }

    #[test]
    fn rejects_bad_degree() {
        assert!(GradedBasisAlgebra::new(vec![0], BTreeMap::new(), vec![AlgVector::zero()], 2).is_err());
    }

    #[test]
    fn grading_check_on_maps() {
        let alg = GradedBasisAlgebra::exterior(&[1], 1).unwrap();
        let ok = BasisMap::new(vec![AlgVector::basis(0), AlgVector::basis(1)]);
        assert!(ok.check_grading(&alg, &alg).is_ok());
        let bad = BasisMap::new(vec![AlgVector::basis(1), AlgVector::basis(1)]);
        assert!(matches!(bad.check_grading(&alg, &alg), Err(Error::GradingViolation(_))));
    }
}
