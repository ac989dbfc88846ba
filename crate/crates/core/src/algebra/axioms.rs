use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{AlgVector, DgAlgebra, GradedBasisAlgebra};
use crate::scalar::LaurentH;

/// One failed axiom, with the basis elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    ProductDegree { left: usize, right: usize, term: usize },
    Commutativity { left: usize, right: usize },
    Associativity { a: usize, b: usize, c: usize },
    DifferentialDegree { source: usize, term: usize },
    DifferentialSquare { source: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks graded commutativity, associativity, product grading, differential grading and
/// `d∘d = 0` on the basis.
///
/// Associativity is only tested on triples where one side can be nonzero, found through the
/// sparse product table, so large sparse algebras stay cheap.
pub fn check_algebra_axioms(alg: &GradedBasisAlgebra) -> AxiomReport {
    let mut violations = Vec::new();
    let deg = |i: usize| alg.degree(i);

    for (&(i, j), v) in alg.products() {
        for (t, _) in v.iter() {
            if deg(t) != deg(i) + deg(j) {
                violations.push(AxiomViolation::ProductDegree { left: i, right: j, term: t });
            }
        }
    }

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(i, j) in alg.products().keys() {
        pairs.insert((i.min(j), i.max(j)));
    }
    for (i, j) in pairs {
        let ij = alg.basis_product(i, j).cloned().unwrap_or_default();
        let ji = alg.basis_product(j, i).cloned().unwrap_or_default();
        let sign = if (deg(i) * deg(j)).rem_euclid(2) == 0 { 1 } else { -1 };
        if ij != ji.scaled(&LaurentH::from_int(sign)) {
            violations.push(AxiomViolation::Commutativity { left: i, right: j });
        }
    }

    let mut by_left: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut by_right: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(i, j) in alg.products().keys() {
        by_left.entry(i).or_default().push(j);
        by_right.entry(j).or_default().push(i);
    }
    let mut triples: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for (&(a, b), v) in alg.products() {
        for (t, _) in v.iter() {
            // (ab)c can be nonzero
            for &c in by_left.get(&t).into_iter().flatten() {
                triples.insert((a, b, c));
            }
            // x(ab) can be nonzero, giving the triple (x, a, b)
            for &x in by_right.get(&t).into_iter().flatten() {
                triples.insert((x, a, b));
            }
        }
    }
    for (a, b, c) in triples {
        let (ea, eb, ec) = (AlgVector::basis(a), AlgVector::basis(b), AlgVector::basis(c));
        let left = alg.multiply(&alg.multiply(&ea, &eb), &ec);
        let right = alg.multiply(&ea, &alg.multiply(&eb, &ec));
        if left != right {
            violations.push(AxiomViolation::Associativity { a, b, c });
        }
    }

    let dd = alg.diff_degree();
    for i in 0..alg.dim() {
        let di = alg.basis_differential(i);
        for (t, _) in di.iter() {
            if deg(t) != deg(i) + dd {
                violations.push(AxiomViolation::DifferentialDegree { source: i, term: t });
            }
        }
        if !alg.apply_differential(di).is_zero() {
            violations.push(AxiomViolation::DifferentialSquare { source: i });
        }
    }

    AxiomReport { violations }
}
