use rand::Rng;

use super::{Cell, LatticeElement, LatticeSpec, Mode, Role, Scale};
use crate::error::{Error, Result};
use crate::poly::PolynomialField;
use crate::scalar::{int, rat, LaurentH, Rational};

/// Samples `f_I(a_1 h, ..., a_n h)` on every cell of the window.
///
/// With a formal scale each value is a polynomial in `h`; with a numeric scale it is exact.
pub fn sample_polynomial(spec: &LatticeSpec, field: &PolynomialField, role: Role) -> Result<LatticeElement> {
    let region = match &spec.mode {
        Mode::Window(r) => r.clone(),
        Mode::Periodic => {
            return Err(Error::InvalidArgument("polynomial fields can only be sampled on a window".into()))
        }
    };
    if field.dim() != spec.dim {
        return Err(Error::LengthMismatch { expected: spec.dim, found: field.dim() });
    }
    let vertices = spec.vertices();
    if vertices.is_empty() {
        return Err(Error::WindowOverflow("window contains no vertices".into()));
    }
    let mut entries = Vec::new();
    for p in &vertices {
        for (ty, poly) in field.components() {
            let value = match spec.scale {
                Scale::Formal => poly.evaluate_formal(p),
                Scale::Numeric(level) => {
                    let h = rat(1, 1i64 << level);
                    let point: Vec<Rational> = p.iter().map(|&a| int(a) * &h).collect();
                    LaurentH::constant(poly.evaluate(&point))
                }
            };
            entries.push((Cell::new(p, ty), value));
        }
    }
    LatticeElement::from_entries(spec, role, entries)?.restrict(&region)
}

/// Sample of a random polynomial field populating the given cell types.
pub fn random_sample<R: Rng>(
    spec: &LatticeSpec,
    rng: &mut R,
    role: Role,
    types: &[u32],
    degree: u32,
) -> Result<LatticeElement> {
    let field = PolynomialField::random(rng, spec.dim, types, degree);
    sample_polynomial(spec, &field, role)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    #[test]
    fn samples() {
        let spec = LatticeSpec::window(2, 4).unwrap();
        let one = PolynomialField::new(2).with(0, Polynomial::constant(2, int(1))).unwrap();
        let s = sample_polynomial(&spec, &one, Role::Cochain).unwrap();
        assert_eq!(s.len(), 81);
        assert!(s.entries().all(|(_, v)| *v == LaurentH::one()));

        let x = PolynomialField::new(2).with(0, Polynomial::variable(2, 0)).unwrap();
        let s = sample_polynomial(&spec, &x, Role::Cochain).unwrap();
        assert_eq!(s.get(&Cell::new(&[3, 1], 0)), LaurentH::h_power(1).scale(&int(3)));
    }
}
