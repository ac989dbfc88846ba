use cubical_cumulants::algebra::check_algebra_axioms;
use cubical_cumulants::lattice::{
    degree0_homology_rank, position_sign, sample_polynomial, type_mask, Cell, ElementFile, LatticeAlgebra,
    LatticeElement, LatticeSpec, Normalization, Region, Role,
};
use cubical_cumulants::poly::{Polynomial, PolynomialField};
use cubical_cumulants::scalar::int;
use cubical_cumulants::{Error, LaurentH, Valuation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(spec: &LatticeSpec, role: Role, rng: &mut impl Rng, terms: usize) -> LatticeElement {
    let cells = spec.cells();
    let entries = (0..terms).map(|_| {
        let c = cells[rng.gen_range(0..cells.len())].clone();
        let v = LaurentH::monomial(int(rng.gen_range(-3..=3)), rng.gen_range(0..=1));
        (c, v)
    });
    LatticeElement::from_entries(spec, role, entries).unwrap()
}

fn specs() -> Vec<LatticeSpec> {
    (1..=3).map(|n| LatticeSpec::periodic(n, 1).unwrap()).collect()
}

fn full(spec: &LatticeSpec) -> u32 {
    (1 << spec.dim) - 1
}

/// Constant field with value 1 on cells of the given type.
fn constant_form(spec: &LatticeSpec, role: Role, ty: u32) -> LatticeElement {
    LatticeElement::from_entries(spec, role, spec.vertices().iter().map(|p| (Cell::new(p, ty), LaurentH::one()))).unwrap()
}

#[test]
fn wedge_examples() {
    let spec = LatticeSpec::periodic(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_element(&spec, Role::Cochain, &mut rng, 10).degree_part(0);
    let g = random_element(&spec, Role::Cochain, &mut rng, 10).degree_part(0);
    let fg = f.wedge(&g).unwrap();
    for p in spec.vertices() {
        let c = Cell::new(&p, 0);
        assert_eq!(fg.get(&c), &f.get(&c) * &g.get(&c));
    }
    let dx = LatticeElement::basis(&spec, Role::Cochain, &[1, 2], 0b01).unwrap();
    let dy = LatticeElement::basis(&spec, Role::Cochain, &[1, 2], 0b10).unwrap();
    assert!(dx.wedge(&dx).unwrap().is_zero());
    assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().scaled(&LaurentH::from_int(-1)));
    assert_eq!(dx.wedge(&dy).unwrap(), LatticeElement::basis(&spec, Role::Cochain, &[1, 2], 0b11).unwrap());
}

#[test]
fn wedge_is_graded_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for spec in specs() {
        for _ in 0..30 {
            let x = random_element(&spec, Role::Cochain, &mut rng, 12);
            let y = random_element(&spec, Role::Cochain, &mut rng, 12);
            let z = random_element(&spec, Role::Cochain, &mut rng, 12);
            assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
            for dx in x.degrees() {
                for dy in y.degrees() {
                    let (a, b) = (x.degree_part(dx), y.degree_part(dy));
                    let sign = LaurentH::from_int(if dx * dy % 2 == 0 { 1 } else { -1 });
                    assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scaled(&sign));
                }
            }
        }
    }
}

#[test]
fn differentials_square_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for spec in specs() {
        for _ in 0..30 {
            let c = random_element(&spec, Role::Chain, &mut rng, 15);
            assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
            let f = random_element(&spec, Role::Cochain, &mut rng, 15);
            assert!(f.coboundary().unwrap().coboundary().unwrap().is_zero());
        }
        let top = random_element(&spec, Role::Cochain, &mut rng, 15).degree_part(spec.dim as i32);
        assert!(top.coboundary().unwrap().is_zero());
        let points = random_element(&spec, Role::Chain, &mut rng, 15).degree_part(0);
        assert!(points.boundary().unwrap().is_zero());
    }
}

#[test]
fn boundary_matches_generator_formula() {
    // d(I_a) = Σ_{u ∈ I} ±^u_I ((I∖u)_{a+u} - (I∖u)_{a-u})
    for spec in specs() {
        for cell in spec.cells() {
            let x = LatticeElement::basis(&spec, Role::Chain, &cell.center, cell.ty).unwrap();
            let mut expected = LatticeElement::zero(&spec, Role::Chain);
            for u in 0..spec.dim {
                if cell.ty >> u & 1 == 0 {
                    continue;
                }
                let rest = cell.ty & !(1 << u);
                let sign = position_sign(cell.ty, u) as i64;
                let mut fwd = cell.center.to_vec();
                fwd[u] += 1;
                let mut back = cell.center.to_vec();
                back[u] -= 1;
                let term = LatticeElement::from_entries(
                    &spec,
                    Role::Chain,
                    [(Cell::new(&fwd, rest), LaurentH::from_int(sign)), (Cell::new(&back, rest), LaurentH::from_int(-sign))],
                )
                .unwrap();
                expected = expected.plus(&term).unwrap();
            }
            assert_eq!(x.boundary().unwrap(), expected, "{cell:?}");
        }
    }
}

#[test]
fn star_properties() {
    for n in 1..=4 {
        let spec = LatticeSpec::periodic(n, 1).unwrap();
        let one = LatticeElement::basis(&spec, Role::Cochain, &vec![0; n], 0).unwrap();
        assert_eq!(one.star(), LatticeElement::basis(&spec, Role::Cochain, &vec![0; n], full(&spec)).unwrap());
        for ty in 0..=full(&spec) {
            let d_i = LatticeElement::basis(&spec, Role::Cochain, &vec![0; n], ty).unwrap();
            assert_eq!(
                d_i.wedge(&d_i.star()).unwrap(),
                LatticeElement::basis(&spec, Role::Cochain, &vec![0; n], full(&spec)).unwrap()
            );
            let k = ty.count_ones() as i64;
            let sign = if k * (n as i64 - k) % 2 == 0 { 1 } else { -1 };
            assert_eq!(d_i.star().star(), d_i.scaled(&LaurentH::from_int(sign)));
            if n % 2 == 1 {
                assert_eq!(d_i.star().star(), d_i);
            }
        }
    }
}

#[test]
fn shifts_and_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for spec in specs() {
        let x = random_element(&spec, Role::Cochain, &mut rng, 12);
        for u in 0..spec.dim {
            assert_eq!(x.translate(u, false).unwrap().translate(u, true).unwrap(), x);
            let back = x.divided_difference(u, false).unwrap();
            let fwd_then_shift = x.translate(u, false).unwrap().divided_difference(u, true).unwrap();
            assert_eq!(back, fwd_then_shift);
            let c = constant_form(&spec, Role::Cochain, 0);
            assert!(c.divided_difference(u, true).unwrap().is_zero());
        }
    }
    let spec = LatticeSpec::window(2, 5).unwrap();
    let xu = PolynomialField::new(2).with(0, Polynomial::variable(2, 1)).unwrap();
    let s = sample_polynomial(&spec, &xu, Role::Cochain).unwrap();
    let d = s.divided_difference(1, true).unwrap();
    assert_eq!(d.domain(), Some(&Region::new(vec![-5, -5], vec![5, 4])));
    assert!(d.entries().all(|(c, v)| c.ty == 0 && *v == LaurentH::one()));
    assert_eq!(d.len(), 11 * 10);
}

#[test]
fn interior_product_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for spec in specs() {
        let x = random_element(&spec, Role::Chain, &mut rng, 15);
        for u in 0..spec.dim {
            assert!(x.degree_part(0).interior(u).unwrap().is_zero());
            // d_u = (T_u - T'_u) i_u
            let iu = x.interior(u).unwrap();
            let expected = iu.translate(u, false).unwrap().minus(&iu.translate(u, true).unwrap()).unwrap();
            assert_eq!(x.boundary_dir(u).unwrap(), expected);
        }
        for cell in spec.cells() {
            let b = LatticeElement::basis(&spec, Role::Chain, &cell.center, cell.ty).unwrap();
            for u in 0..spec.dim {
                let iu = b.interior(u).unwrap();
                if cell.ty >> u & 1 == 1 {
                    // u ∧ i_u(I) = I
                    let u_form = constant_form(&spec, Role::Chain, 1 << u);
                    assert_eq!(u_form.wedge(&iu).unwrap(), b);
                    // i_u(x) = *( *^{-1} x ∧ u )
                    let k = cell.ty.count_ones() as i64;
                    let n = spec.dim as i64;
                    let inv_sign = if k * (n - k) % 2 == 0 { 1 } else { -1 };
                    let star_inv = b.star().scaled(&LaurentH::from_int(inv_sign));
                    assert_eq!(star_inv.wedge(&u_form).unwrap().star(), iu);
                } else {
                    assert!(iu.is_zero());
                }
            }
        }
    }
    let spec = LatticeSpec::periodic(2, 1).unwrap();
    let x = LatticeElement::basis(&spec, Role::Chain, &[0, 0], 0b11).unwrap().scaled(&LaurentH::from_int(5));
    assert_eq!(x.interior(0).unwrap(), LatticeElement::basis(&spec, Role::Chain, &[0, 0], 0b10).unwrap().scaled(&LaurentH::from_int(5)));
}

fn dual_boundary(x: &LatticeElement, u: usize) -> LatticeElement {
    x.with_role(Role::Chain).boundary_dir(u).unwrap().with_role(Role::Cochain)
}

#[test]
fn star_conjugates_boundary_and_coboundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for spec in specs() {
        for _ in 0..100 {
            let f = random_element(&spec, Role::Cochain, &mut rng, 10);
            for u in 0..spec.dim {
                let star_bar = |x: &LatticeElement| x.sign_twist().star();
                assert_eq!(star_bar(&f).coboundary_dir(u).unwrap(), dual_boundary(&f, u).star());
                assert_eq!(dual_boundary(&f.star(), u), star_bar(&f.coboundary_dir(u).unwrap()));
            }
        }
    }
}

#[test]
fn shifted_leibniz_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in specs() {
        for _ in 0..100 {
            let x = random_element(&spec, Role::Cochain, &mut rng, 10);
            let y = random_element(&spec, Role::Cochain, &mut rng, 10);
            for u in 0..spec.dim {
                let d = |e: &LatticeElement| e.coboundary_dir(u).unwrap();
                let t = |e: &LatticeElement| e.translate(u, false).unwrap();
                let tp = |e: &LatticeElement| e.translate(u, true).unwrap();
                let lhs = d(&x.wedge(&y).unwrap());
                let rhs = d(&x).wedge(&tp(&y)).unwrap().plus(&t(&x).sign_twist().wedge(&d(&y)).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let opposite = d(&x).wedge(&t(&y)).unwrap().plus(&tp(&x).sign_twist().wedge(&d(&y)).unwrap()).unwrap();
                assert_eq!(lhs, opposite);
            }
        }
    }
}

#[test]
fn shifted_interior_product_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for spec in specs() {
        for _ in 0..100 {
            let x = random_element(&spec, Role::Chain, &mut rng, 10);
            let y = random_element(&spec, Role::Chain, &mut rng, 10);
            for u in 0..spec.dim {
                for forward in [false, true] {
                    let t = |e: &LatticeElement| e.translate(u, forward).unwrap();
                    let ti = |e: &LatticeElement| t(&e.interior(u).unwrap());
                    let lhs = ti(&x.wedge(&y).unwrap());
                    let rhs = ti(&x).wedge(&t(&y)).unwrap().plus(&t(&x.sign_twist()).wedge(&ti(&y)).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn homology_in_degree_zero() {
    for n in 1..=3 {
        let spec = LatticeSpec::periodic(n, 1).unwrap();
        assert_eq!(degree0_homology_rank(&spec).unwrap(), 1 << n);
    }
    assert_eq!(degree0_homology_rank(&LatticeSpec::periodic(1, 2).unwrap()).unwrap(), 2);
    assert!(degree0_homology_rank(&LatticeSpec::window(1, 3).unwrap()).is_err());
}

#[test]
fn sampling() {
    let spec = LatticeSpec::window(2, 6).unwrap();
    let x1 = PolynomialField::new(2).with(0, Polynomial::variable(2, 0)).unwrap();
    let s = sample_polynomial(&spec, &x1, Role::Cochain).unwrap();
    assert_eq!(s.get(&Cell::new(&[3, -2], 0)), LaurentH::h_power(1).scale(&int(3)));

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let field = PolynomialField::random(&mut rng, 2, &[0, 1, 2, 3], 4);
        let s = sample_polynomial(&spec, &field, Role::Cochain).unwrap();
        for u in 0..2 {
            let diff = s.translate(u, true).unwrap().minus(&s).unwrap();
            assert!(diff.valuation().is_at_least(1));
        }
    }
    assert!(sample_polynomial(&LatticeSpec::periodic(2, 1).unwrap(), &x1, Role::Cochain).is_err());
}

#[test]
fn window_stencils_never_wrap() {
    let spec = LatticeSpec::window(1, 2).unwrap();
    let f = PolynomialField::new(1).with(0, Polynomial::variable(1, 0)).unwrap();
    let mut s = sample_polynomial(&spec, &f, Role::Cochain).unwrap();
    let mut steps = 0;
    let err = loop {
        match s.divided_difference(0, true) {
            Ok(next) => {
                s = next;
                steps += 1;
            }
            Err(e) => break e,
        }
    };
    assert_eq!(steps, 4);
    assert!(matches!(err, Error::WindowOverflow(_)));
}

#[test]
fn mismatches_are_rejected() {
    let a = LatticeSpec::periodic(2, 1).unwrap();
    let b = LatticeSpec::periodic(2, 2).unwrap();
    let x = LatticeElement::basis(&a, Role::Chain, &[0, 0], 1).unwrap();
    let y = LatticeElement::basis(&b, Role::Chain, &[0, 0], 1).unwrap();
    assert!(matches!(x.wedge(&y), Err(Error::LatticeMismatch(_))));
    assert!(matches!(x.with_role(Role::Cochain).boundary(), Err(Error::RoleMismatch { .. })));
    assert!(matches!(x.coboundary(), Err(Error::RoleMismatch { .. })));
    assert!(matches!(x.plus(&x.with_role(Role::Cochain)), Err(Error::RoleMismatch { .. })));
}

#[test]
fn lattice_algebras_satisfy_axioms() {
    for n in 1..=3 {
        let spec = LatticeSpec::periodic(n, 1).unwrap();
        for role in [Role::Chain, Role::Cochain] {
            for norm in [Normalization::Raw, Normalization::OverTwoStep] {
                let (alg, cells) = LatticeAlgebra::new(&spec, role, norm).to_basis_algebra().unwrap();
                assert_eq!(cells.len(), (4usize.pow(n as u32)) << n);
                let report = check_algebra_axioms(&alg);
                assert!(report.is_ok(), "{:?}", report.violations.first());
            }
        }
    }
}

#[test]
fn element_json_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let spec = LatticeSpec::periodic(3, 1).unwrap();
    let x = random_element(&spec, Role::Chain, &mut rng, 20);
    let text = serde_json::to_string(&x.to_file()).unwrap();
    let back = LatticeElement::from_file(&serde_json::from_str::<ElementFile>(&text).unwrap()).unwrap();
    assert_eq!(back, x);

    let w = LatticeSpec::window(2, 3).unwrap();
    let f = PolynomialField::new(2).with(type_mask(&[0]), Polynomial::variable(2, 1)).unwrap();
    let s = sample_polynomial(&w, &f, Role::Cochain).unwrap().translate(0, false).unwrap();
    let back = LatticeElement::from_file(&s.to_file()).unwrap();
    assert_eq!(back, s);
}

proptest! {
    #[test]
    fn neighbour_differences_are_divisible_by_h(coeffs in prop::collection::vec(-5i64..6, 6)) {
        let spec = LatticeSpec::window(1, 4).unwrap();
        let mut p = Polynomial::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], int(*c));
        }
        let f = PolynomialField::new(1).with(0, p).unwrap();
        let s = sample_polynomial(&spec, &f, Role::Cochain).unwrap();
        let d = s.translate(0, false).unwrap().minus(&s).unwrap();
        prop_assert!(d.valuation() >= Valuation::Finite(1));
    }

    #[test]
    fn star_squared_sign(n in 1usize..5, ty_seed in 0u32..16, c in -5i64..6) {
        let spec = LatticeSpec::periodic(n, 1).unwrap();
        let ty = ty_seed & ((1 << n) - 1);
        let x = LatticeElement::basis(&spec, Role::Cochain, &vec![1; n], ty).unwrap().scaled(&LaurentH::from_int(c));
        let k = ty.count_ones() as i64;
        let sign = if k * (n as i64 - k) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(x.star().star(), x.scaled(&LaurentH::from_int(sign)));
    }
}
