use cubical_cumulants::algebra::DgAlgebra;
use cubical_cumulants::brackets::{
    binary_qft_check, bracket_table_n3, closed_bracket, delta_bracket_closed, partial_bracket_closed, BracketRequest,
};
use cubical_cumulants::coalgebra::{bracket_conjugation, bracket_direct, bracket_multilinear, bracket_recursive};
use cubical_cumulants::lattice::{
    sample_polynomial, Cell, LatticeAlgebra, LatticeElement, LatticeSpec, Normalization, Role, Scale,
};
use cubical_cumulants::poly::{Polynomial, PolynomialField};
use cubical_cumulants::scalar::int;
use cubical_cumulants::{LaurentH, Valuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense(spec: &LatticeSpec, role: Role, rng: &mut impl Rng) -> LatticeElement {
    let entries = spec
        .cells()
        .into_iter()
        .filter_map(|c| rng.gen_bool(0.5).then(|| (c, LaurentH::from_int(rng.gen_range(-2..=2)))))
        .collect::<Vec<_>>();
    LatticeElement::from_entries(spec, role, entries).unwrap()
}

fn generic(alg: &LatticeAlgebra, inputs: &[LatticeElement]) -> LatticeElement {
    bracket_multilinear(alg, inputs, bracket_direct).unwrap()
}

#[test]
fn delta_closed_form_matches_generic_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=2 {
        let spec = LatticeSpec::periodic(n, 1).unwrap();
        let alg = LatticeAlgebra::new(&spec, Role::Cochain, Normalization::OverTwoStep);
        for k in 1..=4 {
            for _ in 0..3 {
                let inputs: Vec<_> = (0..k).map(|_| dense(&spec, Role::Cochain, &mut rng)).collect();
                let mut total = LatticeElement::zero(&spec, Role::Cochain);
                for u in 0..n {
                    let closed = delta_bracket_closed(&inputs, u).unwrap();
                    assert_eq!(closed, generic(&alg.along(u), &inputs), "n={n} k={k} u={u}");
                    total = total.plus(&closed).unwrap();
                }
                assert_eq!(total, generic(&alg, &inputs));
            }
        }
    }
}

#[test]
fn partial_closed_form_matches_generic_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=2 {
        let spec = LatticeSpec::periodic(n, 1).unwrap();
        for norm in [Normalization::OverTwoStep, Normalization::OverStep, Normalization::Raw] {
            let alg = LatticeAlgebra::new(&spec, Role::Chain, norm);
            for k in 1..=4 {
                let inputs: Vec<_> = (0..k).map(|_| dense(&spec, Role::Chain, &mut rng)).collect();
                let request = BracketRequest::new(Role::Chain, norm);
                for u in 0..n {
                    let closed = closed_bracket(&request.along(u), &inputs).unwrap();
                    assert_eq!(closed, generic(&alg.along(u), &inputs), "n={n} k={k} u={u} {norm:?}");
                }
                assert_eq!(closed_bracket(&request, &inputs).unwrap(), generic(&alg, &inputs));
            }
        }
    }
}

#[test]
fn closed_forms_match_all_three_routes_on_homogeneous_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let spec = LatticeSpec::periodic(2, 1).unwrap();
    for role in [Role::Chain, Role::Cochain] {
        let alg = LatticeAlgebra::new(&spec, role, Normalization::OverTwoStep).along(1);
        for k in 2..=3 {
            let letters: Vec<_> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(0..=2);
                    cubical_cumulants::algebra::Homogeneous::new(d, dense(&spec, role, &mut rng).degree_part(d))
                })
                .collect();
            let elems: Vec<_> = letters.iter().map(|l| l.elem.clone()).collect();
            let closed = match role {
                Role::Chain => partial_bracket_closed(&elems, 1).unwrap(),
                Role::Cochain => delta_bracket_closed(&elems, 1).unwrap(),
            };
            assert_eq!(closed, bracket_direct(&alg, &letters).unwrap());
            assert_eq!(closed, bracket_conjugation(&alg, &letters).unwrap());
            assert_eq!(closed, bracket_recursive(&alg, &letters).unwrap());
        }
    }
}

#[test]
fn two_bracket_is_graded_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let spec = LatticeSpec::periodic(2, 1).unwrap();
    for _ in 0..10 {
        let (da, db) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let a = dense(&spec, Role::Chain, &mut rng).degree_part(da);
        let b = dense(&spec, Role::Chain, &mut rng).degree_part(db);
        let sign = LaurentH::from_int(if da * db % 2 == 0 { 1 } else { -1 });
        for u in 0..2 {
            let ab = partial_bracket_closed(&[a.clone(), b.clone()], u).unwrap();
            let ba = partial_bracket_closed(&[b.clone(), a.clone()], u).unwrap();
            assert_eq!(ab, ba.scaled(&sign));
        }
    }
}

fn random_monomial(spec: &LatticeSpec, rng: &mut impl Rng, ty: u32) -> LatticeElement {
    let entries = spec
        .vertices()
        .into_iter()
        .filter_map(|p| {
            rng.gen_bool(0.6)
                .then(|| (Cell::new(&p, ty), LaurentH::monomial(int(rng.gen_range(-3..=3)), rng.gen_range(0..=1))))
        })
        .collect::<Vec<_>>();
    LatticeElement::from_entries(spec, Role::Chain, entries).unwrap()
}

/// Types for `k` inputs with `u` in input `i` iff bit `i` of `pattern`; every other axis goes
/// to at most one input so the type product survives.
fn types_for(rng: &mut impl Rng, u: usize, k: usize, pattern: u32) -> Vec<u32> {
    let mut types: Vec<u32> = (0..k).map(|i| (pattern >> i & 1) << u).collect();
    for axis in (0..3).filter(|&a| a != u) {
        let slot = rng.gen_range(0..=k);
        if slot < k {
            types[slot] |= 1 << axis;
        }
    }
    types
}

#[test]
fn case_tables_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let spec = LatticeSpec::periodic(3, 1).unwrap();
    for k in 2..=3 {
        for pattern in 0..1u32 << k {
            let mut nonzero = 0;
            for _ in 0..6 {
                let u = rng.gen_range(0..3);
                let types = types_for(&mut rng, u, k, pattern);
                let inputs: Vec<_> = types.iter().map(|&ty| random_monomial(&spec, &mut rng, ty)).collect();
                let table = bracket_table_n3(&inputs, u).unwrap();
                assert_eq!(table, partial_bracket_closed(&inputs, u).unwrap(), "k={k} pattern={pattern:b}");
                nonzero += usize::from(!table.is_zero());
            }
            let trivial = pattern == 0 || (k == 3 && pattern == 0b111);
            assert!(trivial || nonzero > 0, "row k={k} pattern={pattern:b} never exercised");
        }
    }
}

#[test]
fn case_table_examples() {
    let spec = LatticeSpec::periodic(3, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let field = |ty: u32, rng: &mut ChaCha8Rng| {
        random_monomial(&spec, rng, ty)
    };
    // u = 0 lies in no type
    let a = field(0b010, &mut rng);
    let b = field(0b110, &mut rng);
    assert!(bracket_table_n3(&[a.clone(), b.clone()], 0).unwrap().is_zero());
    assert!(partial_bracket_closed(&[a, b], 0).unwrap().is_zero());
    // u = 0 lies in every type
    let xs: Vec<_> = [0b001, 0b011, 0b101].iter().map(|&t| field(t, &mut rng)).collect();
    assert!(bracket_table_n3(&xs, 0).unwrap().is_zero());
    assert!(partial_bracket_closed(&xs, 0).unwrap().is_zero());
    assert!(bracket_table_n3(&xs[..1], 0).is_err());
}

#[test]
fn binary_qft_valuations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 1..=2 {
        let spec = LatticeSpec::window(n, 6).unwrap();
        let all_types: Vec<u32> = (0..1u32 << n).collect();
        let fields: Vec<_> = (0..20).map(|_| PolynomialField::random(&mut rng, n, &all_types, 4)).collect();
        for (role, norm) in [
            (Role::Cochain, Normalization::OverTwoStep),
            (Role::Chain, Normalization::OverTwoStep),
            (Role::Chain, Normalization::OverStep),
            (Role::Chain, Normalization::Raw),
        ] {
            let report = binary_qft_check(&spec, role, norm, 4, &fields).unwrap();
            assert_eq!(report.entries.len(), 3 * (n + 1));
            for e in &report.entries {
                assert!(e.pass, "{e:?}");
            }
        }
    }
}

#[test]
fn valuation_examples() {
    let spec = LatticeSpec::window(1, 6).unwrap();
    let x = PolynomialField::new(1).with(0, Polynomial::variable(1, 0)).unwrap();
    let xx = PolynomialField::new(1).with(0, Polynomial::variable(1, 0).times(&Polynomial::variable(1, 0))).unwrap();
    let report = binary_qft_check(&spec, Role::Cochain, Normalization::OverTwoStep, 2, &[x.clone(), xx.clone()]).unwrap();
    assert!(report.entries.iter().all(|e| e.min_valuation >= Valuation::Finite(1)));
    // x·x² pairs give a nonzero 2-bracket
    assert!(report.entries.iter().any(|e| e.min_valuation.finite().is_some()));

    let c = PolynomialField::new(1).with(0, Polynomial::constant(1, int(5))).unwrap();
    for role in [Role::Chain, Role::Cochain] {
        let report = binary_qft_check(&spec, role, Normalization::OverTwoStep, 4, &[c.clone()]).unwrap();
        assert!(report.entries.iter().all(|e| e.min_valuation == Valuation::Infinite));
    }
    let numeric = spec.with_scale(Scale::Numeric(3));
    assert!(binary_qft_check(&numeric, Role::Chain, Normalization::OverTwoStep, 2, &[c]).is_err());
}

#[test]
fn numeric_brackets_evaluate_the_formal_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let formal = LatticeSpec::periodic(2, 1).unwrap();
    let level = 4;
    let numeric = formal.with_scale(Scale::Numeric(level));
    for role in [Role::Chain, Role::Cochain] {
        let inputs: Vec<_> = (0..3).map(|_| dense(&formal, role, &mut rng)).collect();
        let moved: Vec<_> = inputs
            .iter()
            .map(|x| LatticeElement::from_entries(&numeric, role, x.entries().map(|(c, v)| (c.clone(), v.clone()))).unwrap())
            .collect();
        let request = BracketRequest::new(role, Normalization::OverTwoStep);
        let f = closed_bracket(&request, &inputs).unwrap();
        let g = closed_bracket(&request, &moved).unwrap();
        let evaluated = f.entries().map(|(c, v)| (c.clone(), LaurentH::constant(v.evaluate_at_scale(level))));
        assert_eq!(g, LatticeElement::from_entries(&numeric, role, evaluated).unwrap());
        let alg = LatticeAlgebra::new(&numeric, role, Normalization::OverTwoStep);
        assert!(alg.equal(&g, &generic(&alg, &moved)).unwrap());
    }
}

#[test]
fn window_samples_agree_with_generic_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let spec = LatticeSpec::window(2, 5).unwrap();
    let types: Vec<u32> = (0..4).collect();
    for role in [Role::Chain, Role::Cochain] {
        let alg = LatticeAlgebra::new(&spec, role, Normalization::OverTwoStep);
        let inputs: Vec<_> = (0..3)
            .map(|_| sample_polynomial(&spec, &PolynomialField::random(&mut rng, 2, &types, 3), role).unwrap())
            .collect();
        let closed = closed_bracket(&BracketRequest::new(role, Normalization::OverTwoStep), &inputs).unwrap();
        let g = generic(&alg, &inputs);
        assert!(alg.equal(&closed, &g).unwrap());
        assert!(!closed.is_zero());
    }
}
