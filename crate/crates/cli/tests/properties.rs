use cubical_cli::converge::Series;
use cubical_cli::merge::merge;
use cubical_cli::{CheckResult, Report, RunConfig};
use cubical_cumulants::scalar::{int, rat};
use proptest::prelude::*;
use serde_json::json;

fn arb_checks() -> impl Strategy<Value = Vec<CheckResult>> {
    prop::collection::btree_map("[a-d]\\.[a-d]", any::<bool>(), 0..8).prop_map(|m| {
        m.into_iter().map(|(id, pass)| CheckResult { id, anchor: "claim".into(), pass, detail: json!({}) }).collect()
    })
}

proptest! {
    #[test]
    fn geometric_errors_have_their_exponent_as_rate(c in 1i64..1000, r in 0u32..4, start in 0u32..5) {
        let levels: Vec<u32> = (start..start + 4).collect();
        let norms: Vec<_> = levels.iter().map(|&l| rat(c, 1i64 << (r * l))).collect();
        let s = Series::new(&levels, &norms);
        for rate in &s.rates {
            prop_assert!((rate.unwrap() - f64::from(r)).abs() < 1e-9);
        }
        prop_assert_eq!(s.pass, r >= 1);
    }

    #[test]
    fn scaling_errors_keeps_the_rates(c in 1i64..50, e in prop::collection::vec(1i64..100, 3..6)) {
        let levels: Vec<u32> = (0..e.len() as u32).collect();
        let base: Vec<_> = e.iter().map(|&x| int(x)).collect();
        let scaled: Vec<_> = base.iter().map(|x| x * int(c)).collect();
        let (a, b) = (Series::new(&levels, &base), Series::new(&levels, &scaled));
        prop_assert_eq!(a.pass, b.pass);
        for (x, y) in a.rates.iter().zip(&b.rates) {
            prop_assert!((x.unwrap() - y.unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn merge_is_an_ordered_union(a in arb_checks(), b in arb_checks()) {
        let ra = Report::new(&RunConfig::default(), a.clone());
        let rb = Report::new(&RunConfig::default(), b.clone());
        let conflict = a.iter().any(|x| b.iter().any(|y| x.id == y.id && x != y));
        match merge(&[("a".into(), ra), ("b".into(), rb)]) {
            Err(_) => prop_assert!(conflict),
            Ok(m) => {
                prop_assert!(!conflict);
                let ids: Vec<_> = m.checks.iter().map(|c| c.check.id.clone()).collect();
                let mut expected: Vec<_> = a.iter().chain(&b).map(|c| c.id.clone()).collect();
                expected.sort();
                expected.dedup();
                prop_assert_eq!(ids, expected);
                for c in &m.checks {
                    let from_a = a.iter().any(|x| x.id == c.check.id);
                    prop_assert_eq!(c.source == "a", from_a);
                }
            }
        }
    }
}
