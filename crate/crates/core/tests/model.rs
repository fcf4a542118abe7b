mod common;

use std::collections::BTreeSet;

use common::*;
use lamres::model::{
    is_permissible, max_order, minimalize, order_at, sum_marked, support, ComponentId, MarkedIdeal,
    Monomial, Stratum,
};
use lamres::Error;
use proptest::prelude::*;
use serde_json::json;

#[test]
fn order_at_examples() {
    let cfg = worked_example();
    let full = Stratum {
        chart: 0,
        vanishing: ids(&cfg, &["x", "y", "u", "v"]),
    };
    assert_eq!(order_at(&cfg, &full).unwrap(), 5);
    let xv = Stratum {
        chart: 0,
        vanishing: ids(&cfg, &["x", "v"]),
    };
    assert_eq!(order_at(&cfg, &xv).unwrap(), 0);

    let unit = single_chart(&["a", "b"], json!([{}]), 1);
    for s in subsets(&unit.charts()[0].e_components) {
        assert_eq!(
            order_at(
                &unit,
                &Stratum {
                    chart: 0,
                    vanishing: s
                }
            )
            .unwrap(),
            0
        );
    }
}

#[test]
fn order_at_rejects_foreign_components() {
    let cfg = config(json!({
        "components": ["a", "b", "c"],
        "dim_p": 2,
        "mark": 1,
        "charts": [{"name": "U", "e_components": ["a", "b"], "generators": [{"a": 1}]}]
    }));
    let s = Stratum {
        chart: 0,
        vanishing: ids(&cfg, &["c"]),
    };
    assert!(matches!(order_at(&cfg, &s), Err(Error::InvalidStratum(_))));
    let missing = Stratum {
        chart: 3,
        vanishing: BTreeSet::new(),
    };
    assert!(matches!(
        order_at(&cfg, &missing),
        Err(Error::InvalidStratum(_))
    ));
}

#[test]
fn max_order_examples() {
    assert_eq!(max_order(&worked_example()), 5);
    assert_eq!(max_order(&single_chart(&["a"], json!([{}]), 2)), 0);
    let two = config(json!({
        "components": ["a", "b", "c", "d"],
        "dim_p": 2,
        "mark": 1,
        "charts": [
            {"name": "A", "e_components": ["a", "b"], "generators": [{"a": 1, "b": 2}]},
            {"name": "B", "e_components": ["c", "d"], "generators": [{"c": 3, "d": 4}]}
        ]
    }));
    assert_eq!(max_order(&two), 7);
}

#[test]
fn support_of_worked_example_is_the_full_stratum() {
    let cfg = worked_example();
    let supp = support(&cfg);
    assert_eq!(
        supp,
        vec![Stratum {
            chart: 0,
            vanishing: ids(&cfg, &["x", "y", "u", "v"])
        }]
    );
    // Brute force over all 16 strata.
    let mark = cfg.mark();
    for s in subsets(&cfg.charts()[0].e_components) {
        let in_supp = cfg.charts()[0].ideal.order_on(&s) >= mark;
        assert_eq!(in_supp, s.len() == 4, "stratum {s:?}");
    }
    let xyv = ids(&cfg, &["x", "y", "v"]);
    assert_eq!(cfg.charts()[0].ideal.order_on(&xyv), 4);
}

#[test]
fn support_is_empty_for_unit_and_zero_dimensional_p() {
    assert!(support(&single_chart(&["a", "b"], json!([{}]), 1)).is_empty());
    let point = config(json!({
        "components": ["a"],
        "dim_p": 0,
        "mark": 1,
        "charts": [{"name": "U", "e_components": ["a"], "p_components": ["a"], "generators": [{}]}]
    }));
    assert!(support(&point).is_empty());
}

#[test]
fn permissibility_examples() {
    let cfg = worked_example();
    assert!(is_permissible(&cfg, &ids(&cfg, &["x", "y", "u", "v"])).unwrap());
    assert!(!is_permissible(&cfg, &ids(&cfg, &["x"])).unwrap());
    let unregistered: BTreeSet<ComponentId> = [ComponentId(9)].into_iter().collect();
    assert!(is_permissible(&cfg, &unregistered).is_err());
    assert!(is_permissible(&cfg, &BTreeSet::new()).is_err());
}

#[test]
fn permissibility_of_p_itself_follows_the_order() {
    let cfg = config(json!({
        "components": ["p", "a"],
        "dim_p": 1,
        "mark": 1,
        "charts": [{"name": "U", "e_components": ["p", "a"], "p_components": ["p"], "generators": [{"a": 2}]}]
    }));
    let p = ids(&cfg, &["p"]);
    let order = cfg.charts()[0].order_at(&p).unwrap();
    assert_eq!(is_permissible(&cfg, &p).unwrap(), order >= cfg.mark());
    // A centre missing a P component is never permissible.
    assert!(!is_permissible(&cfg, &ids(&cfg, &["a"])).unwrap());
    assert!(is_permissible(&cfg, &ids(&cfg, &["p", "a"])).unwrap());
}

#[test]
fn sum_marked_examples() {
    let cfg = worked_example();
    let v6 = MarkedIdeal::new(vec![mono(&cfg, &[("v", 6)])], 3).unwrap();
    let u5 = MarkedIdeal::new(vec![mono(&cfg, &[("u", 5)])], 1).unwrap();
    let sum = sum_marked(&[v6.clone(), u5]).unwrap();
    assert_eq!(sum.mark(), 3);
    assert_eq!(
        sum.generators(),
        sorted(vec![mono(&cfg, &[("v", 6)]), mono(&cfg, &[("u", 15)])]).as_slice()
    );
    assert_eq!(sum_marked(std::slice::from_ref(&v6)).unwrap(), v6);
}

#[test]
fn sum_marked_overflow_is_an_error() {
    let g = vec![Monomial::from_pairs([(ComponentId(0), 1)])];
    let big = MarkedIdeal::new(g, u64::MAX / 2).unwrap();
    assert!(matches!(
        sum_marked(&[big.clone(), big]),
        Err(Error::Overflow(_))
    ));
}

#[test]
fn validation_rejects_bad_charts() {
    let base = worked_example_json();
    let mut bad = base.clone();
    bad["charts"][0]["p_components"] = json!(["x"]);
    let err = lamres::format::ConfigFile::parse(&bad.to_string())
        .unwrap()
        .to_config()
        .unwrap_err();
    assert!(matches!(err, Error::Validation(_)), "{err}");

    let mut bad = base.clone();
    bad["dim_p"] = json!(3);
    assert!(lamres::format::ConfigFile::parse(&bad.to_string())
        .unwrap()
        .to_config()
        .is_err());

    let mut bad = base;
    bad["charts"][0]["generators"] = json!([{"w": 1}]);
    let err = lamres::format::ConfigFile::parse(&bad.to_string())
        .unwrap()
        .to_config()
        .unwrap_err();
    assert!(err.to_string().contains("charts[0].generators[0]"), "{err}");
}

fn monomial_strategy(n: u32, max_exp: u64) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, n as usize).prop_map(|exps| {
        Monomial::from_pairs(
            exps.into_iter()
                .enumerate()
                .map(|(i, e)| (ComponentId(i as u32), e)),
        )
    })
}

fn ideal_strategy(n: u32) -> impl Strategy<Value = MarkedIdeal> {
    (
        proptest::collection::vec(monomial_strategy(n, 5), 1..4),
        1u64..6,
    )
        .prop_map(|(gens, mark)| MarkedIdeal::new(gens, mark).unwrap())
}

fn all_ids(n: u32) -> BTreeSet<ComponentId> {
    (0..n).map(ComponentId).collect()
}

proptest! {
    #[test]
    fn order_is_monotone_in_the_stratum(ideal in ideal_strategy(5)) {
        let strata = subsets(&all_ids(5));
        for small in &strata {
            for big in &strata {
                if small.is_subset(big) {
                    prop_assert!(ideal.order_on(small) <= ideal.order_on(big));
                }
            }
        }
    }

    #[test]
    fn minimal_strata_generate_the_support(ideal in ideal_strategy(5)) {
        let names: Vec<String> = (0..5).map(|i| format!("c{i}")).collect();
        let chart = lamres::model::Chart::root("U", all_ids(5), vec![], BTreeSet::new(), ideal.clone());
        let cfg = lamres::model::Configuration::new(names, vec![chart], 5).unwrap();
        let minimal: Vec<BTreeSet<ComponentId>> =
            support(&cfg).into_iter().map(|s| s.vanishing).collect();
        for s in subsets(&all_ids(5)) {
            let exhaustive = ideal.order_on(&s) >= ideal.mark();
            let closure = minimal.iter().any(|m| m.is_subset(&s));
            prop_assert_eq!(exhaustive, closure);
        }
        for (i, a) in minimal.iter().enumerate() {
            for (j, b) in minimal.iter().enumerate() {
                prop_assert!(i == j || !a.is_subset(b));
            }
        }
    }

    #[test]
    fn generators_stay_minimal(gens in proptest::collection::vec(monomial_strategy(4, 4), 1..6)) {
        let out = minimalize(gens.clone());
        for (i, a) in out.iter().enumerate() {
            for (j, b) in out.iter().enumerate() {
                prop_assert!(i == j || !a.divides(b));
            }
        }
        for g in &gens {
            prop_assert!(out.iter().any(|m| m.divides(g)));
        }
    }

    #[test]
    fn support_of_sum_is_intersection(a in ideal_strategy(4), b in ideal_strategy(4)) {
        let sum = sum_marked(&[a.clone(), b.clone()]).unwrap();
        for s in subsets(&all_ids(4)) {
            let both = a.order_on(&s) >= a.mark() && b.order_on(&s) >= b.mark();
            prop_assert_eq!(sum.order_on(&s) >= sum.mark(), both);
        }
    }
}
