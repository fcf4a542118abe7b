mod common;

use std::collections::BTreeSet;

use common::*;
use lamres::arithmetic::{ConfigBounds, Sampler};
use lamres::model::{
    is_permissible, max_order, minimalize, sum_marked, support_is_empty, ComponentId, MarkedIdeal,
    Monomial,
};
use lamres::render::local_monomial;
use lamres::transform::{blow_up_chart, blow_up_global, transform_generator};
use lamres::Error;
use serde_json::json;

#[test]
fn transform_generator_examples() {
    let cfg = worked_example();
    let all = ids(&cfg, &["x", "y", "u", "v"]);
    let v = cfg.id("v").unwrap();
    let e = ComponentId(4);
    let g = transform_generator(&mono(&cfg, &[("x", 2), ("v", 6)]), &all, v, e, 5).unwrap();
    assert_eq!(g, Monomial::from_pairs([(cfg.id("x").unwrap(), 2), (e, 3)]));
    let g = transform_generator(&mono(&cfg, &[("y", 4), ("u", 5)]), &all, v, e, 5).unwrap();
    assert_eq!(
        g,
        Monomial::from_pairs([(cfg.id("y").unwrap(), 4), (cfg.id("u").unwrap(), 5), (e, 4)])
    );
    let xy = ids(&cfg, &["x", "y"]);
    let x = cfg.id("x").unwrap();
    let g = transform_generator(&mono(&cfg, &[("x", 1)]), &xy, x, e, 1).unwrap();
    assert!(g.is_unit());
    assert!(matches!(
        transform_generator(&mono(&cfg, &[("x", 1)]), &xy, x, e, 2),
        Err(Error::NonPermissibleTransform { degree: 1, mark: 2 })
    ));
}

#[test]
fn worked_example_v_child() {
    let cfg = worked_example();
    let (next, record) = blow_up_global(&cfg, &ids(&cfg, &["x", "y", "u", "v"])).unwrap();
    assert_eq!(next.charts().len(), 4);
    assert_eq!(record.stage, 1);
    assert_eq!(record.exceptional_name, "E1");
    let e = record.exceptional;
    let v_child = next.chart_by_name("U/1:v").unwrap();
    let expected = sorted(vec![
        mono(&cfg, &[("x", 2), ("y", 3)]),
        Monomial::from_pairs([(cfg.id("x").unwrap(), 2), (e, 3)]),
        Monomial::from_pairs([(cfg.id("y").unwrap(), 4), (cfg.id("u").unwrap(), 5), (e, 4)]),
    ]);
    assert_eq!(v_child.ideal.generators(), expected.as_slice());
    let rendered: Vec<String> = v_child
        .ideal
        .generators()
        .iter()
        .map(|g| local_monomial(g, next.registry(), cfg.id("v").unwrap(), e))
        .collect();
    assert!(rendered.contains(&"x\u{304}²\u{233}³".to_string()));
    assert!(rendered.contains(&"x\u{304}²v\u{304}³".to_string()));
    assert!(rendered.contains(&"\u{233}⁴\u{16b}⁵v\u{304}⁴".to_string()));
}

#[test]
fn blow_up_chart_of_coordinate_ideal() {
    let cfg = single_chart(&["x", "y"], json!([{"x": 1}, {"y": 1}]), 1);
    let center = ids(&cfg, &["x", "y"]);
    let mut registry = cfg.registry().to_vec();
    registry.push("E1".into());
    let children = blow_up_chart(&cfg.charts()[0], &center, ComponentId(2), 1, &registry).unwrap();
    assert_eq!(children.len(), 2);
    let x_child = &children[0];
    assert_eq!(x_child.name, "U/1:x");
    assert!(x_child.ideal.is_unit());
    assert!(!x_child.has_support());
    assert!(!x_child.e_components.contains(&cfg.id("x").unwrap()));
}

#[test]
fn codimension_one_blow_up_renames_the_component() {
    let cfg = single_chart(&["x", "y"], json!([{"x": 3, "y": 1}]), 2);
    let (next, record) = blow_up_global(&cfg, &ids(&cfg, &["x"])).unwrap();
    assert_eq!(next.charts().len(), 1);
    let child = &next.charts()[0];
    let expected = Monomial::from_pairs([(cfg.id("y").unwrap(), 1), (record.exceptional, 1)]);
    assert_eq!(child.ideal.generators(), [expected].as_slice());
    let expected_e: BTreeSet<ComponentId> = [cfg.id("y").unwrap(), record.exceptional].into();
    assert_eq!(child.e_components, expected_e);
}

#[test]
fn centre_missing_every_chart_changes_only_the_registry() {
    let cfg = config(json!({
        "components": ["a", "b", "c"],
        "dim_p": 2,
        "mark": 1,
        "charts": [
            {"name": "A", "e_components": ["a", "b"], "generators": [{"a": 1}]},
            {"name": "B", "e_components": ["c"], "generators": [{"c": 1}]}
        ]
    }));
    let (next, record) = blow_up_global(&cfg, &ids(&cfg, &["a", "c"])).unwrap();
    assert_eq!(next.charts(), cfg.charts());
    assert_eq!(next.registry().len(), 4);
    assert!(record.replaced.is_empty());
    assert_eq!(record.untouched, 2);
}

#[test]
fn non_permissible_centre_is_rejected() {
    let cfg = worked_example();
    let err = blow_up_global(&cfg, &ids(&cfg, &["x"])).unwrap_err();
    assert!(matches!(err, Error::NonPermissible { .. }), "{err}");
    assert_eq!(err.class(), lamres::ErrorClass::Contract);
}

#[test]
fn p_components_travel_and_p_children_are_flagged() {
    let cfg = config(json!({
        "components": ["p", "a"],
        "dim_p": 1,
        "mark": 1,
        "charts": [{"name": "U", "e_components": ["p", "a"], "p_components": ["p"], "generators": [{"a": 1}]}]
    }));
    let (next, _) = blow_up_global(&cfg, &ids(&cfg, &["p", "a"])).unwrap();
    let p_child = next.chart_by_name("U/1:p").unwrap();
    let a_child = next.chart_by_name("U/1:a").unwrap();
    assert!(p_child.p_empty);
    assert!(!a_child.p_empty);
    assert_eq!(a_child.p_components, ids(&cfg, &["p"]));
    assert!(support_is_empty(&next));
}

/// Random permissible centre of a random configuration of maximal order.
fn permissible_instance(
    sampler: &mut Sampler,
) -> Option<(lamres::model::Configuration, BTreeSet<ComponentId>)> {
    let cfg = sampler.config(&ConfigBounds::default()).unwrap();
    let top = max_order(&cfg);
    if top == 0 {
        return None;
    }
    // Maximal order: the mark equals the largest order.
    let cfg = cfg.map_ideals(|c| c.ideal.with_mark(top)).unwrap();
    let chart = &cfg.charts()[0];
    let strata = lamres::model::support(&cfg);
    let stratum = sampler.choose(&strata)?.vanishing.clone();
    // Any superset of a support stratum inside the chart is permissible.
    let extra: Vec<ComponentId> = chart.e_components.difference(&stratum).copied().collect();
    let mut center = stratum;
    for id in extra {
        if sampler.choose(&[true, false]) == Some(&true) {
            center.insert(id);
        }
    }
    Some((cfg, center))
}

#[test]
fn max_order_never_increases() {
    let mut sampler = Sampler::new(4206);
    let mut checked = 0;
    while checked < 200 {
        let Some((cfg, center)) = permissible_instance(&mut sampler) else {
            continue;
        };
        assert!(is_permissible(&cfg, &center).unwrap());
        let (next, record) = blow_up_global(&cfg, &center).unwrap();
        assert!(record.exceptional.0 as usize >= cfg.registry().len());
        for chart in next.charts() {
            let k = chart.path.last().unwrap().component;
            assert!(!chart.e_components.contains(&k));
            assert!(!chart.p_empty || cfg.charts()[0].p_components.contains(&k));
        }
        assert!(max_order(&next) <= max_order(&cfg));
        checked += 1;
    }
}

#[test]
fn transform_of_sum_is_sum_of_transforms() {
    let mut sampler = Sampler::new(52316);
    let mut checked = 0;
    while checked < 100 {
        let a = sampler.config(&ConfigBounds::default()).unwrap();
        let chart = &a.charts()[0];
        let free: Vec<ComponentId> = chart.free_components().into_iter().collect();
        let other_mark = 1 + (checked as u64 % 3);
        let other = MarkedIdeal::new(
            vec![sampler.monomial(&free, 6), sampler.monomial(&free, 6)],
            other_mark,
        )
        .unwrap();
        let sum = sum_marked(&[chart.ideal.clone(), other.clone()]).unwrap();
        let summed = a.map_ideals(|_| Ok(sum.clone())).unwrap();
        let strata = lamres::model::support(&summed);
        let Some(stratum) = sampler.choose(&strata) else {
            continue;
        };
        let center = stratum.vanishing.clone();
        let (after_sum, record) = blow_up_global(&summed, &center).unwrap();
        let e = record.exceptional;
        for (child, &k) in after_sum.charts().iter().zip(&center) {
            let transform = |ideal: &MarkedIdeal| {
                let gens = ideal
                    .generators()
                    .iter()
                    .map(|g| transform_generator(g, &center, k, e, ideal.mark()).unwrap())
                    .collect();
                MarkedIdeal::new(gens, ideal.mark()).unwrap()
            };
            let separately = sum_marked(&[transform(&chart.ideal), transform(&other)]).unwrap();
            assert_eq!(child.ideal, separately);
            assert_eq!(
                child.ideal.generators(),
                minimalize(child.ideal.generators().to_vec()).as_slice()
            );
        }
        checked += 1;
    }
}
