#![allow(dead_code)]

use std::collections::BTreeSet;

use lamres::format::ConfigFile;
use lamres::model::{ComponentId, Configuration, Monomial};
use serde_json::json;

pub fn config(value: serde_json::Value) -> Configuration {
    ConfigFile::parse(&value.to_string())
        .and_then(|f| f.to_config())
        .expect("test configuration is valid")
}

/// x, y, u, v with (x²y³, x²v⁶, y⁴u⁵), mark 5, trivial embedding.
pub fn worked_example() -> Configuration {
    config(worked_example_json())
}

pub fn worked_example_json() -> serde_json::Value {
    json!({
        "components": ["x", "y", "u", "v"],
        "dim_p": 4,
        "mark": 5,
        "charts": [{
            "name": "U",
            "e_components": ["x", "y", "u", "v"],
            "generators": [{"x": 2, "y": 3}, {"x": 2, "v": 6}, {"y": 4, "u": 5}]
        }]
    })
}

/// One chart over the listed components with empty P.
pub fn single_chart(components: &[&str], gens: serde_json::Value, mark: u64) -> Configuration {
    config(json!({
        "components": components,
        "dim_p": components.len(),
        "mark": mark,
        "charts": [{"name": "U", "e_components": components, "generators": gens}]
    }))
}

pub fn mono(cfg: &Configuration, pairs: &[(&str, u64)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().map(|&(n, e)| (cfg.id(n).unwrap(), e)))
}

pub fn ids(cfg: &Configuration, names: &[&str]) -> BTreeSet<ComponentId> {
    cfg.ids(names).unwrap()
}

/// Every subset of `comps`.
pub fn subsets(comps: &BTreeSet<ComponentId>) -> Vec<BTreeSet<ComponentId>> {
    let list: Vec<ComponentId> = comps.iter().copied().collect();
    (0u32..1 << list.len())
        .map(|mask| {
            list.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &id)| id)
                .collect()
        })
        .collect()
}

pub fn sorted(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens
}
