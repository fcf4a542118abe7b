//! Blow-ups along intersections of divisor components, chart by chart.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    permissibility_failure, Chart, ComponentId, Configuration, MarkedIdeal, Monomial, PathStep,
};

/// Birational transform of one generator in the chart of `chart_var`.
///
/// The exceptional component receives the degree along the centre minus the mark, the chart
/// variable disappears and every other exponent is kept.
pub fn transform_generator(
    g: &Monomial,
    center: &BTreeSet<ComponentId>,
    chart_var: ComponentId,
    exceptional: ComponentId,
    mark: u64,
) -> Result<Monomial> {
    let degree = g.degree_over(center);
    if degree < mark {
        return Err(Error::NonPermissibleTransform { degree, mark });
    }
    Ok(g.with_exponent(chart_var, 0)
        .with_exponent(exceptional, degree - mark))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChildOutcome {
    pub name: String,
    pub chart_var: ComponentId,
    pub generators: Vec<Monomial>,
    pub p_empty: bool,
}

/// What a blow-up did to one chart. Charts missing a centre component are left out of the
/// record; they are copied unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartOutcome {
    pub chart: String,
    pub children: Vec<ChildOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowUpRecord {
    pub stage: u32,
    pub center: BTreeSet<ComponentId>,
    pub exceptional: ComponentId,
    pub exceptional_name: String,
    pub replaced: Vec<ChartOutcome>,
    pub untouched: usize,
}

pub fn child_name(parent: &str, stage: u32, chart_var_name: &str) -> String {
    format!("{parent}/{stage}:{chart_var_name}")
}

/// The |K| children of a chart containing the whole centre, ordered by component id.
pub fn blow_up_chart(
    chart: &Chart,
    center: &BTreeSet<ComponentId>,
    exceptional: ComponentId,
    stage: u32,
    registry: &[String],
) -> Result<Vec<Chart>> {
    if !chart.contains_all(center) {
        return Err(Error::Precondition(format!(
            "chart {} does not contain the whole centre",
            chart.name
        )));
    }
    let mark = chart.mark();
    let mut children = Vec::with_capacity(center.len());
    for &k in center {
        let gens = chart
            .ideal
            .generators()
            .iter()
            .map(|g| transform_generator(g, center, k, exceptional, mark))
            .collect::<Result<Vec<_>>>()?;
        let factor = transform_generator(&chart.exceptional_factor, center, k, exceptional, 0)?;
        let factor = factor.mul(&Monomial::from_pairs([(exceptional, mark)]))?;
        let mut e_components = chart.e_components.clone();
        e_components.remove(&k);
        e_components.insert(exceptional);
        let leaves_p = chart.p_components.contains(&k);
        let mut p_components = chart.p_components.clone();
        p_components.remove(&k);
        let mut path = chart.path.clone();
        path.push(PathStep {
            stage,
            component: k,
        });
        children.push(Chart {
            name: child_name(&chart.name, stage, &registry[k.index()]),
            e_components,
            n_vars: chart.n_vars.clone(),
            p_components,
            ideal: MarkedIdeal::new(gens, mark)?,
            path,
            p_empty: chart.p_empty || leaves_p,
            exceptional_factor: factor,
        });
    }
    Ok(children)
}

fn fresh_name(registry: &[String], stage: u32) -> String {
    let mut name = format!("E{stage}");
    while registry.contains(&name) {
        name.push('\'');
    }
    name
}

/// Blows up the whole configuration along a permissible centre.
pub fn blow_up_global(
    cfg: &Configuration,
    center: &BTreeSet<ComponentId>,
) -> Result<(Configuration, BlowUpRecord)> {
    if let Some(reason) = permissibility_failure(cfg, center)? {
        return Err(Error::NonPermissible {
            center: render_set(cfg, center),
            reason,
        });
    }
    let stage = cfg.blowups() + 1;
    let exceptional = ComponentId(cfg.registry().len() as u32);
    let exceptional_name = fresh_name(cfg.registry(), stage);
    let mut registry = cfg.registry().to_vec();
    registry.push(exceptional_name.clone());

    let mut charts = Vec::with_capacity(cfg.charts().len());
    let mut replaced = Vec::new();
    let mut untouched = 0;
    for chart in cfg.charts() {
        if !chart.contains_all(center) {
            charts.push(chart.clone());
            untouched += 1;
            continue;
        }
        let children = blow_up_chart(chart, center, exceptional, stage, &registry)?;
        replaced.push(ChartOutcome {
            chart: chart.name.clone(),
            children: children
                .iter()
                .zip(center)
                .map(|(c, &k)| ChildOutcome {
                    name: c.name.clone(),
                    chart_var: k,
                    generators: c.ideal.generators().to_vec(),
                    p_empty: c.p_empty,
                })
                .collect(),
        });
        charts.extend(children);
    }
    let next = Configuration::from_parts(registry, charts, cfg.dim_p(), stage);
    let record = BlowUpRecord {
        stage,
        center: center.clone(),
        exceptional,
        exceptional_name,
        replaced,
        untouched,
    };
    Ok((next, record))
}

pub fn render_set(cfg: &Configuration, set: &BTreeSet<ComponentId>) -> String {
    let names: Vec<&str> = set
        .iter()
        .map(|id| cfg.registry().get(id.index()).map_or("?", |s| s.as_str()))
        .collect();
    format!("{{{}}}", names.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> BTreeSet<ComponentId> {
        v.iter().map(|&i| ComponentId(i)).collect()
    }

    #[test]
    fn transform_rejects_low_degree() {
        let g = Monomial::from_pairs([(ComponentId(0), 1)]);
        let err = transform_generator(&g, &ids(&[0, 1]), ComponentId(0), ComponentId(2), 2);
        assert_eq!(
            err,
            Err(Error::NonPermissibleTransform { degree: 1, mark: 2 })
        );
    }

    #[test]
    fn single_variable_in_its_own_chart_becomes_unit() {
        let g = Monomial::from_pairs([(ComponentId(0), 1)]);
        let t = transform_generator(&g, &ids(&[0]), ComponentId(0), ComponentId(1), 1).unwrap();
        assert!(t.is_unit());
    }
}
