use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::chart::Chart;
use super::monomial::ComponentId;
use crate::error::{Error, Result};

/// A point of a chart, given by the components vanishing there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Stratum {
    pub chart: usize,
    pub vanishing: BTreeSet<ComponentId>,
}

/// Global component registry, chart list and the relative dimension of P.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    registry: Vec<String>,
    charts: Vec<Chart>,
    dim_p: u32,
    blowups: u32,
}

impl Configuration {
    pub fn new(registry: Vec<String>, charts: Vec<Chart>, dim_p: u32) -> Result<Self> {
        let cfg = Configuration {
            registry,
            charts,
            dim_p,
            blowups: 0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub(crate) fn from_parts(
        registry: Vec<String>,
        charts: Vec<Chart>,
        dim_p: u32,
        blowups: u32,
    ) -> Self {
        Configuration {
            registry,
            charts,
            dim_p,
            blowups,
        }
    }

    pub fn registry(&self) -> &[String] {
        &self.registry
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn dim_p(&self) -> u32 {
        self.dim_p
    }

    /// Number of blow-ups applied since the configuration was loaded.
    pub fn blowups(&self) -> u32 {
        self.blowups
    }

    pub fn mark(&self) -> u64 {
        self.charts[0].mark()
    }

    pub fn name(&self, id: ComponentId) -> &str {
        &self.registry[id.index()]
    }

    pub fn id(&self, name: &str) -> Result<ComponentId> {
        self.registry
            .iter()
            .position(|n| n == name)
            .map(|i| ComponentId(i as u32))
            .ok_or_else(|| Error::UnknownComponent(name.to_string()))
    }

    pub fn ids(&self, names: &[&str]) -> Result<BTreeSet<ComponentId>> {
        names.iter().map(|n| self.id(n)).collect()
    }

    pub fn chart_by_name(&self, name: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.name == name)
    }

    pub fn check_registered(&self, set: &BTreeSet<ComponentId>) -> Result<()> {
        match set.iter().find(|id| id.index() >= self.registry.len()) {
            Some(id) => Err(Error::UnknownComponent(id.to_string())),
            None => Ok(()),
        }
    }

    /// Same charts and registry with every ideal replaced by `f(chart)`.
    pub fn map_ideals<F>(&self, mut f: F) -> Result<Configuration>
    where
        F: FnMut(&Chart) -> Result<super::ideal::MarkedIdeal>,
    {
        let charts = self
            .charts
            .iter()
            .map(|c| {
                Ok(Chart {
                    ideal: f(c)?,
                    ..c.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration {
            charts,
            ..self.clone()
        })
    }

    pub(crate) fn with_charts(&self, charts: Vec<Chart>, dim_p: u32) -> Configuration {
        Configuration {
            registry: self.registry.clone(),
            charts,
            dim_p,
            blowups: self.blowups,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Validation(msg));
        let mut names = HashSet::new();
        for name in &self.registry {
            if name.is_empty() {
                return bad("components: empty name".into());
            }
            if !names.insert(name.as_str()) {
                return bad(format!("components: duplicate name '{name}'"));
            }
        }
        if self.charts.is_empty() {
            return bad("charts: at least one chart is required".into());
        }
        let mark = self.mark();
        let mut chart_names = HashSet::new();
        for (i, chart) in self.charts.iter().enumerate() {
            let at = format!("charts[{i}] ('{}')", chart.name);
            if !chart_names.insert(chart.name.as_str()) {
                return bad(format!("{at}: duplicate chart name"));
            }
            for id in chart
                .e_components
                .iter()
                .chain(chart.exceptional_factor.support().iter())
            {
                if id.index() >= self.registry.len() {
                    return bad(format!("{at}: component {id} not registered"));
                }
            }
            if !chart.p_components.is_subset(&chart.e_components) {
                return bad(format!(
                    "{at}: p_components must be a subset of e_components"
                ));
            }
            for (g, gen) in chart.ideal.generators().iter().enumerate() {
                for (id, _) in gen.iter() {
                    if !chart.e_components.contains(&id) {
                        return bad(format!(
                            "{at}.generators[{g}]: '{}' is not in e_components",
                            self.registry.get(id.index()).map_or("?", |s| s.as_str())
                        ));
                    }
                    if chart.p_components.contains(&id) {
                        return bad(format!(
                            "{at}.generators[{g}]: '{}' is a P component",
                            self.name(id)
                        ));
                    }
                }
            }
            let mut seen = HashSet::new();
            for v in &chart.n_vars {
                if names.contains(v.as_str()) {
                    return bad(format!("{at}.n_vars: '{v}' is also a component name"));
                }
                if !seen.insert(v.as_str()) {
                    return bad(format!("{at}.n_vars: duplicate label '{v}'"));
                }
            }
            if chart.mark() != mark {
                return bad(format!("{at}: mark {} differs from {mark}", chart.mark()));
            }
            let free = chart.e_components.len() - chart.p_components.len();
            if !chart.p_empty && free as u64 > self.dim_p as u64 {
                return bad(format!(
                    "{at}: {free} components transverse to P exceed dim_p = {}",
                    self.dim_p
                ));
            }
        }
        Ok(())
    }
}
