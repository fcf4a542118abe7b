use std::collections::BTreeSet;

use serde::Serialize;

use super::ideal::MarkedIdeal;
use super::monomial::{minimalize, ComponentId, Monomial};
use crate::error::{Error, Result};

/// One step of a chart's history: the blow-up stage and the centre component whose chart was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PathStep {
    pub stage: u32,
    pub component: ComponentId,
}

/// An affine coordinate patch in which every subset of present components meets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Chart {
    pub name: String,
    pub e_components: BTreeSet<ComponentId>,
    pub n_vars: Vec<String>,
    pub p_components: BTreeSet<ComponentId>,
    pub ideal: MarkedIdeal,
    pub path: Vec<PathStep>,
    /// The strict transform of P does not meet this chart.
    pub p_empty: bool,
    /// Accumulated exceptional factor: total transform = factor * ideal.
    pub exceptional_factor: Monomial,
}

impl Chart {
    pub fn root(
        name: impl Into<String>,
        e_components: BTreeSet<ComponentId>,
        n_vars: Vec<String>,
        p_components: BTreeSet<ComponentId>,
        ideal: MarkedIdeal,
    ) -> Self {
        Chart {
            name: name.into(),
            e_components,
            n_vars,
            p_components,
            ideal,
            path: Vec::new(),
            p_empty: false,
            exceptional_factor: Monomial::unit(),
        }
    }

    pub fn mark(&self) -> u64 {
        self.ideal.mark()
    }

    /// Components present in the chart but not cutting out P.
    pub fn free_components(&self) -> BTreeSet<ComponentId> {
        self.e_components
            .difference(&self.p_components)
            .copied()
            .collect()
    }

    pub fn contains_all(&self, set: &BTreeSet<ComponentId>) -> bool {
        set.is_subset(&self.e_components)
    }

    pub fn check_stratum(&self, vanishing: &BTreeSet<ComponentId>) -> Result<()> {
        if let Some(bad) = vanishing.difference(&self.e_components).next() {
            return Err(Error::InvalidStratum(format!(
                "component {bad} is absent from chart {}",
                self.name
            )));
        }
        if !self.p_components.is_subset(vanishing) {
            return Err(Error::InvalidStratum(format!(
                "stratum of chart {} does not contain the P components",
                self.name
            )));
        }
        Ok(())
    }

    pub fn order_at(&self, vanishing: &BTreeSet<ComponentId>) -> Result<u64> {
        self.check_stratum(vanishing)?;
        Ok(self.ideal.order_on(vanishing))
    }

    /// Order at the distinguished point, where every present component vanishes.
    pub fn full_order(&self) -> u64 {
        self.ideal.order_on(&self.e_components)
    }

    /// Whether the support of the marked ideal meets this chart.
    pub fn has_support(&self) -> bool {
        !self.p_empty && self.full_order() >= self.mark()
    }

    /// Inclusion-minimal strata with order at least the mark.
    pub fn minimal_strata(&self) -> Vec<BTreeSet<ComponentId>> {
        if !self.has_support() {
            return Vec::new();
        }
        let candidates: Vec<ComponentId> = self.ideal.support().into_iter().collect();
        let mut masks: Vec<u64> = (0..(1u64 << candidates.len())).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut found: Vec<u64> = Vec::new();
        let mut strata = Vec::new();
        for mask in masks {
            if found.iter().any(|f| f & mask == *f) {
                continue;
            }
            let mut vanishing = self.p_components.clone();
            vanishing.extend(
                candidates
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, c)| *c),
            );
            if self.ideal.order_on(&vanishing) >= self.mark() {
                found.push(mask);
                strata.push(vanishing);
            }
        }
        strata
    }

    /// Generators of the total transform: the exceptional factor times the ideal.
    pub fn total_transform(&self) -> Result<Vec<Monomial>> {
        let gens = self
            .ideal
            .generators()
            .iter()
            .map(|g| g.mul(&self.exceptional_factor))
            .collect::<Result<Vec<_>>>()?;
        Ok(minimalize(gens))
    }
}
