use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Chart, ComponentId, MarkedIdeal, Monomial};

/// Factorization of each generator into a z-part and a w-part, where the z-variables are
/// those occurring in some generator whose degree equals the mark.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZwSplit {
    pub z_vars: BTreeSet<ComponentId>,
    /// Per generator, (z-part, w-part).
    pub parts: Vec<(Monomial, Monomial)>,
}

impl ZwSplit {
    pub fn z_degree(&self, j: usize) -> u64 {
        self.parts[j].0.degree()
    }
}

pub fn zw_split(chart: &Chart) -> Result<ZwSplit> {
    let mark = chart.mark();
    let order = chart.full_order();
    if order != mark {
        return Err(Error::NotMaximalOrder { order, mark });
    }
    let gens = chart.ideal.generators();
    let z_vars: BTreeSet<ComponentId> = gens
        .iter()
        .filter(|g| g.degree() == mark)
        .flat_map(|g| g.support())
        .collect();
    let parts: Vec<(Monomial, Monomial)> = gens.iter().map(|g| g.split_by(&z_vars)).collect();
    if !parts.iter().any(|(z, w)| z.degree() == mark && w.is_unit()) {
        return Err(Error::Internal(
            "no generator is a pure z-monomial of degree equal to the mark".into(),
        ));
    }
    Ok(ZwSplit { z_vars, parts })
}

/// Greatest common monomial factor and the cofactor ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MnSplit {
    pub monomial_part: Monomial,
    pub nonmonomial_part: MarkedIdeal,
}

pub fn mn_split(chart: &Chart) -> MnSplit {
    split_ideal(&chart.ideal)
}

pub(crate) fn split_ideal(ideal: &MarkedIdeal) -> MnSplit {
    let gens = ideal.generators();
    let common = gens[1..].iter().fold(gens[0].clone(), |acc, g| acc.gcd(g));
    let rest = gens.iter().map(|g| g.quotient(&common)).collect();
    MnSplit {
        nonmonomial_part: MarkedIdeal::new(rest, ideal.mark())
            .expect("cofactors of a non-empty ideal form a non-empty ideal"),
        monomial_part: common,
    }
}
