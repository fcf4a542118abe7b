//! Marked monomial ideals on chart complexes: orders, supports and permissible centres.

mod chart;
mod config;
mod ideal;
mod monomial;

use std::collections::BTreeSet;

pub use chart::{Chart, PathStep};
pub use config::{Configuration, Stratum};
pub use ideal::{sum_marked, sum_marked_compact, MarkedIdeal};
pub use monomial::{minimalize, ComponentId, Monomial};

use crate::error::{Error, Result};

pub fn order_at(cfg: &Configuration, stratum: &Stratum) -> Result<u64> {
    let chart = cfg
        .charts()
        .get(stratum.chart)
        .ok_or_else(|| Error::InvalidStratum(format!("no chart {}", stratum.chart)))?;
    chart.order_at(&stratum.vanishing)
}

/// Maximal order along P: the largest full-stratum order over charts meeting P.
pub fn max_order(cfg: &Configuration) -> u64 {
    cfg.charts()
        .iter()
        .filter(|c| !c.p_empty)
        .map(Chart::full_order)
        .max()
        .unwrap_or(0)
}

/// Inclusion-minimal strata of the support, chart by chart.
pub fn support(cfg: &Configuration) -> Vec<Stratum> {
    cfg.charts()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            c.minimal_strata()
                .into_iter()
                .map(move |vanishing| Stratum {
                    chart: i,
                    vanishing,
                })
        })
        .collect()
}

pub fn support_is_empty(cfg: &Configuration) -> bool {
    !cfg.charts().iter().any(Chart::has_support)
}

/// Why `center` is not permissible, or `None` if it is.
pub fn permissibility_failure(
    cfg: &Configuration,
    center: &BTreeSet<ComponentId>,
) -> Result<Option<String>> {
    if center.is_empty() {
        return Err(Error::Precondition("centre must be non-empty".into()));
    }
    cfg.check_registered(center)?;
    for chart in cfg.charts().iter().filter(|c| c.contains_all(center)) {
        if chart.p_empty {
            return Ok(Some(format!(
                "chart {} meets the centre but not P",
                chart.name
            )));
        }
        if !chart.p_components.is_subset(center) {
            return Ok(Some(format!(
                "chart {}: centre does not contain the P components",
                chart.name
            )));
        }
        let order = chart.ideal.order_on(center);
        if order < chart.mark() {
            return Ok(Some(format!(
                "chart {}: order {order} along the centre is below the mark {}",
                chart.name,
                chart.mark()
            )));
        }
    }
    Ok(None)
}

pub fn is_permissible(cfg: &Configuration, center: &BTreeSet<ComponentId>) -> Result<bool> {
    Ok(permissibility_failure(cfg, center)?.is_none())
}
