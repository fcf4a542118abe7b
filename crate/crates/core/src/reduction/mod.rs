//! Order reduction: maximal-order induction through companion ideals on Y, the monomial and
//! non-monomial split, and the lexicographic monomial stage.

mod companion;
mod monomial;
mod split;

use serde::Serialize;

pub use companion::{companion_c, companion_g, monomial_derivative, Companion};
use companion::{companion_c_compact, companion_g_compact};
pub use monomial::{best_subset, stage_measure, MonomialStep};
pub use split::{mn_split, zw_split, MnSplit, ZwSplit};

use crate::error::{Error, Result};
use crate::model::{support_is_empty, Chart, ComponentId, Configuration};
use crate::transform::{blow_up_global, BlowUpRecord};
use std::collections::BTreeSet;

/// Upper bound on blow-ups in one call; a guard against runaway recursion.
pub const MAX_BLOWUPS: usize = 1_000_000;

/// Outcome of a reduction: the permissible sequence applied and the final configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Reduction {
    pub records: Vec<BlowUpRecord>,
    pub config: Configuration,
    /// Steps of the monomial stage run on the input configuration itself.
    pub monomial_steps: Vec<MonomialStep>,
}

struct Run {
    cfg: Configuration,
    records: Vec<BlowUpRecord>,
    steps: Vec<MonomialStep>,
}

impl Run {
    fn new(cfg: &Configuration) -> Self {
        Run {
            cfg: cfg.clone(),
            records: Vec::new(),
            steps: Vec::new(),
        }
    }

    fn apply(&mut self, center: &BTreeSet<ComponentId>) -> Result<&BlowUpRecord> {
        if self.records.len() >= MAX_BLOWUPS {
            return Err(Error::Internal(format!(
                "more than {MAX_BLOWUPS} blow-ups without reaching empty support"
            )));
        }
        let (next, record) = blow_up_global(&self.cfg, center)?;
        self.cfg = next;
        self.records.push(record);
        Ok(self.records.last().expect("just pushed"))
    }

    /// Applies centres found on an auxiliary configuration that shares this registry.
    fn replay(&mut self, records: &[BlowUpRecord]) -> Result<()> {
        for r in records {
            let exceptional = self.apply(&r.center)?.exceptional;
            if exceptional != r.exceptional {
                return Err(Error::Internal(
                    "replayed blow-up produced a different exceptional id".into(),
                ));
            }
        }
        Ok(())
    }

    fn finish(self) -> Reduction {
        Reduction {
            records: self.records,
            config: self.cfg,
            monomial_steps: self.steps,
        }
    }
}

/// Reduces the configuration until its support is empty.
pub fn reduce(cfg: &Configuration) -> Result<Reduction> {
    cfg.validate()?;
    let run = reduce_general(cfg, 0, cfg.dim_p(), true)?;
    ensure_empty(&run.cfg, "reduction")?;
    Ok(run.finish())
}

/// Reduction for a configuration of maximal order: the order never exceeds the mark along P.
pub fn reduce_max_order(cfg: &Configuration) -> Result<Reduction> {
    cfg.validate()?;
    let run = reduce_maximal(cfg, 0, cfg.dim_p())?;
    Ok(run.finish())
}

/// The monomial stage alone; every chart meeting the support must carry one generator.
pub fn reduce_monomial(cfg: &Configuration) -> Result<Reduction> {
    cfg.validate()?;
    let mut run = Run::new(cfg);
    monomial::run_stages(&mut run)?;
    ensure_empty(&run.cfg, "monomial stage")?;
    Ok(run.finish())
}

/// Runs the maximal-order and companion stages only, stopping once every chart meeting the
/// support carries a single monomial.
pub(crate) fn reduce_to_monomial(cfg: &Configuration) -> Result<Reduction> {
    cfg.validate()?;
    Ok(reduce_general(cfg, 0, cfg.dim_p(), false)?.finish())
}

fn ensure_empty(cfg: &Configuration, what: &str) -> Result<()> {
    match cfg.charts().iter().find(|c| c.has_support()) {
        Some(c) => Err(Error::Internal(format!(
            "{what} ended with support in chart {}",
            c.name
        ))),
        None => Ok(()),
    }
}

/// Largest order of the non-monomial part over charts meeting the support.
pub fn nonmonomial_order(cfg: &Configuration) -> Option<u64> {
    cfg.charts()
        .iter()
        .filter(|c| c.has_support())
        .map(|c| mn_split(c).nonmonomial_part.order_on(&c.e_components))
        .max()
}

fn reduce_general(
    cfg: &Configuration,
    depth: u32,
    limit: u32,
    monomial_stage: bool,
) -> Result<Run> {
    let mut run = Run::new(cfg);
    if support_is_empty(cfg) {
        return Ok(run);
    }
    if cfg.dim_p() == 0 {
        return Err(Error::Internal(
            "support meets a zero-dimensional P in a valid configuration".into(),
        ));
    }
    let mark = cfg.mark();

    let mut previous = u64::MAX;
    while let Some(nu) = nonmonomial_order(&run.cfg) {
        if nu < mark {
            break;
        }
        if nu >= previous {
            return Err(Error::Internal("non-monomial order did not drop".into()));
        }
        previous = nu;
        let aux = run
            .cfg
            .map_ideals(|c| mn_split(c).nonmonomial_part.with_mark(nu))?;
        let sub = reduce_maximal(&aux, depth, limit)?;
        run.replay(&sub.records)?;
    }

    let mut previous = u64::MAX;
    while let Some(nu) = nonmonomial_order(&run.cfg) {
        if nu == 0 {
            break;
        }
        if nu >= previous {
            return Err(Error::Internal("companion weight did not drop".into()));
        }
        previous = nu;
        let aux = run.cfg.map_ideals(|c| companion_g_compact(c, nu))?;
        let sub = reduce_maximal(&aux, depth, limit)?;
        run.replay(&sub.records)?;
    }

    if monomial_stage {
        monomial::run_stages(&mut run)?;
    }
    Ok(run)
}

fn reduce_maximal(cfg: &Configuration, depth: u32, limit: u32) -> Result<Run> {
    let mut run = Run::new(cfg);
    while let Some(chart) = run.cfg.charts().iter().find(|c| c.has_support()).cloned() {
        let split = zw_split(&chart)?;
        let companion = companion_c_compact(&chart, &split)?;
        match companion.ideal {
            None => {
                run.apply(&companion.y_components)?;
            }
            Some(ideal) => {
                if depth >= limit {
                    return Err(Error::Internal(format!(
                        "companion recursion deeper than dim_p = {limit}"
                    )));
                }
                let dim = run
                    .cfg
                    .dim_p()
                    .checked_sub(split.z_vars.len() as u32)
                    .ok_or_else(|| Error::Internal("companion dimension underflow".into()))?;
                let sub_chart = Chart {
                    p_components: companion.y_components,
                    ideal,
                    ..chart.clone()
                };
                let aux = run.cfg.with_charts(vec![sub_chart], dim);
                let sub = reduce_general(&aux, depth + 1, limit, true)?;
                if sub.records.is_empty() {
                    return Err(Error::Internal(
                        "companion reduction produced no centre".into(),
                    ));
                }
                run.replay(&sub.records)?;
            }
        }
        let prefix = format!("{}/", chart.name);
        if let Some(left) = run
            .cfg
            .charts()
            .iter()
            .find(|c| (c.name == chart.name || c.name.starts_with(&prefix)) && c.has_support())
        {
            return Err(Error::Internal(format!(
                "support survives in chart {} after reducing {}",
                left.name, chart.name
            )));
        }
    }
    Ok(run)
}
