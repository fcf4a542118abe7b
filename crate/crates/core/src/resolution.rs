//! Principalization and weak embedded resolution.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::digest;
use crate::model::{minimalize, support, ComponentId, Configuration, Monomial, Stratum};
use crate::reduction::{reduce, reduce_to_monomial, MonomialStep, Reduction};
use crate::transform::{blow_up_global, BlowUpRecord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalChart {
    pub name: String,
    /// The single generator of the total transform, if it is principal.
    pub generator: Option<Monomial>,
    pub p_empty: bool,
}

/// Where the strict transform of an embedded subscheme first lies inside a blow-up centre.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakResolution {
    /// 1-based index of the first centre containing the strict transform.
    pub separation_stage: u32,
    /// Charts carrying the strict transform just before that blow-up, with its components.
    pub strict_transform: Vec<(String, BTreeSet<ComponentId>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionTrace {
    pub initial_digest: String,
    pub initial: Configuration,
    pub records: Vec<BlowUpRecord>,
    pub final_config: Configuration,
    pub final_charts: Vec<FinalChart>,
    /// Minimal strata where the input ideal vanishes.
    pub cosupport: Vec<Stratum>,
    pub monomial_steps: Vec<MonomialStep>,
    pub weak: Option<WeakResolution>,
}

impl ResolutionTrace {
    fn build(initial: &Configuration, reduction: Reduction) -> Result<ResolutionTrace> {
        let final_charts = reduction
            .config
            .charts()
            .iter()
            .map(|c| {
                let total = c.total_transform()?;
                Ok(FinalChart {
                    name: c.name.clone(),
                    generator: (total.len() == 1).then(|| total[0].clone()),
                    p_empty: c.p_empty,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let unit_marked = initial.map_ideals(|c| c.ideal.with_mark(1))?;
        Ok(ResolutionTrace {
            initial_digest: digest(initial),
            initial: initial.clone(),
            records: reduction.records,
            final_config: reduction.config,
            final_charts,
            cosupport: support(&unit_marked),
            monomial_steps: reduction.monomial_steps,
            weak: None,
        })
    }

    /// A trace with no blow-ups.
    pub fn identity(cfg: &Configuration) -> Result<ResolutionTrace> {
        Self::build(
            cfg,
            Reduction {
                records: Vec::new(),
                config: cfg.clone(),
                monomial_steps: Vec::new(),
            },
        )
    }

    /// A trace of one blow-up at `center`.
    pub fn single(cfg: &Configuration, center: &BTreeSet<ComponentId>) -> Result<ResolutionTrace> {
        let (next, record) = blow_up_global(cfg, center)?;
        Self::build(
            cfg,
            Reduction {
                records: vec![record],
                config: next,
                monomial_steps: Vec::new(),
            },
        )
    }

    /// Every chart meeting P has a principal total transform.
    pub fn is_principal(&self) -> bool {
        self.final_charts
            .iter()
            .all(|c| c.p_empty || c.generator.is_some())
    }
}

/// Order reduction wrapped as a trace.
pub fn reduce_trace(cfg: &Configuration) -> Result<ResolutionTrace> {
    ResolutionTrace::build(cfg, reduce(cfg)?)
}

/// Blows up until the total transform is a single monomial in every chart, using mark 1.
pub fn principalize(cfg: &Configuration) -> Result<ResolutionTrace> {
    let cfg = cfg.map_ideals(|c| c.ideal.with_mark(1))?;
    let trace = ResolutionTrace::build(&cfg, reduce_to_monomial(&cfg)?)?;
    if !trace.is_principal() {
        return Err(Error::Internal(
            "principalization ended with a non-principal chart".into(),
        ));
    }
    Ok(trace)
}

pub fn is_locally_principal(cfg: &Configuration, trace: &ResolutionTrace) -> Result<bool> {
    if digest(cfg) != digest(&trace.final_config) {
        return Err(Error::InconsistentTrace(
            "configuration is not the final state of the trace".into(),
        ));
    }
    for chart in cfg.charts().iter().filter(|c| !c.p_empty) {
        if chart.total_transform()?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Components of the irreducible subscheme cut out by a chart's ideal, or why there is none
/// of codimension at least two.
fn subscheme_components(gens: &[Monomial]) -> std::result::Result<BTreeSet<ComponentId>, String> {
    let radical = minimalize(
        gens.iter()
            .map(|g| Monomial::from_pairs(g.iter().map(|(id, _)| (id, 1))))
            .collect(),
    );
    if radical.iter().any(Monomial::is_unit) {
        return Err("the ideal is the unit ideal".into());
    }
    if radical.iter().any(|g| g.degree() > 1) {
        return Err("the subscheme is reducible".into());
    }
    let comps: BTreeSet<ComponentId> = radical.iter().flat_map(|g| g.support()).collect();
    if comps.len() < 2 {
        return Err(format!("codimension {} is below 2", comps.len()));
    }
    Ok(comps)
}

/// Principalizes the ideal of an embedded subscheme and reports the first blow-up whose centre
/// contains its strict transform; the blow-ups before it resolve the subscheme.
pub fn weak_resolve(cfg: &Configuration) -> Result<ResolutionTrace> {
    let mut strict: BTreeMap<String, Option<BTreeSet<ComponentId>>> = BTreeMap::new();
    for chart in cfg.charts() {
        let comps = subscheme_components(chart.ideal.generators())
            .map_err(|why| Error::Precondition(format!("chart {}: {why}", chart.name)))?;
        strict.insert(chart.name.clone(), Some(comps));
    }
    let mut trace = principalize(cfg)?;
    for record in &trace.records {
        let inside: Vec<&String> = record
            .replaced
            .iter()
            .filter(|o| matches!(strict.get(&o.chart), Some(Some(s)) if record.center.is_subset(s)))
            .map(|o| &o.chart)
            .collect();
        if !inside.is_empty() {
            trace.weak = Some(WeakResolution {
                separation_stage: record.stage,
                strict_transform: strict
                    .iter()
                    .filter_map(|(name, s)| s.as_ref().map(|s| (name.clone(), s.clone())))
                    .collect(),
            });
            return Ok(trace);
        }
        for outcome in &record.replaced {
            let parent = strict.remove(&outcome.chart).flatten();
            for child in &outcome.children {
                let s = parent
                    .as_ref()
                    .filter(|s| !s.contains(&child.chart_var))
                    .cloned();
                strict.insert(child.name.clone(), s);
            }
        }
    }
    Err(Error::Internal(
        "no centre contained the strict transform of the subscheme".into(),
    ))
}
