//! JSON documents: input configurations, configuration states and blow-up traces.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{max_order, Chart, ComponentId, Configuration, MarkedIdeal, Monomial, PathStep};
use crate::render;
use crate::resolution::{ResolutionTrace, WeakResolution};
use crate::transform::{blow_up_global, BlowUpRecord};

pub const TRACE_FORMAT: &str = "lamres-trace/1";

pub type ExponentMap = BTreeMap<String, u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartFile {
    pub name: String,
    pub e_components: Vec<String>,
    #[serde(default)]
    pub n_vars: Vec<String>,
    #[serde(default)]
    pub p_components: Vec<String>,
    pub generators: Vec<ExponentMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub components: Vec<String>,
    pub dim_p: u32,
    pub mark: u64,
    pub charts: Vec<ChartFile>,
}

fn exponent_map(g: &Monomial, registry: &[String]) -> ExponentMap {
    g.iter()
        .map(|(id, e)| (registry[id.index()].clone(), e))
        .collect()
}

fn names(set: &BTreeSet<ComponentId>, registry: &[String]) -> Vec<String> {
    set.iter().map(|id| registry[id.index()].clone()).collect()
}

fn resolve(
    registry: &BTreeMap<&str, ComponentId>,
    list: &[String],
    at: &str,
) -> Result<BTreeSet<ComponentId>> {
    let mut out = BTreeSet::new();
    for name in list {
        let id = registry
            .get(name.as_str())
            .ok_or_else(|| Error::Validation(format!("{at}: unknown component '{name}'")))?;
        if !out.insert(*id) {
            return Err(Error::Validation(format!("{at}: '{name}' listed twice")));
        }
    }
    Ok(out)
}

fn monomial_from_map(
    registry: &BTreeMap<&str, ComponentId>,
    map: &ExponentMap,
    at: &str,
) -> Result<Monomial> {
    let mut pairs = Vec::new();
    for (name, &e) in map {
        let id = registry
            .get(name.as_str())
            .ok_or_else(|| Error::Validation(format!("{at}: unknown component '{name}'")))?;
        pairs.push((*id, e));
    }
    Ok(Monomial::from_pairs(pairs))
}

fn index(components: &[String]) -> BTreeMap<&str, ComponentId> {
    components
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), ComponentId(i as u32)))
        .collect()
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<ConfigFile> {
        serde_json::from_str(text).map_err(|e| Error::Validation(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config documents always serialize")
    }

    pub fn to_config(&self) -> Result<Configuration> {
        if self.mark == 0 {
            return Err(Error::Validation("mark: must be at least 1".into()));
        }
        let registry = index(&self.components);
        if registry.len() != self.components.len() {
            return Err(Error::Validation("components: duplicate name".into()));
        }
        let mut charts = Vec::new();
        for (i, c) in self.charts.iter().enumerate() {
            let at = format!("charts[{i}]");
            let e = resolve(&registry, &c.e_components, &format!("{at}.e_components"))?;
            let p = resolve(&registry, &c.p_components, &format!("{at}.p_components"))?;
            let gens = c
                .generators
                .iter()
                .enumerate()
                .map(|(g, map)| monomial_from_map(&registry, map, &format!("{at}.generators[{g}]")))
                .collect::<Result<Vec<_>>>()?;
            if gens.is_empty() {
                return Err(Error::Validation(format!("{at}.generators: empty list")));
            }
            let ideal = MarkedIdeal::new(gens, self.mark)?;
            charts.push(Chart::root(c.name.clone(), e, c.n_vars.clone(), p, ideal));
        }
        Configuration::new(self.components.clone(), charts, self.dim_p)
    }

    /// Input document for a configuration with no blow-ups applied.
    pub fn from_config(cfg: &Configuration) -> ConfigFile {
        let reg = cfg.registry();
        ConfigFile {
            components: reg.to_vec(),
            dim_p: cfg.dim_p(),
            mark: cfg.mark(),
            charts: cfg
                .charts()
                .iter()
                .map(|c| ChartFile {
                    name: c.name.clone(),
                    e_components: names(&c.e_components, reg),
                    n_vars: c.n_vars.clone(),
                    p_components: names(&c.p_components, reg),
                    generators: c
                        .ideal
                        .generators()
                        .iter()
                        .map(|g| exponent_map(g, reg))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateChart {
    pub name: String,
    pub e_components: Vec<String>,
    pub n_vars: Vec<String>,
    pub p_components: Vec<String>,
    pub p_empty: bool,
    pub path: Vec<(u32, String)>,
    pub generators: Vec<ExponentMap>,
    pub exceptional_factor: ExponentMap,
}

/// Full state of a configuration, including blow-up history.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateFile {
    pub components: Vec<String>,
    pub dim_p: u32,
    pub mark: u64,
    pub blowups: u32,
    pub charts: Vec<StateChart>,
}

impl StateFile {
    pub fn from_config(cfg: &Configuration) -> StateFile {
        let reg = cfg.registry();
        StateFile {
            components: reg.to_vec(),
            dim_p: cfg.dim_p(),
            mark: cfg.mark(),
            blowups: cfg.blowups(),
            charts: cfg
                .charts()
                .iter()
                .map(|c| StateChart {
                    name: c.name.clone(),
                    e_components: names(&c.e_components, reg),
                    n_vars: c.n_vars.clone(),
                    p_components: names(&c.p_components, reg),
                    p_empty: c.p_empty,
                    path: c
                        .path
                        .iter()
                        .map(|PathStep { stage, component }| {
                            (*stage, reg[component.index()].clone())
                        })
                        .collect(),
                    generators: c
                        .ideal
                        .generators()
                        .iter()
                        .map(|g| exponent_map(g, reg))
                        .collect(),
                    exceptional_factor: exponent_map(&c.exceptional_factor, reg),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state documents always serialize")
    }
}

/// SHA-256 of the canonical state document, hex encoded.
pub fn digest(cfg: &Configuration) -> String {
    let bytes = serde_json::to_vec(&StateFile::from_config(cfg)).expect("serializable");
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildFile {
    pub name: String,
    pub chart_var: String,
    pub p_empty: bool,
    pub generators: Vec<ExponentMap>,
    /// Generators in the child's own barred coordinates.
    pub local: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeFile {
    pub chart: String,
    pub children: Vec<ChildFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordFile {
    pub stage: u32,
    pub center: Vec<String>,
    pub exceptional: String,
    pub replaced: Vec<OutcomeFile>,
    pub untouched: usize,
}

impl RecordFile {
    /// `registry` must already contain the record's exceptional component.
    pub fn from_record(r: &BlowUpRecord, registry: &[String]) -> RecordFile {
        RecordFile {
            stage: r.stage,
            center: names(&r.center, registry),
            exceptional: r.exceptional_name.clone(),
            replaced: r
                .replaced
                .iter()
                .map(|o| OutcomeFile {
                    chart: o.chart.clone(),
                    children: o
                        .children
                        .iter()
                        .map(|c| ChildFile {
                            name: c.name.clone(),
                            chart_var: registry[c.chart_var.index()].clone(),
                            p_empty: c.p_empty,
                            generators: c
                                .generators
                                .iter()
                                .map(|g| exponent_map(g, registry))
                                .collect(),
                            local: c
                                .generators
                                .iter()
                                .map(|g| {
                                    render::local_monomial(g, registry, c.chart_var, r.exceptional)
                                })
                                .collect::<Vec<_>>()
                                .join(", "),
                        })
                        .collect(),
                })
                .collect(),
            untouched: r.untouched,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub steps: usize,
    pub final_max_order: u64,
    pub principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakFile {
    pub separation_stage: u32,
    pub blowups_in_resolution: u32,
    pub strict_transform: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFile {
    pub format: String,
    pub command: String,
    pub input_digest: String,
    pub input: ConfigFile,
    pub records: Vec<RecordFile>,
    pub final_state: StateFile,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak_resolution: Option<WeakFile>,
}

impl TraceFile {
    pub fn from_trace(command: &str, trace: &ResolutionTrace) -> TraceFile {
        let final_reg = trace.final_config.registry();
        let weak_resolution = trace.weak.as_ref().map(|w: &WeakResolution| WeakFile {
            separation_stage: w.separation_stage,
            blowups_in_resolution: w.separation_stage - 1,
            strict_transform: w
                .strict_transform
                .iter()
                .map(|(chart, comps)| (chart.clone(), names(comps, final_reg)))
                .collect(),
        });
        TraceFile {
            format: TRACE_FORMAT.into(),
            command: command.into(),
            input_digest: trace.initial_digest.clone(),
            input: ConfigFile::from_config(&trace.initial),
            records: trace
                .records
                .iter()
                .map(|r| RecordFile::from_record(r, final_reg))
                .collect(),
            final_state: StateFile::from_config(&trace.final_config),
            summary: Summary {
                steps: trace.records.len(),
                final_max_order: max_order(&trace.final_config),
                principal: trace.is_principal(),
            },
            weak_resolution,
        }
    }

    pub fn parse(text: &str) -> Result<TraceFile> {
        serde_json::from_str(text).map_err(|e| Error::Validation(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace documents always serialize")
    }

    /// Re-applies every recorded centre to the recorded input and returns the final state.
    pub fn replay(&self) -> Result<StateFile> {
        if self.format != TRACE_FORMAT {
            return Err(Error::InconsistentTrace(format!(
                "unsupported format '{}'",
                self.format
            )));
        }
        let mut cfg = self.input.to_config()?;
        if digest(&cfg) != self.input_digest {
            return Err(Error::InconsistentTrace("input digest mismatch".into()));
        }
        for (i, r) in self.records.iter().enumerate() {
            let refs: Vec<&str> = r.center.iter().map(String::as_str).collect();
            let center = cfg.ids(&refs)?;
            let (next, record) = blow_up_global(&cfg, &center)?;
            if RecordFile::from_record(&record, next.registry()) != *r {
                return Err(Error::InconsistentTrace(format!(
                    "record {i} (stage {}) does not reproduce its outcome",
                    r.stage
                )));
            }
            cfg = next;
        }
        Ok(StateFile::from_config(&cfg))
    }
}
