use std::collections::BTreeSet;

use serde::Serialize;

use super::Run;
use crate::error::{Error, Result};
use crate::model::{ComponentId, Monomial};

/// One blow-up of the monomial stage with the measure of the selecting chart before and of
/// its children meeting P afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialStep {
    pub stage: usize,
    pub chart: String,
    pub subset: BTreeSet<ComponentId>,
    pub before: (u64, u64),
    pub after: Vec<(u64, u64)>,
}

fn positive(g: &Monomial) -> Vec<(ComponentId, u64)> {
    g.iter().collect()
}

fn for_each_subset<F: FnMut(&[usize])>(n: usize, s: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(n: usize, s: usize, start: usize, acc: &mut Vec<usize>, f: &mut F) {
        if acc.len() == s {
            f(acc);
            return;
        }
        for i in start..n {
            if n - i < s - acc.len() {
                break;
            }
            acc.push(i);
            rec(n, s, i + 1, acc, f);
            acc.pop();
        }
    }
    rec(n, s, 0, &mut Vec::with_capacity(s), f);
}

/// The s-subset of components with the largest exponent sum, provided that sum reaches the
/// mark; ties go to the lexicographically smallest id tuple.
pub fn best_subset(g: &Monomial, s: usize, mark: u64) -> Option<(u64, BTreeSet<ComponentId>)> {
    let comps = positive(g);
    let mut best: Option<(u64, Vec<usize>)> = None;
    for_each_subset(comps.len(), s, &mut |idx| {
        let sum: u64 = idx.iter().map(|&i| comps[i].1).sum();
        if sum >= mark && best.as_ref().is_none_or(|(b, _)| sum > *b) {
            best = Some((sum, idx.to_vec()));
        }
    });
    best.map(|(sum, idx)| (sum, idx.iter().map(|&i| comps[i].0).collect()))
}

/// (largest s-subset exponent sum, number of s-subsets attaining it). With fewer than s
/// components the whole set is the only candidate.
pub fn stage_measure(g: &Monomial, s: usize) -> (u64, u64) {
    let comps = positive(g);
    if comps.len() <= s {
        return (comps.iter().map(|c| c.1).sum(), 1);
    }
    let mut best = (0u64, 0u64);
    for_each_subset(comps.len(), s, &mut |idx| {
        let sum: u64 = idx.iter().map(|&i| comps[i].1).sum();
        if sum > best.0 {
            best = (sum, 1);
        } else if sum == best.0 {
            best.1 += 1;
        }
    });
    best
}

pub(super) fn run_stages(run: &mut Run) -> Result<()> {
    let mark = run.cfg.mark();
    for s in 1..=run.cfg.dim_p() as usize {
        loop {
            let mut pick = None;
            for chart in run.cfg.charts().iter().filter(|c| c.has_support()) {
                let gens = chart.ideal.generators();
                if gens.len() != 1 {
                    return Err(Error::NotMonomial(chart.name.clone()));
                }
                if let Some((_, subset)) = best_subset(&gens[0], s, mark) {
                    pick = Some((
                        chart.name.clone(),
                        chart.p_components.clone(),
                        subset,
                        stage_measure(&gens[0], s),
                    ));
                    break;
                }
            }
            let Some((chart, p_components, subset, before)) = pick else {
                break;
            };
            let mut center = p_components;
            center.extend(subset.iter().copied());
            let record = run.apply(&center)?;
            let after = record
                .replaced
                .iter()
                .find(|o| o.chart == chart)
                .map(|o| {
                    o.children
                        .iter()
                        .filter(|c| !c.p_empty)
                        .map(|c| stage_measure(&c.generators[0], s))
                        .collect()
                })
                .unwrap_or_default();
            run.steps.push(MonomialStep {
                stage: s,
                chart,
                subset,
                before,
                after,
            });
        }
    }
    Ok(())
}
