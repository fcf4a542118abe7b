use std::collections::BTreeSet;

use super::split::{mn_split, ZwSplit};
use crate::error::{Error, Result};
use crate::model::{sum_marked, sum_marked_compact, Chart, ComponentId, MarkedIdeal, Monomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Companion {
    /// Components cutting out Y inside the ambient space: the P components and the z-variables.
    pub y_components: BTreeSet<ComponentId>,
    /// `None` when every generator has z-degree at least the mark.
    pub ideal: Option<MarkedIdeal>,
}

/// The lower-dimensional companion on Y: the sum of (w-part, mark - z-degree) over the
/// generators whose z-degree falls short of the mark.
pub fn companion_c(chart: &Chart, split: &ZwSplit) -> Result<Companion> {
    companion_with(chart, split, |summands| {
        let ideals = summands
            .into_iter()
            .map(|(gens, m)| MarkedIdeal::new(gens, m))
            .collect::<Result<Vec<_>>>()?;
        sum_marked(&ideals)
    })
}

/// Support-equivalent form of `companion_c`: summands are combined with the lcm of their marks
/// and one power per generator, then divided by any common factor of mark and exponents.
pub(crate) fn companion_c_compact(chart: &Chart, split: &ZwSplit) -> Result<Companion> {
    companion_with(chart, split, |summands| sum_marked_compact(&summands))
}

fn companion_with<F>(chart: &Chart, split: &ZwSplit, combine: F) -> Result<Companion>
where
    F: FnOnce(Vec<(Vec<Monomial>, u64)>) -> Result<MarkedIdeal>,
{
    let mark = chart.mark();
    let mut y_components = chart.p_components.clone();
    y_components.extend(split.z_vars.iter().copied());
    let summands: Vec<(Vec<Monomial>, u64)> = split
        .parts
        .iter()
        .filter(|(z, _)| z.degree() < mark)
        .map(|(z, w)| (vec![w.clone()], mark - z.degree()))
        .collect();
    let ideal = if summands.is_empty() {
        None
    } else {
        Some(combine(summands)?)
    };
    Ok(Companion {
        y_components,
        ideal,
    })
}

fn check_weight(chart: &Chart, nu: u64) -> Result<()> {
    let mark = chart.mark();
    if nu == 0 || nu >= mark {
        return Err(Error::CompanionRange { nu, mark });
    }
    Ok(())
}

/// (N, nu) + (M, m - nu) formed with full ideal powers, marked nu(m - nu).
pub fn companion_g(chart: &Chart, nu: u64) -> Result<MarkedIdeal> {
    check_weight(chart, nu)?;
    let split = mn_split(chart);
    let monomial = MarkedIdeal::new(vec![split.monomial_part], chart.mark() - nu)?;
    sum_marked(&[split.nonmonomial_part.with_mark(nu)?, monomial])
}

/// Support-equivalent form of `companion_g` with one power per generator.
pub(crate) fn companion_g_compact(chart: &Chart, nu: u64) -> Result<MarkedIdeal> {
    check_weight(chart, nu)?;
    let split = mn_split(chart);
    sum_marked_compact(&[
        (split.nonmonomial_part.generators().to_vec(), nu),
        (vec![split.monomial_part], chart.mark() - nu),
    ])
}

/// Exponent vectors of all formal derivatives of order at most `r`, coefficients dropped.
pub fn monomial_derivative(generators: &[Monomial], r: u64) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    for g in generators {
        let pairs: Vec<(ComponentId, u64)> = g.iter().collect();
        lower(&pairs, 0, r, &mut Vec::new(), &mut out);
    }
    out.into_iter().collect()
}

fn lower(
    pairs: &[(ComponentId, u64)],
    i: usize,
    budget: u64,
    acc: &mut Vec<(ComponentId, u64)>,
    out: &mut BTreeSet<Monomial>,
) {
    if i == pairs.len() {
        out.insert(Monomial::from_pairs(acc.iter().copied()));
        return;
    }
    let (id, e) = pairs[i];
    for drop in 0..=e.min(budget) {
        acc.push((id, e - drop));
        lower(pairs, i + 1, budget - drop, acc, out);
        acc.pop();
    }
}
