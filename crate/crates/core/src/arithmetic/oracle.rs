//! Brute-force recomputation of transforms and orders with explicit polynomials.

use std::collections::BTreeSet;

use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::model::{Chart, ComponentId, Monomial};
use crate::transform::transform_generator;

/// Polynomial in the variables `vars`, one per listed component.
pub fn monomial_to_poly(g: &Monomial, vars: &[ComponentId]) -> Result<IntPoly> {
    let mut exps = vec![0u32; vars.len()];
    for (id, e) in g.iter() {
        let slot = vars
            .iter()
            .position(|&v| v == id)
            .ok_or_else(|| Error::Precondition(format!("component {id} has no variable")))?;
        exps[slot] = u32::try_from(e).map_err(|_| Error::Overflow("oracle exponent"))?;
    }
    Ok(IntPoly::monomial(&exps))
}

pub fn poly_to_monomial(f: &IntPoly, vars: &[ComponentId]) -> Option<Monomial> {
    let e = f.as_monomial()?;
    Some(Monomial::from_pairs(
        vars.iter().zip(&e.0).map(|(&id, &k)| (id, k as u64)),
    ))
}

fn slot(vars: &[ComponentId], id: ComponentId) -> Result<usize> {
    vars.iter()
        .position(|&v| v == id)
        .ok_or_else(|| Error::Precondition(format!("component {id} has no variable")))
}

/// Substitutes x_t → x̄_k·x̄_t for t in the centre other than k and divides by x̄_k^m. The new
/// coordinate x̄_k keeps the slot of x_k.
pub fn oracle_transform(
    gens: &[IntPoly],
    vars: &[ComponentId],
    center: &BTreeSet<ComponentId>,
    chart_var: ComponentId,
    mark: u64,
) -> Result<Vec<IntPoly>> {
    if !center.contains(&chart_var) {
        return Err(Error::Precondition(
            "chart variable outside the centre".into(),
        ));
    }
    let k = slot(vars, chart_var)?;
    let n = vars.len();
    let mut images = Vec::with_capacity(n);
    for (i, id) in vars.iter().enumerate() {
        let x = IntPoly::var(n, i);
        images.push(if i != k && center.contains(id) {
            &x * &IntPoly::var(n, k)
        } else {
            x
        });
    }
    for id in center {
        slot(vars, *id)?;
    }
    let m = u32::try_from(mark).map_err(|_| Error::Overflow("oracle mark"))?;
    gens.iter()
        .map(|g| {
            let pulled = g.substitute(&images);
            pulled.div_var_power(k, m).ok_or_else(|| {
                let degree = pulled
                    .terms()
                    .map(|(e, _)| e.0[k] as u64)
                    .min()
                    .unwrap_or(0);
                Error::NonPermissibleTransform { degree, mark }
            })
        })
        .collect()
}

/// Reads an exponent-arithmetic transform in the oracle's coordinates: the exceptional
/// component takes the chart variable's slot.
pub fn relabel_exceptional(
    g: &Monomial,
    chart_var: ComponentId,
    exceptional: ComponentId,
) -> Monomial {
    let e = g.exponent(exceptional);
    Monomial::from_pairs(
        g.iter()
            .filter(|&(id, _)| id != exceptional)
            .chain([(chart_var, e)]),
    )
}

/// Compares exponent arithmetic with the oracle on one generator and every chart of a centre.
pub fn oracle_agrees(g: &Monomial, center: &BTreeSet<ComponentId>, mark: u64) -> Result<bool> {
    let vars: Vec<ComponentId> = g.support().union(center).copied().collect();
    let exceptional = ComponentId(vars.iter().map(|v| v.0).max().unwrap_or(0) + 1);
    let poly = monomial_to_poly(g, &vars)?;
    for &k in center {
        let ours = transform_generator(g, center, k, exceptional, mark)?;
        let ours = monomial_to_poly(&relabel_exceptional(&ours, k, exceptional), &vars)?;
        let theirs = oracle_transform(std::slice::from_ref(&poly), &vars, center, k, mark)?;
        if theirs != [ours] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recomputes the order at a stratum from the generators reduced mod p (p = 0: over ℚ) and,
/// when a centre is given, replays that blow-up on the reduced generators and compares each
/// child with the exponent-arithmetic transform.
pub fn fiber_order_check(
    chart: &Chart,
    vanishing: &BTreeSet<ComponentId>,
    p: u64,
    center: Option<&BTreeSet<ComponentId>>,
) -> Result<bool> {
    let vars: Vec<ComponentId> = chart.e_components.iter().copied().collect();
    let reduced = chart
        .ideal
        .generators()
        .iter()
        .map(|g| Ok(monomial_to_poly(g, &vars)?.reduce_mod(p)))
        .collect::<Result<Vec<_>>>()?;
    let mask: Vec<bool> = vars.iter().map(|v| vanishing.contains(v)).collect();
    let fiber_order = reduced
        .iter()
        .filter_map(|f| f.order_over(&mask))
        .min()
        .unwrap_or(u64::MAX);
    if fiber_order != chart.order_at(vanishing)? {
        return Ok(false);
    }
    let Some(center) = center else {
        return Ok(true);
    };
    let mark = chart.mark();
    let exceptional = ComponentId(vars.iter().map(|v| v.0).max().unwrap_or(0) + 1);
    for &k in center {
        let fiber = oracle_transform(&reduced, &vars, center, k, mark)?;
        for (g, f) in chart.ideal.generators().iter().zip(&fiber) {
            let ours = transform_generator(g, center, k, exceptional, mark)?;
            let ours = monomial_to_poly(&relabel_exceptional(&ours, k, exceptional), &vars)?;
            if ours.reduce_mod(p) != f.reduce_mod(p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_generator_of_worked_example() {
        // x, y, u, v
        let vars: Vec<ComponentId> = (0..4).map(ComponentId).collect();
        let center: BTreeSet<ComponentId> = vars.iter().copied().collect();
        let g = IntPoly::monomial(&[2, 0, 0, 6]);
        let out = oracle_transform(&[g], &vars, &center, ComponentId(3), 5).unwrap();
        assert_eq!(out, vec![IntPoly::monomial(&[2, 0, 0, 3])]);
    }

    #[test]
    fn single_variable_goes_to_one() {
        let vars = [ComponentId(0)];
        let center: BTreeSet<ComponentId> = vars.iter().copied().collect();
        let out =
            oracle_transform(&[IntPoly::var(1, 0)], &vars, &center, ComponentId(0), 1).unwrap();
        assert_eq!(out, vec![IntPoly::one(1)]);
    }

    #[test]
    fn low_degree_is_rejected() {
        let vars = [ComponentId(0), ComponentId(1)];
        let center: BTreeSet<ComponentId> = vars.iter().copied().collect();
        let err = oracle_transform(
            &[IntPoly::monomial(&[1, 0])],
            &vars,
            &center,
            ComponentId(1),
            2,
        );
        assert!(matches!(err, Err(Error::NonPermissibleTransform { .. })));
    }
}
