use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use super::monomial::{minimalize, ComponentId, Monomial};
use crate::error::{Error, Result};

/// A monomial ideal with a positive mark, kept on its minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MarkedIdeal {
    generators: Vec<Monomial>,
    mark: u64,
}

impl MarkedIdeal {
    pub fn new(generators: Vec<Monomial>, mark: u64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        if mark == 0 {
            return Err(Error::ZeroMark);
        }
        Ok(MarkedIdeal {
            generators: minimalize(generators),
            mark,
        })
    }

    pub fn unit(mark: u64) -> Result<Self> {
        Self::new(vec![Monomial::unit()], mark)
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn mark(&self) -> u64 {
        self.mark
    }

    pub fn with_mark(&self, mark: u64) -> Result<Self> {
        Self::new(self.generators.clone(), mark)
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_unit()
    }

    /// Minimum over generators of the exponent sum on `vanishing`.
    pub fn order_on(&self, vanishing: &BTreeSet<ComponentId>) -> u64 {
        self.generators
            .iter()
            .map(|g| g.degree_over(vanishing))
            .min()
            .unwrap_or(0)
    }

    /// Components occurring in some generator.
    pub fn support(&self) -> BTreeSet<ComponentId> {
        self.generators.iter().flat_map(|g| g.support()).collect()
    }

    /// The ideal power I^k generated by all k-fold products of generators.
    pub fn ideal_power(generators: &[Monomial], k: u64) -> Result<Vec<Monomial>> {
        if k == 0 {
            return Ok(vec![Monomial::unit()]);
        }
        if generators.len() == 1 {
            return Ok(vec![generators[0].pow(k)?]);
        }
        let mut result = vec![Monomial::unit()];
        let mut base = generators.to_vec();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = product(&result, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = product(&base, &base)?;
            }
        }
        Ok(result)
    }
}

fn product(a: &[Monomial], b: &[Monomial]) -> Result<Vec<Monomial>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y)?);
        }
    }
    Ok(minimalize(out))
}

/// Sum of marked ideals: each I_i is raised to the product of the other marks and the
/// result is marked by the product of all marks.
pub fn sum_marked(ideals: &[MarkedIdeal]) -> Result<MarkedIdeal> {
    if ideals.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let total = ideals.iter().try_fold(1u64, |acc, i| {
        acc.checked_mul(i.mark).ok_or(Error::Overflow("sum mark"))
    })?;
    let mut gens = Vec::new();
    for ideal in ideals {
        let cofactor = total / ideal.mark;
        gens.extend(MarkedIdeal::ideal_power(&ideal.generators, cofactor)?);
    }
    MarkedIdeal::new(gens, total)
}

/// A marked ideal with the same support as `sum_marked`, also after any common sequence of
/// permissible blow-ups, but far smaller: the mark is the lcm of the marks, each generator is
/// powered individually instead of forming all products, and a common factor of mark and
/// exponents is divided out.
pub fn sum_marked_compact(summands: &[(Vec<Monomial>, u64)]) -> Result<MarkedIdeal> {
    if summands.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let mut lcm = 1u64;
    for (_, mark) in summands {
        if *mark == 0 {
            return Err(Error::ZeroMark);
        }
        let g = lcm.gcd(mark);
        lcm = (lcm / g)
            .checked_mul(*mark)
            .ok_or(Error::Overflow("sum mark"))?;
    }
    let mut gens = Vec::new();
    for (summand, mark) in summands {
        let factor = lcm / mark;
        for g in summand {
            gens.push(g.pow(factor)?);
        }
    }
    let gens = minimalize(gens);
    let common = gens
        .iter()
        .flat_map(|g| g.iter().map(|(_, e)| e))
        .fold(lcm, |acc, e| acc.gcd(&e));
    let gens = gens.iter().map(|g| g.scale_down(common)).collect();
    MarkedIdeal::new(gens, lcm / common)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u32, u64)]) -> Monomial {
        pairs.iter().map(|&(i, e)| (ComponentId(i), e)).collect()
    }

    #[test]
    fn power_of_two_generators() {
        let gens = vec![m(&[(0, 1)]), m(&[(1, 1)])];
        let sq = MarkedIdeal::ideal_power(&gens, 2).unwrap();
        let mut expected = vec![m(&[(0, 1), (1, 1)]), m(&[(0, 2)]), m(&[(1, 2)])];
        expected.sort();
        assert_eq!(sq, expected);
    }

    #[test]
    fn compact_sum_normalizes_common_factor() {
        let s = sum_marked_compact(&[(vec![m(&[(0, 4)])], 2), (vec![m(&[(1, 6)])], 2)]).unwrap();
        assert_eq!(s.mark(), 1);
        assert_eq!(s.generators(), &[m(&[(0, 2)]), m(&[(1, 3)])]);
    }

    #[test]
    fn sum_mark_overflow() {
        let big = MarkedIdeal::new(vec![m(&[(0, 1)])], u64::MAX / 2).unwrap();
        assert_eq!(
            sum_marked(&[big.clone(), big]),
            Err(Error::Overflow("sum mark"))
        );
    }
}
