//! Seeded random polynomials, monomials and configurations for the property checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Exponent, IntPoly};
use crate::error::Result;
use crate::model::{Chart, ComponentId, Configuration, MarkedIdeal, Monomial};

/// Sample sizes and bounds for randomized checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleBounds {
    pub samples: usize,
    pub max_degree: u32,
    pub max_exponent: u64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            samples: 100,
            max_degree: 5,
            max_exponent: 8,
        }
    }
}

/// Bounds for random configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigBounds {
    pub max_components: usize,
    pub max_exponent: u64,
    pub max_mark: u64,
    pub max_dim_p: u32,
    pub max_generators: usize,
}

impl Default for ConfigBounds {
    fn default() -> Self {
        ConfigBounds {
            max_components: 4,
            max_exponent: 6,
            max_mark: 6,
            max_dim_p: 3,
            max_generators: 3,
        }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Exponent vector of total degree at most `max_degree`.
    pub fn exponent(&mut self, nvars: usize, max_degree: u32) -> Exponent {
        let target = self.rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; nvars];
        if nvars > 0 {
            for _ in 0..target {
                e[self.rng.gen_range(0..nvars)] += 1;
            }
        }
        Exponent(e)
    }

    /// Up to six terms with coefficients in [-20, 20].
    pub fn poly(&mut self, nvars: usize, max_degree: u32) -> IntPoly {
        let terms = self.rng.gen_range(1..=6);
        let mut f = IntPoly::zero(nvars);
        for _ in 0..terms {
            let e = self.exponent(nvars, max_degree);
            let c: i64 = self.rng.gen_range(-20..=20);
            f = &f + &IntPoly::term(nvars, e, c);
        }
        f
    }

    pub fn monomial(&mut self, ids: &[ComponentId], max_exponent: u64) -> Monomial {
        Monomial::from_pairs(
            ids.iter()
                .map(|&id| (id, self.rng.gen_range(0..=max_exponent)))
                .collect::<Vec<_>>(),
        )
    }

    /// Non-empty subset of `ids`.
    pub fn subset(&mut self, ids: &[ComponentId]) -> BTreeSet<ComponentId> {
        loop {
            let s: BTreeSet<ComponentId> = ids
                .iter()
                .copied()
                .filter(|_| self.rng.gen_bool(0.5))
                .collect();
            if !s.is_empty() {
                return s;
            }
        }
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> Option<&'a T> {
        items.choose(&mut self.rng)
    }

    /// A monomial together with a centre and a mark the centre degree reaches.
    pub fn transform_instance(
        &mut self,
        nvars: usize,
        max_exponent: u64,
    ) -> (Monomial, BTreeSet<ComponentId>, u64) {
        let ids: Vec<ComponentId> = (0..nvars as u32).map(ComponentId).collect();
        loop {
            let g = self.monomial(&ids, max_exponent);
            let center = self.subset(&ids);
            let degree = g.degree_over(&center);
            if degree > 0 {
                let mark = self.rng.gen_range(1..=degree);
                return (g, center, mark);
            }
        }
    }

    /// Single-chart configuration named "root" over components c0, c1, ... The first
    /// components cut out P so that the free ones never outnumber dim_p.
    pub fn config(&mut self, bounds: &ConfigBounds) -> Result<Configuration> {
        let dim_p = self.rng.gen_range(1..=bounds.max_dim_p);
        let n = self.rng.gen_range(1..=bounds.max_components);
        let in_p = n.saturating_sub(dim_p as usize);
        let ids: Vec<ComponentId> = (0..n as u32).map(ComponentId).collect();
        let free = &ids[in_p..];
        let count = self.rng.gen_range(1..=bounds.max_generators);
        let mut gens = Vec::with_capacity(count);
        while gens.len() < count {
            let g = self.monomial(free, bounds.max_exponent);
            if !g.is_unit() {
                gens.push(g);
            }
        }
        let mark = self.rng.gen_range(1..=bounds.max_mark);
        let chart = Chart::root(
            "root",
            ids.iter().copied().collect(),
            Vec::new(),
            ids[..in_p].iter().copied().collect(),
            MarkedIdeal::new(gens, mark)?,
        );
        let registry = (0..n).map(|i| format!("c{i}")).collect();
        Configuration::new(registry, vec![chart], dim_p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_samples() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..10 {
            assert_eq!(a.poly(3, 5), b.poly(3, 5));
        }
        let bounds = ConfigBounds::default();
        assert_eq!(a.config(&bounds).unwrap(), b.config(&bounds).unwrap());
    }

    #[test]
    fn configs_respect_dimension() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let cfg = s.config(&ConfigBounds::default()).unwrap();
            let chart = &cfg.charts()[0];
            assert!(chart.free_components().len() <= cfg.dim_p() as usize);
        }
    }
}
