use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index into the global component registry. Registry order is the total order on components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentId(pub u32);

impl ComponentId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A product of divisor components with positive exponents. The empty product is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: BTreeMap<ComponentId, u64>,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Builds a monomial, dropping zero exponents and adding up repeated ids.
    pub fn from_pairs<I: IntoIterator<Item = (ComponentId, u64)>>(pairs: I) -> Self {
        let mut exps = BTreeMap::new();
        for (id, e) in pairs {
            if e > 0 {
                *exps.entry(id).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, id: ComponentId) -> u64 {
        self.exps.get(&id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ComponentId, u64)> + '_ {
        self.exps.iter().map(|(&id, &e)| (id, e))
    }

    pub fn support(&self) -> BTreeSet<ComponentId> {
        self.exps.keys().copied().collect()
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.exps
            .values()
            .fold(0u64, |acc, &e| acc.saturating_add(e))
    }

    /// Sum of exponents over the ids in `set`.
    pub fn degree_over(&self, set: &BTreeSet<ComponentId>) -> u64 {
        self.exps
            .iter()
            .filter(|(id, _)| set.contains(id))
            .fold(0u64, |acc, (_, &e)| acc.saturating_add(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(id, &e)| other.exponent(*id) >= e)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for (&id, &e) in &other.exps {
            let slot = exps.entry(id).or_insert(0);
            *slot = slot
                .checked_add(e)
                .ok_or(Error::Overflow("monomial product"))?;
        }
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        if k == 0 {
            return Ok(Monomial::unit());
        }
        let mut exps = BTreeMap::new();
        for (&id, &e) in &self.exps {
            exps.insert(
                id,
                e.checked_mul(k).ok_or(Error::Overflow("monomial power"))?,
            );
        }
        Ok(Monomial { exps })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(
            self.exps
                .iter()
                .map(|(&id, &e)| (id, e.min(other.exponent(id)))),
        )
    }

    /// Exact quotient; `divisor` must divide `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        debug_assert!(divisor.divides(self));
        Monomial::from_pairs(
            self.exps
                .iter()
                .map(|(&id, &e)| (id, e - divisor.exponent(id))),
        )
    }

    /// Splits into the part supported on `set` and the rest.
    pub fn split_by(&self, set: &BTreeSet<ComponentId>) -> (Monomial, Monomial) {
        let inside = Monomial::from_pairs(self.iter().filter(|(id, _)| set.contains(id)));
        let outside = Monomial::from_pairs(self.iter().filter(|(id, _)| !set.contains(id)));
        (inside, outside)
    }

    /// Divides every exponent by `d`; caller guarantees exactness.
    pub(crate) fn scale_down(&self, d: u64) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(id, e)| (id, e / d)))
    }

    pub(crate) fn with_exponent(&self, id: ComponentId, e: u64) -> Monomial {
        let mut exps = self.exps.clone();
        if e == 0 {
            exps.remove(&id);
        } else {
            exps.insert(id, e);
        }
        Monomial { exps }
    }
}

impl FromIterator<(ComponentId, u64)> for Monomial {
    fn from_iter<I: IntoIterator<Item = (ComponentId, u64)>>(iter: I) -> Self {
        Monomial::from_pairs(iter)
    }
}

/// Keeps only generators not divisible by another one, deduplicated and sorted.
pub fn minimalize(gens: Vec<Monomial>) -> Vec<Monomial> {
    let mut gens = gens;
    gens.sort_by_key(|g| g.degree());
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}
