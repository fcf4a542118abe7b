use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::poly::{Exponent, IntPoly};

/// Ideal of ℤ[x_1..x_n] generated by terms c·x^a. Such ideals are multigraded, so a polynomial
/// belongs to one exactly when each of its terms does, and c·x^b belongs exactly when c is a
/// multiple of the gcd of the generator coefficients whose exponents divide b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermIdeal {
    nvars: usize,
    /// Exponent to gcd of the coefficients of generators with that exponent.
    gens: BTreeMap<Exponent, BigInt>,
}

impl TermIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut ideal = TermIdeal {
            nvars,
            gens: BTreeMap::new(),
        };
        for (e, c) in gens {
            ideal.insert(e, c);
        }
        ideal
    }

    /// Ideal generated by monomials with coefficient 1.
    pub fn monomial(nvars: usize, exps: &[Vec<u32>]) -> Self {
        Self::new(
            nvars,
            exps.iter().map(|e| (Exponent(e.clone()), BigInt::from(1))),
        )
    }

    /// Ideal generated by the given variables.
    pub fn variables(nvars: usize, vars: &[usize]) -> Self {
        let exps: Vec<Vec<u32>> = vars
            .iter()
            .map(|&i| {
                let mut e = vec![0; nvars];
                e[i] = 1;
                e
            })
            .collect();
        Self::monomial(nvars, &exps)
    }

    fn insert(&mut self, e: Exponent, c: BigInt) {
        assert_eq!(
            e.0.len(),
            self.nvars,
            "exponent length must match variable count"
        );
        if c.is_zero() {
            return;
        }
        let slot = self.gens.entry(e).or_insert_with(BigInt::zero);
        *slot = slot.gcd(&c);
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.gens.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.values().all(|c| c == &BigInt::from(1))
    }

    pub fn contains_term(&self, e: &Exponent, c: &BigInt) -> bool {
        if c.is_zero() {
            return true;
        }
        let g = self
            .gens
            .iter()
            .filter(|(a, _)| a.divides(e))
            .fold(BigInt::zero(), |acc, (_, k)| acc.gcd(k));
        !g.is_zero() && c.is_multiple_of(&g)
    }

    pub fn contains(&self, f: &IntPoly) -> bool {
        f.terms().all(|(e, c)| self.contains_term(e, c))
    }

    /// The k-th power, generated by all k-fold products of generators.
    pub fn power(&self, k: u32) -> TermIdeal {
        let mut result =
            TermIdeal::new(self.nvars, [(Exponent::zero(self.nvars), BigInt::from(1))]);
        for _ in 0..k {
            let mut next = TermIdeal::new(self.nvars, []);
            for (a, x) in &result.gens {
                for (b, y) in &self.gens {
                    let e = Exponent(a.0.iter().zip(&b.0).map(|(p, q)| p + q).collect());
                    next.insert(e, x * y);
                }
            }
            result = next;
        }
        result
    }
}
