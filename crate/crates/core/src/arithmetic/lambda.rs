//! Frobenius lifts on monomial algebras, their Rees algebras and Proj charts, and the
//! torsion-freeness test for normal cones.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::poly::{Exponent, IntPoly};
use super::term_ideal::TermIdeal;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime(p: u64) -> Result<u32> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

/// The toric lift: every variable goes to its p-th power, coefficients are kept.
pub fn psi(p: u64, f: &IntPoly) -> Result<IntPoly> {
    Ok(f.scale_exponents(prime(p)?))
}

/// Whether ψ_p(f) and f^p agree modulo p.
pub fn frobenius_lift_check(p: u64, f: &IntPoly) -> Result<bool> {
    let q = prime(p)?;
    let diff = &psi(p, f)? - &f.pow(q);
    Ok(diff.all_coefficients_divisible_by(&BigInt::from(p)))
}

/// Element of the Rees algebra ⊕ I^i t^i, stored by degree in t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesElement {
    pub parts: BTreeMap<u32, IntPoly>,
}

impl ReesElement {
    pub fn new(parts: impl IntoIterator<Item = (u32, IntPoly)>) -> Self {
        ReesElement {
            parts: parts.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        }
    }

    /// Checks that each part of degree i lies in I^i.
    pub fn validate(&self, ideal: &TermIdeal) -> Result<()> {
        for (&i, f) in &self.parts {
            if !ideal.power(i).contains(f) {
                return Err(Error::InvalidElement(i));
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &ReesElement) -> ReesElement {
        let mut parts: BTreeMap<u32, IntPoly> = BTreeMap::new();
        for (&i, f) in &self.parts {
            for (&j, g) in &other.parts {
                let prod = f * g;
                let slot = parts
                    .entry(i + j)
                    .or_insert_with(|| IntPoly::zero(prod.nvars()));
                *slot = &*slot + &prod;
            }
        }
        ReesElement::new(parts)
    }

    pub fn pow(&self, k: u32, nvars: usize) -> ReesElement {
        let mut out = ReesElement::new([(0, IntPoly::one(nvars))]);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The graded lift: part i goes to ψ_p(part) in degree p·i.
    pub fn psi(&self, p: u64) -> Result<ReesElement> {
        let q = prime(p)?;
        let mut parts = Vec::with_capacity(self.parts.len());
        for (&i, f) in &self.parts {
            parts.push((i * q, psi(p, f)?));
        }
        Ok(ReesElement::new(parts))
    }
}

/// Lifts Frobenius to the Rees algebra of I and checks the result: ψ(e) is again graded with
/// parts in the matching powers of I, and ψ(e) − e^p = p·b with every part of b in its power.
pub fn rees_lift_check(p: u64, ideal: &TermIdeal, e: &ReesElement) -> Result<bool> {
    e.validate(ideal)?;
    let q = prime(p)?;
    let image = e.psi(p)?;
    if image.validate(ideal).is_err() {
        return Ok(false);
    }
    let power = e.pow(q, ideal.nvars());
    let degrees: std::collections::BTreeSet<u32> = image
        .parts
        .keys()
        .chain(power.parts.keys())
        .copied()
        .collect();
    let modulus = BigInt::from(p);
    for d in degrees {
        let zero = IntPoly::zero(ideal.nvars());
        let a = image.parts.get(&d).unwrap_or(&zero);
        let b = power.parts.get(&d).unwrap_or(&zero);
        let Some(quotient) = (a - b).div_scalar(&modulus) else {
            return Ok(false);
        };
        if !ideal.power(d).contains(&quotient) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Torsion test for A/I^k: whenever p·f lies in I^k, so must f.
pub fn normal_cone_flat_check(
    ideal: &TermIdeal,
    k_max: u32,
    primes: &[u64],
    samples: &[IntPoly],
) -> bool {
    (1..=k_max).all(|k| {
        let power = ideal.power(k);
        samples.iter().all(|f| {
            primes
                .iter()
                .all(|&p| !power.contains(&f.scale(&BigInt::from(p))) || power.contains(f))
        })
    })
}

/// Cancellation of a variable outside I: x_i·f ∈ I^n implies f ∈ I^n.
pub fn rees_cancellation_check(ideal: &TermIdeal, n: u32, var: usize, f: &IntPoly) -> Result<bool> {
    let x = IntPoly::var(ideal.nvars(), var);
    if ideal.contains(&x) {
        return Err(Error::Precondition(format!("x{var} lies in the ideal")));
    }
    let power = ideal.power(n);
    Ok(!power.contains(&(&x * f)) || power.contains(f))
}

/// Degree-zero element numerator / a^power of the chart ring of a generator a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalElement {
    pub numerator: IntPoly,
    pub power: u32,
}

/// Lift on the chart of generator `a` for the element x/a^n with x ∈ I^n. Returns h with
/// ψ_p(x/a^n) − (x/a^n)^p = p·h, or `None` when no such h has an integral numerator.
pub fn proj_chart_lift(
    p: u64,
    ideal: &TermIdeal,
    a: &Exponent,
    x: &IntPoly,
    n: u32,
) -> Result<Option<LocalElement>> {
    if !ideal
        .generators()
        .any(|(g, c)| g == a && c == &BigInt::from(1))
    {
        return Err(Error::Precondition(
            "chart generator is not a monomial generator of the ideal".into(),
        ));
    }
    if !ideal.power(n).contains(x) {
        return Err(Error::InvalidSample);
    }
    let q = prime(p)?;
    // Both ψ_p(a^n) and (a^n)^p equal a^{pn}, so the difference shares that denominator.
    let diff = &psi(p, x)? - &x.pow(q);
    Ok(diff
        .div_scalar(&BigInt::from(p))
        .map(|numerator| LocalElement {
            numerator,
            power: q * n,
        }))
}

/// The chart lift exists and h is of degree zero, i.e. its numerator lies in I^{pn}.
pub fn proj_chart_frobenius_check(
    p: u64,
    ideal: &TermIdeal,
    a: &Exponent,
    x: &IntPoly,
    n: u32,
) -> Result<bool> {
    Ok(match proj_chart_lift(p, ideal, a, x, n)? {
        Some(h) => ideal.power(h.power).contains(&h.numerator),
        None => false,
    })
}
