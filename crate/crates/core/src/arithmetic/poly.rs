use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in a fixed number of variables with arbitrary-precision integer coefficients.
/// No zero coefficient is ever stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, Exponent::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, Exponent(e), 1)
    }

    pub fn term(nvars: usize, exp: Exponent, c: impl Into<BigInt>) -> Self {
        assert_eq!(
            exp.0.len(),
            nvars,
            "exponent length must match variable count"
        );
        let mut p = Self::zero(nvars);
        p.add_term(exp, c.into());
        p
    }

    pub fn monomial(exps: &[u32]) -> Self {
        Self::term(exps.len(), Exponent(exps.to_vec()), 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut result = IntPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies every exponent by `p`, keeping coefficients.
    pub fn scale_exponents(&self, p: u32) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(Exponent(e.0.iter().map(|x| x * p).collect()), c.clone());
        }
        out
    }

    pub fn all_coefficients_divisible_by(&self, p: &BigInt) -> bool {
        self.terms.values().all(|c| c.is_multiple_of(p))
    }

    /// Exact division of every coefficient, if possible.
    pub fn div_scalar(&self, p: &BigInt) -> Option<IntPoly> {
        if !self.all_coefficients_divisible_by(p) {
            return None;
        }
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c / p);
        }
        Some(out)
    }

    /// Coefficients reduced into [0, p); `p = 0` leaves the polynomial unchanged.
    pub fn reduce_mod(&self, p: u64) -> IntPoly {
        if p == 0 {
            return self.clone();
        }
        let p = BigInt::from(p);
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mod_floor(&p));
        }
        out
    }

    /// Exact division by `x_i^k`, if every term is divisible.
    pub fn div_var_power(&self, i: usize, k: u32) -> Option<IntPoly> {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.0[i] < k {
                return None;
            }
            let mut v = e.0.clone();
            v[i] -= k;
            out.add_term(Exponent(v), c.clone());
        }
        Some(out)
    }

    /// Ring homomorphism sending variable i to `images[i]`.
    pub fn substitute(&self, images: &[IntPoly]) -> IntPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = IntPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = IntPoly::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = &t * &images[i].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Smallest exponent sum over the variables flagged in `mask` among the terms.
    pub fn order_over(&self, mask: &[bool]) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| {
                e.0.iter()
                    .zip(mask)
                    .filter(|(_, &m)| m)
                    .map(|(&x, _)| x as u64)
                    .sum()
            })
            .min()
    }

    /// The exponent vector of a single-term polynomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Exponent> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && c.is_one() => Some(e),
            _ => None,
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = IntPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.add(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{k}")
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
