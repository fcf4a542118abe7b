//! Named randomized checks behind `check-lambda`, each seeded on its own.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use super::lambda::{
    frobenius_lift_check, normal_cone_flat_check, proj_chart_frobenius_check, psi,
    rees_cancellation_check, rees_lift_check, ReesElement,
};
use super::oracle::{fiber_order_check, oracle_agrees};
use super::poly::{Exponent, IntPoly};
use super::sample::{SampleBounds, Sampler};
use super::term_ideal::TermIdeal;
use crate::error::Result;
use crate::model::{Chart, ComponentId, MarkedIdeal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSettings {
    pub primes: Vec<u64>,
    pub seed: u64,
    pub bounds: SampleBounds,
}

impl Default for CheckSettings {
    fn default() -> Self {
        CheckSettings {
            primes: vec![2, 3, 5],
            seed: 0,
            bounds: SampleBounds::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

/// Counts cases and remembers the first failing one.
#[derive(Debug, Default)]
pub struct Tally {
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

pub trait LambdaCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, settings: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally)
        -> Result<()>;
}

type CheckFn = fn(&CheckSettings, &mut Sampler, &mut Tally) -> Result<()>;

struct FnCheck {
    name: &'static str,
    description: &'static str,
    body: CheckFn,
}

impl LambdaCheck for FnCheck {
    fn name(&self) -> &'static str {
        self.name
    }
    fn description(&self) -> &'static str {
        self.description
    }
    fn run(
        &self,
        settings: &CheckSettings,
        sampler: &mut Sampler,
        tally: &mut Tally,
    ) -> Result<()> {
        (self.body)(settings, sampler, tally)
    }
}

pub struct CheckRegistry {
    checks: Vec<Box<dyn LambdaCheck>>,
}

impl CheckRegistry {
    pub fn empty() -> Self {
        CheckRegistry { checks: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        let table: [(&'static str, &'static str, CheckFn); 8] = [
            (
                "frobenius-lift",
                "psi_p(f) agrees with f^p mod p",
                frobenius_lift,
            ),
            ("psi-commute", "psi_p and psi_q commute", psi_commute),
            (
                "rees-lift",
                "graded lift on Rees algebras of monomial ideals",
                rees_lift,
            ),
            (
                "normal-cone",
                "p*f in I^k forces f in I^k; fails for (p, x)",
                normal_cone,
            ),
            (
                "rees-cancellation",
                "x_i*f in I^n with x_i outside I forces f in I^n",
                rees_cancellation,
            ),
            (
                "proj-chart",
                "lift on the affine charts of Proj of a Rees algebra",
                proj_chart,
            ),
            (
                "oracle-transform",
                "exponent transform equals polynomial substitution",
                oracle_transform,
            ),
            (
                "fiber-order",
                "orders and one blow-up agree on fibres mod p",
                fiber_order,
            ),
        ];
        for (name, description, body) in table {
            r.register(Box::new(FnCheck {
                name,
                description,
                body,
            }));
        }
        r
    }

    pub fn register(&mut self, check: Box<dyn LambdaCheck>) {
        self.checks.push(check);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn LambdaCheck> {
        self.checks.iter().find(|c| c.name() == name).map(|c| &**c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn LambdaCheck> {
        self.checks.iter().map(|c| &**c)
    }

    /// Runs one check with a sampler derived from the seed and the check name, so results do
    /// not depend on which other checks run.
    pub fn run_one(
        &self,
        check: &dyn LambdaCheck,
        settings: &CheckSettings,
    ) -> Result<CheckReport> {
        let mut sampler = Sampler::new(settings.seed ^ name_hash(check.name()));
        let mut tally = Tally::default();
        check.run(settings, &mut sampler, &mut tally)?;
        Ok(CheckReport {
            name: check.name().to_string(),
            cases: tally.cases,
            failures: tally.failures,
            first_failure: tally.first_failure,
        })
    }

    pub fn run_all(&self, settings: &CheckSettings) -> Result<Vec<CheckReport>> {
        self.iter().map(|c| self.run_one(c, settings)).collect()
    }
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn frobenius_lift(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    for _ in 0..s.bounds.samples {
        let f = sampler.poly(3, s.bounds.max_degree);
        for &p in &s.primes {
            tally.record(frobenius_lift_check(p, &f)?, || format!("p={p}, f={f}"));
        }
    }
    Ok(())
}

fn psi_commute(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    for _ in 0..s.bounds.samples {
        let f = sampler.poly(3, s.bounds.max_degree);
        for &p in &s.primes {
            for &q in &s.primes {
                let ok = psi(p, &psi(q, &f)?)? == psi(q, &psi(p, &f)?)?;
                tally.record(ok, || format!("p={p}, q={q}, f={f}"));
            }
        }
    }
    Ok(())
}

/// Monomial ideal with one to three generators of degree one to two.
fn small_monomial_ideal(sampler: &mut Sampler, nvars: usize) -> (TermIdeal, Vec<Exponent>) {
    let count = sampler.rng().gen_range(1..=3);
    let mut gens = Vec::new();
    while gens.len() < count {
        let e = sampler.exponent(nvars, 2);
        if e.degree() > 0 && !gens.contains(&e) {
            gens.push(e);
        }
    }
    let ideal = TermIdeal::monomial(nvars, &gens.iter().map(|e| e.0.clone()).collect::<Vec<_>>());
    (ideal, gens)
}

/// A random element of I^n: a sum of products of n generators with small polynomials.
fn element_of_power(sampler: &mut Sampler, gens: &[Exponent], nvars: usize, n: u32) -> IntPoly {
    let mut out = IntPoly::zero(nvars);
    for _ in 0..sampler.rng().gen_range(1..=2) {
        let mut t = sampler.poly(nvars, 1);
        for _ in 0..n {
            let g = sampler.choose(gens).expect("ideal has generators").clone();
            t = &t * &IntPoly::term(nvars, g, 1);
        }
        out = &out + &t;
    }
    out
}

fn rees_lift(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    for _ in 0..s.bounds.samples {
        let (ideal, gens) = small_monomial_ideal(sampler, 2);
        let top = sampler.rng().gen_range(0..=1);
        let e = ReesElement::new((0..=top).map(|i| (i, element_of_power(sampler, &gens, 2, i))));
        for &p in &s.primes {
            tally.record(rees_lift_check(p, &ideal, &e)?, || {
                format!("p={p}, ideal={gens:?}, element={:?}", e.parts)
            });
        }
    }
    Ok(())
}

fn normal_cone(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    for _ in 0..s.bounds.samples {
        let vars: Vec<usize> = (0..3).filter(|_| sampler.rng().gen_bool(0.5)).collect();
        let ideal = TermIdeal::variables(3, &vars);
        let samples: Vec<IntPoly> = (0..4)
            .map(|_| sampler.poly(3, s.bounds.max_degree))
            .collect();
        tally.record(
            normal_cone_flat_check(&ideal, 4, &s.primes, &samples),
            || format!("variables {vars:?} reported torsion"),
        );
    }
    // (p, x) in Z[x]: p*x lies in the square (p^2, p*x, x^2) while x does not.
    for &p in &s.primes {
        let ideal = TermIdeal::new(
            1,
            [
                (Exponent(vec![0]), BigInt::from(p)),
                (Exponent(vec![1]), BigInt::from(1)),
            ],
        );
        let flat = normal_cone_flat_check(&ideal, 2, &[p], &[IntPoly::var(1, 0)]);
        tally.record(!flat, || format!("({p}, x) reported flat"));
    }
    Ok(())
}

fn rees_cancellation(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    let ids: Vec<ComponentId> = (0..3).map(ComponentId).collect();
    for _ in 0..s.bounds.samples {
        let outside = sampler.rng().gen_range(0..3);
        let vars: Vec<usize> = (0..3)
            .filter(|&i| i != outside && sampler.rng().gen_bool(0.6))
            .collect();
        if vars.is_empty() {
            continue;
        }
        let ideal = TermIdeal::variables(3, &vars);
        let n = sampler.rng().gen_range(1..=3);
        let g = sampler.monomial(&ids, 4);
        let exps: Vec<u32> = ids.iter().map(|&id| g.exponent(id) as u32).collect();
        let f = IntPoly::monomial(&exps);
        tally.record(rees_cancellation_check(&ideal, n, outside, &f)?, || {
            format!("I=vars {vars:?}, n={n}, x{outside}, f={f}")
        });
    }
    Ok(())
}

fn proj_chart(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    for _ in 0..s.bounds.samples {
        let (ideal, gens) = small_monomial_ideal(sampler, 3);
        let a = sampler.choose(&gens).expect("ideal has generators").clone();
        let n = sampler.rng().gen_range(1..=2);
        let x = element_of_power(sampler, &gens, 3, n);
        for &p in s.primes.iter().filter(|&&p| p <= 3) {
            tally.record(proj_chart_frobenius_check(p, &ideal, &a, &x, n)?, || {
                format!("p={p}, ideal={gens:?}, a={a:?}, x={x}, n={n}")
            });
        }
    }
    Ok(())
}

fn oracle_transform(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    for _ in 0..s.bounds.samples {
        let (g, center, mark) = sampler.transform_instance(4, s.bounds.max_exponent);
        tally.record(oracle_agrees(&g, &center, mark)?, || {
            format!("g={g:?}, centre={center:?}, mark={mark}")
        });
    }
    Ok(())
}

fn fiber_order(s: &CheckSettings, sampler: &mut Sampler, tally: &mut Tally) -> Result<()> {
    let ids: Vec<ComponentId> = (0..4).map(ComponentId).collect();
    let mut primes = vec![0];
    primes.extend(&s.primes);
    for _ in 0..s.bounds.samples {
        let (g, center, _) = sampler.transform_instance(4, s.bounds.max_exponent);
        let h = sampler.monomial(&ids, s.bounds.max_exponent);
        let gens = vec![g, h];
        let degree = gens
            .iter()
            .map(|g| g.degree_over(&center))
            .min()
            .unwrap_or(0);
        let vanishing = sampler.subset(&ids);
        let mark = degree.max(1);
        let chart = Chart::root(
            "sample",
            ids.iter().copied().collect::<BTreeSet<_>>(),
            Vec::new(),
            BTreeSet::new(),
            MarkedIdeal::new(gens, mark)?,
        );
        let replay = (degree >= 1).then_some(&center);
        for &p in &primes {
            tally.record(fiber_order_check(&chart, &vanishing, p, replay)?, || {
                format!("p={p}, chart={:?}, stratum={vanishing:?}", chart.ideal)
            });
        }
    }
    Ok(())
}
