//! Empirical checks of forward monotonicity and diminishing returns along the
//! prefix order.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matroid::MatroidSpec;
use crate::seq::{Action, ActionSeq};
use crate::valuation::Valuation;
use crate::EPS;

#[derive(Debug, Clone, Copy)]
pub enum CheckMode {
    /// Every feasible `B`, every prefix `A ≼ B`, every `a` feasible at `B`.
    Exhaustive,
    /// `samples` random `(A ≼ B, a)` triples.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub enum Violation {
    /// `f(A) > f(B)` although `A ≼ B`.
    Monotone { a: ActionSeq, b: ActionSeq, f_a: f64, f_b: f64 },
    /// `ρ_x(A) < ρ_x(B)` although `A ≼ B`.
    DiminishingReturns { a: ActionSeq, b: ActionSeq, action: Action, rho_a: f64, rho_b: f64 },
}

#[derive(Debug, Clone, Default)]
pub struct SubmodularityReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub monotone_violations: Vec<Violation>,
    pub diminishing_returns_violations: Vec<Violation>,
}

impl SubmodularityReport {
    pub fn is_clean(&self) -> bool {
        self.monotone_violations.is_empty() && self.diminishing_returns_violations.is_empty()
    }
}

pub fn check_submodular_monotone(f: &Valuation, m: &MatroidSpec, mode: CheckMode) -> SubmodularityReport {
    match mode {
        CheckMode::Exhaustive => exhaustive(f, m),
        CheckMode::Sampled { samples, seed } => sampled(f, m, samples, seed),
    }
}

struct Checker<'a> {
    f: &'a Valuation,
    m: &'a MatroidSpec,
    cache: HashMap<ActionSeq, f64>,
    report: SubmodularityReport,
}

impl Checker<'_> {
    fn value(&mut self, s: &ActionSeq) -> f64 {
        if let Some(&v) = self.cache.get(s) {
            return v;
        }
        let v = self.f.evaluate(s);
        self.cache.insert(s.clone(), v);
        v
    }

    fn check_pair(&mut self, a: &ActionSeq, b: &ActionSeq) {
        let (f_a, f_b) = (self.value(a), self.value(b));
        self.report.pairs_checked += 1;
        if f_a > f_b + EPS {
            self.report.monotone_violations.push(Violation::Monotone { a: a.clone(), b: b.clone(), f_a, f_b });
        }
    }

    fn check_triple(&mut self, a: &ActionSeq, b: &ActionSeq, x: Action) {
        if !self.m.is_feasible_at(a, x) || !self.m.is_feasible_at(b, x) {
            return;
        }
        let rho_a = self.value(&a.push(x)) - self.value(a);
        let rho_b = self.value(&b.push(x)) - self.value(b);
        self.report.triples_checked += 1;
        if rho_a + EPS < rho_b {
            self.report.diminishing_returns_violations.push(Violation::DiminishingReturns {
                a: a.clone(),
                b: b.clone(),
                action: x,
                rho_a,
                rho_b,
            });
        }
    }
}

fn exhaustive(f: &Valuation, m: &MatroidSpec) -> SubmodularityReport {
    let mut checker = Checker { f, m, cache: HashMap::new(), report: SubmodularityReport::default() };
    for b in m.feasible_strings() {
        let extensions = m.feasible_actions(&b).unwrap_or_default();
        for a in b.prefixes() {
            checker.check_pair(&a, &b);
            for &x in &extensions {
                checker.check_triple(&a, &b, x);
            }
        }
    }
    checker.report
}

fn sampled(f: &Valuation, m: &MatroidSpec, samples: usize, seed: u64) -> SubmodularityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checker = Checker { f, m, cache: HashMap::new(), report: SubmodularityReport::default() };
    let max_len = m.rank().saturating_sub(1);
    let mut drawn = 0;
    // Bounded retries guard against matroids where random walks stall early.
    let mut attempts = 0;
    while drawn < samples && attempts < samples.saturating_mul(20) {
        attempts += 1;
        let target = rng.gen_range(0..=max_len);
        let mut b = ActionSeq::empty();
        while b.len() < target {
            let options = m.feasible_actions(&b).unwrap_or_default();
            match options.choose(&mut rng) {
                Some(&x) => b = b.push(x),
                None => break,
            }
        }
        let options = m.feasible_actions(&b).unwrap_or_default();
        let Some(&x) = options.choose(&mut rng) else { continue };
        let cut = rng.gen_range(0..=b.len());
        let a = ActionSeq::new(b[..cut].to_vec());
        checker.check_pair(&a, &b);
        checker.check_pair(&b, &b.push(x));
        checker.check_triple(&a, &b, x);
        // Keep the cache from growing without bound on large instances.
        if checker.cache.len() > 100_000 {
            checker.cache.clear();
        }
        drawn += 1;
    }
    checker.report
}
