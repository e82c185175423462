//! Exhaustive search for the optimum on small instances.

use std::fmt;

use rayon::prelude::*;

use crate::bounds::{bound_report, BoundReport};
use crate::error::{Error, Result};
use crate::greedy::{run_greedy, GreedyTrace};
use crate::matroid::{binomial, Independence, MatroidSpec, SetMatroid};
use crate::seq::{Action, ActionSeq};
use crate::valuation::Valuation;
use crate::EPS;

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_value: f64,
    /// Every string within `EPS` of `best_value`. For set-matroid instances
    /// one canonical (ascending) ordering per optimal set.
    pub best_strings: Vec<ActionSeq>,
    pub enumerated_count: u64,
}

#[derive(Debug, Clone)]
struct Best {
    value: f64,
    strings: Vec<(f64, ActionSeq)>,
    count: u64,
}

impl Best {
    fn empty() -> Self {
        Self { value: f64::NEG_INFINITY, strings: Vec::new(), count: 0 }
    }

    fn offer(&mut self, value: f64, seq: &[Action]) {
        self.count += 1;
        if value >= self.value - EPS {
            self.strings.push((value, seq.into()));
        }
        if value > self.value {
            self.value = value;
            self.strings.retain(|(v, _)| *v >= value - EPS);
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.count += other.count;
        self.value = self.value.max(other.value);
        self.strings.extend(other.strings);
        let value = self.value;
        self.strings.retain(|(v, _)| *v >= value - EPS);
        self
    }
}

/// Exact maximum of `f` over feasible strings of length ≤ `k`.
///
/// Set-matroid instances are enumerated at the level of item sets, relying on
/// the permutation invariance of string extensions; uniform string matroids
/// enumerate every string. Fails with [`Error::CapExceeded`] when the search
/// would visit more than `cap` candidates.
pub fn brute_force_opt(f: &Valuation, m: &MatroidSpec, k: usize, cap: u64) -> Result<OracleResult> {
    if k > m.rank() {
        return Err(Error::RankExceeded { requested: k, rank: m.rank() });
    }
    let best = match m {
        MatroidSpec::UniformString { action_count, .. } => {
            let n = *action_count as u128;
            let required: u128 = (0..=k as u32).map(|j| n.pow(j)).sum();
            check_cap(required, cap)?;
            enumerate_strings(f, m, k)
        }
        MatroidSpec::FromSetMatroid(sm) => {
            check_cap(set_count_upto(sm, k), cap)?;
            enumerate_sets(f, sm, k)
        }
    };
    Ok(finish(best))
}

/// String-level enumeration for any matroid, including all orderings of
/// every independent set.
pub fn brute_force_opt_strings(f: &Valuation, m: &MatroidSpec, k: usize, cap: u64) -> Result<OracleResult> {
    if k > m.rank() {
        return Err(Error::RankExceeded { requested: k, rank: m.rank() });
    }
    let n = m.action_count() as u128;
    let required: u128 = (0..=k as u128)
        .map(|j| if m.allows_repetition() { n.pow(j as u32) } else { (0..j).map(|i| n.saturating_sub(i)).product() })
        .sum();
    check_cap(required, cap)?;
    Ok(finish(enumerate_strings(f, m, k)))
}

fn check_cap(required: u128, cap: u64) -> Result<()> {
    if required > cap as u128 {
        Err(Error::CapExceeded { required, cap })
    } else {
        Ok(())
    }
}

fn set_count_upto(m: &SetMatroid, k: usize) -> u128 {
    match m.independence() {
        Independence::Explicit(family) => family.iter().filter(|s| s.len() <= k).count() as u128,
        _ => (0..=k).map(|j| binomial(m.ground_size() as u128, j as u128)).sum(),
    }
}

fn finish(best: Best) -> OracleResult {
    let best_value = best.value;
    let best_strings = best.strings.into_iter().map(|(_, s)| s).collect();
    OracleResult { best_value, best_strings, enumerated_count: best.count }
}

fn enumerate_strings(f: &Valuation, m: &MatroidSpec, k: usize) -> Best {
    let mut root = Best::empty();
    root.offer(0.0, &[]);
    if k == 0 {
        return root;
    }
    let first = m.feasible_actions(&ActionSeq::empty()).unwrap_or_default();
    first
        .par_iter()
        .map(|&a| {
            let mut best = Best::empty();
            let mut seq = ActionSeq::from([a]);
            walk_strings(f, m, k, &mut seq, &mut best);
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(root, Best::merge)
}

fn walk_strings(f: &Valuation, m: &MatroidSpec, k: usize, seq: &mut ActionSeq, best: &mut Best) {
    best.offer(f.evaluate(seq), seq);
    if seq.len() == k {
        return;
    }
    for a in m.feasible_actions(seq).unwrap_or_default() {
        let mut next = seq.push(a);
        walk_strings(f, m, k, &mut next, best);
    }
}

fn enumerate_sets(f: &Valuation, m: &SetMatroid, k: usize) -> Best {
    if let Independence::Explicit(family) = m.independence() {
        let sets: Vec<&Vec<Action>> = family.iter().filter(|s| s.len() <= k).collect();
        return sets
            .par_chunks(1024)
            .map(|chunk| {
                let mut best = Best::empty();
                for s in chunk {
                    best.offer(f.evaluate_slice(s), s);
                }
                best
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Best::empty(), Best::merge);
    }

    let mut root = Best::empty();
    root.offer(0.0, &[]);
    if k == 0 {
        return root;
    }
    (0..m.ground_size())
        .into_par_iter()
        .map(|first| {
            let mut best = Best::empty();
            let mut current = vec![first];
            if m.is_independent(&current) {
                walk_sets(f, m, k, &mut current, &mut best);
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(root, Best::merge)
}

fn walk_sets(f: &Valuation, m: &SetMatroid, k: usize, current: &mut Vec<Action>, best: &mut Best) {
    best.offer(f.evaluate_slice(current), current);
    if current.len() == k {
        return;
    }
    let start = current.last().map_or(0, |&a| a + 1);
    for next in start..m.ground_size() {
        current.push(next);
        if m.is_independent(current) {
            walk_sets(f, m, k, current, best);
        }
        current.pop();
    }
}

/// One inequality of the certificate chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

impl Check {
    fn le(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self { name, lhs, rhs, pass: lhs <= rhs + EPS }
    }
}

/// Greedy, bounds and oracle results for one instance, with the certificate
/// chain checked against the true optimum.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub trace: GreedyTrace,
    pub report: BoundReport,
    pub oracle: OracleResult,
    /// `f(G_K) / f(O_K)`.
    pub ratio: f64,
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn verify_instance(f: &Valuation, m: &MatroidSpec, k: usize, cap: u64) -> Result<Verdict> {
    let trace = run_greedy(f, m, k)?;
    let report = bound_report(&trace, m)?;
    let oracle = brute_force_opt(f, m, k, cap)?;
    let opt = oracle.best_value;
    let ratio = report.f_greedy / opt;
    let checks = vec![
        Check::le("f(G_K) <= f(O_K)", report.f_greedy, opt),
        Check::le("bound_new <= f(G_K)/f(O_K)", report.bound_new, ratio),
        Check::le("bound_cc <= bound_new", report.bound_cc, report.bound_new),
        Check::le("f(O_K) <= B", opt, report.b),
        Check::le("B <= min(S, R)", report.b, report.s.min(report.r)),
        Check::le("B <= K*rho_g1(0)", report.b, report.crude_upper()),
    ];
    Ok(Verdict { trace, report, oracle, ratio, checks })
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "greedy {} = {}, optimum {} (over {} candidates), ratio {:.6}",
            self.trace.chosen, self.report.f_greedy, self.oracle.best_value, self.oracle.enumerated_count, self.ratio
        )?;
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  [{}] {:<28} {:.9} <= {:.9}", if c.pass { "pass" } else { "FAIL" }, c.name, c.lhs, c.rhs)?;
        }
        Ok(())
    }
}
