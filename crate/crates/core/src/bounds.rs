//! Performance-bound certificates computed from a greedy trace.
//!
//! With `α_i = min ρ_a(G_{i-1}) / ρ_a(∅)` over actions feasible at `G_{i-1}`
//! having `ρ_a(∅) > 0`, two upper bounds on the optimum are available:
//! `S = Σ ρ_{g_i}(G_{i-1}) / α_i` (infinite when `min α_i = 0`) and `R`, the
//! sum of the `K` largest singleton gains led by `g_1`. Their minimum `B`
//! certifies `f(G_K) / f(O_K) ≥ f(G_K) / B`, which dominates the greedy
//! curvature bound `1/K + α (K-1)/K`.

use std::f64::consts::E;
use std::fmt;

use crate::error::{Error, Result};
use crate::greedy::GreedyTrace;
use crate::matroid::MatroidSpec;
use crate::seq::Action;
use crate::EPS;

/// Per-step curvature ratios `α_1..α_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaProfile {
    pub alphas: Vec<f64>,
    /// 1-based steps whose candidate set had no action with positive
    /// singleton gain; those steps get `α_i = 1`.
    pub vacuous_steps: Vec<usize>,
}

impl AlphaProfile {
    /// `α = min_i α_i`.
    pub fn min(&self) -> f64 {
        self.alphas.iter().copied().fold(1.0, f64::min)
    }
}

pub fn compute_alphas(trace: &GreedyTrace) -> AlphaProfile {
    let mut vacuous_steps = Vec::new();
    let alphas = trace
        .candidates
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let ratio = step
                .iter()
                .filter(|c| c.empty_gain > EPS)
                .map(|c| c.gain / c.empty_gain)
                .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |m| m.min(r))));
            match ratio {
                // `+ 0.0` maps a `-0.0` ratio to `0.0`.
                Some(r) => r.clamp(0.0, 1.0) + 0.0,
                None => {
                    vacuous_steps.push(i + 1);
                    1.0
                }
            }
        })
        .collect();
    AlphaProfile { alphas, vacuous_steps }
}

/// `S(G_K, α)`; `+∞` when `α ≤ ε`.
pub fn compute_s(trace: &GreedyTrace, alphas: &AlphaProfile) -> f64 {
    if alphas.min() <= EPS {
        return f64::INFINITY;
    }
    trace.increments.iter().zip(&alphas.alphas).map(|(inc, a)| inc / a).sum()
}

/// Whether the top-`K` singleton-gain sum may reuse an action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopGainPolicy {
    /// `r_2..r_K` are distinct and differ from `g_1`.
    Distinct,
    /// Every `r_i` is `g_1`, giving `R = K ρ_{g_1}(∅)`. Required wherever the
    /// optimum may repeat an action.
    WithRepetition,
}

impl TopGainPolicy {
    pub fn for_matroid(m: &MatroidSpec) -> Self {
        if m.allows_repetition() {
            TopGainPolicy::WithRepetition
        } else {
            TopGainPolicy::Distinct
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopGains {
    pub r: f64,
    pub actions: Vec<Action>,
    /// `ρ_{r_i}(∅)` for each `r_i`.
    pub gains: Vec<f64>,
}

/// `R = Σ ρ_{r_i}(∅)` with `r_1 = g_1` and the remaining `r_i` taken in
/// decreasing singleton gain, ties by smallest identifier. The action pool is
/// the step-1 candidate list, i.e. every action feasible at `∅`.
pub fn compute_r(trace: &GreedyTrace, policy: TopGainPolicy) -> Result<TopGains> {
    let k = trace.k();
    let pool = trace.candidates.first().map(Vec::as_slice).unwrap_or(&[]);
    let g1 = trace.chosen[0];
    let g1_gain = pool
        .iter()
        .find(|c| c.action == g1)
        .map(|c| c.empty_gain)
        .expect("g_1 is a step-1 candidate");

    let (actions, gains) = match policy {
        TopGainPolicy::WithRepetition => (vec![g1; k], vec![g1_gain; k]),
        TopGainPolicy::Distinct => {
            if pool.len() < k {
                return Err(Error::InsufficientActions { needed: k, available: pool.len() });
            }
            let mut rest: Vec<_> = pool.iter().filter(|c| c.action != g1).collect();
            // Stable sort keeps ascending identifiers among equal gains.
            rest.sort_by(|a, b| b.empty_gain.total_cmp(&a.empty_gain));
            std::iter::once((g1, g1_gain))
                .chain(rest.iter().take(k - 1).map(|c| (c.action, c.empty_gain)))
                .unzip()
        }
    };
    let r = gains.iter().sum();
    Ok(TopGains { r, actions, gains })
}

/// `B = min(S, R)`.
pub fn compute_b(s: f64, r: f64) -> Result<f64> {
    let b = if r >= s { s } else { r };
    if !b.is_finite() || b <= EPS {
        return Err(Error::Degenerate { s, r });
    }
    Ok(b)
}

/// `B` through the per-step weights `β_i`: `α_i` when `R ≥ S`, otherwise
/// `ρ_{g_i}(G_{i-1}) / ρ_{r_i}(∅)`. `None` when some `β_i` would be 0/0 or
/// a division by zero.
pub fn compute_b_from_betas(trace: &GreedyTrace, alphas: &AlphaProfile, s: f64, top: &TopGains) -> Option<f64> {
    let mut total = 0.0;
    for (i, &inc) in trace.increments.iter().enumerate() {
        let beta = if top.r >= s { alphas.alphas[i] } else { inc / top.gains[i] };
        if !beta.is_finite() || beta <= 0.0 {
            return None;
        }
        total += inc / beta;
    }
    Some(total)
}

/// `1/K + α (K-1)/K`.
pub fn greedy_curvature_bound(alpha: f64, k: usize) -> f64 {
    let k = k as f64;
    1.0 / k + alpha * (k - 1.0) / k
}

/// `1 - α_G (K-1)/K`, the same quantity written through `α_G = 1 - α`.
pub fn greedy_curvature_bound_from_curvature(alpha_g: f64, k: usize) -> f64 {
    let k = k as f64;
    1.0 - alpha_g * (k - 1.0) / k
}

/// `1 - 1/e` for uniform matroids, `1/2` otherwise.
pub fn classical_bound(m: &MatroidSpec) -> f64 {
    if m.is_uniform() {
        1.0 - 1.0 / E
    } else {
        0.5
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub k: usize,
    pub alphas: Vec<f64>,
    pub vacuous_steps: Vec<usize>,
    pub alpha: f64,
    pub alpha_g: f64,
    pub s: f64,
    pub r: f64,
    pub r_actions: Vec<Action>,
    pub b: f64,
    pub f_greedy: f64,
    /// `ρ_{g_1}(∅)`.
    pub first_gain: f64,
    pub bound_new: f64,
    pub bound_cc: f64,
    pub bound_classical: f64,
}

impl BoundReport {
    /// `K ρ_{g_1}(∅)`, a crude upper bound on `B`.
    pub fn crude_upper(&self) -> f64 {
        self.k as f64 * self.first_gain
    }
}

pub fn bound_report(trace: &GreedyTrace, m: &MatroidSpec) -> Result<BoundReport> {
    let k = trace.k();
    let profile = compute_alphas(trace);
    let alpha = profile.min();
    let s = compute_s(trace, &profile);
    let top = compute_r(trace, TopGainPolicy::for_matroid(m))?;
    let b = compute_b(s, top.r)?;
    let f_greedy = trace.value();
    Ok(BoundReport {
        k,
        alphas: profile.alphas,
        vacuous_steps: profile.vacuous_steps,
        alpha,
        alpha_g: 1.0 - alpha,
        s,
        r: top.r,
        r_actions: top.actions,
        b,
        f_greedy,
        first_gain: trace.first_gain(),
        bound_new: f_greedy / b,
        bound_cc: greedy_curvature_bound(alpha, k),
        bound_classical: classical_bound(m),
    })
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphas: Vec<String> = self.alphas.iter().map(|a| format!("{a:.6}")).collect();
        writeln!(f, "K               {}", self.k)?;
        writeln!(f, "f(G_K)          {}", self.f_greedy)?;
        writeln!(f, "alpha_i         [{}]", alphas.join(", "))?;
        writeln!(f, "alpha           {}", self.alpha)?;
        writeln!(f, "alpha_G         {}", self.alpha_g)?;
        writeln!(f, "S               {}", self.s)?;
        writeln!(f, "R               {}  (r = {:?})", self.r, self.r_actions)?;
        writeln!(f, "B               {}", self.b)?;
        writeln!(f, "bound_new       {:.6}", self.bound_new)?;
        writeln!(f, "bound_cc        {:.6}", self.bound_cc)?;
        write!(f, "bound_classical {:.6}", self.bound_classical)?;
        if !self.vacuous_steps.is_empty() {
            write!(f, "\nnote: steps {:?} had no positive-gain candidate; alpha_i set to 1", self.vacuous_steps)?;
        }
        Ok(())
    }
}
