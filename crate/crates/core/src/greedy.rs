//! The greedy algorithm on a string matroid, recording everything the bound
//! computations need.

use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;
use crate::seq::{Action, ActionSeq};
use crate::valuation::Valuation;

/// One action considered at a greedy step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub action: Action,
    /// `ρ_a(G_{i-1})`.
    pub gain: f64,
    /// `ρ_a(∅)`.
    pub empty_gain: f64,
}

#[derive(Debug, Clone)]
pub struct GreedyTrace {
    /// `G_K = (g_1, .., g_K)`.
    pub chosen: ActionSeq,
    /// `ρ_{g_i}(G_{i-1})` for `i = 1..K`.
    pub increments: Vec<f64>,
    /// Every action feasible at `G_{i-1}`, in ascending action order.
    pub candidates: Vec<Vec<Candidate>>,
    /// `f(G_0), .., f(G_K)`.
    pub prefix_values: Vec<f64>,
}

impl GreedyTrace {
    pub fn k(&self) -> usize {
        self.chosen.len()
    }

    /// `f(G_K)`.
    pub fn value(&self) -> f64 {
        *self.prefix_values.last().expect("prefix_values always holds f(G_0)")
    }

    /// `ρ_{g_1}(∅)`, the largest discrete derivative on a submodular instance.
    pub fn first_gain(&self) -> f64 {
        self.increments.first().copied().unwrap_or(0.0)
    }
}

/// Runs `K` greedy steps. At each step the feasible action with the largest
/// discrete derivative is appended; ties go to the smallest identifier.
pub fn run_greedy(f: &Valuation, m: &MatroidSpec, k: usize) -> Result<GreedyTrace> {
    if k == 0 {
        return Err(Error::InvalidInstance("K must be positive".into()));
    }
    if k > m.rank() {
        return Err(Error::RankExceeded { requested: k, rank: m.rank() });
    }

    let singletons = m.feasible_actions(&ActionSeq::empty())?;
    let mut empty_gains = vec![f64::NAN; m.action_count()];
    for (&a, g) in singletons.iter().zip(f.gains(&[], &singletons)) {
        empty_gains[a] = g;
    }

    let mut chosen = ActionSeq::empty();
    let mut increments = Vec::with_capacity(k);
    let mut candidates = Vec::with_capacity(k);
    let mut prefix_values = vec![0.0];

    for step in 1..=k {
        let feasible = m.feasible_actions(&chosen)?;
        if feasible.is_empty() {
            return Err(Error::GreedyStalled { step });
        }
        let gains = f.gains(&chosen, &feasible);
        for &a in &feasible {
            if empty_gains[a].is_nan() {
                empty_gains[a] = f.gains(&[], &[a])[0];
            }
        }
        let step_candidates: Vec<Candidate> = feasible
            .iter()
            .zip(&gains)
            .map(|(&action, &gain)| Candidate { action, gain, empty_gain: empty_gains[action] })
            .collect();

        let best = step_candidates
            .iter()
            .fold(None::<&Candidate>, |best, c| match best {
                Some(b) if b.gain >= c.gain => Some(b),
                _ => Some(c),
            })
            .expect("non-empty candidate list");

        chosen = chosen.push(best.action);
        increments.push(best.gain);
        prefix_values.push(f.evaluate(&chosen));
        candidates.push(step_candidates);
    }

    Ok(GreedyTrace { chosen, increments, candidates, prefix_values })
}
