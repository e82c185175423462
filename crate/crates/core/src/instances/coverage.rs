use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seq::Action;
use crate::valuation::SetFunction;

/// `f(S) = Σ w_u` over universe elements `u` covered by some set in `S`.
#[derive(Debug, Clone)]
pub struct WeightedCoverage {
    weights: Vec<f64>,
    sets: Vec<Vec<usize>>,
}

impl WeightedCoverage {
    pub fn new(weights: Vec<f64>, sets: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidInstance(format!("universe weight {w} must be finite and non-negative")));
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(i, mut set)| {
                if let Some(&u) = set.iter().find(|&&u| u >= weights.len()) {
                    return Err(Error::InvalidInstance(format!(
                        "set {i} covers element {u}, universe has {} elements",
                        weights.len()
                    )));
                }
                set.sort_unstable();
                set.dedup();
                Ok(set)
            })
            .collect::<Result<_>>()?;
        Ok(Self { weights, sets })
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    fn covered(&self, items: &[Action]) -> Vec<bool> {
        let mut covered = vec![false; self.weights.len()];
        for &i in items {
            for &u in &self.sets[i] {
                covered[u] = true;
            }
        }
        covered
    }
}

impl SetFunction for WeightedCoverage {
    fn value(&self, items: &[Action]) -> f64 {
        self.covered(items)
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| **c)
            .map(|(_, w)| w)
            .sum()
    }

    fn gains(&self, base: &[Action], candidates: &[Action]) -> Vec<f64> {
        let covered = self.covered(base);
        candidates
            .par_iter()
            .map(|&a| self.sets[a].iter().filter(|&&u| !covered[u]).map(|&u| self.weights[u]).sum())
            .collect()
    }
}
