//! Valuation oracles over strings, the string extension of set functions, and
//! discrete derivatives.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;
use crate::seq::{Action, ActionSeq};

/// A deterministic function on strings. Implementations need not be
/// normalized; [`Valuation`] subtracts the empty-string value.
pub trait StringFunction: Send + Sync {
    fn value(&self, seq: &[Action]) -> f64;

    /// `value(prefix · a) - value(prefix)` for every candidate `a`.
    fn gains(&self, prefix: &[Action], candidates: &[Action]) -> Vec<f64> {
        let base = self.value(prefix);
        candidates
            .par_iter()
            .map(|&a| {
                let mut seq = Vec::with_capacity(prefix.len() + 1);
                seq.extend_from_slice(prefix);
                seq.push(a);
                self.value(&seq) - base
            })
            .collect()
    }
}

/// A function on finite sets of actions.
pub trait SetFunction: Send + Sync {
    /// `items` is sorted and free of duplicates.
    fn value(&self, items: &[Action]) -> f64;

    /// `value(base ∪ {a}) - value(base)` for every candidate `a`; `base` is
    /// sorted and distinct. Candidates already in `base` gain nothing.
    fn gains(&self, base: &[Action], candidates: &[Action]) -> Vec<f64> {
        let base_value = self.value(base);
        candidates
            .par_iter()
            .map(|&a| match base.binary_search(&a) {
                Ok(_) => 0.0,
                Err(pos) => {
                    let mut set = Vec::with_capacity(base.len() + 1);
                    set.extend_from_slice(&base[..pos]);
                    set.push(a);
                    set.extend_from_slice(&base[pos..]);
                    self.value(&set) - base_value
                }
            })
            .collect()
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Arc<F> {
    fn value(&self, items: &[Action]) -> f64 {
        (**self).value(items)
    }

    fn gains(&self, base: &[Action], candidates: &[Action]) -> Vec<f64> {
        (**self).gains(base, candidates)
    }
}

/// `f̃(A) = f(ψ(A))` where `ψ(A)` is the item set of `A`.
#[derive(Debug, Clone)]
pub struct StringExtension<F>(pub F);

impl<F: SetFunction> StringFunction for StringExtension<F> {
    fn value(&self, seq: &[Action]) -> f64 {
        let mut set = seq.to_vec();
        set.sort_unstable();
        set.dedup();
        self.0.value(&set)
    }

    fn gains(&self, prefix: &[Action], candidates: &[Action]) -> Vec<f64> {
        let mut base = prefix.to_vec();
        base.sort_unstable();
        base.dedup();
        self.0.gains(&base, candidates)
    }
}

/// Wraps a set function as a normalized valuation on strings. The value of a
/// string depends only on its item set.
pub fn string_extension<F: SetFunction + 'static>(f: F) -> Valuation {
    Valuation::new(StringExtension(f))
}

/// `f(A) = Σ weights[a_i]` counted with multiplicity.
#[derive(Debug, Clone)]
pub struct Additive {
    pub weights: Vec<f64>,
}

impl StringFunction for Additive {
    fn value(&self, seq: &[Action]) -> f64 {
        seq.iter().map(|&a| self.weights[a]).sum()
    }

    fn gains(&self, _prefix: &[Action], candidates: &[Action]) -> Vec<f64> {
        candidates.iter().map(|&a| self.weights[a]).collect()
    }
}

/// Adapter for closures, mostly for ad hoc and test objectives.
pub struct FnString<F>(pub F);

impl<F> StringFunction for FnString<F>
where
    F: Fn(&[Action]) -> f64 + Send + Sync,
{
    fn value(&self, seq: &[Action]) -> f64 {
        (self.0)(seq)
    }
}

/// A string function normalized so that the empty string has value 0.
#[derive(Clone)]
pub struct Valuation {
    func: Arc<dyn StringFunction>,
    raw_empty_value: f64,
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Valuation").field("raw_empty_value", &self.raw_empty_value).finish_non_exhaustive()
    }
}

impl Valuation {
    pub fn new<F: StringFunction + 'static>(func: F) -> Self {
        Self::from_arc(Arc::new(func))
    }

    pub fn from_arc(func: Arc<dyn StringFunction>) -> Self {
        let raw_empty_value = func.value(&[]);
        Self { func, raw_empty_value }
    }

    /// Raw value of the empty string, subtracted from every reported value.
    pub fn raw_empty_value(&self) -> f64 {
        self.raw_empty_value
    }

    /// Normalized value `f(A) - f(∅)`. Feasibility is the caller's concern.
    pub fn evaluate(&self, seq: &ActionSeq) -> f64 {
        self.evaluate_slice(seq)
    }

    pub fn evaluate_slice(&self, seq: &[Action]) -> f64 {
        self.func.value(seq) - self.raw_empty_value
    }

    /// `ρ_a(prefix)` for every candidate, without feasibility checks.
    pub fn gains(&self, prefix: &[Action], candidates: &[Action]) -> Vec<f64> {
        self.func.gains(prefix, candidates)
    }

    /// Discrete derivative `ρ_a(A) = f(A·a) - f(A)`, checked against `m`.
    pub fn rho(&self, m: &MatroidSpec, seq: &ActionSeq, action: Action) -> Result<f64> {
        rho(self, m, seq, action)
    }
}

pub fn rho(f: &Valuation, m: &MatroidSpec, seq: &ActionSeq, action: Action) -> Result<f64> {
    if !m.is_feasible_at(seq, action) {
        return Err(Error::InfeasibleAction { prefix: seq.clone(), action });
    }
    Ok(f.evaluate(&seq.push(action)) - f.evaluate(seq))
}
