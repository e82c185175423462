use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::seq::Action;
use crate::valuation::SetFunction;

/// A set function given by an explicit table over item sets.
#[derive(Debug, Clone, Default)]
pub struct TableFunction {
    values: HashMap<Vec<Action>, f64>,
}

impl TableFunction {
    /// Keys are normalized to sorted order. A missing empty set defaults to 0.
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Action>, f64)>,
    {
        let mut values = HashMap::new();
        for (mut key, value) in entries {
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInstance(format!("table key {key:?} repeats an item")));
            }
            if !value.is_finite() {
                return Err(Error::InvalidInstance(format!("table value for {key:?} is not finite")));
            }
            if values.insert(key.clone(), value).is_some() {
                return Err(Error::InvalidInstance(format!("table key {key:?} appears twice")));
            }
        }
        values.entry(Vec::new()).or_insert(0.0);
        Ok(Self { values })
    }

    /// Parses a key such as `"0,2,5"`; the empty string is the empty set.
    pub fn parse_key(key: &str) -> Result<Vec<Action>> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Vec::new());
        }
        key.split(',')
            .map(|part| {
                part.trim()
                    .parse::<Action>()
                    .map_err(|_| Error::InvalidInstance(format!("table key {key:?}: {part:?} is not an action id")))
            })
            .collect()
    }

    pub fn contains(&self, items: &[Action]) -> bool {
        self.values.contains_key(items)
    }

    pub fn max_item(&self) -> Option<Action> {
        self.values.keys().flat_map(|k| k.iter().copied()).max()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl SetFunction for TableFunction {
    fn value(&self, items: &[Action]) -> f64 {
        match self.values.get(items) {
            Some(&v) => v,
            None => panic!("table has no value for item set {items:?}"),
        }
    }
}
