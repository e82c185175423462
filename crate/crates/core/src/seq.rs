use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// Dense action identifier in `0..n`.
pub type Action = usize;

/// An ordered finite sequence of actions (a "string").
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionSeq(Vec<Action>);

impl ActionSeq {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(items: Vec<Action>) -> Self {
        Self(items)
    }

    pub fn items(&self) -> &[Action] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Action> {
        self.0
    }

    /// `self · other`.
    pub fn concat(&self, other: &ActionSeq) -> ActionSeq {
        let mut items = Vec::with_capacity(self.0.len() + other.0.len());
        items.extend_from_slice(&self.0);
        items.extend_from_slice(&other.0);
        ActionSeq(items)
    }

    /// `self · (action)`.
    pub fn push(&self, action: Action) -> ActionSeq {
        let mut items = Vec::with_capacity(self.0.len() + 1);
        items.extend_from_slice(&self.0);
        items.push(action);
        ActionSeq(items)
    }

    /// True iff `other = self · L` for some string `L`.
    pub fn is_prefix_of(&self, other: &ActionSeq) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Prefixes `∅, (a1), (a1, a2), ..., self`.
    pub fn prefixes(&self) -> impl Iterator<Item = ActionSeq> + '_ {
        (0..=self.0.len()).map(move |n| ActionSeq(self.0[..n].to_vec()))
    }

    /// Underlying item set: sorted, duplicates removed.
    pub fn item_set(&self) -> Vec<Action> {
        let mut set = self.0.clone();
        set.sort_unstable();
        set.dedup();
        set
    }
}

/// Free-function form of [`ActionSeq::concat`].
pub fn concat(a: &ActionSeq, b: &ActionSeq) -> ActionSeq {
    a.concat(b)
}

/// Free-function form of [`ActionSeq::is_prefix_of`].
pub fn is_prefix(a: &ActionSeq, b: &ActionSeq) -> bool {
    a.is_prefix_of(b)
}

impl Deref for ActionSeq {
    type Target = [Action];

    fn deref(&self) -> &[Action] {
        &self.0
    }
}

impl From<Vec<Action>> for ActionSeq {
    fn from(items: Vec<Action>) -> Self {
        Self(items)
    }
}

impl From<&[Action]> for ActionSeq {
    fn from(items: &[Action]) -> Self {
        Self(items.to_vec())
    }
}

impl<const N: usize> From<[Action; N]> for ActionSeq {
    fn from(items: [Action; N]) -> Self {
        Self(items.to_vec())
    }
}

impl FromIterator<Action> for ActionSeq {
    fn from_iter<I: IntoIterator<Item = Action>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for ActionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}
