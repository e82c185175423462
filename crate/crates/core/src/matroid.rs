//! Finite-rank string matroids: the uniform string matroid and the string
//! matroid induced by a finite-rank set matroid.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::seq::{Action, ActionSeq};

/// Membership oracle for a set matroid; receives sorted, distinct items.
pub type IndependenceOracle = Arc<dyn Fn(&[Action]) -> bool + Send + Sync>;

/// How the independent family of a set matroid is represented.
#[derive(Clone)]
pub enum Independence {
    /// Every set of size at most the rank.
    Uniform,
    /// Explicit list of independent sets (each sorted and distinct). The
    /// empty set is always independent.
    Explicit(BTreeSet<Vec<Action>>),
    /// Opaque membership test, assumed downward closed.
    Oracle(IndependenceOracle),
}

impl fmt::Debug for Independence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Independence::Uniform => f.write_str("Uniform"),
            Independence::Explicit(sets) => f.debug_tuple("Explicit").field(sets).finish(),
            Independence::Oracle(_) => f.write_str("Oracle(..)"),
        }
    }
}

/// A finite-rank set matroid `(N, X)` with `N = {0, .., ground_size - 1}`.
#[derive(Debug, Clone)]
pub struct SetMatroid {
    ground_size: usize,
    rank: usize,
    independence: Independence,
}

impl SetMatroid {
    pub fn uniform(ground_size: usize, rank: usize) -> Result<Self> {
        Self::validate_sizes(ground_size, rank)?;
        Ok(Self { ground_size, rank, independence: Independence::Uniform })
    }

    /// Builds a set matroid from an explicit family. Sets are normalized to
    /// sorted order; duplicates within a set, out-of-range items and sets larger
    /// than `rank` are rejected. The axioms themselves are not enforced here;
    /// use [`SetMatroid::check_axioms`].
    pub fn explicit<I>(ground_size: usize, rank: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Action>>,
    {
        Self::validate_sizes(ground_size, rank)?;
        let mut family = BTreeSet::new();
        family.insert(Vec::new());
        for mut set in sets {
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInstance(format!(
                    "independent set {set:?} repeats an item"
                )));
            }
            if let Some(&bad) = set.iter().find(|&&a| a >= ground_size) {
                return Err(Error::InvalidInstance(format!(
                    "independent set {set:?} contains item {bad} outside ground set of size {ground_size}"
                )));
            }
            if set.len() > rank {
                return Err(Error::InvalidInstance(format!(
                    "independent set {set:?} is larger than rank {rank}"
                )));
            }
            family.insert(set);
        }
        Ok(Self { ground_size, rank, independence: Independence::Explicit(family) })
    }

    pub fn with_oracle(ground_size: usize, rank: usize, oracle: IndependenceOracle) -> Result<Self> {
        Self::validate_sizes(ground_size, rank)?;
        Ok(Self { ground_size, rank, independence: Independence::Oracle(oracle) })
    }

    fn validate_sizes(ground_size: usize, rank: usize) -> Result<()> {
        if ground_size == 0 {
            return Err(Error::InvalidInstance("ground set must be non-empty".into()));
        }
        if rank == 0 {
            return Err(Error::InvalidInstance("rank must be positive".into()));
        }
        Ok(())
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn independence(&self) -> &Independence {
        &self.independence
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.independence, Independence::Uniform)
    }

    /// `items` must be sorted and distinct.
    pub fn is_independent(&self, items: &[Action]) -> bool {
        if items.len() > self.rank || items.iter().any(|&a| a >= self.ground_size) {
            return false;
        }
        match &self.independence {
            Independence::Uniform => true,
            Independence::Explicit(family) => family.contains(items),
            Independence::Oracle(oracle) => oracle(items),
        }
    }

    /// All independent sets, each sorted, in lexicographic order.
    pub fn independent_sets(&self) -> Vec<Vec<Action>> {
        if let Independence::Explicit(family) = &self.independence {
            return family.iter().cloned().collect();
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.collect_independent(0, &mut current, &mut out);
        out
    }

    fn collect_independent(&self, start: Action, current: &mut Vec<Action>, out: &mut Vec<Vec<Action>>) {
        out.push(current.clone());
        if current.len() == self.rank {
            return;
        }
        for next in start..self.ground_size {
            current.push(next);
            // Downward closure lets dependent sets prune their supersets.
            if self.is_independent(current) {
                self.collect_independent(next + 1, current, out);
            }
            current.pop();
        }
    }

    /// Number of independent sets an enumeration would visit, without
    /// enumerating. Exact for uniform and explicit families, an upper bound
    /// (all sets of size ≤ rank) for oracles.
    pub fn enumeration_size(&self) -> u128 {
        match &self.independence {
            Independence::Explicit(family) => family.len() as u128,
            _ => (0..=self.rank.min(self.ground_size))
                .map(|k| binomial(self.ground_size as u128, k as u128))
                .sum(),
        }
    }

    /// Exhaustively checks the three set-matroid axioms against the
    /// enumerated family.
    pub fn check_axioms(&self) -> AxiomReport {
        let family: Vec<Vec<Action>> = self.all_subsets_upto(self.rank + 1)
            .into_iter()
            .filter(|s| self.is_independent(s))
            .collect();
        let members: HashSet<&[Action]> = family.iter().map(|s| s.as_slice()).collect();
        let mut report = AxiomReport { members_checked: family.len(), ..Default::default() };

        for s in &family {
            if s.len() > self.rank {
                report.length.push(format!("{s:?}"));
            }
            // Removing one element at a time suffices for downward closure.
            for skip in 0..s.len() {
                let sub: Vec<Action> =
                    s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &a)| a).collect();
                if !members.contains(sub.as_slice()) {
                    report.hereditary.push(format!("{s:?} ⊇ {sub:?}"));
                }
            }
        }
        for t in &family {
            for s in family.iter().filter(|s| s.len() == t.len() + 1) {
                let extends = s.iter().filter(|j| !t.contains(j)).any(|&j| {
                    let mut u = t.clone();
                    u.push(j);
                    u.sort_unstable();
                    members.contains(u.as_slice())
                });
                if !extends {
                    report.exchange.push(format!("T = {t:?}, S = {s:?}"));
                }
            }
        }
        report
    }

    fn all_subsets_upto(&self, max_len: usize) -> Vec<Vec<Action>> {
        fn walk(n: usize, max_len: usize, start: usize, cur: &mut Vec<Action>, out: &mut Vec<Vec<Action>>) {
            out.push(cur.clone());
            if cur.len() == max_len {
                return;
            }
            for a in start..n {
                cur.push(a);
                walk(n, max_len, a + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        walk(self.ground_size, max_len, 0, &mut Vec::new(), &mut out);
        out
    }
}

/// A finite-rank string matroid.
#[derive(Debug, Clone)]
pub enum MatroidSpec {
    /// All strings of length ≤ `rank` over `action_count` actions, repetition
    /// allowed.
    UniformString { action_count: usize, rank: usize },
    /// All orderings of independent sets of a set matroid; no repetition.
    FromSetMatroid(SetMatroid),
}

impl MatroidSpec {
    pub fn uniform_string(action_count: usize, rank: usize) -> Result<Self> {
        SetMatroid::validate_sizes(action_count, rank)?;
        Ok(MatroidSpec::UniformString { action_count, rank })
    }

    pub fn rank(&self) -> usize {
        match self {
            MatroidSpec::UniformString { rank, .. } => *rank,
            MatroidSpec::FromSetMatroid(m) => m.rank(),
        }
    }

    pub fn action_count(&self) -> usize {
        match self {
            MatroidSpec::UniformString { action_count, .. } => *action_count,
            MatroidSpec::FromSetMatroid(m) => m.ground_size(),
        }
    }

    pub fn allows_repetition(&self) -> bool {
        matches!(self, MatroidSpec::UniformString { .. })
    }

    /// True for the uniform string matroid and for strings over a uniform set
    /// matroid.
    pub fn is_uniform(&self) -> bool {
        match self {
            MatroidSpec::UniformString { .. } => true,
            MatroidSpec::FromSetMatroid(m) => m.is_uniform(),
        }
    }

    pub fn is_feasible(&self, seq: &ActionSeq) -> bool {
        match self {
            MatroidSpec::UniformString { action_count, rank } => {
                seq.len() <= *rank && seq.iter().all(|&a| a < *action_count)
            }
            MatroidSpec::FromSetMatroid(m) => {
                let set = seq.item_set();
                set.len() == seq.len() && m.is_independent(&set)
            }
        }
    }

    pub fn ensure_feasible(&self, seq: &ActionSeq) -> Result<()> {
        if self.is_feasible(seq) {
            Ok(())
        } else {
            Err(Error::InfeasibleString(seq.clone()))
        }
    }

    /// Actions `a` with `seq · a` feasible, in ascending order. Empty once
    /// `|seq|` reaches the rank.
    pub fn feasible_actions(&self, seq: &ActionSeq) -> Result<Vec<Action>> {
        self.ensure_feasible(seq)?;
        if seq.len() >= self.rank() {
            return Ok(Vec::new());
        }
        Ok(match self {
            MatroidSpec::UniformString { action_count, .. } => (0..*action_count).collect(),
            MatroidSpec::FromSetMatroid(m) => {
                let base = seq.item_set();
                let mut scratch = Vec::with_capacity(base.len() + 1);
                (0..m.ground_size())
                    .filter(|a| base.binary_search(a).is_err())
                    .filter(|&a| {
                        if m.is_uniform() {
                            return true;
                        }
                        scratch.clear();
                        scratch.extend_from_slice(&base);
                        let pos = scratch.partition_point(|&x| x < a);
                        scratch.insert(pos, a);
                        m.is_independent(&scratch)
                    })
                    .collect()
            }
        })
    }

    pub fn is_feasible_at(&self, seq: &ActionSeq, action: Action) -> bool {
        self.is_feasible(seq) && self.is_feasible(&seq.push(action))
    }

    /// Every feasible string, in depth-first order starting from `∅`.
    pub fn feasible_strings(&self) -> Vec<ActionSeq> {
        let mut out = Vec::new();
        self.walk_feasible(ActionSeq::empty(), &mut out);
        out
    }

    fn walk_feasible(&self, seq: ActionSeq, out: &mut Vec<ActionSeq>) {
        let next = self.feasible_actions(&seq).unwrap_or_default();
        out.push(seq.clone());
        for a in next {
            self.walk_feasible(seq.push(a), out);
        }
    }

    /// Exhaustively checks the three string-matroid axioms. Every string over
    /// the action set up to length `rank + 1` is classified with
    /// [`MatroidSpec::is_feasible`]; `cap` bounds the number of strings
    /// generated.
    pub fn check_axioms(&self, cap: u64) -> Result<AxiomReport> {
        let n = self.action_count() as u128;
        let k = self.rank() as u32 + 1;
        let required: u128 = (0..=k).map(|l| n.pow(l)).sum();
        if required > cap as u128 {
            return Err(Error::CapExceeded { required, cap });
        }

        let mut all = vec![ActionSeq::empty()];
        let mut frontier = vec![ActionSeq::empty()];
        for _ in 0..k {
            frontier = frontier
                .iter()
                .flat_map(|s| (0..self.action_count()).map(move |a| s.push(a)))
                .collect();
            all.extend(frontier.iter().cloned());
        }
        let feasible: Vec<ActionSeq> = all.into_iter().filter(|s| self.is_feasible(s)).collect();
        let members: HashSet<&ActionSeq> = feasible.iter().collect();
        let mut report = AxiomReport { members_checked: feasible.len(), ..Default::default() };

        for b in &feasible {
            if b.len() > self.rank() {
                report.length.push(b.to_string());
            }
            for a in b.prefixes() {
                if !members.contains(&a) {
                    report.hereditary.push(format!("{a} ≼ {b}"));
                }
            }
        }
        for a in &feasible {
            for b in feasible.iter().filter(|b| b.len() == a.len() + 1) {
                if !b.iter().any(|&c| members.contains(&a.push(c))) {
                    report.exchange.push(format!("A = {a}, B = {b}"));
                }
            }
        }
        Ok(report)
    }
}

impl From<SetMatroid> for MatroidSpec {
    fn from(m: SetMatroid) -> Self {
        MatroidSpec::FromSetMatroid(m)
    }
}

/// Violations of the three matroid axioms found by exhaustive enumeration.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub members_checked: usize,
    pub length: Vec<String>,
    pub hereditary: Vec<String>,
    pub exchange: Vec<String>,
}

impl AxiomReport {
    pub fn is_clean(&self) -> bool {
        self.length.is_empty() && self.hereditary.is_empty() && self.exchange.is_empty()
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Three actions, rank 2, every pair independent.
    fn three_pairs() -> MatroidSpec {
        SetMatroid::explicit(3, 2, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]])
            .unwrap()
            .into()
    }

    #[test]
    fn uniform_string_allows_repetition() {
        let m = MatroidSpec::uniform_string(3, 2).unwrap();
        assert_eq!(m.feasible_actions(&[0].into()).unwrap(), vec![0, 1, 2]);
        assert!(m.is_feasible(&[1, 1].into()));
        assert!(!m.is_feasible(&[1, 1, 1].into()));
    }

    #[test]
    fn feasible_actions_at_rank_is_empty() {
        let m = MatroidSpec::uniform_string(3, 2).unwrap();
        assert!(m.feasible_actions(&[0, 2].into()).unwrap().is_empty());
        let m = three_pairs();
        assert!(m.feasible_actions(&[2, 0].into()).unwrap().is_empty());
    }

    #[test]
    fn feasible_actions_from_explicit_family() {
        // Independent 2-sets containing item 0 are {0,1} and {0,2}.
        let m = three_pairs();
        assert_eq!(m.feasible_actions(&[0].into()).unwrap(), vec![1, 2]);

        let sparse: MatroidSpec = SetMatroid::explicit(3, 2, vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]])
            .unwrap()
            .into();
        assert_eq!(sparse.feasible_actions(&[0].into()).unwrap(), vec![1]);
        assert_eq!(sparse.feasible_actions(&[1].into()).unwrap(), vec![0, 2]);
    }

    #[test]
    fn feasible_actions_rejects_infeasible_prefix() {
        let m = three_pairs();
        assert!(matches!(m.feasible_actions(&[0, 0].into()), Err(Error::InfeasibleString(_))));
        assert!(matches!(m.feasible_actions(&[5].into()), Err(Error::InfeasibleString(_))));
    }

    #[test]
    fn set_matroid_strings_never_repeat() {
        let m: MatroidSpec = SetMatroid::uniform(4, 3).unwrap().into();
        for s in m.feasible_strings() {
            assert_eq!(s.item_set().len(), s.len());
            for a in m.feasible_actions(&s).unwrap() {
                assert!(!s.contains(&a));
            }
        }
        // 1 + 4 + 12 + 24 orderings.
        assert_eq!(m.feasible_strings().len(), 41);
    }

    #[test]
    fn explicit_rejects_malformed_sets() {
        assert!(SetMatroid::explicit(3, 2, vec![vec![0, 0]]).is_err());
        assert!(SetMatroid::explicit(3, 2, vec![vec![3]]).is_err());
        assert!(SetMatroid::explicit(3, 2, vec![vec![0, 1, 2]]).is_err());
        assert!(SetMatroid::uniform(0, 2).is_err());
        assert!(SetMatroid::uniform(2, 0).is_err());
    }

    #[test]
    fn axioms_hold_for_uniform_classes() {
        assert!(SetMatroid::uniform(5, 3).unwrap().check_axioms().is_clean());
        let s: MatroidSpec = SetMatroid::uniform(4, 3).unwrap().into();
        assert!(s.check_axioms(1_000_000).unwrap().is_clean());
        let u = MatroidSpec::uniform_string(3, 3).unwrap();
        assert!(u.check_axioms(1_000_000).unwrap().is_clean());
    }

    #[test]
    fn axiom_check_detects_non_matroid() {
        // {0,1} and {2} with no way to extend {2}: exchange fails.
        let bad = SetMatroid::explicit(3, 2, vec![vec![0], vec![1], vec![2], vec![0, 1]]).unwrap();
        let report = bad.check_axioms();
        assert!(report.hereditary.is_empty());
        assert!(!report.exchange.is_empty());
        let strings: MatroidSpec = bad.into();
        assert!(!strings.check_axioms(10_000).unwrap().exchange.is_empty());

        // {0,1} without {1}: not hereditary.
        let bad = SetMatroid::explicit(2, 2, vec![vec![0], vec![0, 1]]).unwrap();
        assert!(!bad.check_axioms().hereditary.is_empty());
        let strings: MatroidSpec = bad.into();
        assert!(!strings.check_axioms(10_000).unwrap().hereditary.is_empty());
    }

    #[test]
    fn oracle_matroid_enumeration() {
        // Partition matroid: at most one of {0,1}, at most one of {2,3}.
        let oracle: IndependenceOracle = Arc::new(|s: &[Action]| {
            s.iter().filter(|&&a| a < 2).count() <= 1 && s.iter().filter(|&&a| a >= 2).count() <= 1
        });
        let m = SetMatroid::with_oracle(4, 2, oracle).unwrap();
        assert!(m.check_axioms().is_clean());
        assert_eq!(m.independent_sets().len(), 1 + 4 + 4);
        let s: MatroidSpec = m.into();
        assert_eq!(s.feasible_actions(&[0].into()).unwrap(), vec![2, 3]);
    }

    #[test]
    fn enumeration_size_counts() {
        assert_eq!(SetMatroid::uniform(5, 2).unwrap().enumeration_size(), 1 + 5 + 10);
        assert_eq!(binomial(3000, 2), 3000 * 2999 / 2);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn axiom_check_respects_cap() {
        let m = MatroidSpec::uniform_string(10, 5).unwrap();
        assert!(matches!(m.check_axioms(1000), Err(Error::CapExceeded { .. })));
    }
}
