//! JSON instance files.
//!
//! ```json
//! {
//!   "labels": ["A1", "A2", "A3"],
//!   "matroid": { "type": "uniform_set", "rank": 2 },
//!   "function": {
//!     "type": "weighted_coverage",
//!     "universe_weights": [1, 1, 1, 1],
//!     "sets": [[0, 1], [1, 2], [3]]
//!   }
//! }
//! ```
//!
//! Matroid types are `uniform_set`, `explicit_set` (with `independent_sets`)
//! and `uniform_string`; `ground_size` / `action_count` default to the size
//! implied by the function. Function types are `weighted_coverage`, `table`
//! (keys are comma-separated sorted action ids, `""` for the empty set) and
//! `additive` (per-action `weights`, summed with multiplicity).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::{Instance, TableFunction, WeightedCoverage};
use crate::error::{Error, Result};
use crate::matroid::{MatroidSpec, SetMatroid};
use crate::valuation::{string_extension, Additive, Valuation};

/// Tables are checked against every independent set only up to this many.
const TABLE_CHECK_LIMIT: u128 = 1_000_000;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    matroid: MatroidDoc,
    function: FunctionDoc,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum MatroidDoc {
    UniformSet {
        rank: usize,
        #[serde(default)]
        ground_size: Option<usize>,
    },
    ExplicitSet {
        rank: usize,
        #[serde(default)]
        ground_size: Option<usize>,
        independent_sets: Vec<Vec<usize>>,
    },
    UniformString {
        rank: usize,
        #[serde(default)]
        action_count: Option<usize>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum FunctionDoc {
    WeightedCoverage { universe_weights: Vec<f64>, sets: Vec<Vec<usize>> },
    Table { values: BTreeMap<String, f64> },
    Additive { weights: Vec<f64> },
}

enum Built {
    Coverage(WeightedCoverage),
    Table(TableFunction),
    Additive(Additive),
}

impl Built {
    fn action_count(&self) -> usize {
        match self {
            Built::Coverage(c) => c.set_count(),
            Built::Table(t) => t.max_item().map_or(0, |a| a + 1),
            Built::Additive(a) => a.weights.len(),
        }
    }
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text).map_err(|e| match e {
        Error::InvalidInstance(msg) => Error::InvalidInstance(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::InvalidInstance(e.to_string()))?;

    let function = match doc.function {
        FunctionDoc::WeightedCoverage { universe_weights, sets } => {
            Built::Coverage(WeightedCoverage::new(universe_weights, sets)?)
        }
        FunctionDoc::Table { values } => {
            let entries = values
                .into_iter()
                .map(|(k, v)| Ok((TableFunction::parse_key(&k)?, v)))
                .collect::<Result<Vec<_>>>()?;
            Built::Table(TableFunction::new(entries)?)
        }
        FunctionDoc::Additive { weights } => {
            if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
                return Err(Error::InvalidInstance(format!("additive weight {w} is not finite")));
            }
            Built::Additive(Additive { weights })
        }
    };
    let implied = function.action_count();

    let size = |declared: Option<usize>, field: &str| -> Result<usize> {
        match declared {
            Some(n) if n < implied => Err(Error::InvalidInstance(format!(
                "matroid.{field} = {n} but the function refers to {implied} actions"
            ))),
            Some(n) => Ok(n),
            None => Ok(implied),
        }
    };
    let matroid = match doc.matroid {
        MatroidDoc::UniformSet { rank, ground_size } => {
            SetMatroid::uniform(size(ground_size, "ground_size")?, rank)?.into()
        }
        MatroidDoc::ExplicitSet { rank, ground_size, independent_sets } => {
            SetMatroid::explicit(size(ground_size, "ground_size")?, rank, independent_sets)?.into()
        }
        MatroidDoc::UniformString { rank, action_count } => {
            MatroidSpec::uniform_string(size(action_count, "action_count")?, rank)?
        }
    };
    if let Built::Coverage(c) = &function {
        if c.set_count() != matroid.action_count() {
            return Err(Error::InvalidInstance(format!(
                "weighted_coverage has {} sets but the matroid has {} actions",
                c.set_count(),
                matroid.action_count()
            )));
        }
    }
    if let Built::Additive(a) = &function {
        if a.weights.len() != matroid.action_count() {
            return Err(Error::InvalidInstance(format!(
                "additive has {} weights but the matroid has {} actions",
                a.weights.len(),
                matroid.action_count()
            )));
        }
    }
    if let Built::Table(t) = &function {
        check_table_covers(t, &matroid)?;
    }

    if let Some(labels) = &doc.labels {
        if labels.len() != matroid.action_count() {
            return Err(Error::InvalidInstance(format!(
                "{} labels given for {} actions",
                labels.len(),
                matroid.action_count()
            )));
        }
    }

    let valuation = match function {
        Built::Coverage(c) => string_extension(c),
        Built::Table(t) => string_extension(t),
        Built::Additive(a) => Valuation::new(a),
    };
    Ok(Instance { name: doc.name, matroid, valuation, labels: doc.labels })
}

fn check_table_covers(table: &TableFunction, m: &MatroidSpec) -> Result<()> {
    let sets = match m {
        MatroidSpec::FromSetMatroid(sm) if sm.enumeration_size() <= TABLE_CHECK_LIMIT => sm.independent_sets(),
        MatroidSpec::UniformString { action_count, rank } => {
            let sm = SetMatroid::uniform(*action_count, *rank)?;
            if sm.enumeration_size() > TABLE_CHECK_LIMIT {
                return Ok(());
            }
            sm.independent_sets()
        }
        _ => return Ok(()),
    };
    match sets.iter().find(|s| !table.contains(s)) {
        Some(missing) => Err(Error::InvalidInstance(format!(
            "table has no value for independent set {:?}",
            missing.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        ))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::ActionSeq;

    #[test]
    fn coverage_instance() {
        let inst = parse_instance(
            r#"{"labels": ["A1","A2","A3"],
                "matroid": {"type": "uniform_set", "rank": 2},
                "function": {"type": "weighted_coverage", "universe_weights": [1,1,1,1], "sets": [[0,1],[1,2],[3]]}}"#,
        )
        .unwrap();
        assert_eq!(inst.rank(), 2);
        assert_eq!(inst.matroid.action_count(), 3);
        assert_eq!(inst.valuation.evaluate(&ActionSeq::from([0, 1])), 3.0);
        assert_eq!(inst.label(2), "A3");
    }

    #[test]
    fn table_instance_on_explicit_matroid() {
        let inst = parse_instance(
            r#"{"matroid": {"type": "explicit_set", "rank": 2, "independent_sets": [[0],[1],[2],[0,1],[1,2]]},
                "function": {"type": "table", "values": {"": 1, "0": 3, "1": 2, "2": 2, "0,1": 4, "1,2": 3.5}}}"#,
        )
        .unwrap();
        assert_eq!(inst.valuation.raw_empty_value(), 1.0);
        assert_eq!(inst.valuation.evaluate(&ActionSeq::from([1, 0])), 3.0);
    }

    #[test]
    fn table_must_cover_independent_sets() {
        let err = parse_instance(
            r#"{"matroid": {"type": "uniform_set", "rank": 2},
                "function": {"type": "table", "values": {"0": 1, "1": 1}}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("0,1"), "{err}");
    }

    #[test]
    fn errors_name_the_problem() {
        let err = parse_instance(r#"{"matroid": {"type": "uniform_set"}, "function": {}}"#).unwrap_err();
        assert!(err.to_string().contains("rank") || err.to_string().contains("line"), "{err}");

        let err = parse_instance("{\n  \"matroid\": 3\n}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");

        let err = parse_instance(
            r#"{"matroid": {"type": "uniform_set", "rank": 1, "ground_size": 1},
                "function": {"type": "weighted_coverage", "universe_weights": [1], "sets": [[0],[0]]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("ground_size"), "{err}");

        let err = parse_instance(
            r#"{"labels": ["a"], "matroid": {"type": "uniform_string", "rank": 1},
                "function": {"type": "additive", "weights": [1, 2]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("labels"), "{err}");
    }
}
