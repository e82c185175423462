//! Instance constructors: weighted coverage, tabulated set functions, random
//! generators for fuzzing, the lattice sensor-coverage benchmark, and the
//! JSON instance file format.

mod coverage;
mod file;
pub mod random;
pub mod sensor;
mod table;

pub use coverage::WeightedCoverage;
pub use file::{load_instance, parse_instance};
pub use random::{fuzz_coverage_instance, random_coverage_instance};
pub use sensor::{coverage_objective, detection_prob, event_mass, CoverageConfig, MassMode, SensorCoverage, SensorObjective};
pub use table::TableFunction;

use crate::matroid::MatroidSpec;
use crate::valuation::Valuation;

/// A valuation together with the string matroid it is maximized over.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: Option<String>,
    pub matroid: MatroidSpec,
    pub valuation: Valuation,
    /// Optional human-readable names, indexed by action identifier.
    pub labels: Option<Vec<String>>,
}

impl Instance {
    pub fn new(matroid: MatroidSpec, valuation: Valuation) -> Self {
        Self { name: None, matroid, valuation, labels: None }
    }

    pub fn rank(&self) -> usize {
        self.matroid.rank()
    }

    pub fn label(&self, action: usize) -> String {
        match &self.labels {
            Some(labels) => labels[action].clone(),
            None => action.to_string(),
        }
    }
}
