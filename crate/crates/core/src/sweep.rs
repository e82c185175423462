//! Decay-rate sweep of the lattice sensor-coverage benchmark.

use rayon::prelude::*;

use crate::bounds::bound_report;
use crate::error::{Error, Result};
use crate::greedy::run_greedy;
use crate::instances::{coverage_objective, CoverageConfig};
use crate::report::SweepRow;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Lattice, sensors, radius and mass; `lambda` is overwritten per row.
    pub base: CoverageConfig,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_steps: usize,
}

impl SweepConfig {
    /// 60×50 lattice, 10 sensors, `δ = 15`, 21 log-spaced rates in `[0.01, 2]`.
    pub fn benchmark() -> Self {
        Self { base: CoverageConfig::benchmark(0.0), lambda_min: 0.01, lambda_max: 2.0, lambda_steps: 21 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda_steps == 0 {
            return Err(Error::InvalidConfig("lambda-steps must be at least 1".into()));
        }
        if !(self.lambda_min > 0.0 && self.lambda_max >= self.lambda_min && self.lambda_max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < lambda-min <= lambda-max, got [{}, {}]",
                self.lambda_min, self.lambda_max
            )));
        }
        self.base.validate()
    }

    /// Log-spaced decay rates from `lambda_min` to `lambda_max` inclusive.
    pub fn lambdas(&self) -> Vec<f64> {
        if self.lambda_steps == 1 {
            return vec![self.lambda_min];
        }
        let ratio = self.lambda_max / self.lambda_min;
        let last = (self.lambda_steps - 1) as f64;
        (0..self.lambda_steps)
            .map(|i| match i {
                0 => self.lambda_min,
                i if i == self.lambda_steps - 1 => self.lambda_max,
                i => self.lambda_min * ratio.powf(i as f64 / last),
            })
            .collect()
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    cfg.lambdas()
        .into_par_iter()
        .map(|lambda| {
            let point = CoverageConfig { lambda, ..cfg.base.clone() };
            let objective = coverage_objective(&point)?;
            let trace = run_greedy(&objective.valuation, &objective.matroid, point.sensors)?;
            let report = bound_report(&trace, &objective.matroid)?;
            Ok(SweepRow { lambda, delta: point.delta, report })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_grid_is_log_spaced() {
        let cfg = SweepConfig::benchmark();
        let l = cfg.lambdas();
        assert_eq!(l.len(), 21);
        assert_eq!(l[0], 0.01);
        assert_eq!(l[20], 2.0);
        let r = l[1] / l[0];
        for w in l.windows(2) {
            assert!((w[1] / w[0] - r).abs() < 1e-12);
        }
    }

    #[test]
    fn single_step_grid() {
        let cfg = SweepConfig { lambda_steps: 1, ..SweepConfig::benchmark() };
        assert_eq!(cfg.lambdas(), vec![0.01]);
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut cfg = SweepConfig::benchmark();
        cfg.lambda_min = 0.0;
        assert!(cfg.validate().is_err());
        cfg.lambda_min = 3.0;
        assert!(cfg.validate().is_err());
        cfg.lambda_min = 0.1;
        cfg.lambda_steps = 0;
        assert!(cfg.validate().is_err());
    }
}
