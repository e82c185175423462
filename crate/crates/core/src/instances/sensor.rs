//! Discrete multi-sensor coverage on a rectangular lattice.
//!
//! Events occur at lattice points `x = (i, j)`, `1 ≤ i ≤ width`,
//! `1 ≤ j ≤ height`, with relative likelihood `R(x)`. A sensor at `s` detects
//! an event at `x` with probability `exp(-λ‖x - s‖)` when `‖x - s‖ ≤ δ` and 0
//! otherwise; sensors act independently, so a placement detects with
//! probability `1 - Π (1 - p(x, s_i))`. The objective is the mass-weighted
//! detection probability `H(s) = Σ_x R(x) p(x, s)`.
//!
//! Action `id` is the lattice point `((id % width) + 1, (id / width) + 1)`.

use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matroid::{MatroidSpec, SetMatroid};
use crate::seq::Action;
use crate::valuation::{string_extension, SetFunction, Valuation};

/// A lattice point `(x, y)`, 1-based.
pub type Point = (i64, i64);

#[derive(Debug, Clone, PartialEq)]
pub enum MassMode {
    /// `R(x, y) = (x + y) / (width + height)`.
    LinearCorner,
    /// `R ≡ 1`.
    Uniform,
    /// Row-major grid of `height` rows by `width` columns; row `j` holds the
    /// masses of lattice row `y = j + 1`.
    Raster(Arc<Vec<f64>>),
}

impl MassMode {
    /// Reads a raster CSV of `height` rows and `width` non-negative columns.
    pub fn raster_from_csv(path: &Path, width: usize, height: usize) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| match e.into_kind() {
                csv::ErrorKind::Io(io) => Error::Io(io),
                other => Error::InvalidConfig(format!("{other:?}")),
            })?;
        let mut values = Vec::with_capacity(width * height);
        let mut rows = 0;
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::InvalidConfig(format!("raster {}: {e}", path.display())))?;
            if record.len() != width {
                return Err(Error::InvalidConfig(format!(
                    "raster {} row {} has {} columns, expected {width}",
                    path.display(),
                    row + 1,
                    record.len()
                )));
            }
            for (col, field) in record.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| {
                    Error::InvalidConfig(format!("raster {} row {} column {}: {field:?} is not a number", path.display(), row + 1, col + 1))
                })?;
                values.push(v);
            }
            rows += 1;
        }
        if rows != height {
            return Err(Error::InvalidConfig(format!("raster {} has {rows} rows, expected {height}", path.display())));
        }
        Ok(MassMode::Raster(Arc::new(values)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageConfig {
    pub width: usize,
    pub height: usize,
    /// Number of sensors `K`.
    pub sensors: usize,
    /// Sensing radius `δ`, in lattice units.
    pub delta: f64,
    /// Decay rate `λ`.
    pub lambda: f64,
    pub mass: MassMode,
}

impl CoverageConfig {
    /// 60×50 lattice, 10 sensors, `δ = 15`, linear corner mass.
    pub fn benchmark(lambda: f64) -> Self {
        Self { width: 60, height: 50, sensors: 10, delta: 15.0, lambda, mass: MassMode::LinearCorner }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 || self.sensors == 0 {
            return Err(Error::InvalidConfig("width, height and K must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidConfig(format!("sensing radius must be positive, got {}", self.delta)));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!("decay rate must be non-negative, got {}", self.lambda)));
        }
        if self.sensors > self.point_count() {
            return Err(Error::InvalidConfig(format!(
                "K = {} exceeds the {} lattice points",
                self.sensors,
                self.point_count()
            )));
        }
        if let MassMode::Raster(values) = &self.mass {
            if values.len() != self.point_count() {
                return Err(Error::InvalidConfig(format!(
                    "raster holds {} values, lattice has {}",
                    values.len(),
                    self.point_count()
                )));
            }
            if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(Error::InvalidConfig(format!("raster mass {v} must be finite and non-negative")));
            }
        }
        Ok(())
    }

    pub fn point_count(&self) -> usize {
        self.width * self.height
    }

    pub fn point_of(&self, id: Action) -> Point {
        ((id % self.width) as i64 + 1, (id / self.width) as i64 + 1)
    }

    pub fn id_of(&self, (x, y): Point) -> Option<Action> {
        self.contains((x, y)).then(|| (y as usize - 1) * self.width + (x as usize - 1))
    }

    pub fn contains(&self, (x, y): Point) -> bool {
        (1..=self.width as i64).contains(&x) && (1..=self.height as i64).contains(&y)
    }
}

/// Event mass `R(x)` at a lattice point.
pub fn event_mass(cfg: &CoverageConfig, point: Point) -> Result<f64> {
    let id = cfg
        .id_of(point)
        .ok_or_else(|| Error::InvalidConfig(format!("point {point:?} is off the {}x{} lattice", cfg.width, cfg.height)))?;
    Ok(match &cfg.mass {
        MassMode::LinearCorner => (point.0 + point.1) as f64 / (cfg.width + cfg.height) as f64,
        MassMode::Uniform => 1.0,
        MassMode::Raster(values) => values[id],
    })
}

fn visible(dist_sq: i64, delta: f64) -> bool {
    dist_sq as f64 <= delta * delta
}

/// Probability that a sensor at `s` detects an event at `x`.
pub fn detection_prob(cfg: &CoverageConfig, x: Point, s: Point) -> f64 {
    let (dx, dy) = (x.0 - s.0, x.1 - s.1);
    let dist_sq = dx * dx + dy * dy;
    if visible(dist_sq, cfg.delta) {
        (-cfg.lambda * (dist_sq as f64).sqrt()).exp()
    } else {
        0.0
    }
}

/// `H` as a set function over lattice-point actions.
#[derive(Debug, Clone)]
pub struct SensorCoverage {
    cfg: CoverageConfig,
    mass: Vec<f64>,
    /// Offsets `(dx, dy, p)` inside the sensing disc; translation invariant,
    /// clipped to the lattice per sensor.
    stencil: Vec<(i64, i64, f64)>,
}

impl SensorCoverage {
    pub fn new(cfg: CoverageConfig) -> Result<Self> {
        cfg.validate()?;
        let mass = (0..cfg.point_count())
            .map(|id| event_mass(&cfg, cfg.point_of(id)))
            .collect::<Result<Vec<_>>>()?;
        let reach = cfg.delta.floor() as i64;
        let mut stencil = Vec::new();
        for dy in -reach..=reach {
            for dx in -reach..=reach {
                let p = detection_prob(&cfg, (dx, dy), (0, 0));
                if visible(dx * dx + dy * dy, cfg.delta) {
                    stencil.push((dx, dy, p));
                }
            }
        }
        Ok(Self { cfg, mass, stencil })
    }

    pub fn config(&self) -> &CoverageConfig {
        &self.cfg
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Visible lattice ids of a sensor with their detection probabilities.
    fn visibility(&self, sensor: Action) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (sx, sy) = self.cfg.point_of(sensor);
        self.stencil.iter().filter_map(move |&(dx, dy, p)| self.cfg.id_of((sx + dx, sy + dy)).map(|id| (id, p)))
    }

    /// Per-point probability that no sensor in `items` detects an event.
    fn survival(&self, items: &[Action]) -> Vec<f64> {
        let mut survival = vec![1.0; self.mass.len()];
        for &s in items {
            for (id, p) in self.visibility(s) {
                survival[id] *= 1.0 - p;
            }
        }
        survival
    }

    /// `H` accumulated one sensor at a time through the survival cache.
    pub fn value_incremental(&self, items: &[Action]) -> f64 {
        let mut survival = vec![1.0; self.mass.len()];
        let mut total = 0.0;
        for &s in items {
            for (id, p) in self.visibility(s) {
                total += self.mass[id] * survival[id] * p;
                survival[id] *= 1.0 - p;
            }
        }
        total
    }
}

impl SetFunction for SensorCoverage {
    /// Direct evaluation over every lattice point and every sensor.
    fn value(&self, items: &[Action]) -> f64 {
        let sensors: Vec<Point> = items.iter().map(|&s| self.cfg.point_of(s)).collect();
        (0..self.mass.len())
            .map(|id| {
                let x = self.cfg.point_of(id);
                let miss: f64 = sensors.iter().map(|&s| 1.0 - detection_prob(&self.cfg, x, s)).product();
                self.mass[id] * (1.0 - miss)
            })
            .sum()
    }

    fn gains(&self, base: &[Action], candidates: &[Action]) -> Vec<f64> {
        let survival = self.survival(base);
        candidates
            .par_iter()
            .map(|&a| self.visibility(a).map(|(id, p)| self.mass[id] * survival[id] * p).sum())
            .collect()
    }
}

/// The benchmark problem: `H` over a uniform set matroid of rank `K` on the
/// lattice points.
#[derive(Debug, Clone)]
pub struct SensorObjective {
    pub function: Arc<SensorCoverage>,
    pub valuation: Valuation,
    pub matroid: MatroidSpec,
}

pub fn coverage_objective(cfg: &CoverageConfig) -> Result<SensorObjective> {
    let function = Arc::new(SensorCoverage::new(cfg.clone())?);
    let valuation = string_extension(Arc::clone(&function));
    let matroid = SetMatroid::uniform(cfg.point_count(), cfg.sensors)?.into();
    Ok(SensorObjective { function, valuation, matroid })
}
