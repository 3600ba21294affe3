use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::float::ComplexF;

/// Sampling of the closed disk `|z| ≤ radius`: `rim_points` on the rim and
/// `interior_points` spread evenly over `interior_circles` circles of radii
/// `r·k/(c+1)`. Points within `exclusion_radius` of a pole are dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub radius: f64,
    #[serde(default = "default_rim")]
    pub rim_points: usize,
    #[serde(default = "default_circles")]
    pub interior_circles: usize,
    #[serde(default = "default_interior")]
    pub interior_points: usize,
    /// Defaults to `0.05 · radius`.
    #[serde(default)]
    pub exclusion_radius: Option<f64>,
}

fn default_rim() -> usize {
    64
}
fn default_circles() -> usize {
    2
}
fn default_interior() -> usize {
    32
}

impl GridSpec {
    pub fn disk(radius: f64) -> Self {
        GridSpec {
            radius,
            rim_points: default_rim(),
            interior_circles: default_circles(),
            interior_points: default_interior(),
            exclusion_radius: None,
        }
    }

    pub fn exclusion(&self) -> f64 {
        self.exclusion_radius.unwrap_or(0.05 * self.radius)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidSpec("grid radius must be positive and finite".into()));
        }
        if !(self.exclusion() >= 0.0 && self.exclusion().is_finite()) {
            return Err(Error::InvalidSpec("exclusion radius must be nonnegative".into()));
        }
        if self.rim_points == 0 && (self.interior_circles == 0 || self.interior_points == 0) {
            return Err(Error::InvalidSpec("grid has no points".into()));
        }
        Ok(())
    }

    pub fn build(&self, poles: &[ComplexF]) -> Result<Grid> {
        self.validate()?;
        let mut raw = circle(self.radius, self.rim_points, 0.0);
        if self.interior_circles > 0 {
            let per = self.interior_points / self.interior_circles;
            let extra = self.interior_points % self.interior_circles;
            for k in 1..=self.interior_circles {
                let r = self.radius * k as f64 / (self.interior_circles + 1) as f64;
                let count = per + usize::from(k <= extra);
                // Offset each circle by half a step so rays do not line up.
                raw.extend(circle(r, count, 0.5));
            }
        }
        let delta = self.exclusion();
        let total = raw.len();
        let points: Vec<ComplexF> =
            raw.into_iter().filter(|z| poles.iter().all(|w| (z - w).norm() > delta)).collect();
        let excluded = total - points.len();
        if points.is_empty() {
            return Err(Error::InvalidSpec("every grid point falls inside an exclusion disk".into()));
        }
        Ok(Grid { points, excluded })
    }
}

fn circle(r: f64, count: usize, phase: f64) -> Vec<ComplexF> {
    (0..count).map(|j| ComplexF::from_polar(r, 2.0 * PI * (j as f64 + phase) / count as f64)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub points: Vec<ComplexF>,
    /// Points dropped by the exclusion disks.
    pub excluded: usize,
}
