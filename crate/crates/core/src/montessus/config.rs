//! JSON configuration of a row experiment.
//!
//! ```json
//! {
//!   "spec": {"kind": "sum", "parts": [{"kind": "builtin", "name": "exp"},
//!                                     {"kind": "rational", "num": ["1"], "den": ["1", "-1"]}]},
//!   "p": 1, "n_min": 2, "n_max": 15,
//!   "grid": {"radius": 0.5},
//!   "precision": 53
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::{run_row_experiment, ConvergenceReport, GridSpec, MeromorphicSpec, Pole};
use crate::doc::SeriesDoc;
use crate::error::{Error, Result};
use crate::float::{ComplexF, FloatContext, Precision};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleDecl {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

fn one() -> usize {
    1
}

fn default_precision() -> u32 {
    53
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub spec: SeriesDoc,
    #[serde(default)]
    pub declared_poles: Option<Vec<PoleDecl>>,
    pub p: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub grid: GridSpec,
    #[serde(default = "default_precision")]
    pub precision: u32,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    pub fn meromorphic_spec(&self) -> Result<MeromorphicSpec> {
        let declared = self.declared_poles.as_ref().map(|d| {
            d.iter().map(|p| Pole { location: ComplexF::new(p.re, p.im), multiplicity: p.multiplicity }).collect()
        });
        MeromorphicSpec::from_doc(&self.spec, declared)
    }

    pub fn context(&self) -> Result<FloatContext> {
        Ok(FloatContext::with_precision(Precision::from_bits(self.precision)?))
    }

    pub fn run(&self) -> Result<ConvergenceReport> {
        run_row_experiment(&self.meromorphic_spec()?, self.p, self.n_min..=self.n_max, &self.grid, &self.context()?)
    }

    pub fn schema() -> serde_json::Value {
        serde_json::json!({
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "title": "row experiment",
            "type": "object",
            "required": ["spec", "p", "n_min", "n_max", "grid"],
            "additionalProperties": false,
            "properties": {
                "spec": {"$ref": "series"},
                "declared_poles": {"type": "array", "items": {
                    "type": "object", "required": ["re"], "additionalProperties": false,
                    "properties": {"re": {"type": "number"}, "im": {"type": "number"},
                                   "multiplicity": {"type": "integer", "minimum": 1}}}},
                "p": {"type": "integer", "minimum": 0},
                "n_min": {"type": "integer", "minimum": 0},
                "n_max": {"type": "integer", "minimum": 0},
                "grid": {
                    "type": "object", "required": ["radius"], "additionalProperties": false,
                    "properties": {
                        "radius": {"type": "number", "exclusiveMinimum": 0},
                        "rim_points": {"type": "integer", "default": 64},
                        "interior_circles": {"type": "integer", "default": 2},
                        "interior_points": {"type": "integer", "default": 32},
                        "exclusion_radius": {"type": ["number", "null"], "description": "defaults to 0.05 * radius"}
                    }
                },
                "precision": {"enum": [24, 53], "default": 53}
            }
        })
    }
}
