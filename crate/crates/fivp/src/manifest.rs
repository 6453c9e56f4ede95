//! Run manifests and numeric output formatting.
//!
//! Every command records what it ran — problem document, mesh parameters,
//! tolerances, output paths, tool version — so a run can be reproduced
//! bit-identically from its manifest (the wall-clock duration field is the
//! one value that varies between re-runs).

use serde::{Deserialize, Serialize};

use crate::param_plan::ParamPlan;
use crate::problems::ProblemSpec;

/// All floating-point output is printed with 17 significant digits so the
/// decimal text round-trips to the exact binary value.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeshParams {
    pub kind: String,
    pub t_end: f64,
    pub nodes: usize,
    pub grading: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_per_decade: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tolerances {
    pub step_abs: f64,
    pub step_rel: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<ParamPlan>,
    pub mesh: MeshParams,
    pub tolerances: Tolerances,
    pub outputs: Vec<String>,
    pub tool_version: String,
    pub duration_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl RunManifest {
    pub fn tool_version() -> String {
        env!("CARGO_PKG_VERSION").to_string()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serialization cannot fail")
    }
}
