use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::RunConfig;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub heightgap: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// The JSON document every command prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    /// Results resting on unverified hypotheses say so here.
    pub assumptions: Vec<String>,
    pub warnings: Vec<String>,
    pub config: RunConfig,
    pub versions: Versions,
    pub timing: Timing,
}

pub struct ReportBuilder {
    command: String,
    config: RunConfig,
    start: Instant,
    pub assumptions: Vec<String>,
    pub warnings: Vec<String>,
}

impl ReportBuilder {
    pub fn new(command: &str, config: &RunConfig) -> ReportBuilder {
        ReportBuilder {
            command: command.into(),
            config: config.clone(),
            start: Instant::now(),
            assumptions: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn finish(self, inputs: Value, outputs: Value) -> Report {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: self.command,
            inputs,
            outputs,
            assumptions: self.assumptions,
            warnings: self.warnings,
            config: self.config,
            versions: Versions { heightgap: env!("CARGO_PKG_VERSION").into() },
            timing: Timing { elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3 },
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON with the timing field zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Report {
        Report { timing: Timing { elapsed_ms: 0.0 }, ..self.clone() }
    }
}
