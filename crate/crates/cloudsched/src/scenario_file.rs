//! JSON scenario documents.
//!
//! A document is one object with the keys `datacenters`, `vms`, `cloudlets`,
//! `policy` and, optionally, `execution_mode`. Unknown keys are rejected.

use std::fs;
use std::path::{Path, PathBuf};

use cloudsched_core::{Scenario, ValidScenario, ValidationErrors};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario: {0}")]
    Invalid(#[from] ValidationErrors),
}

impl From<serde_json::Error> for ScenarioFileError {
    fn from(e: serde_json::Error) -> Self {
        ScenarioFileError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<ValidScenario, ScenarioFileError> {
    let scenario: Scenario = serde_json::from_str(text)?;
    Ok(scenario.validate()?)
}

pub fn load_scenario(path: &Path) -> Result<ValidScenario, ScenarioFileError> {
    let text = fs::read_to_string(path).map_err(|source| ScenarioFileError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_scenario(&text)
}

/// Pretty-printed JSON with a trailing newline.
pub fn scenario_to_json(scenario: &Scenario) -> String {
    let mut s = serde_json::to_string_pretty(scenario).expect("scenarios always serialize");
    s.push('\n');
    s
}

pub fn save_scenario(scenario: &Scenario, path: &Path) -> std::io::Result<()> {
    fs::write(path, scenario_to_json(scenario))
}
