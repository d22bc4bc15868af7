//! Scenario files, CSV reports and the `cloudsched` command line on top of
//! [`cloudsched_core`].

pub mod cli;
pub mod report;
pub mod scenario_file;

pub use cli::{cmd_compare, cmd_run, cmd_sweep, CliError, RunConfig, ScenarioSource};
pub use scenario_file::{load_scenario, parse_scenario, save_scenario, scenario_to_json};
