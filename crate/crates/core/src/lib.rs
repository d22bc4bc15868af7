//! Cloudlet scheduling on virtual machines: three broker policies (first-come
//! first-served, round robin, generalized priority) and a deterministic
//! discrete-event engine that executes their plans space-shared or time-shared.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the `cloudsched` crate.
//!
//! ```
//! use cloudsched_core::{simulate, workload::builtin_scenario, Policy};
//!
//! let scenario = builtin_scenario("paper12-gpa").unwrap();
//! let (_, result) = simulate(&scenario, Policy::Gpa).unwrap();
//! assert_eq!(result.mean_cpu_time, 30.0);
//! assert_eq!(result.makespan, 80.0);
//! ```
#![cfg_attr(not(test), no_std)]
#![deny(missing_debug_implementations)]

extern crate alloc;

pub mod engine;
pub mod metrics;
pub mod model;
pub mod policies;
pub mod workload;

pub use engine::{
    ps_finish_times, run, run_space_shared, run_time_shared, CloudletRecord, EngineError,
    SimulationResult,
};
pub use metrics::{compare, summarize, Comparison, PolicyReport};
pub use model::{
    AssignmentPlan, Cloudlet, CloudletId, Datacenter, DatacenterId, ExecutionMode, Host, HostId,
    Policy, Scenario, ValidScenario, ValidationErrors, Violation, Vm, VmId,
};
pub use policies::{assign, assign_with, PolicyOutcome};

/// Assigns with `policy` and runs the plan in the outcome's mode.
pub fn simulate(
    scenario: &ValidScenario,
    policy: Policy,
) -> Result<(PolicyOutcome, SimulationResult), EngineError> {
    let outcome = assign_with(scenario, policy);
    let result = run(scenario, &outcome.plan, outcome.mode)?;
    Ok((outcome, result))
}
