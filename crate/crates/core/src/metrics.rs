//! Per-policy summaries and side-by-side comparison.

use alloc::vec::Vec;
use core::fmt;

use crate::engine::SimulationResult;
use crate::model::{AssignmentPlan, ExecutionMode, Policy, ValidScenario, VmId};

#[derive(Debug, Clone, PartialEq)]
pub struct VmReport {
    pub vm_id: VmId,
    pub busy_time: f64,
    /// `busy_time / makespan`.
    pub utilization: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyReport {
    pub policy: Policy,
    pub mode: ExecutionMode,
    pub n_cloudlets: usize,
    pub mean_cpu_time: f64,
    pub mean_completion_time: f64,
    pub makespan: f64,
    pub vms: Vec<VmReport>,
    pub total_work: f64,
}

impl PolicyReport {
    /// The time a policy is judged by: CPU time for space-shared runs, completion
    /// time for time-shared runs.
    pub fn headline(&self) -> f64 {
        match self.mode {
            ExecutionMode::SpaceShared => self.mean_cpu_time,
            ExecutionMode::TimeShared => self.mean_completion_time,
        }
    }

    pub fn mean_utilization(&self) -> f64 {
        if self.vms.is_empty() {
            return 0.0;
        }
        self.vms.iter().map(|v| v.utilization).sum::<f64>() / self.vms.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricsError {
    EmptyResult,
    TooFewReports(usize),
    MismatchedCloudlets {
        expected: usize,
        found: usize,
        policy: Policy,
    },
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::EmptyResult => f.write_str("cannot summarize an empty result"),
            MetricsError::TooFewReports(n) => {
                write!(f, "need at least 2 policies to compare, got {n}")
            }
            MetricsError::MismatchedCloudlets {
                expected,
                found,
                policy,
            } => write!(
                f,
                "{policy} ran {found} cloudlets but the first report ran {expected}"
            ),
        }
    }
}

impl core::error::Error for MetricsError {}

/// Aggregates a run. Nothing is rounded.
pub fn summarize(policy: Policy, result: &SimulationResult) -> Result<PolicyReport, MetricsError> {
    if result.records.is_empty() {
        return Err(MetricsError::EmptyResult);
    }
    let n = result.records.len();
    let mean_cpu_time = result.records.iter().map(|r| r.cpu_time).sum::<f64>() / n as f64;
    let mean_completion_time = result
        .records
        .iter()
        .map(|r| r.completion_time())
        .sum::<f64>()
        / n as f64;
    let makespan = result
        .records
        .iter()
        .map(|r| r.finish_time)
        .fold(0.0, f64::max);
    let total_work = result.records.iter().map(|r| r.length).sum();
    let vms = result
        .vms
        .iter()
        .map(|u| VmReport {
            vm_id: u.vm_id,
            busy_time: u.busy_time,
            utilization: u.busy_time / makespan,
        })
        .collect();

    Ok(PolicyReport {
        policy,
        mode: result.mode,
        n_cloudlets: n,
        mean_cpu_time,
        mean_completion_time,
        makespan,
        vms,
        total_work,
    })
}

/// `Σ length / mips` over the plan, divided by the cloudlet count, summed in
/// arrival order. Equals the space-shared mean CPU time without running the engine.
pub fn plan_mean_cpu_time(scenario: &ValidScenario, plan: &AssignmentPlan) -> Option<f64> {
    let cloudlets = scenario.cloudlets_in_arrival_order();
    let mut total = 0.0;
    for c in &cloudlets {
        let vm = scenario.vm(plan.vm_of(c.id)?)?;
        total += c.length / vm.mips;
    }
    Some(total / cloudlets.len() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub report: PolicyReport,
    /// Reduction of [`PolicyReport::headline`] relative to the first row, in percent.
    pub improvement_pct: f64,
    pub makespan_improvement_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

fn improvement(base: f64, value: f64) -> f64 {
    if base == 0.0 {
        0.0
    } else {
        (base - value) / base * 100.0
    }
}

/// Lines reports up against the first one.
pub fn compare(reports: &[PolicyReport]) -> Result<Comparison, MetricsError> {
    let [first, ..] = reports else {
        return Err(MetricsError::TooFewReports(0));
    };
    if reports.len() < 2 {
        return Err(MetricsError::TooFewReports(reports.len()));
    }
    if let Some(bad) = reports.iter().find(|r| r.n_cloudlets != first.n_cloudlets) {
        return Err(MetricsError::MismatchedCloudlets {
            expected: first.n_cloudlets,
            found: bad.n_cloudlets,
            policy: bad.policy,
        });
    }
    let rows = reports
        .iter()
        .map(|r| ComparisonRow {
            report: r.clone(),
            improvement_pct: improvement(first.headline(), r.headline()),
            makespan_improvement_pct: improvement(first.makespan, r.makespan),
        })
        .collect();
    Ok(Comparison { rows })
}
