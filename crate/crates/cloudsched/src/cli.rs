//! `cloudsched run | compare | sweep`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use cloudsched_core::metrics::{compare, summarize, MetricsError};
use cloudsched_core::workload::{
    builtin_scenario, generate, GeneratorSpec, LengthDistribution, BUILTIN_MIPS_FCFS,
};
use cloudsched_core::{
    simulate, Policy, PolicyOutcome, PolicyReport, SimulationResult, ValidScenario,
};

use crate::report::{self, Format, SweepRow};
use crate::scenario_file::{load_scenario, ScenarioFileError};

/// Expands to `paper12-fcfs`, `paper12-rr` and `paper12-gpa`, one per policy.
pub const PAPER_SUITE: &str = "paper12";

pub const DEFAULT_SWEEP_COUNTS: [u32; 5] = [100, 200, 300, 400, 500];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioFileError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("{0}")]
    Simulation(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for bad input, 2 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Scenario(ScenarioFileError::Io { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSource {
    Builtin(String),
    File(PathBuf),
    Generate {
        spec: GeneratorSpec,
        vm_mips: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: ScenarioSource,
    /// May repeat a policy; `compare` then reports it twice.
    pub policies: Vec<Policy>,
    pub out_dir: PathBuf,
    pub formats: Vec<Format>,
    /// Replaces the generator seed.
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(source: ScenarioSource, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            source,
            policies: Policy::ALL.to_vec(),
            out_dir: out_dir.into(),
            formats: vec![Format::Csv],
            seed: None,
        }
    }

    fn check(&self) -> Result<(), CliError> {
        if self.policies.is_empty() {
            return Err(CliError::Usage("at least one policy is required".into()));
        }
        Ok(())
    }

    /// The scenario `policy` runs on.
    pub fn scenario_for(&self, policy: Policy) -> Result<ValidScenario, CliError> {
        let scenario = match &self.source {
            ScenarioSource::Builtin(name) if name == PAPER_SUITE => {
                builtin_scenario(&format!("{PAPER_SUITE}-{policy}"))
                    .map_err(|e| CliError::Usage(e.to_string()))?
            }
            ScenarioSource::Builtin(name) => {
                builtin_scenario(name).map_err(|e| CliError::Usage(e.to_string()))?
            }
            ScenarioSource::File(path) => load_scenario(path)?,
            ScenarioSource::Generate { spec, vm_mips } => {
                let mut spec = spec.clone();
                if let Some(seed) = self.seed {
                    spec.seed = seed;
                }
                generate(&spec, vm_mips).map_err(|e| CliError::Usage(e.to_string()))?
            }
        };
        Ok(scenario.with_policy(policy))
    }
}

/// Everything produced for one policy.
#[derive(Debug, Clone)]
pub struct PolicyRun {
    pub outcome: PolicyOutcome,
    pub result: SimulationResult,
    pub report: PolicyReport,
}

fn execute(scenario: &ValidScenario, policy: Policy) -> Result<PolicyRun, CliError> {
    let (outcome, result) =
        simulate(scenario, policy).map_err(|e| CliError::Simulation(e.to_string()))?;
    let report = summarize(policy, &result)?;
    Ok(PolicyRun {
        outcome,
        result,
        report,
    })
}

/// Runs every requested policy on its scenario.
pub fn execute_all(config: &RunConfig) -> Result<Vec<PolicyRun>, CliError> {
    config.check()?;
    config
        .policies
        .iter()
        .map(|&p| execute(&config.scenario_for(p)?, p))
        .collect()
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    let io = |path: &Path| {
        let path = path.to_owned();
        move |source| CliError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(io(&path))?;
    Ok(path)
}

fn print_pretty(title: &str, bytes: &[u8]) {
    let mut out = std::io::stdout().lock();
    // Console output is best effort; a closed pipe is not an error worth an exit code.
    let _ = writeln!(out, "== {title}");
    let _ = write!(out, "{}", report::pretty_from_delimited(bytes, b','));
}

/// Writes `<policy>.csv` (records plus a mean row) and `<policy>_plan.csv` per policy.
pub fn cmd_run(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    let runs = execute_all(config)?;
    let mut written = Vec::new();
    for run in &runs {
        let policy = run.outcome.policy;
        for &format in &config.formats {
            match format.delimited() {
                Some((delim, ext)) => {
                    written.push(write_file(
                        &config.out_dir,
                        &format!("{policy}.{ext}"),
                        &report::records_table(&run.result, delim),
                    )?);
                    written.push(write_file(
                        &config.out_dir,
                        &format!("{policy}_plan.{ext}"),
                        &report::plan_table(&run.outcome, delim),
                    )?);
                }
                None => {
                    print_pretty(
                        &format!("{policy} ({})", run.outcome.mode),
                        &report::records_table(&run.result, b','),
                    );
                    let vms: Vec<String> = run
                        .outcome
                        .vm_ranking
                        .iter()
                        .map(|v| v.0.to_string())
                        .collect();
                    println!("vm order: {}", vms.join(" "));
                }
            }
        }
    }
    Ok(written)
}

/// Writes `compare.<ext>` and the plot data file `compare.dat`.
pub fn cmd_compare(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    if config.policies.len() < 2 {
        return Err(CliError::Usage(format!(
            "need >= 2 policies to compare, got {}",
            config.policies.len()
        )));
    }
    let runs = execute_all(config)?;
    let reports: Vec<PolicyReport> = runs.into_iter().map(|r| r.report).collect();
    let comparison = compare(&reports)?;

    let mut written = Vec::new();
    for &format in &config.formats {
        match format.delimited() {
            Some((delim, ext)) => written.push(write_file(
                &config.out_dir,
                &format!("compare.{ext}"),
                &report::comparison_table(&comparison, delim),
            )?),
            None => print_pretty("compare", &report::comparison_table(&comparison, b',')),
        }
    }
    written.push(write_file(
        &config.out_dir,
        "compare.dat",
        report::comparison_plot_data(&comparison).as_bytes(),
    )?);
    Ok(written)
}

/// Seed used for the scenario with `n` cloudlets.
pub fn sweep_seed(seed: u64, n: u32) -> u64 {
    seed.wrapping_add(u64::from(n))
}

/// Generates, runs and summarizes every `(count, policy)` pair.
pub fn sweep_rows(config: &RunConfig, counts: &[u32]) -> Result<Vec<SweepRow>, CliError> {
    config.check()?;
    if counts.is_empty() {
        return Err(CliError::Usage(
            "sweep needs at least one task count".into(),
        ));
    }
    let ScenarioSource::Generate { spec, vm_mips } = &config.source else {
        return Err(CliError::Usage(
            "sweep needs a generated workload, not a fixed scenario".into(),
        ));
    };
    let base_seed = config.seed.unwrap_or(spec.seed);

    let mut rows = Vec::with_capacity(counts.len() * config.policies.len());
    for &n in counts {
        let spec = GeneratorSpec {
            n_tasks: n,
            lengths: spec.lengths.clone(),
            seed: sweep_seed(base_seed, n),
        };
        let scenario = generate(&spec, vm_mips).map_err(|e| CliError::Usage(e.to_string()))?;
        for &policy in &config.policies {
            let started = Instant::now();
            let run = execute(&scenario, policy)?;
            let wall_clock_ms = started.elapsed().as_secs_f64() * 1e3;
            rows.push(SweepRow {
                n,
                policy,
                mean_cpu_time: run.report.mean_cpu_time,
                makespan: run.report.makespan,
                wall_clock_ms,
            });
        }
    }
    Ok(rows)
}

/// Writes `sweep.<ext>` (deterministic) and `sweep_timing.<ext>` (wall clock).
pub fn cmd_sweep(config: &RunConfig, counts: &[u32]) -> Result<Vec<PathBuf>, CliError> {
    let rows = sweep_rows(config, counts)?;
    let mut written = Vec::new();
    for &format in &config.formats {
        match format.delimited() {
            Some((delim, ext)) => {
                written.push(write_file(
                    &config.out_dir,
                    &format!("sweep.{ext}"),
                    &report::sweep_table(&rows, delim),
                )?);
                written.push(write_file(
                    &config.out_dir,
                    &format!("sweep_timing.{ext}"),
                    &report::sweep_timing_table(&rows, delim),
                )?);
            }
            None => print_pretty("sweep", &report::sweep_table(&rows, b',')),
        }
    }
    Ok(written)
}

/// Parses `20000:5,10000:7` (weighted), `urn:20000:5,10000:7` (without
/// replacement) or `uniform:MIN:MAX`.
pub fn parse_lengths(text: &str) -> Result<LengthDistribution, String> {
    let pairs = |body: &str| -> Result<Vec<(f64, u32)>, String> {
        body.split(',')
            .map(|item| {
                let (len, w) = item
                    .split_once(':')
                    .ok_or_else(|| format!("expected LENGTH:WEIGHT, got \"{item}\""))?;
                let len: f64 = len.trim().parse().map_err(|e| format!("{len}: {e}"))?;
                let w: u32 = w.trim().parse().map_err(|e| format!("{w}: {e}"))?;
                Ok((len, w))
            })
            .collect()
    };
    if let Some(range) = text.strip_prefix("uniform:") {
        let (min, max) = range
            .split_once(':')
            .ok_or_else(|| format!("expected uniform:MIN:MAX, got \"{text}\""))?;
        let min_mi = min.parse().map_err(|e| format!("{min}: {e}"))?;
        let max_mi = max.parse().map_err(|e| format!("{max}: {e}"))?;
        Ok(LengthDistribution::Uniform { min_mi, max_mi })
    } else if let Some(body) = text.strip_prefix("urn:") {
        Ok(LengthDistribution::Urn(pairs(body)?))
    } else {
        Ok(LengthDistribution::Weighted(pairs(text)?))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cloudsched",
    version,
    about = "Cloud task-scheduling simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run each policy and write per-cloudlet tables.
    Run(CommonArgs),
    /// Run several policies on the same workload and compare their summaries.
    Compare(CommonArgs),
    /// Generate workloads of increasing size and summarize every policy on each.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Task counts to generate.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SWEEP_COUNTS)]
        counts: Vec<u32>,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Built-in scenario: paper12-fcfs, paper12-rr, paper12-gpa, or paper12 for
    /// each policy on its own variant.
    #[arg(long, group = "source")]
    builtin: Option<String>,
    /// Scenario JSON document.
    #[arg(long, group = "source")]
    scenario: Option<PathBuf>,
    /// Generate a workload with this many cloudlets.
    #[arg(long, group = "source")]
    generate: Option<u32>,
    /// Policies to run, comma separated.
    #[arg(long, value_delimiter = ',')]
    policy: Vec<Policy>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = "CLOUDSCHED_OUT", default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv")]
    format: Vec<Format>,
    /// Length distribution for generated workloads: `20000:5,10000:7`,
    /// `urn:20000:5,10000:7` or `uniform:MIN:MAX`.
    #[arg(long, value_parser = parse_lengths)]
    lengths: Option<LengthDistribution>,
    /// VM MIPS for generated workloads, in creation order.
    #[arg(long, value_delimiter = ',', default_values_t = BUILTIN_MIPS_FCFS)]
    vm_mips: Vec<f64>,
}

impl CommonArgs {
    fn into_config(self, default_generate: Option<u32>) -> RunConfig {
        let generated = |n: u32| ScenarioSource::Generate {
            spec: GeneratorSpec {
                n_tasks: n,
                lengths: self.lengths.clone().unwrap_or_default(),
                seed: 0,
            },
            vm_mips: self.vm_mips.clone(),
        };
        let source = match (self.builtin.clone(), self.scenario.clone(), self.generate) {
            (Some(name), _, _) => ScenarioSource::Builtin(name),
            (_, Some(path), _) => ScenarioSource::File(path),
            (_, _, Some(n)) => generated(n),
            _ => match default_generate {
                Some(n) => generated(n),
                None => ScenarioSource::Builtin(PAPER_SUITE.into()),
            },
        };
        RunConfig {
            source,
            policies: if self.policy.is_empty() {
                Policy::ALL.to_vec()
            } else {
                self.policy
            },
            out_dir: self.out,
            formats: self.format,
            seed: self.seed,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(&args.into_config(None)),
        Command::Compare(args) => cmd_compare(&args.into_config(None)),
        Command::Sweep { common, counts } => cmd_sweep(&common.into_config(Some(1)), &counts),
    };
    match outcome {
        Ok(paths) => {
            for p in paths {
                eprintln!("wrote {}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_syntax() {
        assert_eq!(
            parse_lengths("20000:5,10000:7").unwrap(),
            LengthDistribution::default()
        );
        assert_eq!(
            parse_lengths("urn:1:2").unwrap(),
            LengthDistribution::Urn(vec![(1.0, 2)])
        );
        assert_eq!(
            parse_lengths("uniform:500:1500").unwrap(),
            LengthDistribution::Uniform {
                min_mi: 500,
                max_mi: 1500
            }
        );
        assert!(parse_lengths("uniform:5").is_err());
        assert!(parse_lengths("20000").is_err());
    }

    #[test]
    fn suite_maps_policy_to_variant() {
        let config = RunConfig::new(ScenarioSource::Builtin(PAPER_SUITE.into()), "unused");
        let rr = config.scenario_for(Policy::Rr).unwrap();
        assert_eq!(rr.vms[4].mips, 1000.0);
        assert_eq!(rr.policy, Policy::Rr);
        let gpa = config.scenario_for(Policy::Gpa).unwrap();
        assert_eq!(gpa.vms[0].mips, 1000.0);
    }

    #[test]
    fn seed_override_reaches_the_generator() {
        let mut config = RunConfig::new(
            ScenarioSource::Generate {
                spec: GeneratorSpec::new(50, 1),
                vm_mips: BUILTIN_MIPS_FCFS.to_vec(),
            },
            "unused",
        );
        let a = config.scenario_for(Policy::Fcfs).unwrap();
        config.seed = Some(2);
        let b = config.scenario_for(Policy::Fcfs).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        let io = CliError::Io {
            path: "x".into(),
            source: std::io::Error::other("boom"),
        };
        assert_eq!(io.exit_code(), 2);
    }

    #[test]
    fn sweep_rejects_empty_counts_and_fixed_scenarios() {
        let gen = RunConfig::new(
            ScenarioSource::Generate {
                spec: GeneratorSpec::new(1, 0),
                vm_mips: BUILTIN_MIPS_FCFS.to_vec(),
            },
            "unused",
        );
        assert!(matches!(sweep_rows(&gen, &[]), Err(CliError::Usage(_))));
        let fixed = RunConfig::new(ScenarioSource::Builtin("paper12-gpa".into()), "unused");
        assert!(matches!(sweep_rows(&fixed, &[10]), Err(CliError::Usage(_))));
    }
}
