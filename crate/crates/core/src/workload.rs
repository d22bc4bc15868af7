//! Built-in experiment scenarios and the seeded synthetic generator.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{
    Cloudlet, Datacenter, DatacenterId, Host, HostId, Policy, Scenario, ValidScenario, Vm,
};

/// Cloudlet lengths (MI) of the twelve-task experiment, in arrival order.
pub const BUILTIN_LENGTHS: [f64; 12] = [
    20000.0, 10000.0, 20000.0, 10000.0, 10000.0, 20000.0, 10000.0, 20000.0, 10000.0, 10000.0,
    20000.0, 10000.0,
];

/// VM MIPS in creation order, as used for the FCFS runs.
pub const BUILTIN_MIPS_FCFS: [f64; 5] = [250.0, 1000.0, 250.0, 500.0, 250.0];
/// The round-robin ring, slowest first.
pub const BUILTIN_MIPS_RR: [f64; 5] = [250.0, 250.0, 250.0, 500.0, 1000.0];
/// VM MIPS for the priority runs, fastest first.
pub const BUILTIN_MIPS_GPA: [f64; 5] = [1000.0, 500.0, 250.0, 250.0, 250.0];

pub const BUILTIN_VM_RAM_MB: u32 = 512;

pub const BUILTIN_NAMES: [&str; 3] = ["paper12-fcfs", "paper12-rr", "paper12-gpa"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownBuiltin(pub String);

impl fmt::Display for UnknownBuiltin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown builtin scenario \"{}\" (expected one of {})",
            self.0,
            BUILTIN_NAMES.join(", ")
        )
    }
}

impl core::error::Error for UnknownBuiltin {}

fn builtin_datacenters() -> Vec<Datacenter> {
    // Each host takes 1500 MIPS and four 512 MB VMs, which lands the first VMs of
    // every built-in ordering in datacenter 2 and the rest in datacenter 3.
    [(2, 1), (3, 2)]
        .into_iter()
        .map(|(dc, host)| Datacenter {
            id: DatacenterId(dc),
            hosts: alloc::vec![Host {
                id: HostId(host),
                datacenter_id: DatacenterId(dc),
                total_mips: 1500.0,
                ram_mb: 2048,
                storage_mb: 1_000_000,
            }],
        })
        .collect()
}

fn twelve_cloudlet_scenario(mips: &[f64], policy: Policy) -> ValidScenario {
    Scenario {
        datacenters: builtin_datacenters(),
        vms: mips
            .iter()
            .enumerate()
            .map(|(i, &m)| Vm::new(i as u32 + 1, m, BUILTIN_VM_RAM_MB))
            .collect(),
        cloudlets: BUILTIN_LENGTHS
            .iter()
            .enumerate()
            .map(|(i, &len)| Cloudlet::new(i as u32 + 1, len, i as u32))
            .collect(),
        policy,
        execution_mode: None,
    }
    .validate()
    .expect("built-in scenarios are valid")
}

/// One of the twelve-cloudlet, five-VM experiment setups.
///
/// The three share cloudlets and hosts and differ in VM order and policy:
/// `paper12-fcfs` (250, 1000, 250, 500, 250), `paper12-rr` (250, 250, 250, 500, 1000)
/// and `paper12-gpa` (1000, 500, 250, 250, 250).
pub fn builtin_scenario(name: &str) -> Result<ValidScenario, UnknownBuiltin> {
    match name {
        "paper12-fcfs" => Ok(twelve_cloudlet_scenario(&BUILTIN_MIPS_FCFS, Policy::Fcfs)),
        "paper12-rr" => Ok(twelve_cloudlet_scenario(&BUILTIN_MIPS_RR, Policy::Rr)),
        "paper12-gpa" => Ok(twelve_cloudlet_scenario(&BUILTIN_MIPS_GPA, Policy::Gpa)),
        other => Err(UnknownBuiltin(other.into())),
    }
}

/// 64-bit linear congruential generator (Knuth's MMIX constants).
///
/// `state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`, seeded
/// with `state = seed`. Each draw advances once and returns the new state.
/// [`below`](Self::below) maps a draw onto `0..k` with the multiply-high
/// reduction `(draw * k) >> 64`, which reads the high (well-mixed) bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform-ish integer in `0..k`; `k` must be non-zero.
    pub fn below(&mut self, k: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(k)) >> 64) as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LengthDistribution {
    /// `(length MI, weight)` pairs drawn with replacement.
    Weighted(Vec<(f64, u32)>),
    /// `(length MI, count)` pairs drawn without replacement. The urn refills once
    /// empty, so every full cycle of `Σ count` draws is a permutation of the multiset.
    Urn(Vec<(f64, u32)>),
    /// Integer lengths, both ends inclusive.
    Uniform { min_mi: u64, max_mi: u64 },
}

impl Default for LengthDistribution {
    /// The 20000 / 10000 MI mix of the twelve-task experiment, 5 : 7.
    fn default() -> Self {
        LengthDistribution::Weighted(alloc::vec![(20000.0, 5), (10000.0, 7)])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub n_tasks: u32,
    pub lengths: LengthDistribution,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(n_tasks: u32, seed: u64) -> Self {
        GeneratorSpec {
            n_tasks,
            lengths: LengthDistribution::default(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorError {
    ZeroTasks,
    NoChoices,
    ZeroWeight(f64),
    NonPositiveLength(f64),
    InvertedRange { min_mi: u64, max_mi: u64 },
    ZeroLengthRange,
    EmptyVmTemplate,
    NonPositiveMips(f64),
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorError::*;
        match self {
            ZeroTasks => f.write_str("n_tasks must be at least 1"),
            NoChoices => f.write_str("length distribution has no values"),
            ZeroWeight(len) => write!(f, "length {len} has zero weight"),
            NonPositiveLength(len) => write!(f, "length {len} must be positive"),
            InvertedRange { min_mi, max_mi } => {
                write!(f, "range [{min_mi}, {max_mi}] has min above max")
            }
            ZeroLengthRange => f.write_str("range must start at 1 MI or more"),
            EmptyVmTemplate => f.write_str("vm template is empty"),
            NonPositiveMips(m) => write!(f, "vm template mips {m} must be positive"),
        }
    }
}

impl core::error::Error for GeneratorError {}

impl GeneratorSpec {
    pub fn check(&self) -> Result<(), GeneratorError> {
        if self.n_tasks == 0 {
            return Err(GeneratorError::ZeroTasks);
        }
        match &self.lengths {
            LengthDistribution::Weighted(choices) | LengthDistribution::Urn(choices) => {
                if choices.is_empty() {
                    return Err(GeneratorError::NoChoices);
                }
                for &(len, w) in choices {
                    if !(len > 0.0 && len.is_finite()) {
                        return Err(GeneratorError::NonPositiveLength(len));
                    }
                    if w == 0 {
                        return Err(GeneratorError::ZeroWeight(len));
                    }
                }
            }
            &LengthDistribution::Uniform { min_mi, max_mi } => {
                if min_mi > max_mi {
                    return Err(GeneratorError::InvertedRange { min_mi, max_mi });
                }
                if min_mi == 0 {
                    return Err(GeneratorError::ZeroLengthRange);
                }
            }
        }
        Ok(())
    }
}

fn pick(choices: &[(f64, u32)], mut r: u64) -> usize {
    for (i, &(_, w)) in choices.iter().enumerate() {
        let w = u64::from(w);
        if r < w {
            return i;
        }
        r -= w;
    }
    unreachable!("draw exceeds total weight")
}

/// Draws `n` lengths from `dist`.
pub fn draw_lengths(dist: &LengthDistribution, n: u32, rng: &mut Lcg64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize);
    match dist {
        LengthDistribution::Weighted(choices) => {
            let total: u64 = choices.iter().map(|&(_, w)| u64::from(w)).sum();
            for _ in 0..n {
                out.push(choices[pick(choices, rng.below(total))].0);
            }
        }
        LengthDistribution::Urn(choices) => {
            let mut urn: Vec<(f64, u32)> = choices.clone();
            let mut left: u64 = 0;
            for _ in 0..n {
                if left == 0 {
                    urn.clone_from(choices);
                    left = urn.iter().map(|&(_, c)| u64::from(c)).sum();
                }
                let i = pick(&urn, rng.below(left));
                urn[i].1 -= 1;
                left -= 1;
                out.push(urn[i].0);
            }
        }
        &LengthDistribution::Uniform { min_mi, max_mi } => {
            let span = max_mi - min_mi + 1;
            for _ in 0..n {
                // A span of 2^64 cannot occur: min_mi >= 1.
                out.push((min_mi + rng.below(span)) as f64);
            }
        }
    }
    out
}

/// Builds a scenario with `spec.n_tasks` cloudlets on VMs with the given MIPS.
///
/// All VMs get 512 MB and sit on a single host in datacenter 1 sized to hold them.
/// The policy is `fcfs`; callers pick the policy to run. A pure function of its
/// arguments.
pub fn generate(
    spec: &GeneratorSpec,
    vm_template: &[f64],
) -> Result<ValidScenario, GeneratorError> {
    spec.check()?;
    if vm_template.is_empty() {
        return Err(GeneratorError::EmptyVmTemplate);
    }
    if let Some(&bad) = vm_template.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
        return Err(GeneratorError::NonPositiveMips(bad));
    }

    let mut rng = Lcg64::new(spec.seed);
    let lengths = draw_lengths(&spec.lengths, spec.n_tasks, &mut rng);

    let host_ram = u32::try_from(vm_template.len())
        .ok()
        .and_then(|n| n.checked_mul(BUILTIN_VM_RAM_MB))
        .unwrap_or(u32::MAX);
    let scenario = Scenario {
        datacenters: alloc::vec![Datacenter {
            id: DatacenterId(1),
            hosts: alloc::vec![Host {
                id: HostId(1),
                datacenter_id: DatacenterId(1),
                total_mips: vm_template.iter().sum(),
                ram_mb: host_ram,
                storage_mb: 1_000_000,
            }],
        }],
        vms: vm_template
            .iter()
            .enumerate()
            .map(|(i, &m)| Vm::new(i as u32 + 1, m, BUILTIN_VM_RAM_MB))
            .collect(),
        cloudlets: lengths
            .into_iter()
            .enumerate()
            .map(|(i, len)| Cloudlet::new(i as u32 + 1, len, i as u32))
            .collect(),
        policy: Policy::Fcfs,
        execution_mode: None,
    };
    Ok(scenario
        .validate()
        .expect("generated scenarios satisfy every invariant"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn builtin_orders() {
        let mips = |name| -> Vec<f64> {
            builtin_scenario(name)
                .unwrap()
                .vms
                .iter()
                .map(|v| v.mips)
                .collect()
        };
        assert_eq!(mips("paper12-fcfs"), BUILTIN_MIPS_FCFS);
        assert_eq!(mips("paper12-rr"), BUILTIN_MIPS_RR);
        assert_eq!(mips("paper12-gpa"), BUILTIN_MIPS_GPA);
        let s = builtin_scenario("paper12-gpa").unwrap();
        assert_eq!(s.policy, Policy::Gpa);
        assert!(s.vms.iter().all(|v| v.ram_mb == 512));
    }

    #[test]
    fn unknown_builtin() {
        let err = builtin_scenario("paper13").unwrap_err();
        assert_eq!(err, UnknownBuiltin("paper13".into()));
    }

    #[test]
    fn lcg_is_pinned() {
        // First draws from seed 0: INCREMENT, then INCREMENT * (MULTIPLIER + 1).
        let mut rng = Lcg64::new(0);
        assert_eq!(rng.next_u64(), 1_442_695_040_888_963_407);
        assert_eq!(
            rng.next_u64(),
            1_442_695_040_888_963_407u64
                .wrapping_mul(6_364_136_223_846_793_005)
                .wrapping_add(1_442_695_040_888_963_407)
        );
    }

    #[test]
    fn urn_of_twelve_is_a_permutation() {
        let spec = GeneratorSpec {
            n_tasks: 12,
            lengths: LengthDistribution::Urn(vec![(20000.0, 5), (10000.0, 7)]),
            seed: 0,
        };
        let s = generate(&spec, &BUILTIN_MIPS_FCFS).unwrap();
        let mut got: Vec<f64> = s.cloudlets.iter().map(|c| c.length).collect();
        let mut want = BUILTIN_LENGTHS.to_vec();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        assert_eq!(got, want);
    }

    #[test]
    fn urn_refills() {
        let mut rng = Lcg64::new(9);
        let dist = LengthDistribution::Urn(vec![(1.0, 1), (2.0, 2)]);
        let v = draw_lengths(&dist, 9, &mut rng);
        for chunk in v.chunks(3) {
            let mut c = chunk.to_vec();
            c.sort_by(f64::total_cmp);
            assert_eq!(c, vec![1.0, 2.0, 2.0]);
        }
    }

    #[test]
    fn degenerate_range() {
        for seed in [0, 1, u64::MAX] {
            let spec = GeneratorSpec {
                n_tasks: 1,
                lengths: LengthDistribution::Uniform {
                    min_mi: 500,
                    max_mi: 500,
                },
                seed,
            };
            let s = generate(&spec, &[250.0]).unwrap();
            assert_eq!(s.cloudlets.len(), 1);
            assert_eq!(s.cloudlets[0].length, 500.0);
        }
    }

    #[test]
    fn same_spec_same_scenario() {
        let spec = GeneratorSpec::new(300, 77);
        assert_eq!(
            generate(&spec, &BUILTIN_MIPS_FCFS),
            generate(&spec, &BUILTIN_MIPS_FCFS)
        );
        let other = GeneratorSpec::new(300, 78);
        assert_ne!(
            generate(&spec, &BUILTIN_MIPS_FCFS),
            generate(&other, &BUILTIN_MIPS_FCFS)
        );
    }

    #[test]
    fn weighted_draws_only_declared_values() {
        let s = generate(&GeneratorSpec::new(500, 3), &BUILTIN_MIPS_GPA).unwrap();
        let big = s.cloudlets.iter().filter(|c| c.length == 20000.0).count();
        let small = s.cloudlets.iter().filter(|c| c.length == 10000.0).count();
        assert_eq!(big + small, 500);
        // 5/12 of 500 is ~208; a loose band is enough to catch a broken reduction.
        assert!((150..270).contains(&big), "{big}");
    }

    #[test]
    fn spec_errors() {
        let mut spec = GeneratorSpec::new(0, 0);
        assert_eq!(spec.check(), Err(GeneratorError::ZeroTasks));
        spec.n_tasks = 1;
        spec.lengths = LengthDistribution::Uniform {
            min_mi: 5,
            max_mi: 4,
        };
        assert!(matches!(
            spec.check(),
            Err(GeneratorError::InvertedRange { .. })
        ));
        spec.lengths = LengthDistribution::Weighted(vec![(1.0, 0)]);
        assert_eq!(spec.check(), Err(GeneratorError::ZeroWeight(1.0)));
        spec.lengths = LengthDistribution::Urn(vec![]);
        assert_eq!(spec.check(), Err(GeneratorError::NoChoices));
        let ok = GeneratorSpec::new(1, 0);
        assert_eq!(generate(&ok, &[]), Err(GeneratorError::EmptyVmTemplate));
        assert_eq!(
            generate(&ok, &[0.0]),
            Err(GeneratorError::NonPositiveMips(0.0))
        );
    }
}
