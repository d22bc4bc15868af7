//! Scenario description types: cloudlets, VMs, hosts, datacenters.
//!
//! Everything here is plain data. [`Scenario::validate`] is the only behavior and
//! produces a [`ValidScenario`], which the policies and the engine require.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

macro_rules! id_newtype {
    ($(#[$meta:meta])* $name:ident, $label:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        #[cfg_attr(feature = "serde", derive(Serialize, Deserialize), serde(transparent))]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} {}", $label, self.0)
            }
        }
    };
}

id_newtype!(
    /// Identifier of a cloudlet, unique within a scenario.
    CloudletId,
    "cloudlet"
);
id_newtype!(
    /// Identifier of a virtual machine, unique within a scenario.
    VmId,
    "vm"
);
id_newtype!(HostId, "host");
id_newtype!(DatacenterId, "datacenter");

fn one() -> u32 {
    1
}

#[cfg(feature = "serde")]
fn is_one(v: &u32) -> bool {
    *v == 1
}

/// One task submitted to the broker.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(deny_unknown_fields)
)]
pub struct Cloudlet {
    pub id: CloudletId,
    /// Total work in millions of instructions (MI).
    pub length: f64,
    /// Submission position, `0..n` over the scenario.
    pub arrival_index: u32,
    #[cfg_attr(
        feature = "serde",
        serde(default = "one", skip_serializing_if = "is_one")
    )]
    pub pe_count: u32,
    /// Accepted for compatibility with CloudSim-style inputs; not used by the engine.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub file_size: Option<f64>,
    /// Accepted for compatibility with CloudSim-style inputs; not used by the engine.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub output_size: Option<f64>,
}

impl Cloudlet {
    pub fn new(id: u32, length: f64, arrival_index: u32) -> Self {
        Cloudlet {
            id: CloudletId(id),
            length,
            arrival_index,
            pe_count: one(),
            file_size: None,
            output_size: None,
        }
    }
}

/// A virtual machine with a dedicated processing rate.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(deny_unknown_fields)
)]
pub struct Vm {
    pub id: VmId,
    /// Processing rate in MI per second.
    pub mips: f64,
    pub ram_mb: u32,
    #[cfg_attr(
        feature = "serde",
        serde(default = "one", skip_serializing_if = "is_one")
    )]
    pub pe_count: u32,
    /// Pins the VM to a host. Left empty, provisioning picks the first host that fits.
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub host_id: Option<HostId>,
}

impl Vm {
    pub fn new(id: u32, mips: f64, ram_mb: u32) -> Self {
        Vm {
            id: VmId(id),
            mips,
            ram_mb,
            pe_count: one(),
            host_id: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(deny_unknown_fields)
)]
pub struct Host {
    pub id: HostId,
    pub datacenter_id: DatacenterId,
    pub total_mips: f64,
    pub ram_mb: u32,
    pub storage_mb: u32,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(deny_unknown_fields)
)]
pub struct Datacenter {
    pub id: DatacenterId,
    pub hosts: Vec<Host>,
}

/// The three broker policies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(rename_all = "lowercase")
)]
pub enum Policy {
    Fcfs,
    Rr,
    Gpa,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Policy::Fcfs, Policy::Rr, Policy::Gpa];

    pub fn name(self) -> &'static str {
        match self {
            Policy::Fcfs => "fcfs",
            Policy::Rr => "rr",
            Policy::Gpa => "gpa",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Returned when a policy name is not one of `fcfs`, `rr`, `gpa`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPolicy(pub alloc::string::String);

impl fmt::Display for UnknownPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown policy \"{}\" (expected fcfs, rr or gpa)",
            self.0
        )
    }
}

impl core::error::Error for UnknownPolicy {}

impl FromStr for Policy {
    type Err = UnknownPolicy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fcfs" => Ok(Policy::Fcfs),
            "rr" => Ok(Policy::Rr),
            "gpa" => Ok(Policy::Gpa),
            other => Err(UnknownPolicy(other.into())),
        }
    }
}

/// How a VM shares its capacity between the cloudlets queued on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(rename_all = "snake_case")
)]
pub enum ExecutionMode {
    /// One cloudlet at a time, in queue order.
    SpaceShared,
    /// All queued cloudlets progress together, each at `mips / n`.
    TimeShared,
}

impl fmt::Display for ExecutionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExecutionMode::SpaceShared => "space_shared",
            ExecutionMode::TimeShared => "time_shared",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(deny_unknown_fields)
)]
pub struct Scenario {
    pub datacenters: Vec<Datacenter>,
    /// In creation order.
    pub vms: Vec<Vm>,
    pub cloudlets: Vec<Cloudlet>,
    pub policy: Policy,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub execution_mode: Option<ExecutionMode>,
}

/// A single broken invariant, naming the entity at fault.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyCloudlets,
    EmptyVms,
    EmptyDatacenters,
    DatacenterWithoutHosts(DatacenterId),
    DuplicateDatacenter(DatacenterId),
    DuplicateHost(HostId),
    DuplicateVm(VmId),
    DuplicateCloudlet(CloudletId),
    HostDatacenterMismatch {
        host: HostId,
        declared: DatacenterId,
        actual: DatacenterId,
    },
    NonPositiveHostMips(HostId),
    ZeroHostRam(HostId),
    ZeroHostStorage(HostId),
    NonPositiveMips(VmId),
    ZeroVmRam(VmId),
    ZeroVmPes(VmId),
    DanglingHost {
        vm: VmId,
        host: HostId,
    },
    NonPositiveLength(CloudletId),
    ZeroCloudletPes(CloudletId),
    /// `arrival_index` values are not a permutation of `0..n`.
    ArrivalIndex {
        cloudlet: CloudletId,
        index: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyCloudlets => f.write_str("empty cloudlet set"),
            EmptyVms => f.write_str("empty vm set"),
            EmptyDatacenters => f.write_str("empty datacenter set"),
            DatacenterWithoutHosts(dc) => write!(f, "{dc} has no hosts"),
            DuplicateDatacenter(id) => write!(f, "duplicate datacenter id {}", id.0),
            DuplicateHost(id) => write!(f, "duplicate host id {}", id.0),
            DuplicateVm(id) => write!(f, "duplicate vm id {}", id.0),
            DuplicateCloudlet(id) => write!(f, "duplicate cloudlet id {}", id.0),
            HostDatacenterMismatch {
                host,
                declared,
                actual,
            } => write!(f, "{host} declares {declared} but is listed under {actual}"),
            NonPositiveHostMips(id) => write!(f, "{id}: total_mips must be positive"),
            ZeroHostRam(id) => write!(f, "{id}: ram_mb must be positive"),
            ZeroHostStorage(id) => write!(f, "{id}: storage_mb must be positive"),
            NonPositiveMips(id) => write!(f, "{id}: mips must be positive"),
            ZeroVmRam(id) => write!(f, "{id}: ram_mb must be positive"),
            ZeroVmPes(id) => write!(f, "{id}: pe_count must be positive"),
            DanglingHost { vm, host } => write!(f, "{vm} references unknown {host}"),
            NonPositiveLength(id) => write!(f, "{id}: length must be positive"),
            ZeroCloudletPes(id) => write!(f, "{id}: pe_count must be positive"),
            ArrivalIndex { cloudlet, index } => write!(
                f,
                "{cloudlet}: arrival_index {index} breaks the contiguous 0..n sequence"
            ),
        }
    }
}

/// Every violation found in a scenario, in discovery order.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationErrors(pub Vec<Violation>);

impl ValidationErrors {
    pub fn violations(&self) -> &[Violation] {
        &self.0
    }
}

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationErrors {}

// `!(x > 0.0)` also rejects NaN.
fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

impl Scenario {
    /// Checks every invariant and collects all violations instead of stopping at the first.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();

        if self.datacenters.is_empty() {
            out.push(Violation::EmptyDatacenters);
        }
        let mut dc_ids = BTreeSet::new();
        let mut host_ids = BTreeSet::new();
        for dc in &self.datacenters {
            if !dc_ids.insert(dc.id) {
                out.push(Violation::DuplicateDatacenter(dc.id));
            }
            if dc.hosts.is_empty() {
                out.push(Violation::DatacenterWithoutHosts(dc.id));
            }
            for host in &dc.hosts {
                if !host_ids.insert(host.id) {
                    out.push(Violation::DuplicateHost(host.id));
                }
                if host.datacenter_id != dc.id {
                    out.push(Violation::HostDatacenterMismatch {
                        host: host.id,
                        declared: host.datacenter_id,
                        actual: dc.id,
                    });
                }
                if !positive(host.total_mips) {
                    out.push(Violation::NonPositiveHostMips(host.id));
                }
                if host.ram_mb == 0 {
                    out.push(Violation::ZeroHostRam(host.id));
                }
                if host.storage_mb == 0 {
                    out.push(Violation::ZeroHostStorage(host.id));
                }
            }
        }

        if self.vms.is_empty() {
            out.push(Violation::EmptyVms);
        }
        let mut vm_ids = BTreeSet::new();
        for vm in &self.vms {
            if !vm_ids.insert(vm.id) {
                out.push(Violation::DuplicateVm(vm.id));
            }
            if !positive(vm.mips) {
                out.push(Violation::NonPositiveMips(vm.id));
            }
            if vm.ram_mb == 0 {
                out.push(Violation::ZeroVmRam(vm.id));
            }
            if vm.pe_count == 0 {
                out.push(Violation::ZeroVmPes(vm.id));
            }
            if let Some(host) = vm.host_id {
                if !host_ids.contains(&host) {
                    out.push(Violation::DanglingHost { vm: vm.id, host });
                }
            }
        }

        if self.cloudlets.is_empty() {
            out.push(Violation::EmptyCloudlets);
        }
        let n = self.cloudlets.len();
        let mut seen_arrival = alloc::vec![false; n];
        let mut cloudlet_ids = BTreeSet::new();
        for c in &self.cloudlets {
            if !cloudlet_ids.insert(c.id) {
                out.push(Violation::DuplicateCloudlet(c.id));
            }
            if !positive(c.length) {
                out.push(Violation::NonPositiveLength(c.id));
            }
            if c.pe_count == 0 {
                out.push(Violation::ZeroCloudletPes(c.id));
            }
            let idx = c.arrival_index as usize;
            if idx >= n || core::mem::replace(&mut seen_arrival[idx], true) {
                out.push(Violation::ArrivalIndex {
                    cloudlet: c.id,
                    index: c.arrival_index,
                });
            }
        }

        out
    }

    pub fn validate(self) -> Result<ValidScenario, ValidationErrors> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(ValidScenario(self))
        } else {
            Err(ValidationErrors(violations))
        }
    }

    pub fn total_work(&self) -> f64 {
        self.cloudlets.iter().map(|c| c.length).sum()
    }
}

/// A scenario whose invariants have been checked. Read-only from here on.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidScenario(Scenario);

impl ValidScenario {
    pub fn into_inner(self) -> Scenario {
        self.0
    }

    pub fn vm(&self, id: VmId) -> Option<&Vm> {
        self.0.vms.iter().find(|v| v.id == id)
    }

    pub fn cloudlet(&self, id: CloudletId) -> Option<&Cloudlet> {
        self.0.cloudlets.iter().find(|c| c.id == id)
    }

    /// Cloudlets sorted by `arrival_index`.
    pub fn cloudlets_in_arrival_order(&self) -> Vec<&Cloudlet> {
        let mut out: Vec<&Cloudlet> = self.0.cloudlets.iter().collect();
        out.sort_by_key(|c| c.arrival_index);
        out
    }

    /// Replaces the policy. Every policy is valid for every scenario.
    pub fn with_policy(mut self, policy: Policy) -> Self {
        self.0.policy = policy;
        self
    }
}

impl Deref for ValidScenario {
    type Target = Scenario;

    fn deref(&self) -> &Scenario {
        &self.0
    }
}

/// Ordered `cloudlet -> vm` mapping. Entry order is the per-VM queue order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentPlan {
    pub entries: Vec<(CloudletId, VmId)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlanError {
    UnknownCloudlet(CloudletId),
    UnknownVm(VmId),
    DuplicateCloudlet(CloudletId),
    MissingCloudlet(CloudletId),
}

impl fmt::Display for PlanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanError::UnknownCloudlet(id) => write!(f, "plan references unknown {id}"),
            PlanError::UnknownVm(id) => write!(f, "plan references unknown {id}"),
            PlanError::DuplicateCloudlet(id) => write!(f, "plan assigns {id} more than once"),
            PlanError::MissingCloudlet(id) => write!(f, "plan does not assign {id}"),
        }
    }
}

impl core::error::Error for PlanError {}

impl AssignmentPlan {
    pub fn new(entries: Vec<(CloudletId, VmId)>) -> Self {
        AssignmentPlan { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn vm_of(&self, cloudlet: CloudletId) -> Option<VmId> {
        self.entries
            .iter()
            .find(|(c, _)| *c == cloudlet)
            .map(|(_, v)| *v)
    }

    /// Cloudlets queued on `vm`, in plan order.
    pub fn queue(&self, vm: VmId) -> Vec<CloudletId> {
        self.entries
            .iter()
            .filter(|(_, v)| *v == vm)
            .map(|(c, _)| *c)
            .collect()
    }

    /// Checks that the plan is a permutation of the scenario's cloudlets onto existing VMs.
    pub fn check(&self, scenario: &Scenario) -> Result<(), PlanError> {
        let known_vms: BTreeSet<VmId> = scenario.vms.iter().map(|v| v.id).collect();
        let mut pending: BTreeSet<CloudletId> = scenario.cloudlets.iter().map(|c| c.id).collect();
        let mut assigned = BTreeSet::new();
        for &(c, v) in &self.entries {
            if !known_vms.contains(&v) {
                return Err(PlanError::UnknownVm(v));
            }
            if !assigned.insert(c) {
                return Err(PlanError::DuplicateCloudlet(c));
            }
            if !pending.remove(&c) {
                return Err(PlanError::UnknownCloudlet(c));
            }
        }
        match pending.into_iter().next() {
            Some(missing) => Err(PlanError::MissingCloudlet(missing)),
            None => Ok(()),
        }
    }
}
