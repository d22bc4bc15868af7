//! Discrete-event execution of an [`AssignmentPlan`].
//!
//! Each VM serves its active cloudlets by egalitarian processor sharing: with `n`
//! active cloudlets every one of them progresses at `mips / n`. Space-shared mode
//! is the same machine with at most one active cloudlet, the rest waiting in plan
//! order. VMs have dedicated capacity, so they only interact through the global
//! event calendar, which orders completions by time and then by VM position.
//!
//! Progress is tracked in "attained service" (MI delivered to each active
//! cloudlet since the VM started), which makes simultaneous completions of equal
//! jobs exact instead of leaving floating-point residue behind.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::model::{
    AssignmentPlan, CloudletId, DatacenterId, ExecutionMode, HostId, PlanError, ValidScenario, VmId,
};

/// Where a VM landed during provisioning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VmPlacement {
    pub vm_id: VmId,
    pub host_id: HostId,
    pub datacenter_id: DatacenterId,
}

/// Capacity reserved on a host after provisioning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HostLoad {
    pub host_id: HostId,
    pub datacenter_id: DatacenterId,
    pub reserved_mips: f64,
    pub reserved_ram_mb: u64,
    pub total_mips: f64,
    pub total_ram_mb: u64,
}

impl HostLoad {
    fn fits(&self, mips: f64, ram_mb: u32) -> bool {
        self.reserved_mips + mips <= self.total_mips
            && self.reserved_ram_mb + u64::from(ram_mb) <= self.total_ram_mb
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provisioning {
    /// One entry per VM, in creation order.
    pub placements: Vec<VmPlacement>,
    /// One entry per host, in datacenter then host order.
    pub hosts: Vec<HostLoad>,
}

impl Provisioning {
    pub fn placement(&self, vm: VmId) -> Option<&VmPlacement> {
        self.placements.iter().find(|p| p.vm_id == vm)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProvisionError {
    /// The first VM, in creation order, that no host could take.
    InsufficientCapacity(VmId),
    /// A pinned VM does not fit on its host.
    PinnedHostFull { vm: VmId, host: HostId },
}

impl fmt::Display for ProvisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProvisionError::InsufficientCapacity(vm) => {
                write!(f, "insufficient capacity: no host can take {vm}")
            }
            ProvisionError::PinnedHostFull { vm, host } => {
                write!(
                    f,
                    "insufficient capacity: {vm} does not fit on its pinned {host}"
                )
            }
        }
    }
}

impl core::error::Error for ProvisionError {}

/// Binds VMs, in creation order, to the first host with enough unreserved MIPS and RAM.
///
/// Hosts are scanned in datacenter order, then host order. A VM with `host_id` set is
/// only tried on that host.
pub fn provision_vms(scenario: &ValidScenario) -> Result<Provisioning, ProvisionError> {
    let mut hosts: Vec<HostLoad> = scenario
        .datacenters
        .iter()
        .flat_map(|dc| dc.hosts.iter())
        .map(|h| HostLoad {
            host_id: h.id,
            datacenter_id: h.datacenter_id,
            reserved_mips: 0.0,
            reserved_ram_mb: 0,
            total_mips: h.total_mips,
            total_ram_mb: u64::from(h.ram_mb),
        })
        .collect();

    let mut placements = Vec::with_capacity(scenario.vms.len());
    for vm in &scenario.vms {
        let slot = match vm.host_id {
            Some(pinned) => {
                let i = hosts
                    .iter()
                    .position(|h| h.host_id == pinned)
                    .ok_or(ProvisionError::InsufficientCapacity(vm.id))?;
                if !hosts[i].fits(vm.mips, vm.ram_mb) {
                    return Err(ProvisionError::PinnedHostFull {
                        vm: vm.id,
                        host: pinned,
                    });
                }
                i
            }
            None => hosts
                .iter()
                .position(|h| h.fits(vm.mips, vm.ram_mb))
                .ok_or(ProvisionError::InsufficientCapacity(vm.id))?,
        };
        let host = &mut hosts[slot];
        host.reserved_mips += vm.mips;
        host.reserved_ram_mb += u64::from(vm.ram_mb);
        placements.push(VmPlacement {
            vm_id: vm.id,
            host_id: host.host_id,
            datacenter_id: host.datacenter_id,
        });
    }

    Ok(Provisioning { placements, hosts })
}

#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    Plan(PlanError),
    Provision(ProvisionError),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Plan(e) => write!(f, "invalid plan: {e}"),
            EngineError::Provision(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<PlanError> for EngineError {
    fn from(e: PlanError) -> Self {
        EngineError::Plan(e)
    }
}

impl From<ProvisionError> for EngineError {
    fn from(e: ProvisionError) -> Self {
        EngineError::Provision(e)
    }
}

/// Outcome of one cloudlet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudletRecord {
    pub cloudlet_id: CloudletId,
    pub vm_id: VmId,
    pub host_id: HostId,
    pub datacenter_id: DatacenterId,
    /// MI of the cloudlet.
    pub length: f64,
    /// Reported execution time: `length / mips` when space-shared, `finish - start` when
    /// time-shared.
    pub cpu_time: f64,
    pub start_time: f64,
    pub finish_time: f64,
}

impl CloudletRecord {
    /// Finish time measured from submission. Every cloudlet is submitted at `t = 0`.
    pub fn completion_time(&self) -> f64 {
        self.finish_time
    }
}

/// Per-VM totals over a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VmUsage {
    pub vm_id: VmId,
    pub host_id: HostId,
    pub datacenter_id: DatacenterId,
    pub mips: f64,
    pub cloudlets: usize,
    pub assigned_work: f64,
    /// Time during which at least one cloudlet was active.
    pub busy_time: f64,
    /// Latest finish on this VM, 0 for an idle VM.
    pub last_finish: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub mode: ExecutionMode,
    /// In arrival order.
    pub records: Vec<CloudletRecord>,
    /// In VM creation order, idle VMs included.
    pub vms: Vec<VmUsage>,
    pub mean_cpu_time: f64,
    pub makespan: f64,
}

impl SimulationResult {
    pub fn record(&self, cloudlet: CloudletId) -> Option<&CloudletRecord> {
        self.records.iter().find(|r| r.cloudlet_id == cloudlet)
    }

    pub fn usage(&self, vm: VmId) -> Option<&VmUsage> {
        self.vms.iter().find(|u| u.vm_id == vm)
    }
}

#[derive(Debug, Clone, Copy)]
struct Active {
    slot: usize,
    /// Attained-service level at which this cloudlet is done.
    target: f64,
}

/// Run-time state of one VM: the cloudlets it is serving and the ones waiting.
#[derive(Debug, Clone)]
pub struct VmRuntimeState {
    pub vm_id: VmId,
    mips: f64,
    admit_limit: usize,
    active: Vec<Active>,
    queued: VecDeque<(usize, f64)>,
    /// Service delivered to each active cloudlet since the VM started.
    attained: f64,
    clock: f64,
    busy: f64,
}

impl VmRuntimeState {
    pub fn new(vm_id: VmId, mips: f64, mode: ExecutionMode) -> Self {
        VmRuntimeState {
            vm_id,
            mips,
            admit_limit: match mode {
                ExecutionMode::SpaceShared => 1,
                ExecutionMode::TimeShared => usize::MAX,
            },
            active: Vec::new(),
            queued: VecDeque::new(),
            attained: 0.0,
            clock: 0.0,
            busy: 0.0,
        }
    }

    /// Queues a cloudlet of `length` MI under the caller's `slot` handle.
    pub fn submit(&mut self, slot: usize, length: f64) {
        self.queued.push_back((slot, length));
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn busy_time(&self) -> f64 {
        self.busy
    }

    pub fn active_len(&self) -> usize {
        self.active.len()
    }

    pub fn queued_len(&self) -> usize {
        self.queued.len()
    }

    /// `(slot, remaining MI)` of every active cloudlet as of the VM's clock.
    pub fn remaining_work(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.active
            .iter()
            .map(|a| (a.slot, a.target - self.attained))
    }

    /// Moves waiting cloudlets into service up to the mode's limit. Returns the
    /// slots that started, with the current clock as their start time.
    pub fn admit(&mut self) -> Vec<usize> {
        let mut started = Vec::new();
        while self.active.len() < self.admit_limit {
            let Some((slot, length)) = self.queued.pop_front() else {
                break;
            };
            self.active.push(Active {
                slot,
                target: self.attained + length,
            });
            started.push(slot);
        }
        started
    }

    fn lowest_target(&self) -> Option<f64> {
        self.active
            .iter()
            .map(|a| a.target)
            .min_by(|a, b| a.total_cmp(b))
    }

    /// Time of this VM's next completion, if anything is active.
    pub fn next_completion(&self) -> Option<f64> {
        let target = self.lowest_target()?;
        let n = self.active.len() as f64;
        Some(self.clock + (target - self.attained) * n / self.mips)
    }

    /// Advances to `time`, which must be [`next_completion`](Self::next_completion),
    /// and removes the cloudlets that finish there. Returns their slots.
    pub fn complete(&mut self, time: f64) -> Vec<usize> {
        let Some(target) = self.lowest_target() else {
            return Vec::new();
        };
        self.busy += time - self.clock;
        self.clock = time;
        self.attained = target;
        let mut done = Vec::new();
        self.active.retain(|a| {
            if a.target == target {
                done.push(a.slot);
                false
            } else {
                true
            }
        });
        done
    }
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    vm: usize,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed: BinaryHeap is a max-heap and we want the earliest event, lowest VM first.
impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.vm.cmp(&self.vm))
    }
}

/// Egalitarian processor-sharing finish times of jobs that all start together on one
/// machine. Output order matches input order.
pub fn ps_finish_times(lengths: &[f64], mips: f64) -> Vec<f64> {
    let mut state = VmRuntimeState::new(VmId(0), mips, ExecutionMode::TimeShared);
    for (slot, &len) in lengths.iter().enumerate() {
        state.submit(slot, len);
    }
    state.admit();
    let mut finish = alloc::vec![0.0; lengths.len()];
    while let Some(t) = state.next_completion() {
        for slot in state.complete(t) {
            finish[slot] = t;
        }
    }
    finish
}

struct Slot {
    cloudlet_id: CloudletId,
    arrival_index: u32,
    vm: usize,
    length: f64,
    start: f64,
    finish: f64,
}

/// Runs `plan` on `scenario` under `mode`.
pub fn run(
    scenario: &ValidScenario,
    plan: &AssignmentPlan,
    mode: ExecutionMode,
) -> Result<SimulationResult, EngineError> {
    plan.check(scenario)?;
    let provisioning = provision_vms(scenario)?;

    let mut states: Vec<VmRuntimeState> = scenario
        .vms
        .iter()
        .map(|vm| VmRuntimeState::new(vm.id, vm.mips, mode))
        .collect();

    let mut slots = Vec::with_capacity(plan.len());
    for (i, &(cloudlet_id, vm_id)) in plan.entries.iter().enumerate() {
        // Both lookups succeed: the plan was checked above.
        let cloudlet = scenario
            .cloudlet(cloudlet_id)
            .ok_or(PlanError::UnknownCloudlet(cloudlet_id))?;
        let vm = scenario
            .vms
            .iter()
            .position(|v| v.id == vm_id)
            .ok_or(PlanError::UnknownVm(vm_id))?;
        states[vm].submit(i, cloudlet.length);
        slots.push(Slot {
            cloudlet_id,
            arrival_index: cloudlet.arrival_index,
            vm,
            length: cloudlet.length,
            start: 0.0,
            finish: 0.0,
        });
    }

    let mut calendar = BinaryHeap::new();
    for (vm, state) in states.iter_mut().enumerate() {
        let clock = state.clock();
        for slot in state.admit() {
            slots[slot].start = clock;
        }
        if let Some(time) = state.next_completion() {
            calendar.push(Event { time, vm });
        }
    }

    while let Some(Event { time, vm }) = calendar.pop() {
        let state = &mut states[vm];
        for slot in state.complete(time) {
            slots[slot].finish = time;
        }
        for slot in state.admit() {
            slots[slot].start = time;
        }
        if let Some(time) = state.next_completion() {
            calendar.push(Event { time, vm });
        }
    }

    let mut vms: Vec<VmUsage> = scenario
        .vms
        .iter()
        .zip(&states)
        .map(|(vm, state)| {
            let placement = provisioning
                .placement(vm.id)
                .copied()
                .expect("every vm is provisioned");
            VmUsage {
                vm_id: vm.id,
                host_id: placement.host_id,
                datacenter_id: placement.datacenter_id,
                mips: vm.mips,
                cloudlets: 0,
                assigned_work: 0.0,
                busy_time: state.busy_time(),
                last_finish: 0.0,
            }
        })
        .collect();

    slots.sort_by_key(|s| s.arrival_index);
    let records: Vec<CloudletRecord> = slots
        .iter()
        .map(|s| {
            let usage = &mut vms[s.vm];
            usage.cloudlets += 1;
            usage.assigned_work += s.length;
            usage.last_finish = usage.last_finish.max(s.finish);
            let cpu_time = match mode {
                ExecutionMode::SpaceShared => s.length / usage.mips,
                ExecutionMode::TimeShared => s.finish - s.start,
            };
            CloudletRecord {
                cloudlet_id: s.cloudlet_id,
                vm_id: usage.vm_id,
                host_id: usage.host_id,
                datacenter_id: usage.datacenter_id,
                length: s.length,
                cpu_time,
                start_time: s.start,
                finish_time: s.finish,
            }
        })
        .collect();

    let n = records.len() as f64;
    let mean_cpu_time = records.iter().map(|r| r.cpu_time).sum::<f64>() / n;
    let makespan = records.iter().map(|r| r.finish_time).fold(0.0, f64::max);

    Ok(SimulationResult {
        mode,
        records,
        vms,
        mean_cpu_time,
        makespan,
    })
}

/// Sequential execution: each VM runs its queue one cloudlet at a time in plan order.
pub fn run_space_shared(
    scenario: &ValidScenario,
    plan: &AssignmentPlan,
) -> Result<SimulationResult, EngineError> {
    run(scenario, plan, ExecutionMode::SpaceShared)
}

/// Processor sharing: every cloudlet queued on a VM is active from `t = 0`.
pub fn run_time_shared(
    scenario: &ValidScenario,
    plan: &AssignmentPlan,
) -> Result<SimulationResult, EngineError> {
    run(scenario, plan, ExecutionMode::TimeShared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Cloudlet, Datacenter, Host, Policy, Scenario, Vm};
    use alloc::vec;

    fn host(id: u32, dc: u32, mips: f64, ram: u32) -> Host {
        Host {
            id: HostId(id),
            datacenter_id: DatacenterId(dc),
            total_mips: mips,
            ram_mb: ram,
            storage_mb: 1_000_000,
        }
    }

    fn scenario(hosts: Vec<Host>, vms: Vec<Vm>, lengths: &[f64]) -> ValidScenario {
        Scenario {
            datacenters: vec![Datacenter {
                id: DatacenterId(1),
                hosts,
            }],
            vms,
            cloudlets: lengths
                .iter()
                .enumerate()
                .map(|(i, &l)| Cloudlet::new(i as u32 + 1, l, i as u32))
                .collect(),
            policy: Policy::Fcfs,
            execution_mode: None,
        }
        .validate()
        .unwrap()
    }

    fn on_one_vm(n: usize) -> AssignmentPlan {
        AssignmentPlan::new((1..=n as u32).map(|c| (CloudletId(c), VmId(1))).collect())
    }

    #[test]
    fn first_fit_spills_to_second_host() {
        let vms = (1..=5).map(|i| Vm::new(i, 250.0, 512)).collect();
        let s = scenario(
            vec![host(10, 1, 10_000.0, 2048), host(11, 1, 10_000.0, 2048)],
            vms,
            &[1.0],
        );
        let p = provision_vms(&s).unwrap();
        let hosts: Vec<u32> = p.placements.iter().map(|pl| pl.host_id.0).collect();
        assert_eq!(hosts, vec![10, 10, 10, 10, 11]);
        assert_eq!(p.hosts[0].reserved_ram_mb, 2048);
        assert_eq!(p.hosts[1].reserved_ram_mb, 512);
    }

    #[test]
    fn exact_fit_debits_host_fully() {
        let s = scenario(
            vec![host(1, 1, 250.0, 512)],
            vec![Vm::new(1, 250.0, 512)],
            &[1.0],
        );
        let p = provision_vms(&s).unwrap();
        assert_eq!(p.hosts[0].reserved_mips, p.hosts[0].total_mips);
        assert_eq!(p.hosts[0].reserved_ram_mb, p.hosts[0].total_ram_mb);
    }

    #[test]
    fn oversized_vm_is_rejected() {
        let s = scenario(
            vec![host(1, 1, 10_000.0, 2048), host(2, 1, 10_000.0, 2048)],
            vec![Vm::new(1, 250.0, 512), Vm::new(2, 250.0, 4096)],
            &[1.0],
        );
        assert_eq!(
            provision_vms(&s),
            Err(ProvisionError::InsufficientCapacity(VmId(2)))
        );
    }

    #[test]
    fn pinned_vm_stays_on_its_host() {
        let mut vm = Vm::new(1, 250.0, 512);
        vm.host_id = Some(HostId(2));
        let s = scenario(
            vec![host(1, 1, 1000.0, 2048), host(2, 1, 1000.0, 2048)],
            vec![vm.clone()],
            &[1.0],
        );
        assert_eq!(provision_vms(&s).unwrap().placements[0].host_id, HostId(2));

        vm.ram_mb = 4096;
        let s = scenario(
            vec![host(1, 1, 1000.0, 8192), host(2, 1, 1000.0, 2048)],
            vec![vm],
            &[1.0],
        );
        assert!(matches!(
            provision_vms(&s),
            Err(ProvisionError::PinnedHostFull { .. })
        ));
    }

    #[test]
    fn space_shared_cpu_time_is_length_over_mips() {
        let big = host(1, 1, 10_000.0, 8192);
        let s = scenario(vec![big.clone()], vec![Vm::new(1, 250.0, 512)], &[20000.0]);
        let r = run_space_shared(&s, &on_one_vm(1)).unwrap();
        assert_eq!(r.records[0].cpu_time, 80.0);

        let s = scenario(vec![big], vec![Vm::new(1, 1000.0, 512)], &[10000.0]);
        let r = run_space_shared(&s, &on_one_vm(1)).unwrap();
        assert_eq!(r.records[0].cpu_time, 10.0);
    }

    #[test]
    fn unit_job() {
        let s = scenario(
            vec![host(1, 1, 777.0, 512)],
            vec![Vm::new(1, 777.0, 512)],
            &[777.0],
        );
        let r = run_space_shared(&s, &on_one_vm(1)).unwrap();
        assert_eq!(r.records[0].cpu_time, 1.0);
        assert_eq!(r.makespan, 1.0);
    }

    #[test]
    fn space_shared_queues_in_plan_order() {
        let s = scenario(
            vec![host(1, 1, 1000.0, 512)],
            vec![Vm::new(1, 250.0, 512)],
            &[20000.0, 10000.0, 20000.0],
        );
        // Plan order 3, 1, 2.
        let plan = AssignmentPlan::new(vec![
            (CloudletId(3), VmId(1)),
            (CloudletId(1), VmId(1)),
            (CloudletId(2), VmId(1)),
        ]);
        let r = run_space_shared(&s, &plan).unwrap();
        let times: Vec<(f64, f64, f64)> = r
            .records
            .iter()
            .map(|x| (x.start_time, x.finish_time, x.cpu_time))
            .collect();
        assert_eq!(
            times,
            vec![(80.0, 160.0, 80.0), (160.0, 200.0, 40.0), (0.0, 80.0, 80.0)]
        );
        assert_eq!(r.makespan, 200.0);
        assert_eq!(r.vms[0].busy_time, 200.0);
    }

    #[test]
    fn time_shared_three_equal_jobs() {
        let s = scenario(
            vec![host(1, 1, 1000.0, 512)],
            vec![Vm::new(1, 250.0, 512)],
            &[20000.0, 20000.0, 20000.0],
        );
        let r = run_time_shared(&s, &on_one_vm(3)).unwrap();
        for rec in &r.records {
            assert_eq!(rec.finish_time, 240.0);
            assert_eq!(rec.cpu_time, 240.0);
            assert_eq!(rec.start_time, 0.0);
        }
    }

    #[test]
    fn time_shared_single_job_matches_solo_time() {
        let s = scenario(
            vec![host(1, 1, 1000.0, 512)],
            vec![Vm::new(1, 1000.0, 512)],
            &[10000.0],
        );
        let r = run_time_shared(&s, &on_one_vm(1)).unwrap();
        assert_eq!(r.records[0].finish_time, 10.0);
    }

    #[test]
    fn time_shared_unequal_pair() {
        let s = scenario(
            vec![host(1, 1, 1000.0, 512)],
            vec![Vm::new(1, 250.0, 512)],
            &[20000.0, 10000.0],
        );
        let r = run_time_shared(&s, &on_one_vm(2)).unwrap();
        assert_eq!(r.records[0].finish_time, 120.0);
        assert_eq!(r.records[1].finish_time, 80.0);
        assert_eq!(r.vms[0].busy_time, 120.0);
    }

    #[test]
    fn ps_kernel_examples() {
        assert_eq!(ps_finish_times(&[10000.0; 3], 250.0), vec![120.0; 3]);
        assert_eq!(ps_finish_times(&[1234.0], 500.0), vec![1234.0 / 500.0]);
        assert_eq!(
            ps_finish_times(&[20000.0, 10000.0], 250.0),
            vec![120.0, 80.0]
        );
        assert!(ps_finish_times(&[], 250.0).is_empty());
    }

    #[test]
    fn runtime_state_reports_remaining_work() {
        let mut st = VmRuntimeState::new(VmId(1), 100.0, ExecutionMode::TimeShared);
        st.submit(0, 300.0);
        st.submit(1, 100.0);
        assert_eq!(st.admit(), vec![0, 1]);
        let t = st.next_completion().unwrap();
        assert_eq!(t, 2.0);
        assert_eq!(st.complete(t), vec![1]);
        let rem: Vec<_> = st.remaining_work().collect();
        assert_eq!(rem, vec![(0, 200.0)]);
        assert_eq!(st.active_len(), 1);
        assert_eq!(st.queued_len(), 0);
    }

    #[test]
    fn space_shared_admits_one_at_a_time() {
        let mut st = VmRuntimeState::new(VmId(1), 100.0, ExecutionMode::SpaceShared);
        st.submit(0, 100.0);
        st.submit(1, 100.0);
        assert_eq!(st.admit(), vec![0]);
        assert_eq!(st.active_len(), 1);
        assert_eq!(st.queued_len(), 1);
    }

    #[test]
    fn bad_plan_is_rejected() {
        let s = scenario(
            vec![host(1, 1, 1000.0, 512)],
            vec![Vm::new(1, 250.0, 512)],
            &[1.0, 2.0],
        );
        let err = run_space_shared(&s, &on_one_vm(1)).unwrap_err();
        assert_eq!(
            err,
            EngineError::Plan(PlanError::MissingCloudlet(CloudletId(2)))
        );
    }

    #[test]
    fn idle_vm_has_zero_usage() {
        let s = scenario(
            vec![host(1, 1, 1000.0, 2048)],
            vec![Vm::new(1, 250.0, 512), Vm::new(2, 250.0, 512)],
            &[1000.0],
        );
        let r = run_time_shared(&s, &on_one_vm(1)).unwrap();
        assert_eq!(r.vms[1].busy_time, 0.0);
        assert_eq!(r.vms[1].cloudlets, 0);
        assert_eq!(r.vms[1].last_finish, 0.0);
    }
}
