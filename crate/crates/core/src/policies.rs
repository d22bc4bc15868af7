//! Broker policies. Each one maps a scenario to an [`AssignmentPlan`] and the
//! execution mode it is meant to run under.

use alloc::vec::Vec;

use crate::model::{
    AssignmentPlan, Cloudlet, CloudletId, ExecutionMode, Policy, ValidScenario, Vm, VmId,
};

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyOutcome {
    pub policy: Policy,
    pub plan: AssignmentPlan,
    pub mode: ExecutionMode,
    /// VMs in the order the policy considers them.
    pub vm_ranking: Vec<VmId>,
    /// Cloudlets in the order the policy dispatches them.
    pub cloudlet_ranking: Vec<CloudletId>,
}

impl Policy {
    pub fn default_mode(self) -> ExecutionMode {
        match self {
            Policy::Fcfs | Policy::Gpa => ExecutionMode::SpaceShared,
            Policy::Rr => ExecutionMode::TimeShared,
        }
    }
}

/// VM ids by descending MIPS; equal MIPS keep ascending id order.
pub fn rank_vms_by_mips(vms: &[Vm]) -> Vec<VmId> {
    let mut ranked: Vec<&Vm> = vms.iter().collect();
    ranked.sort_by(|a, b| b.mips.total_cmp(&a.mips).then(a.id.cmp(&b.id)));
    ranked.into_iter().map(|v| v.id).collect()
}

/// Cloudlet ids by descending length; equal lengths keep arrival order.
pub fn rank_cloudlets_by_length(cloudlets: &[Cloudlet]) -> Vec<CloudletId> {
    let mut ranked: Vec<&Cloudlet> = cloudlets.iter().collect();
    ranked.sort_by(|a, b| {
        b.length
            .total_cmp(&a.length)
            .then(a.arrival_index.cmp(&b.arrival_index))
    });
    ranked.into_iter().map(|c| c.id).collect()
}

fn cyclic(scenario: &ValidScenario, policy: Policy) -> PolicyOutcome {
    let ring: Vec<VmId> = scenario.vms.iter().map(|v| v.id).collect();
    let arrivals: Vec<CloudletId> = scenario
        .cloudlets_in_arrival_order()
        .into_iter()
        .map(|c| c.id)
        .collect();
    let entries = arrivals
        .iter()
        .enumerate()
        .map(|(k, &c)| (c, ring[k % ring.len()]))
        .collect();
    PolicyOutcome {
        policy,
        plan: AssignmentPlan::new(entries),
        mode: policy.default_mode(),
        vm_ranking: ring,
        cloudlet_ranking: arrivals,
    }
}

/// Arrival order dealt cyclically over the VMs in creation order; space-shared.
pub fn fcfs_assign(scenario: &ValidScenario) -> PolicyOutcome {
    cyclic(scenario, Policy::Fcfs)
}

/// Arrival order dealt around the VM ring (declared order); time-shared.
pub fn rr_assign(scenario: &ValidScenario) -> PolicyOutcome {
    cyclic(scenario, Policy::Rr)
}

/// Generalized priority: longest cloudlet first, each placed on the VM with the
/// earliest estimated finish `(assigned_work + length) / mips`.
///
/// Ties go to the higher-MIPS VM, then the lower id, i.e. the earlier VM in
/// [`rank_vms_by_mips`] order. Plan order is processing order, so every VM runs
/// its queue longest-first.
pub fn gpa_assign(scenario: &ValidScenario) -> PolicyOutcome {
    let vm_ranking = rank_vms_by_mips(&scenario.vms);
    let cloudlet_ranking = rank_cloudlets_by_length(&scenario.cloudlets);

    // Index table of VMs in rank order with the work already bound to each.
    let mut table: Vec<(VmId, f64, f64)> = vm_ranking
        .iter()
        .map(|&id| {
            let vm = scenario.vm(id).expect("ranked ids come from the scenario");
            (id, vm.mips, 0.0)
        })
        .collect();

    let mut entries = Vec::with_capacity(cloudlet_ranking.len());
    for &cid in &cloudlet_ranking {
        let length = scenario
            .cloudlet(cid)
            .expect("ranked ids come from the scenario")
            .length;
        let mut best = 0;
        let mut best_finish = f64::INFINITY;
        for (i, &(_, mips, assigned)) in table.iter().enumerate() {
            let finish = (assigned + length) / mips;
            // Strict: on a tie the earlier (higher-ranked) VM stays.
            if finish < best_finish {
                best = i;
                best_finish = finish;
            }
        }
        table[best].2 += length;
        entries.push((cid, table[best].0));
    }

    PolicyOutcome {
        policy: Policy::Gpa,
        plan: AssignmentPlan::new(entries),
        mode: Policy::Gpa.default_mode(),
        vm_ranking,
        cloudlet_ranking,
    }
}

/// Runs `policy` on `scenario`, honoring the scenario's execution-mode override.
pub fn assign_with(scenario: &ValidScenario, policy: Policy) -> PolicyOutcome {
    let mut outcome = match policy {
        Policy::Fcfs => fcfs_assign(scenario),
        Policy::Rr => rr_assign(scenario),
        Policy::Gpa => gpa_assign(scenario),
    };
    if let Some(mode) = scenario.execution_mode {
        outcome.mode = mode;
    }
    outcome
}

/// Runs the scenario's own policy.
pub fn assign(scenario: &ValidScenario) -> PolicyOutcome {
    assign_with(scenario, scenario.policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Datacenter, DatacenterId, Host, HostId, Scenario};
    use alloc::vec;

    fn vms(mips: &[f64]) -> Vec<Vm> {
        mips.iter()
            .enumerate()
            .map(|(i, &m)| Vm::new(i as u32, m, 512))
            .collect()
    }

    fn scenario(mips: &[f64], lengths: &[f64], policy: Policy) -> ValidScenario {
        Scenario {
            datacenters: vec![Datacenter {
                id: DatacenterId(1),
                hosts: vec![Host {
                    id: HostId(1),
                    datacenter_id: DatacenterId(1),
                    total_mips: 1e9,
                    ram_mb: u32::MAX,
                    storage_mb: 1,
                }],
            }],
            vms: mips
                .iter()
                .enumerate()
                .map(|(i, &m)| Vm::new(i as u32 + 1, m, 512))
                .collect(),
            cloudlets: lengths
                .iter()
                .enumerate()
                .map(|(i, &l)| Cloudlet::new(i as u32 + 1, l, i as u32))
                .collect(),
            policy,
            execution_mode: None,
        }
        .validate()
        .unwrap()
    }

    fn ids(v: &[VmId]) -> Vec<u32> {
        v.iter().map(|x| x.0).collect()
    }

    #[test]
    fn vm_ranking_example() {
        let v = vms(&[250.0, 1000.0, 250.0, 500.0, 250.0]);
        assert_eq!(ids(&rank_vms_by_mips(&v)), vec![1, 3, 0, 2, 4]);
        assert_eq!(ids(&rank_vms_by_mips(&v[..1])), vec![0]);
        assert_eq!(ids(&rank_vms_by_mips(&vms(&[7.0; 4]))), vec![0, 1, 2, 3]);
    }

    #[test]
    fn cloudlet_ranking_examples() {
        let lengths = [
            20000.0, 10000.0, 20000.0, 10000.0, 10000.0, 20000.0, 10000.0, 20000.0, 10000.0,
            10000.0, 20000.0, 10000.0,
        ];
        let cl: Vec<Cloudlet> = lengths
            .iter()
            .enumerate()
            .map(|(i, &l)| Cloudlet::new(i as u32 + 1, l, i as u32))
            .collect();
        let ranked: Vec<u32> = rank_cloudlets_by_length(&cl).iter().map(|c| c.0).collect();
        assert_eq!(ranked, vec![1, 3, 6, 8, 11, 2, 4, 5, 7, 9, 10, 12]);

        let same: Vec<Cloudlet> = (0..4).map(|i| Cloudlet::new(10 - i, 5.0, i)).collect();
        let ranked: Vec<u32> = rank_cloudlets_by_length(&same)
            .iter()
            .map(|c| c.0)
            .collect();
        assert_eq!(ranked, vec![10, 9, 8, 7]);

        let two = [Cloudlet::new(1, 5.0, 0), Cloudlet::new(2, 10.0, 1)];
        let ranked: Vec<u32> = rank_cloudlets_by_length(&two).iter().map(|c| c.0).collect();
        assert_eq!(ranked, vec![2, 1]);
    }

    #[test]
    fn fcfs_single_vm_keeps_arrival_order() {
        let s = scenario(&[100.0], &[3.0, 1.0, 2.0], Policy::Fcfs);
        let out = fcfs_assign(&s);
        assert_eq!(out.mode, ExecutionMode::SpaceShared);
        assert_eq!(
            out.plan.queue(VmId(1)),
            vec![CloudletId(1), CloudletId(2), CloudletId(3)]
        );
    }

    #[test]
    fn fcfs_bijection_when_counts_match() {
        let s = scenario(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0], Policy::Fcfs);
        let out = fcfs_assign(&s);
        assert_eq!(
            out.plan.entries,
            vec![
                (CloudletId(1), VmId(1)),
                (CloudletId(2), VmId(2)),
                (CloudletId(3), VmId(3))
            ]
        );
    }

    #[test]
    fn cyclic_follows_arrival_index_not_vector_order() {
        let mut s = scenario(&[1.0, 2.0], &[5.0, 6.0], Policy::Rr).into_inner();
        s.cloudlets.reverse();
        let s = s.validate().unwrap();
        let out = rr_assign(&s);
        assert_eq!(out.mode, ExecutionMode::TimeShared);
        assert_eq!(out.plan.vm_of(CloudletId(1)), Some(VmId(1)));
        assert_eq!(out.plan.vm_of(CloudletId(2)), Some(VmId(2)));
    }

    #[test]
    fn gpa_single_cloudlet_goes_to_fastest() {
        let s = scenario(&[250.0, 500.0, 1000.0, 250.0], &[42.0], Policy::Gpa);
        let out = gpa_assign(&s);
        assert_eq!(out.plan.entries, vec![(CloudletId(1), VmId(3))]);
    }

    #[test]
    fn gpa_tie_prefers_faster_then_lower_id() {
        // Second cloudlet: vm1 (200 / 100) and vm2 (100 / 50) both finish at 2.0.
        let s = scenario(&[100.0, 50.0], &[100.0, 100.0], Policy::Gpa);
        let out = gpa_assign(&s);
        assert_eq!(out.plan.queue(VmId(1)), vec![CloudletId(1), CloudletId(2)]);

        // Equal speeds: lower id first.
        let s = scenario(&[100.0, 100.0], &[100.0, 100.0], Policy::Gpa);
        let out = gpa_assign(&s);
        assert_eq!(
            out.plan.entries,
            vec![(CloudletId(1), VmId(1)), (CloudletId(2), VmId(2))]
        );
    }

    #[test]
    fn dispatch_and_override() {
        let s = scenario(&[100.0, 50.0], &[100.0, 100.0], Policy::Gpa);
        assert_eq!(assign(&s), gpa_assign(&s));
        let s = s.with_policy(Policy::Fcfs);
        assert_eq!(assign(&s), fcfs_assign(&s));

        let mut raw = s.into_inner();
        raw.execution_mode = Some(ExecutionMode::TimeShared);
        let s = raw.validate().unwrap();
        let out = assign(&s);
        assert_eq!(out.policy, Policy::Fcfs);
        assert_eq!(out.mode, ExecutionMode::TimeShared);
    }

    #[test]
    fn rankings_are_permutations() {
        let s = scenario(&[3.0, 1.0, 2.0], &[4.0, 9.0, 1.0, 9.0], Policy::Gpa);
        for p in Policy::ALL {
            let out = assign_with(&s, p);
            let mut v = ids(&out.vm_ranking);
            v.sort();
            assert_eq!(v, vec![1, 2, 3]);
            let mut c: Vec<u32> = out.cloudlet_ranking.iter().map(|c| c.0).collect();
            c.sort();
            assert_eq!(c, vec![1, 2, 3, 4]);
            assert!(out.plan.check(&s).is_ok());
        }
    }
}
