//! Star-network resource model and the expansion of nonlocal gates into
//! network operations.
//!
//! Every nonlocal gate between QPUs `i` and `j` becomes one job of four
//! activities: link-level entanglement `LLE_i` and `LLE_j` with the switch,
//! an entanglement swap at the switch, and a move of the delivered pair into
//! memory qubits at both QPUs. Within a job both LLEs precede the swap and
//! the swap precedes the move; across jobs the moves form one chain in
//! nonlocal-gate order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{asap_schedule, Circuit, DurationTable};
use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetmapError {
    #[error("partition covers {got} qubits but the circuit has {expected}")]
    PartitionMismatch { expected: usize, got: usize },
    #[error("topology field `{0}` must be at least {1}")]
    InvalidTopology(&'static str, u32),
    #[error("operation duration must be at least 1")]
    ZeroDuration,
    #[error("job {job}: invalid QPU pair ({a}, {b}) for {num_qpus} QPUs")]
    InvalidQpuPair {
        job: usize,
        a: usize,
        b: usize,
        num_qpus: usize,
    },
    #[error("{activity} demands {demand} x {resource} but capacity is {capacity}")]
    CapacityExceeded {
        activity: String,
        resource: ResourceId,
        demand: u32,
        capacity: u32,
    },
    #[error("unknown topology preset `{0}` (expected paper2qpu or paper4qpu)")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub num_qpus: usize,
    pub comm_per_qpu: u32,
    pub mem_per_qpu: u32,
    pub switch_comm: u32,
}

impl Topology {
    pub fn validate(&self) -> Result<(), NetmapError> {
        if self.num_qpus < 2 {
            return Err(NetmapError::InvalidTopology("num_qpus", 2));
        }
        for (name, v) in [
            ("comm_per_qpu", self.comm_per_qpu),
            ("mem_per_qpu", self.mem_per_qpu),
            ("switch_comm", self.switch_comm),
        ] {
            if v < 1 {
                return Err(NetmapError::InvalidTopology(name, 1));
            }
        }
        Ok(())
    }

    pub fn capacity(&self, r: ResourceId) -> Option<u32> {
        match r {
            ResourceId::CommQpu(q) if q < self.num_qpus => Some(self.comm_per_qpu),
            ResourceId::MemQpu(q) if q < self.num_qpus => Some(self.mem_per_qpu),
            ResourceId::CommSwitch => Some(self.switch_comm),
            _ => None,
        }
    }

    /// All resources, grouped per QPU (comm then memory), switch last.
    pub fn resources(&self) -> Vec<ResourceId> {
        let mut out: Vec<_> = (0..self.num_qpus)
            .flat_map(|q| [ResourceId::CommQpu(q), ResourceId::MemQpu(q)])
            .collect();
        out.push(ResourceId::CommSwitch);
        out
    }

    /// Position of `r` in [`Topology::resources`].
    pub fn resource_index(&self, r: ResourceId) -> Option<usize> {
        match r {
            ResourceId::CommQpu(q) if q < self.num_qpus => Some(2 * q),
            ResourceId::MemQpu(q) if q < self.num_qpus => Some(2 * q + 1),
            ResourceId::CommSwitch => Some(2 * self.num_qpus),
            _ => None,
        }
    }
}

/// Topology plus the uniform operation duration, as read from a config file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyConfig {
    #[serde(flatten)]
    pub topology: Topology,
    pub op_duration: u32,
}

impl TopologyConfig {
    /// Two QPUs and a switch, two communication and two memory qubits each.
    pub const TWO_QPU: TopologyConfig = TopologyConfig {
        topology: Topology {
            num_qpus: 2,
            comm_per_qpu: 2,
            mem_per_qpu: 2,
            switch_comm: 2,
        },
        op_duration: 2,
    };

    /// Four QPUs and a switch with four of each qubit type.
    pub const FOUR_QPU: TopologyConfig = TopologyConfig {
        topology: Topology {
            num_qpus: 4,
            comm_per_qpu: 4,
            mem_per_qpu: 4,
            switch_comm: 4,
        },
        op_duration: 2,
    };

    pub fn preset(name: &str) -> Result<Self, NetmapError> {
        match name {
            "paper2qpu" => Ok(Self::TWO_QPU),
            "paper4qpu" => Ok(Self::FOUR_QPU),
            other => Err(NetmapError::UnknownPreset(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResourceId {
    CommQpu(usize),
    MemQpu(usize),
    CommSwitch,
}

impl fmt::Display for ResourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceId::CommQpu(q) => write!(f, "comm_qpu:{q}"),
            ResourceId::MemQpu(q) => write!(f, "mem_qpu:{q}"),
            ResourceId::CommSwitch => f.write_str("comm_switch"),
        }
    }
}

impl FromStr for ResourceId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "comm_switch" {
            return Ok(ResourceId::CommSwitch);
        }
        let (kind, idx) = s
            .split_once(':')
            .ok_or_else(|| format!("invalid resource `{s}`"))?;
        let q: usize = idx
            .parse()
            .map_err(|_| format!("invalid QPU index in `{s}`"))?;
        match kind {
            "comm_qpu" => Ok(ResourceId::CommQpu(q)),
            "mem_qpu" => Ok(ResourceId::MemQpu(q)),
            _ => Err(format!("invalid resource `{s}`")),
        }
    }
}

impl Serialize for ResourceId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ResourceId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActivityKind {
    Lle,
    Swap,
    Move,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activity {
    pub id: usize,
    pub kind: ActivityKind,
    /// QPU end of a link-level entanglement; absent for swap and move.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qpu: Option<usize>,
    pub job: usize,
    pub duration: u32,
    pub demands: BTreeMap<ResourceId, u32>,
    pub preds: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub id: usize,
    pub qpus: (usize, usize),
    /// Originating gate id in the circuit.
    pub gate: usize,
}

fn qpu_tag(i: usize, j: usize) -> String {
    if i < 9 && j < 9 {
        format!("{}{}", i + 1, j + 1)
    } else {
        format!("{}-{}", i + 1, j + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivityNetwork {
    pub activities: Vec<Activity>,
    pub jobs: Vec<Job>,
    pub topology: Topology,
}

impl ActivityNetwork {
    pub fn len(&self) -> usize {
        self.activities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.activities.is_empty()
    }

    /// Chart label with 1-based QPU numbers: `LLE1s`, `SW12`, `MV12`.
    pub fn label(&self, activity: usize) -> String {
        let a = &self.activities[activity];
        let (i, j) = self.jobs.get(a.job).map(|job| job.qpus).unwrap_or((0, 0));
        match a.kind {
            ActivityKind::Lle => format!("LLE{}s", a.qpu.unwrap_or(0) + 1),
            ActivityKind::Swap => format!("SW{}", qpu_tag(i, j)),
            ActivityKind::Move => format!("MV{}", qpu_tag(i, j)),
        }
    }
}

/// A two-qubit gate whose operands sit on different QPUs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonlocalGate {
    pub gate: usize,
    pub qpus: (usize, usize),
    /// Start time in the ASAP schedule of the circuit.
    pub start: u32,
}

/// Nonlocal gates ordered by (ASAP start, gate id).
pub fn extract_nonlocal_gates(
    c: &Circuit,
    p: &Partition,
    durations: &DurationTable,
) -> Result<Vec<NonlocalGate>, NetmapError> {
    if p.assignment.len() != c.num_qubits() {
        return Err(NetmapError::PartitionMismatch {
            expected: c.num_qubits(),
            got: p.assignment.len(),
        });
    }
    let gantt = asap_schedule(c, durations);
    let mut out: Vec<NonlocalGate> = c
        .gates()
        .iter()
        .filter(|g| g.is_two_qubit())
        .filter_map(|g| {
            let (a, b) = (p.part_of(g.qubits[0]), p.part_of(g.qubits[1]));
            (a != b).then(|| NonlocalGate {
                gate: g.id,
                qpus: (a, b),
                start: gantt.start_of(g.id),
            })
        })
        .collect();
    out.sort_by_key(|g| (g.start, g.gate));
    Ok(out)
}

/// Expands each nonlocal gate into its four-activity job, in list order.
/// Activity ids within job `k` are `4k` (LLE_i), `4k+1` (LLE_j), `4k+2`
/// (swap) and `4k+3` (move).
pub fn build_activity_network(
    gates: &[NonlocalGate],
    topology: &Topology,
    op_duration: u32,
) -> Result<ActivityNetwork, NetmapError> {
    topology.validate()?;
    if op_duration == 0 {
        return Err(NetmapError::ZeroDuration);
    }
    let mut activities = Vec::with_capacity(4 * gates.len());
    let mut jobs = Vec::with_capacity(gates.len());
    let mut prev_move: Option<usize> = None;

    for (k, g) in gates.iter().enumerate() {
        let (i, j) = g.qpus;
        if i == j || i >= topology.num_qpus || j >= topology.num_qpus {
            return Err(NetmapError::InvalidQpuPair {
                job: k,
                a: i,
                b: j,
                num_qpus: topology.num_qpus,
            });
        }
        jobs.push(Job {
            id: k,
            qpus: (i, j),
            gate: g.gate,
        });
        let base = activities.len();
        let lle = |id: usize, q: usize| Activity {
            id,
            kind: ActivityKind::Lle,
            qpu: Some(q),
            job: k,
            duration: op_duration,
            demands: BTreeMap::from([(ResourceId::CommQpu(q), 1), (ResourceId::CommSwitch, 1)]),
            preds: vec![],
        };
        activities.push(lle(base, i));
        activities.push(lle(base + 1, j));
        activities.push(Activity {
            id: base + 2,
            kind: ActivityKind::Swap,
            qpu: None,
            job: k,
            duration: op_duration,
            demands: BTreeMap::from([(ResourceId::CommSwitch, 2)]),
            preds: vec![base, base + 1],
        });
        let mut move_preds: Vec<usize> = prev_move.into_iter().collect();
        move_preds.push(base + 2);
        activities.push(Activity {
            id: base + 3,
            kind: ActivityKind::Move,
            qpu: None,
            job: k,
            duration: op_duration,
            demands: BTreeMap::from([
                (ResourceId::CommQpu(i), 1),
                (ResourceId::MemQpu(i), 1),
                (ResourceId::CommQpu(j), 1),
                (ResourceId::MemQpu(j), 1),
            ]),
            preds: move_preds,
        });
        prev_move = Some(base + 3);
    }

    let network = ActivityNetwork {
        activities,
        jobs,
        topology: *topology,
    };
    for a in &network.activities {
        for (&r, &demand) in &a.demands {
            let capacity = topology.capacity(r).unwrap_or(0);
            if demand > capacity {
                return Err(NetmapError::CapacityExceeded {
                    activity: network.label(a.id),
                    resource: r,
                    demand,
                    capacity,
                });
            }
        }
    }
    Ok(network)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkViolation {
    IdMismatch {
        index: usize,
        id: usize,
    },
    ZeroDuration {
        activity: usize,
    },
    BadPredecessor {
        activity: usize,
        pred: usize,
    },
    UnknownResource {
        activity: usize,
        resource: ResourceId,
    },
    CapacityExceeded {
        activity: usize,
        resource: ResourceId,
        demand: u32,
        capacity: u32,
    },
    /// Activities that lie on or behind a precedence cycle.
    Cycle {
        activities: Vec<usize>,
    },
    JobStructure {
        job: usize,
        detail: String,
    },
    InvalidTopology(String),
}

impl fmt::Display for NetworkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkViolation::IdMismatch { index, id } => {
                write!(f, "activity at index {index} has id {id}")
            }
            NetworkViolation::ZeroDuration { activity } => {
                write!(f, "activity {activity} has zero duration")
            }
            NetworkViolation::BadPredecessor { activity, pred } => {
                write!(f, "activity {activity} has invalid predecessor {pred}")
            }
            NetworkViolation::UnknownResource { activity, resource } => {
                write!(f, "activity {activity} demands unknown resource {resource}")
            }
            NetworkViolation::CapacityExceeded {
                activity,
                resource,
                demand,
                capacity,
            } => write!(
                f,
                "activity {activity} demands {demand} x {resource} (capacity {capacity})"
            ),
            NetworkViolation::Cycle { activities } => {
                write!(f, "precedence cycle through activities {activities:?}")
            }
            NetworkViolation::JobStructure { job, detail } => write!(f, "job {job}: {detail}"),
            NetworkViolation::InvalidTopology(msg) => write!(f, "topology: {msg}"),
        }
    }
}

/// Checks ids, durations, predecessor references, demands against
/// capacity, acyclicity and the 2 LLE + swap + move shape of every job.
/// Returns every violation found.
pub fn validate_network(n: &ActivityNetwork) -> Vec<NetworkViolation> {
    let mut out = Vec::new();
    if let Err(e) = n.topology.validate() {
        out.push(NetworkViolation::InvalidTopology(e.to_string()));
    }
    let count = n.activities.len();
    for (index, a) in n.activities.iter().enumerate() {
        if a.id != index {
            out.push(NetworkViolation::IdMismatch { index, id: a.id });
        }
        if a.duration == 0 {
            out.push(NetworkViolation::ZeroDuration { activity: index });
        }
        for &p in &a.preds {
            if p >= count || p == index {
                out.push(NetworkViolation::BadPredecessor {
                    activity: index,
                    pred: p,
                });
            }
        }
        for (&r, &demand) in &a.demands {
            match n.topology.capacity(r) {
                None => out.push(NetworkViolation::UnknownResource {
                    activity: index,
                    resource: r,
                }),
                Some(capacity) if demand > capacity => {
                    out.push(NetworkViolation::CapacityExceeded {
                        activity: index,
                        resource: r,
                        demand,
                        capacity,
                    })
                }
                Some(_) => {}
            }
        }
    }

    // Kahn's algorithm; whatever cannot be released sits on or behind a cycle
    let mut indegree = vec![0usize; count];
    let mut succs = vec![Vec::new(); count];
    for a in &n.activities {
        for &p in a
            .preds
            .iter()
            .filter(|&&p| p < count && p != a.id && a.id < count)
        {
            indegree[a.id] += 1;
            succs[p].push(a.id);
        }
    }
    let mut stack: Vec<usize> = (0..count).filter(|&i| indegree[i] == 0).collect();
    let mut released = 0;
    while let Some(u) = stack.pop() {
        released += 1;
        for &v in &succs[u] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                stack.push(v);
            }
        }
    }
    if released < count {
        let activities = (0..count).filter(|&i| indegree[i] > 0).collect();
        out.push(NetworkViolation::Cycle { activities });
    }

    let mut per_job: BTreeMap<usize, Vec<&Activity>> = BTreeMap::new();
    for a in &n.activities {
        per_job.entry(a.job).or_default().push(a);
    }
    for job in &n.jobs {
        if !per_job.contains_key(&job.id) {
            out.push(NetworkViolation::JobStructure {
                job: job.id,
                detail: "no activities".into(),
            });
        }
    }
    for (&job, acts) in &per_job {
        if !n.jobs.iter().any(|j| j.id == job) {
            out.push(NetworkViolation::JobStructure {
                job,
                detail: "activities reference an undeclared job".into(),
            });
            continue;
        }
        let count_of = |k: ActivityKind| acts.iter().filter(|a| a.kind == k).count();
        let (lle, swap, mv) = (
            count_of(ActivityKind::Lle),
            count_of(ActivityKind::Swap),
            count_of(ActivityKind::Move),
        );
        if (lle, swap, mv) != (2, 1, 1) {
            out.push(NetworkViolation::JobStructure {
                job,
                detail: format!("expected 2 LLE + 1 swap + 1 move, found {lle} + {swap} + {mv}"),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_qft, decompose_swaps};
    use crate::partition::Partition;

    fn part(assignment: &[usize]) -> Partition {
        Partition {
            k: assignment.iter().max().unwrap() + 1,
            assignment: assignment.to_vec(),
            balance_tol: 0.0,
        }
    }

    fn jobs(n: usize, qpus: (usize, usize)) -> Vec<NonlocalGate> {
        (0..n)
            .map(|k| NonlocalGate {
                gate: k,
                qpus,
                start: k as u32,
            })
            .collect()
    }

    #[test]
    fn qft4_two_qpus_has_four_nonlocal_gates() {
        let c = build_qft(4).unwrap();
        let nl =
            extract_nonlocal_gates(&c, &part(&[0, 1, 1, 0]), &DurationTable::default()).unwrap();
        let ids: Vec<_> = nl.iter().map(|g| g.gate).collect();
        // CP(1,0), CP(2,0), CP(3,1), CP(3,2)
        assert_eq!(ids, vec![1, 2, 6, 8]);
        let starts: Vec<_> = nl.iter().map(|g| g.start).collect();
        assert_eq!(starts, vec![1, 3, 7, 9]);
        assert_eq!(nl[0].qpus, (1, 0));
        assert_eq!(nl[2].qpus, (0, 1));
    }

    #[test]
    fn fully_local_and_fully_distributed() {
        let c = build_qft(4).unwrap();
        let local = Partition {
            k: 1,
            assignment: vec![0; 4],
            balance_tol: 0.0,
        };
        assert!(
            extract_nonlocal_gates(&c, &local, &DurationTable::default())
                .unwrap()
                .is_empty()
        );
        let d = decompose_swaps(&c);
        let nl =
            extract_nonlocal_gates(&d, &part(&[0, 1, 2, 3]), &DurationTable::default()).unwrap();
        assert_eq!(nl.len(), 12);
        assert!(nl
            .windows(2)
            .all(|w| (w[0].start, w[0].gate) < (w[1].start, w[1].gate)));
    }

    #[test]
    fn partition_size_must_match() {
        let c = build_qft(4).unwrap();
        assert_eq!(
            extract_nonlocal_gates(&c, &part(&[0, 1, 1]), &DurationTable::default()),
            Err(NetmapError::PartitionMismatch {
                expected: 4,
                got: 3
            })
        );
    }

    #[test]
    fn activity_counts() {
        let t2 = TopologyConfig::TWO_QPU.topology;
        let n = build_activity_network(&jobs(4, (0, 1)), &t2, 2).unwrap();
        assert_eq!(n.len(), 16);
        assert!(validate_network(&n).is_empty());

        let t4 = TopologyConfig::FOUR_QPU.topology;
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let gates: Vec<_> = (0..12)
            .map(|k| NonlocalGate {
                gate: k,
                qpus: pairs[k % 6],
                start: k as u32,
            })
            .collect();
        let n = build_activity_network(&gates, &t4, 2).unwrap();
        assert_eq!(n.len(), 48);
        assert!(validate_network(&n).is_empty());

        let empty = build_activity_network(&[], &t2, 2).unwrap();
        assert!(empty.is_empty());
        assert!(validate_network(&empty).is_empty());
    }

    #[test]
    fn job_layout_and_precedence() {
        let t2 = TopologyConfig::TWO_QPU.topology;
        let n = build_activity_network(&jobs(3, (1, 0)), &t2, 2).unwrap();
        for k in 0..3 {
            let b = 4 * k;
            assert_eq!(n.activities[b].kind, ActivityKind::Lle);
            assert_eq!(n.activities[b].qpu, Some(1));
            assert_eq!(n.activities[b + 1].qpu, Some(0));
            assert_eq!(n.activities[b + 2].preds, vec![b, b + 1]);
            let expected_move_preds = if k == 0 { vec![2] } else { vec![b - 1, b + 2] };
            assert_eq!(n.activities[b + 3].preds, expected_move_preds);
            assert_eq!(n.activities[b + 2].demands[&ResourceId::CommSwitch], 2);
        }
        assert_eq!(n.label(0), "LLE2s");
        assert_eq!(n.label(2), "SW21");
        assert_eq!(n.label(3), "MV21");
    }

    #[test]
    fn build_errors() {
        let small_switch = Topology {
            switch_comm: 1,
            ..TopologyConfig::TWO_QPU.topology
        };
        assert!(matches!(
            build_activity_network(&jobs(1, (0, 1)), &small_switch, 2),
            Err(NetmapError::CapacityExceeded {
                demand: 2,
                capacity: 1,
                ..
            })
        ));
        let t2 = TopologyConfig::TWO_QPU.topology;
        assert!(matches!(
            build_activity_network(&jobs(1, (0, 0)), &t2, 2),
            Err(NetmapError::InvalidQpuPair { .. })
        ));
        assert!(matches!(
            build_activity_network(&jobs(1, (0, 2)), &t2, 2),
            Err(NetmapError::InvalidQpuPair { .. })
        ));
        assert_eq!(
            build_activity_network(&jobs(1, (0, 1)), &t2, 0),
            Err(NetmapError::ZeroDuration)
        );
    }

    #[test]
    fn validator_reports_capacity_and_cycle() {
        let t2 = TopologyConfig::TWO_QPU.topology;
        let mut n = build_activity_network(&jobs(1, (0, 1)), &t2, 2).unwrap();
        n.activities[2].demands.insert(ResourceId::CommSwitch, 3);
        let v = validate_network(&n);
        assert!(v.iter().any(|x| matches!(
            x,
            NetworkViolation::CapacityExceeded {
                activity: 2,
                demand: 3,
                capacity: 2,
                ..
            }
        )));

        let mut n = build_activity_network(&jobs(1, (0, 1)), &t2, 2).unwrap();
        n.activities[2].preds.push(3);
        let v = validate_network(&n);
        assert!(v.iter().any(
            |x| matches!(x, NetworkViolation::Cycle { activities } if activities.contains(&3))
        ));
    }

    #[test]
    fn validator_reports_structure() {
        let t2 = TopologyConfig::TWO_QPU.topology;
        let mut n = build_activity_network(&jobs(2, (0, 1)), &t2, 2).unwrap();
        n.activities[4].kind = ActivityKind::Swap;
        n.activities[1].preds.push(99);
        let v = validate_network(&n);
        assert!(v
            .iter()
            .any(|x| matches!(x, NetworkViolation::JobStructure { job: 1, .. })));
        assert!(v.iter().any(|x| matches!(
            x,
            NetworkViolation::BadPredecessor {
                activity: 1,
                pred: 99
            }
        )));
    }

    #[test]
    fn network_json_round_trip() {
        let t2 = TopologyConfig::TWO_QPU.topology;
        let n = build_activity_network(&jobs(2, (0, 1)), &t2, 2).unwrap();
        let text = serde_json::to_string(&n).unwrap();
        assert!(
            text.contains(r#""demands":{"comm_qpu:0":1,"comm_switch":1}"#),
            "{text}"
        );
        let back: ActivityNetwork = serde_json::from_str(&text).unwrap();
        assert_eq!(back, n);
    }

    #[test]
    fn topology_config_json() {
        let text =
            r#"{"num_qpus":2,"comm_per_qpu":2,"mem_per_qpu":2,"switch_comm":2,"op_duration":2}"#;
        let cfg: TopologyConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg, TopologyConfig::TWO_QPU);
        assert_eq!(serde_json::to_string(&cfg).unwrap(), text);
        assert!(TopologyConfig::preset("ring").is_err());
    }

    #[test]
    fn resource_ids_parse() {
        for r in [
            ResourceId::CommQpu(3),
            ResourceId::MemQpu(0),
            ResourceId::CommSwitch,
        ] {
            assert_eq!(r.to_string().parse::<ResourceId>().unwrap(), r);
        }
        assert!("comm_qpu".parse::<ResourceId>().is_err());
        assert!("disk:0".parse::<ResourceId>().is_err());
    }
}
