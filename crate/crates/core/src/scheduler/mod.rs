//! Minimum-makespan scheduling of activities under renewable resource
//! capacities and finish-to-start precedence.
//!
//! A [`Project`] is the solver-facing form of an activity network: integer
//! durations, per-resource demands and predecessor lists over indexed
//! resources with fixed capacities. Time is discrete; an activity started at
//! `s` occupies its demands during `[s, s + d)`.

mod bounds;
mod compare;
mod exact;
mod greedy;
mod oracle;
mod validate;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netmap::ActivityNetwork;

pub use bounds::{critical_path, lower_bound, tails};
pub use compare::{compare_methods, MethodComparison};
pub use exact::exact_schedule;
pub use greedy::greedy_schedule;
pub use oracle::{brute_force_schedule, ORACLE_MAX_ACTIVITIES};
pub use validate::{validate_schedule, ScheduleViolation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("invalid project: {}", .0.join("; "))]
    InvalidProject(Vec<String>),
    #[error("no feasible schedule fits within horizon {horizon}")]
    Infeasible { horizon: u32 },
    #[error("search limit reached after {nodes} nodes without any feasible schedule")]
    LimitReached { nodes: u64 },
    #[error("oracle supports at most {max} activities, got {activities}")]
    TooLarge { activities: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub duration: u32,
    /// `(resource index, units)` pairs.
    pub demands: Vec<(usize, u32)>,
    pub preds: Vec<usize>,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Project {
    pub capacities: Vec<u32>,
    #[serde(default)]
    pub resource_names: Vec<String>,
    pub activities: Vec<Task>,
}

impl Project {
    pub fn len(&self) -> usize {
        self.activities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.activities.is_empty()
    }

    pub fn total_duration(&self) -> u32 {
        self.activities.iter().map(|a| a.duration).sum()
    }

    pub fn resource_name(&self, r: usize) -> String {
        self.resource_names
            .get(r)
            .cloned()
            .unwrap_or_else(|| format!("r{r}"))
    }

    pub fn label(&self, a: usize) -> String {
        let l = &self.activities[a].label;
        if l.is_empty() {
            format!("A{a}")
        } else {
            l.clone()
        }
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.len()];
        for (j, a) in self.activities.iter().enumerate() {
            for &p in &a.preds {
                succ[p].push(j);
            }
        }
        succ
    }

    /// Topological order that always releases the smallest ready id first;
    /// `None` when the precedence relation has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let succ = self.successors();
        let mut indegree: Vec<usize> = self.activities.iter().map(|a| a.preds.len()).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&j| indegree[j] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(j)) = heap.pop() {
            order.push(j);
            for &s in &succ[j] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    heap.push(Reverse(s));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn validate(&self) -> Result<(), ScheduleError> {
        let mut problems = Vec::new();
        let n = self.len();
        for (j, a) in self.activities.iter().enumerate() {
            if a.duration == 0 {
                problems.push(format!("activity {j} has zero duration"));
            }
            for &p in &a.preds {
                if p >= n || p == j {
                    problems.push(format!("activity {j} has invalid predecessor {p}"));
                }
            }
            for &(r, units) in &a.demands {
                match self.capacities.get(r) {
                    None => problems.push(format!("activity {j} uses unknown resource {r}")),
                    Some(&cap) if units > cap => problems.push(format!(
                        "activity {j} demands {units} of {} (capacity {cap})",
                        self.resource_name(r)
                    )),
                    _ => {}
                }
            }
        }
        if problems.is_empty() && self.topological_order().is_none() {
            problems.push("precedence relation has a cycle".into());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(ScheduleError::InvalidProject(problems))
        }
    }
}

impl From<&ActivityNetwork> for Project {
    fn from(n: &ActivityNetwork) -> Self {
        let topo = &n.topology;
        let resources = topo.resources();
        Project {
            capacities: resources
                .iter()
                .map(|&r| topo.capacity(r).unwrap_or(0))
                .collect(),
            resource_names: resources.iter().map(|r| r.to_string()).collect(),
            activities: n
                .activities
                .iter()
                .map(|a| Task {
                    duration: a.duration,
                    demands: a
                        .demands
                        .iter()
                        .map(|(&r, &units)| {
                            let idx = topo.resource_index(r).unwrap_or(usize::MAX);
                            (idx, units)
                        })
                        .collect(),
                    preds: a.preds.clone(),
                    label: n.label(a.id),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverLimits {
    /// Latest allowed finish time; defaults to the sum of all durations.
    pub horizon: Option<u32>,
    pub node_budget: Option<u64>,
    pub wall_limit: Option<Duration>,
}

impl SolverLimits {
    pub fn horizon_for(&self, p: &Project) -> u32 {
        self.horizon.unwrap_or_else(|| p.total_duration())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Greedy,
    Exact,
    Oracle,
}

/// Start times indexed by activity id (`None` = unscheduled).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub starts: Vec<Option<u32>>,
    pub makespan: u32,
    pub proved_optimal: bool,
    pub method: Method,
    pub horizon: u32,
}

impl Schedule {
    pub(crate) fn from_starts(
        p: &Project,
        starts: Vec<Option<u32>>,
        method: Method,
        proved_optimal: bool,
        horizon: u32,
    ) -> Self {
        let makespan = starts
            .iter()
            .zip(&p.activities)
            .filter_map(|(s, a)| s.map(|s| s + a.duration))
            .max()
            .unwrap_or(0);
        Schedule {
            starts,
            makespan,
            proved_optimal,
            method,
            horizon,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.starts.iter().all(Option::is_some)
    }

    pub fn start(&self, activity: usize) -> Option<u32> {
        self.starts.get(activity).copied().flatten()
    }
}

#[derive(Serialize, Deserialize)]
struct ScheduleFile {
    method: Method,
    makespan: u32,
    proved_optimal: bool,
    horizon: u32,
    starts: BTreeMap<usize, i64>,
}

impl Serialize for Schedule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScheduleFile {
            method: self.method,
            makespan: self.makespan,
            proved_optimal: self.proved_optimal,
            horizon: self.horizon,
            starts: self
                .starts
                .iter()
                .enumerate()
                .map(|(i, s)| (i, s.map_or(-1, i64::from)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Schedule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let file = ScheduleFile::deserialize(d)?;
        let n = file.starts.len();
        let mut starts = vec![None; n];
        for (id, s) in file.starts {
            if id >= n {
                return Err(D::Error::custom(format!(
                    "activity ids must be dense, found {id}"
                )));
            }
            starts[id] = match s {
                -1 => None,
                s => {
                    Some(u32::try_from(s).map_err(|_| D::Error::custom(format!("bad start {s}")))?)
                }
            };
        }
        Ok(Schedule {
            starts,
            makespan: file.makespan,
            proved_optimal: file.proved_optimal,
            method: file.method,
            horizon: file.horizon,
        })
    }
}

/// Remaining capacity of every resource at every time step `0..horizon`.
#[derive(Debug, Clone)]
pub struct ResourceProfile {
    horizon: u32,
    capacities: Vec<u32>,
    remaining: Vec<Vec<u32>>,
}

impl ResourceProfile {
    pub fn new(capacities: &[u32], horizon: u32) -> Self {
        ResourceProfile {
            horizon,
            capacities: capacities.to_vec(),
            remaining: capacities
                .iter()
                .map(|&c| vec![c; horizon as usize])
                .collect(),
        }
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn remaining(&self, r: usize, t: u32) -> u32 {
        self.remaining[r][t as usize]
    }

    pub fn usage(&self, r: usize, t: u32) -> u32 {
        self.capacities[r] - self.remaining(r, t)
    }

    /// Whether `task` fits entirely inside the horizon at `start`.
    pub fn fits(&self, task: &Task, start: u32) -> bool {
        let end = start as usize + task.duration as usize;
        if end > self.horizon as usize {
            return false;
        }
        task.demands.iter().all(|&(r, units)| {
            self.remaining[r][start as usize..end]
                .iter()
                .all(|&left| left >= units)
        })
    }

    pub fn reserve(&mut self, task: &Task, start: u32) {
        let end = (start + task.duration) as usize;
        for &(r, units) in &task.demands {
            for left in &mut self.remaining[r][start as usize..end] {
                *left -= units;
            }
        }
    }

    pub fn release(&mut self, task: &Task, start: u32) {
        let end = (start + task.duration) as usize;
        for &(r, units) in &task.demands {
            for left in &mut self.remaining[r][start as usize..end] {
                *left += units;
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod testing {
    //! Shared fixtures for scheduler unit tests.

    use rand::Rng;

    use super::{Project, Task};
    use crate::netmap::{build_activity_network, NonlocalGate, Topology};

    pub fn job_network(jobs: &[(usize, usize)], topology: Topology, d: u32) -> Project {
        let gates: Vec<_> = jobs
            .iter()
            .enumerate()
            .map(|(k, &qpus)| NonlocalGate {
                gate: k,
                qpus,
                start: k as u32,
            })
            .collect();
        Project::from(&build_activity_network(&gates, &topology, d).unwrap())
    }

    /// Random project: chains and fan-ins over lower ids, demands within capacity.
    pub fn random_project<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> Project {
        let n = rng.random_range(min_n..=max_n);
        let num_resources = rng.random_range(1..=3);
        let capacities: Vec<u32> = (0..num_resources)
            .map(|_| rng.random_range(1..=3))
            .collect();
        let activities = (0..n)
            .map(|j| {
                let mut preds = Vec::new();
                if j > 0 && rng.random_bool(0.5) {
                    preds.push(j - 1);
                }
                if j > 1 && rng.random_bool(0.25) {
                    let p = rng.random_range(0..j - 1);
                    preds.push(p);
                }
                let mut demands = Vec::new();
                for (r, &cap) in capacities.iter().enumerate() {
                    if rng.random_bool(0.6) {
                        demands.push((r, rng.random_range(1..=cap)));
                    }
                }
                Task {
                    duration: rng.random_range(1..=3),
                    demands,
                    preds,
                    label: String::new(),
                }
            })
            .collect();
        Project {
            capacities,
            resource_names: Vec::new(),
            activities,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmap::TopologyConfig;

    #[test]
    fn project_from_network() {
        let p = testing::job_network(&[(0, 1)], TopologyConfig::TWO_QPU.topology, 2);
        assert_eq!(p.capacities, vec![2, 2, 2, 2, 2]);
        assert_eq!(
            p.resource_names,
            vec![
                "comm_qpu:0",
                "mem_qpu:0",
                "comm_qpu:1",
                "mem_qpu:1",
                "comm_switch"
            ]
        );
        assert_eq!(p.activities[2].demands, vec![(4, 2)]);
        assert_eq!(
            p.activities[3].demands,
            vec![(0, 1), (2, 1), (1, 1), (3, 1)]
        );
        assert_eq!(p.label(3), "MV12");
        assert!(p.validate().is_ok());
    }

    #[test]
    fn topological_order_prefers_low_ids() {
        let task = |preds: Vec<usize>| Task {
            duration: 1,
            demands: vec![],
            preds,
            label: String::new(),
        };
        let p = Project {
            capacities: vec![],
            resource_names: vec![],
            activities: vec![task(vec![2]), task(vec![]), task(vec![1])],
        };
        assert_eq!(p.topological_order(), Some(vec![1, 2, 0]));
        let cyclic = Project {
            activities: vec![task(vec![1]), task(vec![0])],
            ..p
        };
        assert_eq!(cyclic.topological_order(), None);
        assert!(cyclic.validate().is_err());
    }

    #[test]
    fn schedule_json() {
        let s = Schedule {
            starts: vec![Some(0), None, Some(4)],
            makespan: 6,
            proved_optimal: false,
            method: Method::Greedy,
            horizon: 12,
        };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"method":"greedy","makespan":6,"proved_optimal":false,"horizon":12,"starts":{"0":0,"1":-1,"2":4}}"#
        );
        let back: Schedule = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn profile_bookkeeping() {
        let task = Task {
            duration: 2,
            demands: vec![(0, 2)],
            preds: vec![],
            label: String::new(),
        };
        let mut prof = ResourceProfile::new(&[3], 4);
        assert!(prof.fits(&task, 2));
        assert!(!prof.fits(&task, 3));
        prof.reserve(&task, 1);
        assert_eq!(prof.usage(0, 1), 2);
        assert_eq!(prof.remaining(0, 2), 1);
        assert!(!prof.fits(&task, 0));
        prof.release(&task, 1);
        assert_eq!(prof.usage(0, 2), 0);
    }
}
