use super::validate::within_capacity;
use super::{Method, Project, Schedule, ScheduleError, SolverLimits};

pub const ORACLE_MAX_ACTIVITIES: usize = 12;

struct Enumeration<'a> {
    p: &'a Project,
    order: Vec<usize>,
    tails: Vec<u32>,
    makespan: u32,
    starts: Vec<Option<u32>>,
}

impl Enumeration<'_> {
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let j = self.order[depth];
        let task = &self.p.activities[j];
        let est = task
            .preds
            .iter()
            .map(|&q| self.starts[q].unwrap() + self.p.activities[q].duration)
            .max()
            .unwrap_or(0);
        let Some(latest) = self.makespan.checked_sub(self.tails[j]) else {
            return false;
        };
        for s in est..=latest {
            self.starts[j] = Some(s);
            if within_capacity(self.p, &self.starts, s, s + task.duration) && self.run(depth + 1) {
                return true;
            }
        }
        self.starts[j] = None;
        false
    }
}

/// Exhaustive search: tries every makespan upwards from the critical-path
/// length and enumerates all start vectors that respect precedence and end by
/// it. After each placement the placed window is rechecked with the
/// validator's profile builder. The first makespan admitting a feasible
/// vector is the optimum.
pub fn brute_force_schedule(p: &Project, limits: &SolverLimits) -> Result<Schedule, ScheduleError> {
    if p.len() > ORACLE_MAX_ACTIVITIES {
        return Err(ScheduleError::TooLarge {
            activities: p.len(),
            max: ORACLE_MAX_ACTIVITIES,
        });
    }
    p.validate()?;
    let horizon = limits.horizon_for(p);
    let tails = super::tails(p);
    let order = p.topological_order().expect("validated project is acyclic");
    let first = tails.iter().copied().max().unwrap_or(0);
    for makespan in first..=horizon {
        let mut e = Enumeration {
            p,
            order: order.clone(),
            tails: tails.clone(),
            makespan,
            starts: vec![None; p.len()],
        };
        if e.run(0) {
            return Ok(Schedule::from_starts(
                p,
                e.starts,
                Method::Oracle,
                true,
                horizon,
            ));
        }
    }
    Err(ScheduleError::Infeasible { horizon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmap::{Topology, TopologyConfig};
    use crate::scheduler::testing::job_network;
    use crate::scheduler::validate_schedule;

    #[test]
    fn single_job() {
        let p = job_network(&[(0, 1)], TopologyConfig::TWO_QPU.topology, 2);
        let s = brute_force_schedule(&p, &SolverLimits::default()).unwrap();
        assert_eq!(s.makespan, 6);
        assert_eq!(s.method, Method::Oracle);
        assert!(validate_schedule(&p, &s).is_empty());
    }

    #[test]
    fn two_independent_jobs() {
        // both jobs start LLEs together, then SWAPs serialize on the switch;
        // the MOVE chain adds one more step: 2 + 2 + 2 + 2
        let topo = Topology {
            num_qpus: 2,
            comm_per_qpu: 2,
            mem_per_qpu: 2,
            switch_comm: 2,
        };
        let p = job_network(&[(0, 1), (0, 1)], topo, 2);
        let s = brute_force_schedule(&p, &SolverLimits::default()).unwrap();
        assert_eq!(s.makespan, 10);
    }

    #[test]
    fn empty_and_limits() {
        let p = Project {
            capacities: vec![],
            resource_names: vec![],
            activities: vec![],
        };
        assert_eq!(
            brute_force_schedule(&p, &SolverLimits::default())
                .unwrap()
                .makespan,
            0
        );
        let big = job_network(&[(0, 1); 4], TopologyConfig::TWO_QPU.topology, 2);
        assert!(matches!(
            brute_force_schedule(&big, &SolverLimits::default()),
            Err(ScheduleError::TooLarge { activities: 16, .. })
        ));
    }
}
