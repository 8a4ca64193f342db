use std::time::Instant;

use super::greedy::greedy_schedule;
use super::{
    bounds::tails, Method, Project, ResourceProfile, Schedule, ScheduleError, SolverLimits,
};

const CLOCK_CHECK_INTERVAL: u64 = 1024;

struct Search<'a> {
    p: &'a Project,
    order: Vec<usize>,
    tails: Vec<u32>,
    horizon: u32,
    profile: ResourceProfile,
    starts: Vec<Option<u32>>,
    /// Makespan every new solution must beat.
    incumbent: u32,
    best: Option<Vec<Option<u32>>>,
    /// Lowest makespan any solution can reach; finding it ends the search.
    floor: u32,
    nodes: u64,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        self.nodes += 1;
        let over_budget = self.node_budget.is_some_and(|b| self.nodes > b);
        let timed_out = self.nodes.is_multiple_of(CLOCK_CHECK_INTERVAL)
            && self.deadline.is_some_and(|d| Instant::now() >= d);
        self.aborted = over_budget || timed_out;
        self.aborted
    }

    fn finished(&self) -> bool {
        self.aborted || (self.best.is_some() && self.incumbent <= self.floor)
    }

    /// Precedence-earliest start of every unscheduled activity given the
    /// partial schedule (scheduled ones report their actual start).
    fn heads(&self) -> Vec<u32> {
        let mut head = vec![0u32; self.p.len()];
        for &j in &self.order {
            head[j] = match self.starts[j] {
                Some(s) => s,
                None => self.p.activities[j]
                    .preds
                    .iter()
                    .map(|&q| head[q] + self.p.activities[q].duration)
                    .max()
                    .unwrap_or(0),
            };
        }
        head
    }

    /// Lower bound on the makespan of any completion of the partial schedule.
    /// `None` when no completion fits the horizon.
    fn bound(&self) -> Option<u32> {
        let head = self.heads();
        let mut lb = 0;
        for (j, &h) in head.iter().enumerate() {
            let end = match self.starts[j] {
                Some(s) => s + self.p.activities[j].duration,
                None => h + self.tails[j],
            };
            lb = lb.max(end);
        }
        if lb > self.horizon {
            return None;
        }
        for r in 0..self.p.capacities.len() {
            let mut energy = 0u64;
            let mut from = u32::MAX;
            let mut after = u32::MAX;
            for (j, a) in self.p.activities.iter().enumerate() {
                if self.starts[j].is_some() {
                    continue;
                }
                if let Some(&(_, units)) = a.demands.iter().find(|&&(rr, _)| rr == r) {
                    energy += u64::from(units) * u64::from(a.duration);
                    from = from.min(head[j]);
                    after = after.min(self.tails[j] - a.duration);
                }
            }
            if energy == 0 {
                continue;
            }
            let mut t = from;
            while energy > 0 {
                if t >= self.horizon {
                    return None;
                }
                energy = energy.saturating_sub(u64::from(self.profile.remaining(r, t)));
                t += 1;
            }
            lb = lb.max(t + after);
        }
        (lb <= self.horizon).then_some(lb)
    }

    fn run(&mut self, depth: usize) {
        if self.out_of_budget() {
            return;
        }
        if depth == self.order.len() {
            let makespan = self
                .starts
                .iter()
                .zip(&self.p.activities)
                .map(|(s, a)| s.unwrap() + a.duration)
                .max()
                .unwrap_or(0);
            if makespan < self.incumbent {
                self.incumbent = makespan;
                self.best = Some(self.starts.clone());
            }
            return;
        }
        match self.bound() {
            Some(lb) if lb < self.incumbent => {}
            _ => return,
        }
        let j = self.order[depth];
        let task = &self.p.activities[j];
        let est = task
            .preds
            .iter()
            .map(|&q| self.starts[q].unwrap() + self.p.activities[q].duration)
            .max()
            .unwrap_or(0);
        // s + tail <= min(incumbent - 1, horizon)
        let limit = (self.incumbent - 1).min(self.horizon);
        let Some(latest) = limit.checked_sub(self.tails[j]) else {
            return;
        };
        for s in est..=latest {
            if s + self.tails[j] >= self.incumbent {
                break;
            }
            if !self.profile.fits(task, s) {
                continue;
            }
            self.profile.reserve(task, s);
            self.starts[j] = Some(s);
            self.run(depth + 1);
            self.starts[j] = None;
            self.profile.release(task, s);
            if self.finished() {
                return;
            }
        }
    }
}

/// Depth-first branch and bound for the minimum makespan.
///
/// Activities are branched in the precedence-closed order that always takes
/// the smallest ready id, start times ascending from the precedence-earliest
/// start. A node is pruned once its lower bound (current ends, heads plus
/// tails, and a per-resource energy bound against the remaining capacity
/// profile) reaches the incumbent, which starts from the greedy schedule.
pub fn exact_schedule(p: &Project, limits: &SolverLimits) -> Result<Schedule, ScheduleError> {
    p.validate()?;
    let horizon = limits.horizon_for(p);
    let deadline = limits.wall_limit.map(|w| Instant::now() + w);
    let greedy = greedy_schedule(p, limits);
    let (incumbent, best) = if greedy.is_complete() {
        (greedy.makespan, Some(greedy.starts.clone()))
    } else {
        (horizon + 1, None)
    };
    let mut search = Search {
        p,
        order: p.topological_order().expect("validated project is acyclic"),
        tails: tails(p),
        horizon,
        profile: ResourceProfile::new(&p.capacities, horizon),
        starts: vec![None; p.len()],
        incumbent,
        best,
        floor: 0,
        nodes: 0,
        node_budget: limits.node_budget,
        deadline,
        aborted: false,
    };
    search.floor = search.bound().unwrap_or(u32::MAX);
    if !search.finished() && search.floor != u32::MAX {
        search.run(0);
    }
    let proved = !search.aborted;
    match search.best {
        Some(starts) => Ok(Schedule::from_starts(
            p,
            starts,
            Method::Exact,
            proved,
            horizon,
        )),
        None if proved => Err(ScheduleError::Infeasible { horizon }),
        None => Err(ScheduleError::LimitReached {
            nodes: search.nodes,
        }),
    }
}
