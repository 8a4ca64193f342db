use super::{Method, Project, ResourceProfile, Schedule, SolverLimits};

/// Time-stepped greedy list scheduler.
///
/// For `time` in `0..T`, the activities whose predecessors all have a start
/// time are collected, then visited by ascending id. An unscheduled one is
/// placed at `max(time, latest predecessor finish)` if it ends by `T` and its
/// demands fit the remaining capacity over its whole window; otherwise it is
/// retried at the next time step. Activities that never fit stay
/// unscheduled.
pub fn greedy_schedule(p: &Project, limits: &SolverLimits) -> Schedule {
    let horizon = limits.horizon_for(p);
    let n = p.len();
    let mut starts: Vec<Option<u32>> = vec![None; n];
    let mut profile = ResourceProfile::new(&p.capacities, horizon);
    let mut placed = 0;

    for time in 0..horizon {
        if placed == n {
            break;
        }
        let ready: Vec<usize> = (0..n)
            .filter(|&j| starts[j].is_none())
            .filter(|&j| p.activities[j].preds.iter().all(|&q| starts[q].is_some()))
            .collect();
        for j in ready {
            let task = &p.activities[j];
            let earliest = task
                .preds
                .iter()
                .map(|&q| starts[q].unwrap() + p.activities[q].duration)
                .fold(time, u32::max);
            if earliest + task.duration <= horizon && profile.fits(task, earliest) {
                profile.reserve(task, earliest);
                starts[j] = Some(earliest);
                placed += 1;
            }
        }
    }
    Schedule::from_starts(p, starts, Method::Greedy, false, horizon)
}
