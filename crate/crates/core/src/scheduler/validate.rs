use std::fmt;

use super::{Project, Schedule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleViolation {
    InvalidProject(String),
    LengthMismatch {
        expected: usize,
        got: usize,
    },
    Unscheduled {
        activity: usize,
    },
    Precedence {
        pred: usize,
        succ: usize,
        pred_end: u32,
        succ_start: u32,
    },
    Capacity {
        resource: usize,
        time: u32,
        usage: u32,
        capacity: u32,
        activities: Vec<usize>,
    },
    Horizon {
        activity: usize,
        end: u32,
        horizon: u32,
    },
    MakespanMismatch {
        reported: u32,
        actual: u32,
    },
}

impl fmt::Display for ScheduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleViolation::InvalidProject(msg) => write!(f, "invalid project: {msg}"),
            ScheduleViolation::LengthMismatch { expected, got } => {
                write!(f, "schedule has {got} start times for {expected} activities")
            }
            ScheduleViolation::Unscheduled { activity } => {
                write!(f, "activity {activity} is not scheduled")
            }
            ScheduleViolation::Precedence {
                pred,
                succ,
                pred_end,
                succ_start,
            } => write!(
                f,
                "activity {succ} starts at {succ_start} before predecessor {pred} ends at {pred_end}"
            ),
            ScheduleViolation::Capacity {
                resource,
                time,
                usage,
                capacity,
                activities,
            } => write!(
                f,
                "resource {resource} at t={time}: usage {usage} > capacity {capacity} (activities {activities:?})"
            ),
            ScheduleViolation::Horizon {
                activity,
                end,
                horizon,
            } => write!(f, "activity {activity} ends at {end}, past horizon {horizon}"),
            ScheduleViolation::MakespanMismatch { reported, actual } => {
                write!(f, "reported makespan {reported} but activities end at {actual}")
            }
        }
    }
}

/// Usage of every resource at steps `from..to`, summed from scratch over
/// the scheduled activities. Demands on unknown resources are ignored.
pub(crate) fn usage_profile(
    p: &Project,
    starts: &[Option<u32>],
    from: u32,
    to: u32,
) -> Vec<Vec<u32>> {
    let width = to.saturating_sub(from) as usize;
    let mut usage = vec![vec![0u32; width]; p.capacities.len()];
    for (s, a) in starts.iter().zip(&p.activities) {
        let Some(s) = *s else { continue };
        let (lo, hi) = (s.max(from), (s + a.duration).min(to));
        for &(r, units) in &a.demands {
            if let Some(row) = usage.get_mut(r) {
                for t in lo..hi {
                    row[(t - from) as usize] += units;
                }
            }
        }
    }
    usage
}

pub(crate) fn within_capacity(p: &Project, starts: &[Option<u32>], from: u32, to: u32) -> bool {
    usage_profile(p, starts, from, to)
        .iter()
        .zip(&p.capacities)
        .all(|(row, &cap)| row.iter().all(|&u| u <= cap))
}

/// Checks completeness, precedence, capacity at every time step, the
/// horizon and the reported makespan. Every violation is reported.
pub fn validate_schedule(p: &Project, s: &Schedule) -> Vec<ScheduleViolation> {
    let mut out = Vec::new();
    if let Err(e) = p.validate() {
        out.push(ScheduleViolation::InvalidProject(e.to_string()));
        return out;
    }
    if s.starts.len() != p.len() {
        out.push(ScheduleViolation::LengthMismatch {
            expected: p.len(),
            got: s.starts.len(),
        });
        return out;
    }

    for (j, start) in s.starts.iter().enumerate() {
        if start.is_none() {
            out.push(ScheduleViolation::Unscheduled { activity: j });
        }
    }

    for (j, a) in p.activities.iter().enumerate() {
        let Some(sj) = s.starts[j] else { continue };
        for &q in &a.preds {
            let Some(sq) = s.starts[q] else { continue };
            let pred_end = sq + p.activities[q].duration;
            if sj < pred_end {
                out.push(ScheduleViolation::Precedence {
                    pred: q,
                    succ: j,
                    pred_end,
                    succ_start: sj,
                });
            }
        }
        let end = sj + a.duration;
        if end > s.horizon {
            out.push(ScheduleViolation::Horizon {
                activity: j,
                end,
                horizon: s.horizon,
            });
        }
    }

    let usage = usage_profile(p, &s.starts, 0, usage_end(p, s));
    for (r, row) in usage.iter().enumerate() {
        let capacity = p.capacities[r];
        for (t, &u) in row.iter().enumerate() {
            if u > capacity {
                let t = t as u32;
                let activities = (0..p.len())
                    .filter(|&j| {
                        s.starts[j].is_some_and(|sj| {
                            sj <= t
                                && t < sj + p.activities[j].duration
                                && p.activities[j].demands.iter().any(|&(rr, _)| rr == r)
                        })
                    })
                    .collect();
                out.push(ScheduleViolation::Capacity {
                    resource: r,
                    time: t,
                    usage: u,
                    capacity,
                    activities,
                });
            }
        }
    }

    let actual = usage_end(p, s);
    if actual != s.makespan {
        out.push(ScheduleViolation::MakespanMismatch {
            reported: s.makespan,
            actual,
        });
    }
    out
}

fn usage_end(p: &Project, s: &Schedule) -> u32 {
    s.starts
        .iter()
        .zip(&p.activities)
        .filter_map(|(st, a)| st.map(|st| st + a.duration))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmap::TopologyConfig;
    use crate::scheduler::testing::job_network;
    use crate::scheduler::Method;

    fn schedule(p: &Project, starts: &[u32], horizon: u32) -> Schedule {
        Schedule::from_starts(
            p,
            starts.iter().map(|&s| Some(s)).collect(),
            Method::Exact,
            false,
            horizon,
        )
    }

    #[test]
    fn forced_single_job_is_valid() {
        let p = job_network(&[(0, 1)], TopologyConfig::TWO_QPU.topology, 2);
        assert!(validate_schedule(&p, &schedule(&p, &[0, 0, 2, 4], 8)).is_empty());
    }

    #[test]
    fn swap_overlapping_its_lle() {
        let p = job_network(&[(0, 1)], TopologyConfig::TWO_QPU.topology, 2);
        let v = validate_schedule(&p, &schedule(&p, &[0, 0, 0, 4], 8));
        assert!(v.contains(&ScheduleViolation::Precedence {
            pred: 0,
            succ: 2,
            pred_end: 2,
            succ_start: 0
        }));
    }

    #[test]
    fn three_lles_on_two_switch_qubits() {
        let p = job_network(&[(0, 1), (0, 1)], TopologyConfig::TWO_QPU.topology, 2);
        let v = validate_schedule(&p, &schedule(&p, &[0, 0, 3, 5, 1, 6, 8, 10], 12));
        let switch = 4;
        let hits: Vec<_> = v
            .iter()
            .filter_map(|x| match x {
                ScheduleViolation::Capacity {
                    resource,
                    time,
                    usage,
                    activities,
                    ..
                } if *resource == switch => Some((*time, *usage, activities.clone())),
                _ => None,
            })
            .collect();
        assert_eq!(hits, vec![(1, 3, vec![0, 1, 4])]);
    }

    #[test]
    fn incomplete_horizon_and_makespan() {
        let p = job_network(&[(0, 1)], TopologyConfig::TWO_QPU.topology, 2);
        let mut s = schedule(&p, &[0, 0, 2, 4], 5);
        s.starts[1] = None;
        s.makespan = 7;
        let v = validate_schedule(&p, &s);
        assert!(v.contains(&ScheduleViolation::Unscheduled { activity: 1 }));
        assert!(v.contains(&ScheduleViolation::Horizon {
            activity: 3,
            end: 6,
            horizon: 5
        }));
        assert!(v.contains(&ScheduleViolation::MakespanMismatch {
            reported: 7,
            actual: 6
        }));
        s.starts.pop();
        assert!(matches!(
            validate_schedule(&p, &s)[..],
            [ScheduleViolation::LengthMismatch { .. }]
        ));
    }
}
