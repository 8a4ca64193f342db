use super::{
    exact_schedule, greedy_schedule, lower_bound, validate_schedule, Project, Schedule,
    ScheduleError, ScheduleViolation, SolverLimits,
};

#[derive(Debug, Clone)]
pub struct MethodComparison {
    pub greedy: Schedule,
    pub exact: Schedule,
    pub greedy_violations: Vec<ScheduleViolation>,
    pub exact_violations: Vec<ScheduleViolation>,
    pub lower_bound: u32,
}

impl MethodComparison {
    /// Greedy makespan minus exact makespan; `None` unless both schedules
    /// are complete.
    pub fn gap(&self) -> Option<i64> {
        (self.greedy.is_complete() && self.exact.is_complete())
            .then(|| i64::from(self.greedy.makespan) - i64::from(self.exact.makespan))
    }

    pub fn all_valid(&self) -> bool {
        self.greedy_violations.is_empty() && self.exact_violations.is_empty()
    }
}

pub fn compare_methods(
    p: &Project,
    limits: &SolverLimits,
) -> Result<MethodComparison, ScheduleError> {
    p.validate()?;
    let greedy = greedy_schedule(p, limits);
    let exact = exact_schedule(p, limits)?;
    Ok(MethodComparison {
        greedy_violations: validate_schedule(p, &greedy),
        exact_violations: validate_schedule(p, &exact),
        greedy,
        exact,
        lower_bound: lower_bound(p),
    })
}
