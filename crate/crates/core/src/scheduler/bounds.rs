use super::Project;

/// `tails[j]`: length of the longest duration-weighted path starting with
/// activity `j` (its own duration included). Assumes an acyclic project.
pub fn tails(p: &Project) -> Vec<u32> {
    let order = p
        .topological_order()
        .expect("precedence relation must be acyclic");
    let succ = p.successors();
    let mut tail = vec![0u32; p.len()];
    for &j in order.iter().rev() {
        let after = succ[j].iter().map(|&s| tail[s]).max().unwrap_or(0);
        tail[j] = p.activities[j].duration + after;
    }
    tail
}

pub fn critical_path(p: &Project) -> u32 {
    tails(p).into_iter().max().unwrap_or(0)
}

/// Largest of the critical-path length and, per resource, the total
/// demand-time divided by capacity (rounded up).
pub fn lower_bound(p: &Project) -> u32 {
    let mut energy = vec![0u64; p.capacities.len()];
    for a in &p.activities {
        for &(r, units) in &a.demands {
            energy[r] += u64::from(units) * u64::from(a.duration);
        }
    }
    let resource_bound = energy
        .iter()
        .zip(&p.capacities)
        .filter(|(_, &cap)| cap > 0)
        .map(|(&e, &cap)| e.div_ceil(u64::from(cap)) as u32)
        .max()
        .unwrap_or(0);
    critical_path(p).max(resource_bound)
}
