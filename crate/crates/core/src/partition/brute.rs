use super::{cut_of, BalanceBounds, InteractionGraph, Partition, PartitionError};

pub const BRUTE_FORCE_MAX_NODES: usize = 16;

struct Search<'a> {
    k: usize,
    bounds: BalanceBounds,
    vw: &'a [u64],
    /// Edges to lower-indexed nodes only, so a node's cut contribution is
    /// known once it is assigned.
    back: Vec<Vec<(usize, u64)>>,
    /// Weight of nodes `i..`.
    suffix_weight: Vec<u64>,
    assignment: Vec<usize>,
    part_weight: Vec<u64>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, node: usize, cut: u64) {
        if self.best.as_ref().is_some_and(|(b, _)| cut >= *b) {
            return;
        }
        if node == self.vw.len() {
            if self.part_weight.iter().all(|&w| w >= self.bounds.lo) {
                self.best = Some((cut, self.assignment.clone()));
            }
            return;
        }
        let deficit: u64 = self
            .part_weight
            .iter()
            .map(|&w| self.bounds.lo.saturating_sub(w))
            .sum();
        if deficit > self.suffix_weight[node] {
            return;
        }
        for part in 0..self.k {
            if self.part_weight[part] + self.vw[node] > self.bounds.hi {
                continue;
            }
            let added: u64 = self.back[node]
                .iter()
                .filter(|&&(v, _)| self.assignment[v] != part)
                .map(|&(_, w)| w)
                .sum();
            self.assignment[node] = part;
            self.part_weight[part] += self.vw[node];
            self.run(node + 1, cut + added);
            self.part_weight[part] -= self.vw[node];
        }
    }
}

/// Exhaustive minimum-cut balanced partition. Assignments are explored in
/// lexicographic order and only strictly better cuts replace the incumbent,
/// so the lexicographically smallest optimum is returned.
pub fn brute_force_partition(
    g: &InteractionGraph,
    k: usize,
    balance_tol: f64,
) -> Result<Partition, PartitionError> {
    let n = g.num_nodes();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(PartitionError::TooLarge {
            nodes: n,
            max: BRUTE_FORCE_MAX_NODES,
        });
    }
    let bounds = BalanceBounds::new(g, k, balance_tol)?;
    let mut back = vec![Vec::new(); n];
    for (a, b, w) in g.edges() {
        back[b].push((a, w));
    }
    let vw = g.node_weights();
    let mut suffix_weight = vec![0; n + 1];
    for i in (0..n).rev() {
        suffix_weight[i] = suffix_weight[i + 1] + vw[i];
    }
    let mut search = Search {
        k,
        bounds,
        vw,
        back,
        suffix_weight,
        assignment: vec![0; n],
        part_weight: vec![0; k],
        best: None,
    };
    search.run(0, 0);
    let (cut, assignment) = search
        .best
        .ok_or_else(|| PartitionError::InfeasibleBalance {
            reason: "no assignment satisfies the balance bounds".into(),
        })?;
    debug_assert_eq!(cut, cut_of(g, &assignment));
    Ok(Partition {
        k,
        assignment,
        balance_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::build_qft;
    use crate::partition::{build_interaction_graph, edge_cut};

    #[test]
    fn qft4_oracle() {
        let g = build_interaction_graph(&build_qft(4).unwrap());
        let p = brute_force_partition(&g, 2, 0.0).unwrap();
        assert_eq!(p.assignment, vec![0, 1, 1, 0]);
        assert_eq!(edge_cut(&g, &p).unwrap(), 4);
    }

    #[test]
    fn forced_single_edge() {
        let mut g = InteractionGraph::new(2);
        g.add_edge(0, 1, 5).unwrap();
        let p = brute_force_partition(&g, 2, 0.0).unwrap();
        assert_eq!(edge_cut(&g, &p).unwrap(), 5);
    }

    #[test]
    fn four_cycle() {
        let mut g = InteractionGraph::new(4);
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_edge(a, b, 1).unwrap();
        }
        let p = brute_force_partition(&g, 2, 0.0).unwrap();
        assert_eq!(edge_cut(&g, &p).unwrap(), 2);
        assert_eq!(p.assignment, vec![0, 0, 1, 1]);
    }

    #[test]
    fn limits() {
        let g = InteractionGraph::new(17);
        assert!(matches!(
            brute_force_partition(&g, 2, 0.0),
            Err(PartitionError::TooLarge { nodes: 17, .. })
        ));
        let g = InteractionGraph::with_node_weights(vec![3, 3, 2]).unwrap();
        assert!(matches!(
            brute_force_partition(&g, 2, 0.0),
            Err(PartitionError::InfeasibleBalance { .. })
        ));
    }
}
