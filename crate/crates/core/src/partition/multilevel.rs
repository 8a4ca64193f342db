//! Multilevel recursive bisection.
//!
//! Each bisection coarsens the graph by heavy-edge matching until it has at
//! most [`COARSEST_NODES`] nodes (or no edges left), bisects the coarsest
//! graph exhaustively, then projects back level by level, restoring balance
//! and running Fiduccia-Mattheyses passes at each level. k-way partitions
//! come from bisecting each side again.

use super::{BalanceBounds, InteractionGraph, Partition, PartitionError};

const COARSEST_NODES: usize = 8;

/// Above this many nodes the coarsest-level bisection falls back to a
/// sequential fill instead of enumerating every subset.
const EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Debug, Clone)]
pub(crate) struct WorkGraph {
    pub(crate) vw: Vec<u64>,
    /// Sorted by neighbor index.
    pub(crate) adj: Vec<Vec<(usize, u64)>>,
}

impl WorkGraph {
    pub(crate) fn from_interaction(g: &InteractionGraph) -> Self {
        let mut adj = vec![Vec::new(); g.num_nodes()];
        for (a, b, w) in g.edges() {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        WorkGraph {
            vw: g.node_weights().to_vec(),
            adj,
        }
    }

    fn len(&self) -> usize {
        self.vw.len()
    }

    fn has_edges(&self) -> bool {
        self.adj.iter().any(|l| !l.is_empty())
    }

    pub(crate) fn cut(&self, side: &[u8]) -> u64 {
        let mut total = 0;
        for (u, list) in self.adj.iter().enumerate() {
            for &(v, w) in list {
                if u < v && side[u] != side[v] {
                    total += w;
                }
            }
        }
        total
    }

    fn gain(&self, side: &[u8], u: usize) -> i64 {
        self.adj[u]
            .iter()
            .map(|&(v, w)| {
                if side[v] == side[u] {
                    -(w as i64)
                } else {
                    w as i64
                }
            })
            .sum()
    }

    fn induced(&self, nodes: &[usize]) -> WorkGraph {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &u) in nodes.iter().enumerate() {
            local[u] = i;
        }
        let adj = nodes
            .iter()
            .map(|&u| {
                self.adj[u]
                    .iter()
                    .filter(|&&(v, _)| local[v] != usize::MAX)
                    .map(|&(v, w)| (local[v], w))
                    .collect()
            })
            .collect();
        WorkGraph {
            vw: nodes.iter().map(|&u| self.vw[u]).collect(),
            adj,
        }
    }

    /// One round of heavy-edge matching. Nodes are visited in ascending
    /// order; each unmatched node pairs with its unmatched neighbor of
    /// largest edge weight (lowest index on ties). Returns the coarse graph
    /// and the fine-to-coarse map.
    fn coarsen(&self) -> (WorkGraph, Vec<usize>) {
        let n = self.len();
        let mut mate = vec![usize::MAX; n];
        for u in 0..n {
            if mate[u] != usize::MAX {
                continue;
            }
            let mut best: Option<(usize, u64)> = None;
            for &(v, w) in &self.adj[u] {
                if mate[v] == usize::MAX && best.is_none_or(|(_, bw)| w > bw) {
                    best = Some((v, w));
                }
            }
            match best {
                Some((v, _)) => {
                    mate[u] = v;
                    mate[v] = u;
                }
                None => mate[u] = u,
            }
        }

        let mut cmap = vec![usize::MAX; n];
        let mut next = 0;
        for u in 0..n {
            if cmap[u] == usize::MAX {
                cmap[u] = next;
                cmap[mate[u]] = next;
                next += 1;
            }
        }

        let mut vw = vec![0; next];
        let mut merged: Vec<std::collections::BTreeMap<usize, u64>> =
            vec![Default::default(); next];
        for u in 0..n {
            vw[cmap[u]] += self.vw[u];
            for &(v, w) in &self.adj[u] {
                let (cu, cv) = (cmap[u], cmap[v]);
                if cu != cv {
                    *merged[cu].entry(cv).or_insert(0) += w;
                }
            }
        }
        let adj = merged
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect();
        (WorkGraph { vw, adj }, cmap)
    }
}

/// Admissible total weight for side 0 of a bisection.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SideRange {
    pub(crate) lo: u64,
    pub(crate) hi: u64,
}

impl SideRange {
    fn violation(&self, w0: u64) -> u64 {
        if w0 < self.lo {
            self.lo - w0
        } else {
            w0.saturating_sub(self.hi)
        }
    }
}

fn side0_weight(g: &WorkGraph, side: &[u8]) -> u64 {
    side.iter()
        .zip(&g.vw)
        .filter(|(&s, _)| s == 0)
        .map(|(_, &w)| w)
        .sum()
}

fn initial_bisection(g: &WorkGraph, range: SideRange) -> Vec<u8> {
    let n = g.len();
    if n <= EXHAUSTIVE_LIMIT {
        // mask bit (n-1-i) holds node i, so ascending masks are ascending
        // assignments in lexicographic order and the first minimum wins ties
        let mut best: Option<((u64, u64), Vec<u8>)> = None;
        let mut side = vec![0u8; n];
        for mask in 0u32..(1u32 << n) {
            for (i, s) in side.iter_mut().enumerate() {
                *s = ((mask >> (n - 1 - i)) & 1) as u8;
            }
            let key = (range.violation(side0_weight(g, &side)), g.cut(&side));
            if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                best = Some((key, side.clone()));
            }
        }
        return best.map(|(_, s)| s).unwrap_or_default();
    }
    let mut side = vec![1u8; n];
    let mut w0 = 0;
    for (u, s) in side.iter_mut().enumerate() {
        if w0 >= range.lo {
            break;
        }
        if w0 + g.vw[u] <= range.hi {
            *s = 0;
            w0 += g.vw[u];
        }
    }
    side
}

/// Greedily moves max-gain nodes off the offending side while that
/// strictly reduces the balance violation.
fn rebalance(g: &WorkGraph, side: &mut [u8], range: SideRange) {
    let mut w0 = side0_weight(g, side);
    loop {
        let viol = range.violation(w0);
        if viol == 0 {
            return;
        }
        let from = if w0 > range.hi { 0 } else { 1 };
        let mut best: Option<(i64, usize)> = None;
        for u in 0..g.len() {
            if side[u] != from {
                continue;
            }
            let new_w0 = if from == 0 {
                w0 - g.vw[u]
            } else {
                w0 + g.vw[u]
            };
            if range.violation(new_w0) >= viol {
                continue;
            }
            let gain = g.gain(side, u);
            if best.is_none_or(|(bg, _)| gain > bg) {
                best = Some((gain, u));
            }
        }
        let Some((_, u)) = best else { return };
        if from == 0 {
            w0 -= g.vw[u];
        } else {
            w0 += g.vw[u];
        }
        side[u] ^= 1;
    }
}

/// One FM pass: repeatedly move the unlocked node of highest gain, lock it,
/// and finally roll back to the best prefix of the move sequence under
/// (violation, cut) ordering. Intermediate states may be off balance by at
/// most one node weight. Returns true if the pass improved that key.
pub(crate) fn fm_pass(g: &WorkGraph, side: &mut [u8], range: SideRange) -> bool {
    let n = g.len();
    let slack = g.vw.iter().copied().max().unwrap_or(0);
    let mut locked = vec![false; n];
    let mut gains: Vec<i64> = (0..n).map(|u| g.gain(side, u)).collect();
    let mut w0 = side0_weight(g, side);
    let mut cut = g.cut(side) as i64;
    let start_key = (range.violation(w0), cut);
    let mut best_key = start_key;
    let mut best_len = 0;
    let mut moves = Vec::new();

    loop {
        let viol = range.violation(w0);
        let mut pick: Option<usize> = None;
        for u in 0..n {
            if locked[u] {
                continue;
            }
            let new_w0 = if side[u] == 0 {
                w0 - g.vw[u]
            } else {
                w0 + g.vw[u]
            };
            if range.violation(new_w0) > viol.max(slack) {
                continue;
            }
            if pick.is_none_or(|p| gains[u] > gains[p]) {
                pick = Some(u);
            }
        }
        let Some(u) = pick else { break };

        if side[u] == 0 {
            w0 -= g.vw[u];
        } else {
            w0 += g.vw[u];
        }
        cut -= gains[u];
        side[u] ^= 1;
        locked[u] = true;
        gains[u] = -gains[u];
        for &(v, w) in &g.adj[u] {
            let w = w as i64;
            // u just joined v's side (gain drops) or left it (gain rises)
            gains[v] += if side[v] == side[u] { -2 * w } else { 2 * w };
        }
        moves.push(u);

        let key = (range.violation(w0), cut);
        if key < best_key {
            best_key = key;
            best_len = moves.len();
        }
    }

    for &u in moves[best_len..].iter().rev() {
        side[u] ^= 1;
    }
    best_key < start_key
}

fn refine(g: &WorkGraph, side: &mut [u8], range: SideRange) {
    rebalance(g, side, range);
    while fm_pass(g, side, range) {}
}

fn multilevel_bisect(g: &WorkGraph, range: SideRange) -> Vec<u8> {
    let mut levels: Vec<(WorkGraph, Vec<usize>)> = Vec::new();
    let mut current = g.clone();
    while current.len() > COARSEST_NODES && current.has_edges() {
        let (coarse, cmap) = current.coarsen();
        if coarse.len() == current.len() {
            break;
        }
        levels.push((current, cmap));
        current = coarse;
    }

    let mut side = initial_bisection(&current, range);
    refine(&current, &mut side, range);
    while let Some((fine, cmap)) = levels.pop() {
        let mut projected: Vec<u8> = cmap.iter().map(|&c| side[c]).collect();
        refine(&fine, &mut projected, range);
        side = projected;
    }
    side
}

fn split_recursive(
    g: &WorkGraph,
    nodes: &[usize],
    k: usize,
    bounds: BalanceBounds,
    first_part: usize,
    assignment: &mut [usize],
) {
    if k == 1 {
        for &u in nodes {
            assignment[u] = first_part;
        }
        return;
    }
    let k0 = k.div_ceil(2) as u64;
    let k1 = k as u64 - k0;
    let sub = g.induced(nodes);
    let total: u64 = sub.vw.iter().sum();
    let range = SideRange {
        lo: (k0 * bounds.lo).max(total.saturating_sub(k1 * bounds.hi)),
        hi: (k0 * bounds.hi).min(total.saturating_sub(k1 * bounds.lo)),
    };
    let side = multilevel_bisect(&sub, range);
    let (left, right): (Vec<_>, Vec<_>) = nodes.iter().zip(&side).partition(|(_, &s)| s == 0);
    let left: Vec<usize> = left.into_iter().map(|(&u, _)| u).collect();
    let right: Vec<usize> = right.into_iter().map(|(&u, _)| u).collect();
    split_recursive(g, &left, k0 as usize, bounds, first_part, assignment);
    split_recursive(
        g,
        &right,
        k1 as usize,
        bounds,
        first_part + k0 as usize,
        assignment,
    );
}

/// Balanced k-way partition minimizing edge cut. The procedure is fully
/// deterministic; `seed` is accepted for interface stability and does not
/// influence the result.
pub fn partition_graph(
    g: &InteractionGraph,
    k: usize,
    balance_tol: f64,
    seed: u64,
) -> Result<Partition, PartitionError> {
    let _ = seed;
    let bounds = BalanceBounds::new(g, k, balance_tol)?;
    let work = WorkGraph::from_interaction(g);
    let mut assignment = vec![0; g.num_nodes()];
    let all: Vec<usize> = (0..g.num_nodes()).collect();
    split_recursive(&work, &all, k, bounds, 0, &mut assignment);
    let p = Partition {
        k,
        assignment,
        balance_tol,
    };
    if !p.is_balanced(g) {
        return Err(PartitionError::InfeasibleBalance {
            reason: format!(
                "no balanced assignment found for part weights {:?} within {}..={}",
                p.part_weights(g),
                bounds.lo,
                bounds.hi
            ),
        });
    }
    Ok(p)
}
