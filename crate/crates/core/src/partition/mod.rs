//! Qubit interaction graph and balanced k-way partitioning.
//!
//! [`partition_graph`] is a multilevel recursive-bisection partitioner
//! (heavy-edge matching, exhaustive coarsest-level bisection, FM refinement).
//! [`brute_force_partition`] enumerates every balanced assignment and is
//! meant as a reference for small graphs.

mod brute;
mod multilevel;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, GateKind};

pub use brute::{brute_force_partition, BRUTE_FORCE_MAX_NODES};
pub use multilevel::partition_graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("k = {k} parts requested for {nodes} nodes (need 2 <= k <= nodes)")]
    InvalidK { k: usize, nodes: usize },
    #[error("balance tolerance must be a finite non-negative fraction, got {0}")]
    InvalidTolerance(f64),
    #[error("balance infeasible: {reason}")]
    InfeasibleBalance { reason: String },
    #[error("brute-force partitioning supports at most {max} nodes, got {nodes}")]
    TooLarge { nodes: usize, max: usize },
    #[error("assignment has {got} entries but the graph has {expected} nodes")]
    SizeMismatch { expected: usize, got: usize },
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("edge endpoint {node} out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("edge and node weights must be positive")]
    ZeroWeight,
}

/// Weighted undirected qubit graph; edge keys are stored as `(min, max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    num_nodes: usize,
    edges: BTreeMap<(usize, usize), u64>,
    node_weights: Vec<u64>,
}

impl InteractionGraph {
    pub fn new(num_nodes: usize) -> Self {
        InteractionGraph {
            num_nodes,
            edges: BTreeMap::new(),
            node_weights: vec![1; num_nodes],
        }
    }

    pub fn with_node_weights(node_weights: Vec<u64>) -> Result<Self, PartitionError> {
        if node_weights.contains(&0) {
            return Err(PartitionError::ZeroWeight);
        }
        Ok(InteractionGraph {
            num_nodes: node_weights.len(),
            edges: BTreeMap::new(),
            node_weights,
        })
    }

    /// Adds `w` to the weight of edge {a, b}.
    pub fn add_edge(&mut self, a: usize, b: usize, w: u64) -> Result<(), PartitionError> {
        if a == b {
            return Err(PartitionError::SelfLoop(a));
        }
        for node in [a, b] {
            if node >= self.num_nodes {
                return Err(PartitionError::NodeOutOfRange {
                    node,
                    n: self.num_nodes,
                });
            }
        }
        if w == 0 {
            return Err(PartitionError::ZeroWeight);
        }
        *self.edges.entry((a.min(b), a.max(b))).or_insert(0) += w;
        Ok(())
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, a: usize, b: usize) -> u64 {
        self.edges.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    /// Edges as `(a, b, w)` with `a < b`, in ascending key order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|(&(a, b), &w)| (a, b, w))
    }

    pub fn node_weights(&self) -> &[u64] {
        &self.node_weights
    }

    pub fn total_node_weight(&self) -> u64 {
        self.node_weights.iter().sum()
    }
}

/// One node per qubit; each two-qubit gate adds to its pair's edge weight,
/// a SWAP counting as its three CNOTs.
pub fn build_interaction_graph(c: &Circuit) -> InteractionGraph {
    let mut g = InteractionGraph::new(c.num_qubits());
    for gate in c.gates().iter().filter(|g| g.is_two_qubit()) {
        let w = if gate.kind == GateKind::Swap { 3 } else { 1 };
        g.add_edge(gate.qubits[0], gate.qubits[1], w)
            .expect("circuit operands are distinct and in range");
    }
    g
}

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub k: usize,
    pub assignment: Vec<usize>,
    pub balance_tol: f64,
}

impl Partition {
    pub fn part_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    /// Node ids of each part, ascending.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (node, &p) in self.assignment.iter().enumerate() {
            parts[p].push(node);
        }
        parts
    }

    pub fn part_weights(&self, g: &InteractionGraph) -> Vec<u64> {
        let mut w = vec![0; self.k];
        for (node, &p) in self.assignment.iter().enumerate() {
            w[p] += g.node_weights[node];
        }
        w
    }

    /// Every part nonempty and within the balance bounds.
    pub fn is_balanced(&self, g: &InteractionGraph) -> bool {
        let Ok(bounds) = BalanceBounds::new(g, self.k, self.balance_tol) else {
            return false;
        };
        self.assignment.len() == g.num_nodes()
            && self.assignment.iter().all(|&p| p < self.k)
            && self.parts().iter().all(|p| !p.is_empty())
            && self
                .part_weights(g)
                .iter()
                .all(|&w| bounds.lo <= w && w <= bounds.hi)
    }

    /// The parts as sets, ignoring labels.
    pub fn canonical_parts(&self) -> Vec<Vec<usize>> {
        let mut parts: Vec<_> = self.parts().into_iter().filter(|p| !p.is_empty()).collect();
        parts.sort();
        parts
    }
}

/// Sum of weights of edges whose endpoints lie in different parts.
pub fn edge_cut(g: &InteractionGraph, p: &Partition) -> Result<u64, PartitionError> {
    if p.assignment.len() != g.num_nodes() {
        return Err(PartitionError::SizeMismatch {
            expected: g.num_nodes(),
            got: p.assignment.len(),
        });
    }
    Ok(cut_of(g, &p.assignment))
}

pub(crate) fn cut_of(g: &InteractionGraph, assignment: &[usize]) -> u64 {
    g.edges()
        .filter(|&(a, b, _)| assignment[a] != assignment[b])
        .map(|(_, _, w)| w)
        .sum()
}

/// Allowed part weight interval `[lo, hi]`: `floor(n/k) - s ..= ceil(n/k) + s`
/// with `s = floor(tol * n / k)` and `lo` clamped to 1 so parts stay nonempty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceBounds {
    pub lo: u64,
    pub hi: u64,
}

impl BalanceBounds {
    pub fn new(g: &InteractionGraph, k: usize, tol: f64) -> Result<Self, PartitionError> {
        let nodes = g.num_nodes();
        if k < 2 || k > nodes {
            return Err(PartitionError::InvalidK { k, nodes });
        }
        if !tol.is_finite() || tol < 0.0 {
            return Err(PartitionError::InvalidTolerance(tol));
        }
        let n = g.total_node_weight();
        let k64 = k as u64;
        let slack = (tol * n as f64 / k as f64).floor() as u64;
        let lo = (n / k64).saturating_sub(slack).max(1);
        let hi = n.div_ceil(k64) + slack;
        let bounds = BalanceBounds { lo, hi };
        if lo * k64 > n || hi * k64 < n {
            return Err(PartitionError::InfeasibleBalance {
                reason: format!("{k} parts of weight {lo}..={hi} cannot hold total weight {n}"),
            });
        }
        if let Some(&heavy) = g.node_weights.iter().find(|&&w| w > hi) {
            return Err(PartitionError::InfeasibleBalance {
                reason: format!("node weight {heavy} exceeds part limit {hi}"),
            });
        }
        Ok(bounds)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[u64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    node_weights: Option<Vec<u64>>,
}

impl Serialize for InteractionGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphFile {
            n: self.num_nodes,
            edges: self
                .edges()
                .map(|(a, b, w)| [a as u64, b as u64, w])
                .collect(),
            node_weights: self
                .node_weights
                .iter()
                .any(|&w| w != 1)
                .then(|| self.node_weights.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InteractionGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let file = GraphFile::deserialize(d)?;
        let mut g = match file.node_weights {
            Some(w) if w.len() != file.n => {
                return Err(D::Error::custom("node_weights length differs from n"))
            }
            Some(w) => InteractionGraph::with_node_weights(w).map_err(D::Error::custom)?,
            None => InteractionGraph::new(file.n),
        };
        for [a, b, w] in file.edges {
            g.add_edge(a as usize, b as usize, w)
                .map_err(D::Error::custom)?;
        }
        Ok(g)
    }
}

/// On-disk partition record: `{"k", "assignment", "cut"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub k: usize,
    pub assignment: Vec<usize>,
    pub cut: u64,
}

impl PartitionFile {
    pub fn new(g: &InteractionGraph, p: &Partition) -> Result<Self, PartitionError> {
        Ok(PartitionFile {
            k: p.k,
            assignment: p.assignment.clone(),
            cut: edge_cut(g, p)?,
        })
    }

    pub fn into_partition(self, balance_tol: f64) -> Partition {
        Partition {
            k: self.k,
            assignment: self.assignment,
            balance_tol,
        }
    }
}
