use petgraph::algo::{is_cyclic_directed, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;

use super::{Circuit, Qubit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DagNode {
    Input(Qubit),
    Output(Qubit),
    Gate(usize),
}

/// Dependency DAG of a circuit. Every qubit contributes one path
/// `Input(q) -> gates on q in program order -> Output(q)`; edges carry the
/// qubit they follow.
#[derive(Debug, Clone)]
pub struct CircuitDag {
    graph: DiGraph<DagNode, Qubit>,
    gate_nodes: Vec<NodeIndex>,
    inputs: Vec<NodeIndex>,
    outputs: Vec<NodeIndex>,
}

impl CircuitDag {
    pub fn from_circuit(c: &Circuit) -> Self {
        let mut graph = DiGraph::new();
        let inputs: Vec<_> = (0..c.num_qubits())
            .map(|q| graph.add_node(DagNode::Input(q)))
            .collect();
        let gate_nodes: Vec<_> = c
            .gates()
            .iter()
            .map(|g| graph.add_node(DagNode::Gate(g.id)))
            .collect();
        let outputs: Vec<_> = (0..c.num_qubits())
            .map(|q| graph.add_node(DagNode::Output(q)))
            .collect();

        let mut frontier = inputs.clone();
        for g in c.gates() {
            let node = gate_nodes[g.id];
            for &q in &g.qubits {
                graph.add_edge(frontier[q], node, q);
                frontier[q] = node;
            }
        }
        for (q, &last) in frontier.iter().enumerate() {
            graph.add_edge(last, outputs[q], q);
        }
        CircuitDag {
            graph,
            gate_nodes,
            inputs,
            outputs,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.inputs.len()
    }

    /// Number of gate nodes; sentinels are not counted.
    pub fn gate_count(&self) -> usize {
        self.gate_nodes.len()
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edges(&self) -> Vec<(DagNode, DagNode, Qubit)> {
        self.graph
            .edge_references()
            .map(|e| (self.graph[e.source()], self.graph[e.target()], *e.weight()))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        !is_cyclic_directed(&self.graph)
    }

    /// Gate ids directly feeding `gate` (sentinels excluded), in qubit order.
    pub fn gate_predecessors(&self, gate: usize) -> Vec<usize> {
        let mut preds: Vec<(Qubit, usize)> = self
            .graph
            .edges_directed(self.gate_nodes[gate], Direction::Incoming)
            .filter_map(|e| match self.graph[e.source()] {
                DagNode::Gate(id) => Some((*e.weight(), id)),
                _ => None,
            })
            .collect();
        preds.sort_unstable();
        preds.into_iter().map(|(_, id)| id).collect()
    }

    /// Nodes visited by qubit `q`, from its input sentinel to its output sentinel.
    pub fn qubit_path(&self, q: Qubit) -> Vec<DagNode> {
        let mut path = vec![self.graph[self.inputs[q]]];
        let mut cur = self.inputs[q];
        while cur != self.outputs[q] {
            let next = self
                .graph
                .edges_directed(cur, Direction::Outgoing)
                .find(|e| *e.weight() == q)
                .map(|e| e.target())
                .expect("every qubit path ends at its output sentinel");
            path.push(self.graph[next]);
            cur = next;
        }
        path
    }

    /// Number of gate nodes on the longest directed path (the circuit depth
    /// in gates).
    pub fn longest_gate_chain(&self) -> usize {
        let order = toposort(&self.graph, None).expect("circuit DAG is acyclic");
        let mut depth = vec![0usize; self.graph.node_count()];
        for n in order {
            let own = usize::from(matches!(self.graph[n], DagNode::Gate(_)));
            let best = self
                .graph
                .neighbors_directed(n, Direction::Incoming)
                .map(|p| depth[p.index()])
                .max()
                .unwrap_or(0);
            depth[n.index()] = best + own;
        }
        depth.into_iter().max().unwrap_or(0)
    }
}

pub fn to_dag(c: &Circuit) -> CircuitDag {
    CircuitDag::from_circuit(c)
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::circuit::build_qft;

    #[test]
    fn qft4_dag_has_twelve_gate_nodes() {
        let dag = to_dag(&build_qft(4).unwrap());
        assert_eq!(dag.gate_count(), 12);
        assert_eq!(dag.node_count(), 12 + 8);
        assert!(dag.is_acyclic());
    }

    #[test]
    fn empty_circuit_links_sentinels() {
        let dag = to_dag(&Circuit::new(2).unwrap());
        let mut edges = dag.edges();
        edges.sort_by_key(|e| e.2);
        assert_eq!(
            edges,
            vec![
                (DagNode::Input(0), DagNode::Output(0), 0),
                (DagNode::Input(1), DagNode::Output(1), 1),
            ]
        );
        assert_eq!(dag.longest_gate_chain(), 0);
    }

    #[test]
    fn small_chain() {
        let mut c = Circuit::new(2).unwrap();
        c.h(0).unwrap();
        c.cp(0, 1, Rational64::new(1, 2)).unwrap();
        c.h(1).unwrap();
        let dag = to_dag(&c);
        assert_eq!(
            dag.qubit_path(0),
            vec![
                DagNode::Input(0),
                DagNode::Gate(0),
                DagNode::Gate(1),
                DagNode::Output(0)
            ]
        );
        assert_eq!(
            dag.qubit_path(1),
            vec![
                DagNode::Input(1),
                DagNode::Gate(1),
                DagNode::Gate(2),
                DagNode::Output(1)
            ]
        );
        assert_eq!(dag.longest_gate_chain(), 3);
        assert_eq!(dag.gate_predecessors(2), vec![1]);
        assert_eq!(dag.gate_predecessors(1), vec![0]);
    }
}
