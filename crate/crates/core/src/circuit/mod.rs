//! Gate-list circuit representation and the local-circuit views built on it:
//! the per-qubit dependency DAG and the as-soon-as-possible Gantt schedule.

mod dag;
mod gantt;
mod text;

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dag::{to_dag, CircuitDag, DagNode};
pub use gantt::{asap_schedule, DurationTable, GanttEntry, GanttSchedule};
pub use text::{parse_circuit, serialize_circuit};

pub type Qubit = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("circuit must have at least one qubit")]
    NoQubits,
    #[error("gate {kind} expects {expected} qubit operand(s), got {got}")]
    Arity {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: Qubit, num_qubits: usize },
    #[error("gate operands must be distinct (qubit {0} repeated)")]
    RepeatedQubit(Qubit),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<CircuitError>,
    },
    #[error("duration for {0} must be at least 1")]
    ZeroDuration(GateKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    H,
    Cp,
    Swap,
    Cnot,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::H => 1,
            GateKind::Cp | GateKind::Swap | GateKind::Cnot => 2,
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::Cp => "cp",
            GateKind::Swap => "swap",
            GateKind::Cnot => "cnot",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        match s {
            "h" => Some(GateKind::H),
            "cp" => Some(GateKind::Cp),
            "swap" => Some(GateKind::Swap),
            "cnot" => Some(GateKind::Cnot),
            _ => None,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::H => "H",
            GateKind::Cp => "CP",
            GateKind::Swap => "SWAP",
            GateKind::Cnot => "CNOT",
        })
    }
}

/// One gate of a circuit. For `Cp` and `Cnot` the operand order is
/// (control, target); `angle` is the phase as a fraction of pi and is only
/// present on `Cp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub id: usize,
    pub kind: GateKind,
    pub qubits: Vec<Qubit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<Rational64>,
}

impl Gate {
    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    /// Short label used in Gantt charts, e.g. `H`, `CP(1,0)`, `S(0,3)`.
    pub fn label(&self) -> String {
        match self.kind {
            GateKind::H => "H".to_string(),
            GateKind::Cp => format!("CP({},{})", self.qubits[0], self.qubits[1]),
            GateKind::Swap => format!("S({},{})", self.qubits[0], self.qubits[1]),
            GateKind::Cnot => format!("CX({},{})", self.qubits[0], self.qubits[1]),
        }
    }
}

/// Ordered gate list over `num_qubits` qubits. Gate ids are always
/// `0..gates.len()` in program order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self, CircuitError> {
        if num_qubits == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            num_qubits,
            gates: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking arity and operand range. Returns its id.
    pub fn push(
        &mut self,
        kind: GateKind,
        qubits: &[Qubit],
        angle: Option<Rational64>,
    ) -> Result<usize, CircuitError> {
        if qubits.len() != kind.arity() {
            return Err(CircuitError::Arity {
                kind,
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(CircuitError::QubitOutOfRange {
                    qubit: q,
                    num_qubits: self.num_qubits,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(CircuitError::RepeatedQubit(q));
            }
        }
        let angle = match kind {
            GateKind::Cp => Some(angle.unwrap_or_else(|| Rational64::from_integer(1))),
            _ => None,
        };
        let id = self.gates.len();
        self.gates.push(Gate {
            id,
            kind,
            qubits: qubits.to_vec(),
            angle,
        });
        Ok(id)
    }

    pub fn h(&mut self, q: Qubit) -> Result<usize, CircuitError> {
        self.push(GateKind::H, &[q], None)
    }

    pub fn cp(
        &mut self,
        control: Qubit,
        target: Qubit,
        angle: Rational64,
    ) -> Result<usize, CircuitError> {
        self.push(GateKind::Cp, &[control, target], Some(angle))
    }

    pub fn swap(&mut self, a: Qubit, b: Qubit) -> Result<usize, CircuitError> {
        self.push(GateKind::Swap, &[a, b], None)
    }

    pub fn cnot(&mut self, control: Qubit, target: Qubit) -> Result<usize, CircuitError> {
        self.push(GateKind::Cnot, &[control, target], None)
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }
}

/// Textbook QFT: H on each qubit followed by the controlled phase ladder,
/// then the qubit-reversal SWAPs.
pub fn build_qft(n: usize) -> Result<Circuit, CircuitError> {
    let mut c = Circuit::new(n)?;
    for i in 0..n {
        c.h(i)?;
        for j in i + 1..n {
            c.cp(j, i, Rational64::new(1, 1i64 << (j - i)))?;
        }
    }
    for i in 0..n / 2 {
        c.swap(i, n - 1 - i)?;
    }
    Ok(c)
}

/// Replaces every SWAP(a,b) with CNOT(a,b) CNOT(b,a) CNOT(a,b), renumbering ids.
pub fn decompose_swaps(c: &Circuit) -> Circuit {
    let mut out = Circuit {
        num_qubits: c.num_qubits,
        gates: Vec::with_capacity(c.len()),
    };
    for g in &c.gates {
        if g.kind == GateKind::Swap {
            let (a, b) = (g.qubits[0], g.qubits[1]);
            for (ctl, tgt) in [(a, b), (b, a), (a, b)] {
                out.gates.push(Gate {
                    id: out.gates.len(),
                    kind: GateKind::Cnot,
                    qubits: vec![ctl, tgt],
                    angle: None,
                });
            }
        } else {
            out.gates.push(Gate {
                id: out.gates.len(),
                ..g.clone()
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qft_gate_count(n: usize) -> usize {
        n + n * (n - 1) / 2 + n / 2
    }

    #[test]
    fn qft4_shape() {
        let c = build_qft(4).unwrap();
        assert_eq!(c.count(GateKind::H), 4);
        assert_eq!(c.count(GateKind::Cp), 6);
        assert_eq!(c.count(GateKind::Swap), 2);
        let angles: Vec<_> = c.gates().iter().filter_map(|g| g.angle).collect();
        let expected: Vec<_> = [2, 4, 8, 2, 4, 2]
            .iter()
            .map(|&d| Rational64::new(1, d))
            .collect();
        assert_eq!(angles, expected);
        assert_eq!(c.gates()[1].qubits, vec![1, 0]);
    }

    #[test]
    fn qft_small_cases() {
        let c1 = build_qft(1).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1.gates()[0].kind, GateKind::H);

        let c3 = build_qft(3).unwrap();
        assert_eq!(c3.count(GateKind::H), 3);
        assert_eq!(c3.count(GateKind::Cp), 3);
        assert_eq!(c3.count(GateKind::Swap), 1);
        assert_eq!(c3.len(), 7);
        assert!(build_qft(0).is_err());
    }

    #[test]
    fn qft_gate_count_formula() {
        for n in 1..=8 {
            let c = build_qft(n).unwrap();
            assert_eq!(c.len(), qft_gate_count(n), "n = {n}");
            assert!(c.gates().iter().enumerate().all(|(i, g)| g.id == i));
        }
    }

    #[test]
    fn swap_becomes_three_cnots() {
        let mut c = Circuit::new(2).unwrap();
        c.swap(0, 1).unwrap();
        let d = decompose_swaps(&c);
        let got: Vec<_> = d
            .gates()
            .iter()
            .map(|g| (g.kind, g.qubits.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (GateKind::Cnot, vec![0, 1]),
                (GateKind::Cnot, vec![1, 0]),
                (GateKind::Cnot, vec![0, 1]),
            ]
        );
    }

    #[test]
    fn decompose_is_identity_without_swaps() {
        let mut c = Circuit::new(3).unwrap();
        c.h(0).unwrap();
        c.cp(0, 2, Rational64::new(1, 4)).unwrap();
        c.cnot(2, 1).unwrap();
        assert_eq!(decompose_swaps(&c), c);
    }

    #[test]
    fn decompose_qft4() {
        let d = decompose_swaps(&build_qft(4).unwrap());
        assert_eq!(d.len(), 16);
        assert_eq!(d.count(GateKind::Cnot), 6);
        let two_qubit = d.gates().iter().filter(|g| g.is_two_qubit()).count();
        assert_eq!(two_qubit, 12);
        assert!(d.gates().iter().enumerate().all(|(i, g)| g.id == i));
    }

    #[test]
    fn push_rejects_bad_operands() {
        let mut c = Circuit::new(2).unwrap();
        assert_eq!(
            c.h(2),
            Err(CircuitError::QubitOutOfRange {
                qubit: 2,
                num_qubits: 2
            })
        );
        assert_eq!(c.cnot(1, 1), Err(CircuitError::RepeatedQubit(1)));
        assert!(matches!(
            c.push(GateKind::Swap, &[0], None),
            Err(CircuitError::Arity { .. })
        ));
    }
}
