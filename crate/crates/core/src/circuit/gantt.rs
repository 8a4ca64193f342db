use serde::{Deserialize, Serialize};

use super::{Circuit, CircuitError, Gate, GateKind};

/// Per-kind gate durations in integer time steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DurationTable {
    pub h: u32,
    pub cp: u32,
    pub swap: u32,
    pub cnot: u32,
}

impl Default for DurationTable {
    fn default() -> Self {
        DurationTable {
            h: 1,
            cp: 2,
            swap: 3,
            cnot: 2,
        }
    }
}

impl DurationTable {
    pub fn validate(&self) -> Result<(), CircuitError> {
        for kind in [GateKind::H, GateKind::Cp, GateKind::Swap, GateKind::Cnot] {
            if self.get(kind) == 0 {
                return Err(CircuitError::ZeroDuration(kind));
            }
        }
        Ok(())
    }

    pub fn get(&self, kind: GateKind) -> u32 {
        match kind {
            GateKind::H => self.h,
            GateKind::Cp => self.cp,
            GateKind::Swap => self.swap,
            GateKind::Cnot => self.cnot,
        }
    }

    pub fn of(&self, gate: &Gate) -> u32 {
        self.get(gate.kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GanttEntry {
    pub gate: usize,
    pub start: u32,
    pub end: u32,
}

/// Timed view of a circuit; `entries[i]` belongs to gate `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GanttSchedule {
    pub entries: Vec<GanttEntry>,
    pub horizon: u32,
}

impl GanttSchedule {
    pub fn start_of(&self, gate: usize) -> u32 {
        self.entries[gate].start
    }
}

/// Places every gate at the latest current end time over its qubits.
pub fn asap_schedule(c: &Circuit, durations: &DurationTable) -> GanttSchedule {
    let mut frontier = vec![0u32; c.num_qubits()];
    let mut entries = Vec::with_capacity(c.len());
    for g in c.gates() {
        let start = g.qubits.iter().map(|&q| frontier[q]).max().unwrap_or(0);
        let end = start + durations.of(g);
        for &q in &g.qubits {
            frontier[q] = end;
        }
        entries.push(GanttEntry {
            gate: g.id,
            start,
            end,
        });
    }
    let horizon = entries.iter().map(|e| e.end).max().unwrap_or(0);
    GanttSchedule { entries, horizon }
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::circuit::build_qft;

    fn span(s: &GanttSchedule, gate: usize) -> (u32, u32) {
        (s.entries[gate].start, s.entries[gate].end)
    }

    #[test]
    fn disjoint_single_qubit_gates_run_together() {
        let mut c = Circuit::new(2).unwrap();
        c.h(0).unwrap();
        c.h(1).unwrap();
        let s = asap_schedule(&c, &DurationTable::default());
        assert_eq!(span(&s, 0), (0, 1));
        assert_eq!(span(&s, 1), (0, 1));
        assert_eq!(s.horizon, 1);
    }

    #[test]
    fn single_cp() {
        let mut c = Circuit::new(2).unwrap();
        c.cp(0, 1, Rational64::new(1, 2)).unwrap();
        let s = asap_schedule(&c, &DurationTable::default());
        assert_eq!(span(&s, 0), (0, 2));
        assert_eq!(s.horizon, 2);
    }

    #[test]
    fn qft4_staircase() {
        // gate order: H0 CP(1,0) CP(2,0) CP(3,0) H1 CP(2,1) CP(3,1) H2 CP(3,2) H3 S(0,3) S(1,2)
        let s = asap_schedule(&build_qft(4).unwrap(), &DurationTable::default());
        assert_eq!(span(&s, 0), (0, 1));
        assert_eq!(span(&s, 1), (1, 3));
        assert_eq!(span(&s, 2), (3, 5));
        assert_eq!(span(&s, 3), (5, 7));
        assert_eq!(span(&s, 4), (3, 4));
        assert_eq!(span(&s, 5), (5, 7));
        assert_eq!(span(&s, 6), (7, 9));
        assert_eq!(span(&s, 7), (7, 8));
        assert_eq!(span(&s, 8), (9, 11));
        assert_eq!(span(&s, 9), (11, 12));
        assert_eq!(span(&s, 10), (12, 15));
        assert_eq!(span(&s, 11), (11, 14));
        assert_eq!(s.horizon, 15);
    }

    #[test]
    fn zero_duration_rejected() {
        let t = DurationTable {
            cnot: 0,
            ..DurationTable::default()
        };
        assert_eq!(
            t.validate(),
            Err(CircuitError::ZeroDuration(GateKind::Cnot))
        );
        assert!(DurationTable::default().validate().is_ok());
    }
}
