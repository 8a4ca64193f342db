//! Line-oriented circuit text format.
//!
//! ```text
//! # 2-qubit example
//! qubits 2
//! h 0
//! cp 0 1 1/2
//! ```

use std::fmt::Write;

use num_rational::Rational64;

use super::{Circuit, CircuitError, GateKind, Qubit};

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or_default();
        let args: Vec<&str> = words.collect();
        let syntax = |message: String| CircuitError::Syntax { line, message };

        let Some(c) = circuit.as_mut() else {
            if head != "qubits" || args.len() != 1 {
                return Err(syntax("expected header `qubits <n>`".into()));
            }
            let n: usize = args[0]
                .parse()
                .map_err(|_| syntax(format!("invalid qubit count `{}`", args[0])))?;
            circuit = Some(Circuit::new(n).map_err(|e| syntax(e.to_string()))?);
            continue;
        };

        if head == "qubits" {
            return Err(syntax("duplicate `qubits` header".into()));
        }
        let kind = GateKind::from_mnemonic(head).ok_or_else(|| CircuitError::UnknownGate {
            line,
            name: head.to_string(),
        })?;
        let n_operands = kind.arity();
        let expected_args = n_operands + usize::from(kind == GateKind::Cp);
        if args.len() != expected_args {
            return Err(syntax(format!(
                "`{head}` takes {expected_args} argument(s), got {}",
                args.len()
            )));
        }
        let qubits = args[..n_operands]
            .iter()
            .map(|a| {
                a.parse::<Qubit>()
                    .map_err(|_| syntax(format!("invalid qubit index `{a}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let angle = if kind == GateKind::Cp {
            Some(parse_fraction(args[n_operands]).ok_or_else(|| {
                syntax(format!(
                    "invalid angle `{}` (expected num/den)",
                    args[n_operands]
                ))
            })?)
        } else {
            None
        };
        c.push(kind, &qubits, angle)
            .map_err(|e| CircuitError::AtLine {
                line,
                source: Box::new(e),
            })?;
    }
    circuit.ok_or(CircuitError::Syntax {
        line: text.lines().count().max(1),
        message: "missing `qubits <n>` header".into(),
    })
}

fn parse_fraction(s: &str) -> Option<Rational64> {
    match s.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.parse().ok()?;
            let den: i64 = den.parse().ok()?;
            (den != 0).then(|| Rational64::new(num, den))
        }
        None => s.parse::<i64>().ok().map(Rational64::from_integer),
    }
}

pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", c.num_qubits()).unwrap();
    for g in c.gates() {
        out.push_str(g.kind.mnemonic());
        for q in &g.qubits {
            write!(out, " {q}").unwrap();
        }
        if let Some(a) = g.angle {
            write!(out, " {}/{}", a.numer(), a.denom()).unwrap();
        }
        out.push('\n');
    }
    out
}
