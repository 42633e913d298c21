use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuits::gate::Gate;
use crate::error::{Error, Result};
use crate::operators::{PauliLetter, PauliString};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for (i, q) in qs.iter().enumerate() {
            if *q >= self.n_qubits {
                return Err(Error::InvalidGate(format!(
                    "{gate}: qubit {q} outside {}-qubit register",
                    self.n_qubits
                )));
            }
            if qs[..i].contains(q) {
                return Err(Error::InvalidGate(format!("{gate}: repeated operand {q}")));
            }
        }
        if let Some(a) = gate.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidGate(format!("{gate}: non-finite angle")));
            }
        }
        if let Gate::PauliExp { pauli, .. } = &gate {
            if pauli.is_identity() {
                return Err(Error::InvalidGate("PAULIEXP on the identity string".into()));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitMismatch(self.n_qubits, other.n_qubits));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Non-measurement gates.
    pub fn gate_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_measurement()).count()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Greedy left-to-right layering; each gate sits one layer above the
    /// latest gate on any of its qubits. Measurement is not counted.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let qs = g.qubits();
            if qs.is_empty() {
                continue;
            }
            let l = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for q in qs {
                level[q] = l;
            }
            depth = depth.max(l);
        }
        depth
    }

    pub fn is_native(&self) -> bool {
        self.gates.iter().all(Gate::is_native)
    }

    pub fn has_measurement(&self) -> bool {
        self.gates.iter().any(Gate::is_measurement)
    }

    /// Replaces every `PauliExp` by basis rotations (H for X, Rx(π/2) for Y),
    /// a CX chain onto the highest active qubit, `Rz(angle)`, and the mirror.
    pub fn expand_pauli_exps(&self) -> Circuit {
        let mut out = Circuit::new(self.n_qubits);
        for g in &self.gates {
            match g {
                Gate::PauliExp { pauli, angle } => {
                    out.gates.extend(pauli_exp_ladder(pauli, *angle));
                }
                other => out.gates.push(other.clone()),
            }
        }
        out
    }

    /// Line format: header `qubits N`, then one `GATE q0 [q1] [angle]` per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\n", self.n_qubits);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let err = |msg: String| Error::CircuitParse { line: lineno, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let head = toks[0].to_ascii_uppercase();
            if head == "QUBITS" {
                if circuit.is_some() {
                    return Err(err("duplicate header".into()));
                }
                let n = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("expected `qubits N`".into()))?;
                circuit = Some(Circuit::new(n));
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| err("gate before `qubits N` header".into()))?;
            let q = |k: usize| -> Result<usize> {
                toks.get(k)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(format!("missing or bad qubit operand {k}")))
            };
            let angle = |k: usize| -> Result<f64> {
                toks.get(k)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("missing or bad angle".into()))
            };
            let arity = |n: usize| -> Result<()> {
                if toks.len() != n {
                    Err(err(format!("{head} takes {} operands", n - 1)))
                } else {
                    Ok(())
                }
            };
            let gate = match head.as_str() {
                "RX" | "RY" | "RZ" => {
                    arity(3)?;
                    let (qq, a) = (q(1)?, angle(2)?);
                    match head.as_str() {
                        "RX" => Gate::rx(qq, a),
                        "RY" => Gate::ry(qq, a),
                        _ => Gate::rz(qq, a),
                    }
                }
                "H" => {
                    arity(2)?;
                    Gate::h(q(1)?)
                }
                "X" => {
                    arity(2)?;
                    Gate::x(q(1)?)
                }
                "CX" | "CNOT" => {
                    arity(3)?;
                    Gate::cx(q(1)?, q(2)?)
                }
                "ISWAP" => {
                    arity(3)?;
                    Gate::iswap(q(1)?, q(2)?)
                }
                "MEASURE" => {
                    arity(1)?;
                    Gate::MeasureAll
                }
                "PAULIEXP" => {
                    if toks.len() < 3 {
                        return Err(err("PAULIEXP needs letters and an angle".into()));
                    }
                    let a = angle(toks.len() - 1)?;
                    let word = toks[1..toks.len() - 1].join(" ");
                    let p = PauliString::parse(&word)
                        .ok_or_else(|| err(format!("bad Pauli string `{word}`")))?;
                    Gate::pauli_exp(p, a)
                }
                other => return Err(err(format!("unknown gate `{other}`"))),
            };
            c.push(gate).map_err(|e| err(e.to_string()))?;
        }
        circuit.ok_or(Error::CircuitParse {
            line: 0,
            msg: "missing `qubits N` header".into(),
        })
    }
}

/// Ladder expansion of `exp(−i angle/2 · P)`.
pub fn pauli_exp_ladder(pauli: &PauliString, angle: f64) -> Vec<Gate> {
    let qs: Vec<usize> = pauli.qubits().collect();
    let mut pre = Vec::new();
    let mut post = Vec::new();
    for &q in &qs {
        match pauli.letter(q) {
            PauliLetter::X => {
                pre.push(Gate::h(q));
                post.push(Gate::h(q));
            }
            PauliLetter::Y => {
                pre.push(Gate::rx(q, FRAC_PI_2));
                post.push(Gate::rx(q, -FRAC_PI_2));
            }
            _ => {}
        }
    }
    let chain: Vec<Gate> = qs.windows(2).map(|w| Gate::cx(w[0], w[1])).collect();
    let last = *qs.last().expect("non-identity string");
    let mut out = pre;
    out.extend(chain.iter().cloned());
    out.push(Gate::rz(last, angle));
    out.extend(chain.into_iter().rev());
    out.extend(post);
    out
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
