//! Simplification against a known input: while a qubit is still in a definite
//! computational basis state, gates controlled by it or diagonal on it reduce
//! to classical bookkeeping.

use std::f64::consts::PI;

use super::euler::wrap;
use crate::circuits::{Circuit, Gate};

fn is_multiple_of_pi(angle: f64) -> Option<bool> {
    let a = wrap(angle);
    if a.abs() < 1e-12 {
        Some(false)
    } else if (a.abs() - PI).abs() < 1e-12 {
        Some(true)
    } else {
        None
    }
}

/// Rewrites `circuit` so that it prepares the same state from `|0…0⟩` up to
/// global phase. The unitary on other inputs is not preserved.
pub fn simplify_from_zero(circuit: &Circuit) -> Circuit {
    let n = circuit.n_qubits();
    let mut known: Vec<Option<bool>> = vec![Some(false); n];
    let mut out: Vec<Gate> = Vec::with_capacity(circuit.gates().len());
    let mut frozen = false;
    for g in circuit.gates() {
        if frozen {
            out.push(g.clone());
            continue;
        }
        match *g {
            Gate::MeasureAll => {
                frozen = true;
                out.push(g.clone());
            }
            Gate::X { qubit } => {
                known[qubit] = known[qubit].map(|b| !b);
                out.push(g.clone());
            }
            Gate::Rz { qubit, .. } if known[qubit].is_some() => {}
            Gate::Rx { qubit, angle } | Gate::Ry { qubit, angle } => {
                known[qubit] = match (known[qubit], is_multiple_of_pi(angle)) {
                    (Some(b), Some(flip)) => Some(b ^ flip),
                    _ => None,
                };
                out.push(g.clone());
            }
            Gate::Cx { control, target } => match known[control] {
                Some(false) => {}
                Some(true) => {
                    known[target] = known[target].map(|b| !b);
                    out.push(Gate::x(target));
                }
                None => {
                    known[target] = None;
                    out.push(g.clone());
                }
            },
            Gate::ISwap { a, b } => match (known[a], known[b]) {
                (Some(x), Some(y)) if x == y => {}
                (Some(_), Some(_)) => {
                    known[a] = known[a].map(|v| !v);
                    known[b] = known[b].map(|v| !v);
                    out.push(Gate::x(a));
                    out.push(Gate::x(b));
                }
                _ => {
                    known[a] = None;
                    known[b] = None;
                    out.push(g.clone());
                }
            },
            _ => {
                for q in g.qubits() {
                    known[q] = None;
                }
                out.push(g.clone());
            }
        }
    }
    Circuit::from_gates(n, out).expect("same register")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transpiler::unitary::state_distance;

    #[test]
    fn basis_controls_resolve() {
        let c = Circuit::from_gates(
            3,
            vec![
                Gate::x(0),
                Gate::cx(0, 1),
                Gate::cx(2, 0),
                Gate::rz(1, 0.4),
                Gate::h(0),
                Gate::cx(0, 2),
                Gate::cx(1, 2),
            ],
        )
        .unwrap();
        let s = simplify_from_zero(&c);
        assert_eq!(s.two_qubit_count(), 1);
        assert!(state_distance(&c, &s).unwrap() < 1e-12);
    }

    #[test]
    fn measurement_freezes() {
        let c = Circuit::from_gates(2, vec![Gate::MeasureAll, Gate::cx(0, 1)]).unwrap();
        assert_eq!(simplify_from_zero(&c), c);
    }
}
