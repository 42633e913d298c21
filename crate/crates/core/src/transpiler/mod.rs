//! Lowering to the native set {Rx, Ry, Rz, iSWAP} with resource accounting.

pub mod euler;
pub mod optimize;
pub mod relaxed;
pub mod synthesis;
pub mod unitary;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use serde::Serialize;

use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};

pub use optimize::optimize;
pub use relaxed::simplify_from_zero;
pub use synthesis::synthesize_pauli_blocks;
pub use unitary::{circuit_distance, phase_distance, state_distance, unitary, UNITARY_LIMIT};

/// Equivalence tolerance on the phase-aligned max-norm distance.
pub const EQUIVALENCE_TOL: f64 = 1e-10;

/// `CX(c, t)` as two iSWAPs dressed with rotations, in time order.
pub fn cx_native(control: usize, target: usize) -> Vec<Gate> {
    vec![
        Gate::rx(target, FRAC_PI_2),
        Gate::iswap(control, target),
        Gate::ry(control, FRAC_PI_2),
        Gate::iswap(control, target),
        Gate::rz(control, FRAC_PI_2),
        Gate::ry(target, PI),
    ]
}

/// Rewrites H, X and CX into native gates; native gates pass through.
pub fn decompose(circuit: &Circuit) -> Result<Circuit> {
    let mut out = Vec::with_capacity(circuit.gates().len() * 3);
    for g in circuit.gates() {
        match *g {
            Gate::H { qubit } => out.extend([
                Gate::rz(qubit, FRAC_PI_2),
                Gate::rx(qubit, FRAC_PI_2),
                Gate::rz(qubit, FRAC_PI_2),
            ]),
            Gate::X { qubit } => out.push(Gate::rx(qubit, PI)),
            Gate::Cx { control, target } => out.extend(cx_native(control, target)),
            Gate::PauliExp { .. } => {
                return Err(Error::UnsupportedGate(format!(
                    "{g} (expand or synthesize Pauli exponentials first)"
                )))
            }
            ref native => out.push(native.clone()),
        }
    }
    Circuit::from_gates(circuit.n_qubits(), out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub depth: usize,
    pub gates: usize,
    pub two_qubit: usize,
}

impl Metrics {
    pub fn of(c: &Circuit) -> Self {
        Metrics {
            depth: c.depth(),
            gates: c.gate_count(),
            two_qubit: c.two_qubit_count(),
        }
    }
}

/// One circuit through every stage of the pipeline.
#[derive(Clone, Debug)]
pub struct Transpiled {
    /// Pauli exponentials expanded into CX ladders.
    pub ir: Circuit,
    /// Commuting exponential blocks synthesized jointly.
    pub synthesized: Circuit,
    pub decomposed: Circuit,
    pub optimized: Circuit,
    /// Phase-aligned distance between `optimized` and `ir`, when small enough to check.
    pub distance: Option<f64>,
    /// Whether equivalence holds only on the `|0…0⟩` input.
    pub from_zero: bool,
}

impl Transpiled {
    pub fn metrics(&self) -> StageMetrics {
        StageMetrics {
            ir: Metrics::of(&self.ir),
            synthesized: Metrics::of(&self.synthesized),
            decomposed: Metrics::of(&self.decomposed),
            optimized: Metrics::of(&self.optimized),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageMetrics {
    pub ir: Metrics,
    pub synthesized: Metrics,
    pub decomposed: Metrics,
    pub optimized: Metrics,
}

/// Synthesis, decomposition and optimization, with an equivalence check up to
/// [`UNITARY_LIMIT`] qubits.
pub fn transpile(circuit: &Circuit) -> Result<Transpiled> {
    let ir = circuit.expand_pauli_exps();
    let synthesized = synthesize_pauli_blocks(circuit);
    let decomposed = decompose(&synthesized)?;
    let optimized = optimize(&decomposed);
    let distance = if circuit.n_qubits() <= UNITARY_LIMIT {
        Some(checked(circuit_distance(&optimized, &ir)?)?)
    } else {
        None
    };
    Ok(Transpiled {
        ir,
        synthesized,
        decomposed,
        optimized,
        distance,
        from_zero: false,
    })
}

/// Largest register for which [`transpile_from_zero`] checks the prepared state.
pub const STATE_CHECK_LIMIT: usize = 20;

/// Like [`transpile`] for circuits that always start in `|0…0⟩`: the
/// synthesized circuit is first simplified against that input, and the output
/// is checked to prepare the same state.
pub fn transpile_from_zero(circuit: &Circuit) -> Result<Transpiled> {
    let ir = circuit.expand_pauli_exps();
    let synthesized = simplify_from_zero(&synthesize_pauli_blocks(circuit));
    let decomposed = decompose(&synthesized)?;
    let optimized = optimize(&decomposed);
    let distance = if circuit.n_qubits() <= STATE_CHECK_LIMIT {
        Some(checked(state_distance(&optimized, &ir)?)?)
    } else {
        None
    };
    Ok(Transpiled {
        ir,
        synthesized,
        decomposed,
        optimized,
        distance,
        from_zero: true,
    })
}

fn checked(d: f64) -> Result<f64> {
    if d > EQUIVALENCE_TOL {
        return Err(Error::InvalidGate(format!(
            "transpiled circuit deviates by {d:e}"
        )));
    }
    Ok(d)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Range {
    pub min: usize,
    pub max: usize,
}

impl Range {
    fn over(values: impl Iterator<Item = usize>) -> Option<Range> {
        let v: Vec<usize> = values.collect();
        Some(Range {
            min: *v.iter().min()?,
            max: *v.iter().max()?,
        })
    }
}

impl std::fmt::Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.min == self.max {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}-{}", self.min, self.max)
        }
    }
}

/// Resource summary over the measurement-basis variants of one circuit.
#[derive(Clone, Debug, Serialize)]
pub struct TranspileReport {
    pub n_qubits: usize,
    pub circuits: Vec<(String, StageMetrics)>,
    pub input_depth: Range,
    pub input_gates: Range,
    pub output_depth: Range,
    pub output_gates: Range,
}

impl TranspileReport {
    pub fn new(n_qubits: usize, circuits: Vec<(String, StageMetrics)>) -> Result<Self> {
        let r = |f: fn(&StageMetrics) -> usize| {
            Range::over(circuits.iter().map(|(_, m)| f(m)))
                .ok_or_else(|| Error::Config("no circuits to report".into()))
        };
        Ok(TranspileReport {
            n_qubits,
            input_depth: r(|m| m.ir.depth)?,
            input_gates: r(|m| m.ir.gates)?,
            output_depth: r(|m| m.optimized.depth)?,
            output_gates: r(|m| m.optimized.gates)?,
            circuits,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<12} {:>10} {:>10}", "", "before", "after");
        let _ = writeln!(
            s,
            "{:<12} {:>10} {:>10}",
            "qubits", self.n_qubits, self.n_qubits
        );
        let _ = writeln!(
            s,
            "{:<12} {:>10} {:>10}",
            "depth",
            self.input_depth.to_string(),
            self.output_depth.to_string()
        );
        let _ = writeln!(
            s,
            "{:<12} {:>10} {:>10}",
            "gates",
            self.input_gates.to_string(),
            self.output_gates.to_string()
        );
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<10} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
            "circuit", "ir_d", "ir_g", "syn_d", "syn_g", "dec_d", "dec_g", "opt_d", "opt_g"
        );
        for (label, m) in &self.circuits {
            let _ = writeln!(
                s,
                "{:<10} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
                label,
                m.ir.depth,
                m.ir.gates,
                m.synthesized.depth,
                m.synthesized.gates,
                m.decomposed.depth,
                m.decomposed.gates,
                m.optimized.depth,
                m.optimized.gates
            );
        }
        s
    }

    /// `key=value` lines for scripts.
    pub fn to_key_values(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "qubits={}", self.n_qubits);
        let _ = writeln!(s, "input_depth={}", self.input_depth);
        let _ = writeln!(s, "input_gates={}", self.input_gates);
        let _ = writeln!(s, "output_depth={}", self.output_depth);
        let _ = writeln!(s, "output_gates={}", self.output_gates);
        for (label, m) in &self.circuits {
            let _ = writeln!(
                s,
                "{label}.ir_depth={}\n{label}.decomposed_depth={}\n{label}.optimized_depth={}\n{label}.optimized_gates={}",
                m.ir.depth, m.decomposed.depth, m.optimized.depth, m.optimized.gates
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cx_from_iswaps() {
        let cx = Circuit::from_gates(2, vec![Gate::cx(0, 1)]).unwrap();
        let native = Circuit::from_gates(2, cx_native(0, 1)).unwrap();
        assert!(circuit_distance(&cx, &native).unwrap() < 1e-12);
        let cx10 = Circuit::from_gates(2, vec![Gate::cx(1, 0)]).unwrap();
        assert!(circuit_distance(&cx10, &decompose(&cx10).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn hadamard_and_x() {
        for g in [Gate::h(0), Gate::x(0)] {
            let c = Circuit::from_gates(1, vec![g]).unwrap();
            let d = decompose(&c).unwrap();
            assert!(d.is_native());
            assert!(circuit_distance(&c, &d).unwrap() < 1e-12);
        }
    }

    #[test]
    fn rz_unchanged() {
        let c = Circuit::from_gates(1, vec![Gate::rz(0, 0.4)]).unwrap();
        assert_eq!(decompose(&c).unwrap(), c);
        assert_eq!(optimize(&c), c);
    }

    #[test]
    fn pauli_exp_rejected() {
        let c = Circuit::from_gates(
            1,
            vec![Gate::pauli_exp(
                crate::operators::PauliString::parse("X0").unwrap(),
                0.1,
            )],
        )
        .unwrap();
        assert!(matches!(decompose(&c), Err(Error::UnsupportedGate(_))));
    }

    #[test]
    fn peepholes() {
        let c = Circuit::from_gates(1, vec![Gate::rz(0, 0.3), Gate::rz(0, 0.4)]).unwrap();
        let o = optimize(&c);
        assert_eq!(o.gate_count(), 1);
        assert!((o.gates()[0].angle().unwrap() - 0.7).abs() < 1e-15);
        let c = Circuit::from_gates(2, vec![Gate::rx(0, 2.0 * PI), Gate::iswap(0, 1)]).unwrap();
        assert_eq!(optimize(&c).gates(), &[Gate::iswap(0, 1)]);
        let c = Circuit::from_gates(2, vec![Gate::iswap(0, 1), Gate::iswap(1, 0)]).unwrap();
        let o = optimize(&c);
        assert!(o.two_qubit_count() == 0 && circuit_distance(&c, &o).unwrap() < 1e-12);
    }

    #[test]
    fn cx_pair_cancels_natively() {
        let c = Circuit::from_gates(2, vec![Gate::cx(0, 1), Gate::cx(0, 1)]).unwrap();
        let o = optimize(&decompose(&c).unwrap());
        assert_eq!(o.gate_count(), 0);
    }
}
