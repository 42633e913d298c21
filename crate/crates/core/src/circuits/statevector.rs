use num_complex::Complex64;

use crate::circuits::circuit::Circuit;
use crate::circuits::gate::{Gate, Mat2};
use crate::error::{Error, Result};
use crate::operators::{PauliString, QubitOperator};

/// `2^n` amplitudes; qubit 0 is the least significant bit of the index.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::default(); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n_qubits, amps }
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::InvalidGate(format!(
                "{} amplitudes is not 2^n",
                amps.len()
            )));
        }
        let n_qubits = amps.len().trailing_zeros() as usize;
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|²`
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn apply_1q(&mut self, qubit: usize, m: &Mat2) {
        let bit = 1usize << qubit;
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + bit {
                let j = i | bit;
                let (a, b) = (self.amps[i], self.amps[j]);
                self.amps[i] = m[0][0] * a + m[0][1] * b;
                self.amps[j] = m[1][0] * a + m[1][1] * b;
            }
            base += 2 * bit;
        }
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1usize << control, 1usize << target);
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amps.swap(i, i | tb);
            }
        }
    }

    /// `|01> -> i|10>`, `|10> -> i|01>`.
    pub fn apply_iswap(&mut self, a: usize, b: usize) {
        let (ab, bb) = (1usize << a, 1usize << b);
        let i_unit = Complex64::new(0.0, 1.0);
        for k in 0..self.amps.len() {
            if k & ab != 0 && k & bb == 0 {
                let l = (k & !ab) | bb;
                let (u, v) = (self.amps[k], self.amps[l]);
                self.amps[k] = i_unit * v;
                self.amps[l] = i_unit * u;
            }
        }
    }

    /// Direct action of `exp(−i angle/2 · P)`.
    pub fn apply_pauli_exp(&mut self, pauli: &PauliString, angle: f64) {
        let c = (angle / 2.0).cos();
        let s = (angle / 2.0).sin();
        let mis = Complex64::new(0.0, -s);
        if pauli.x == 0 {
            for (b, a) in self.amps.iter_mut().enumerate() {
                let (ph, _) = pauli.apply_basis(b);
                *a *= c + mis * ph;
            }
            return;
        }
        let x = pauli.x as usize;
        for b in 0..self.amps.len() {
            let bx = b ^ x;
            if b > bx {
                continue;
            }
            let (ph_b, _) = pauli.apply_basis(b);
            let (ph_bx, _) = pauli.apply_basis(bx);
            let (u, v) = (self.amps[b], self.amps[bx]);
            self.amps[b] = c * u + mis * ph_bx * v;
            self.amps[bx] = c * v + mis * ph_b * u;
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        match gate {
            Gate::Cx { control, target } => self.apply_cx(*control, *target),
            Gate::ISwap { a, b } => self.apply_iswap(*a, *b),
            Gate::PauliExp { pauli, angle } => self.apply_pauli_exp(pauli, *angle),
            Gate::MeasureAll => {}
            g => {
                let q = g.qubits()[0];
                self.apply_1q(q, &g.matrix_1q().expect("single-qubit gate"));
            }
        }
    }

    /// `<ψ|P|ψ>` for a single Pauli string.
    pub fn pauli_expectation(&self, pauli: &PauliString) -> Complex64 {
        let mut acc = Complex64::default();
        for (b, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let (ph, out) = pauli.apply_basis(b);
            acc += self.amps[out].conj() * ph * a;
        }
        acc
    }

    /// `P|ψ>` summed over the operator's terms.
    pub fn apply_operator(&self, op: &QubitOperator) -> StateVector {
        let mut out = vec![Complex64::default(); self.amps.len()];
        for (p, c) in op.terms() {
            for (b, a) in self.amps.iter().enumerate() {
                let (ph, o) = p.apply_basis(b);
                out[o] += c * ph * a;
            }
        }
        StateVector {
            n_qubits: self.n_qubits,
            amps: out,
        }
    }
}

/// `n_electrons` lowest spin-orbitals occupied.
pub fn hartree_fock_state(n_qubits: usize, n_electrons: usize) -> Result<StateVector> {
    if n_electrons > n_qubits {
        return Err(Error::Occupation {
            electrons: n_electrons,
            qubits: n_qubits,
        });
    }
    Ok(StateVector::basis(n_qubits, (1usize << n_electrons) - 1))
}

pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if circuit.n_qubits() != initial.n_qubits() {
        return Err(Error::DimensionMismatch {
            circuit: circuit.n_qubits(),
            state: initial.n_qubits(),
        });
    }
    let mut state = initial.clone();
    for g in circuit.gates() {
        state.apply_gate(g);
    }
    Ok(state)
}

/// `<ψ|O|ψ>` for Hermitian `O`.
pub fn expectation(state: &StateVector, op: &QubitOperator) -> Result<f64> {
    if op.n_qubits() != state.n_qubits() {
        return Err(Error::QubitMismatch(op.n_qubits(), state.n_qubits()));
    }
    if !op.is_hermitian() {
        return Err(Error::NotHermitian(op.max_imag()));
    }
    let mut acc = Complex64::default();
    for (p, c) in op.terms() {
        acc += c * state.pauli_expectation(p);
    }
    debug_assert!(acc.im.abs() < 1e-10, "imaginary residual {}", acc.im);
    Ok(acc.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::gate::Gate;

    #[test]
    fn x_flips_zero() {
        let c = Circuit::from_gates(1, vec![Gate::x(0)]).unwrap();
        let s = run(&c, &StateVector::zero(1)).unwrap();
        assert_eq!(s, StateVector::basis(1, 1));
    }

    #[test]
    fn iswap_on_01() {
        // qubit 0 set: index 1 -> index 2 with phase i
        let c = Circuit::from_gates(2, vec![Gate::iswap(0, 1)]).unwrap();
        let s = run(&c, &StateVector::basis(2, 1)).unwrap();
        assert_eq!(s.amplitudes()[2], Complex64::new(0.0, 1.0));
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn hf_occupations() {
        assert_eq!(
            hartree_fock_state(4, 2).unwrap(),
            StateVector::basis(4, 0b0011)
        );
        assert_eq!(
            hartree_fock_state(8, 4).unwrap(),
            StateVector::basis(8, 0b1111)
        );
        assert!(hartree_fock_state(2, 3).is_err());
    }

    #[test]
    fn simple_expectations() {
        let z = QubitOperator::from_str_real(1, "Z0", 1.0);
        assert_eq!(expectation(&StateVector::zero(1), &z).unwrap(), 1.0);
        let plus = run(
            &Circuit::from_gates(1, vec![Gate::h(0)]).unwrap(),
            &StateVector::zero(1),
        )
        .unwrap();
        let x = QubitOperator::from_str_real(1, "X0", 1.0);
        assert!((expectation(&plus, &x).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let op = QubitOperator::term(
            1,
            PauliString::parse("X0").unwrap(),
            Complex64::new(0.0, 1.0),
        );
        assert!(matches!(
            expectation(&StateVector::zero(1), &op),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let c = Circuit::new(2);
        assert!(run(&c, &StateVector::zero(3)).is_err());
    }
}
