//! Dense unitaries and phase-insensitive comparison.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuits::{run, Circuit, StateVector};
use crate::error::{Error, Result};

/// Largest register for which [`unitary`] builds the full matrix.
pub const UNITARY_LIMIT: usize = 10;

/// Column `j` is the circuit applied to basis state `j`; measurement is ignored.
pub fn unitary(circuit: &Circuit) -> Result<DMatrix<Complex64>> {
    let n = circuit.n_qubits();
    if n > UNITARY_LIMIT {
        return Err(Error::TooManyQubits {
            n,
            limit: UNITARY_LIMIT,
        });
    }
    let dim = 1usize << n;
    let mut u = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let out = run(circuit, &StateVector::basis(n, j))?;
        for (i, a) in out.amplitudes().iter().enumerate() {
            u[(i, j)] = *a;
        }
    }
    Ok(u)
}

/// `max |a − e^{iφ} b|` with `φ` aligning the overlap `tr(b† a)`.
pub fn phase_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let overlap: Complex64 = b.iter().zip(a.iter()).map(|(y, x)| y.conj() * x).sum();
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

/// Phase-insensitive distance between the unitaries of two circuits.
pub fn circuit_distance(a: &Circuit, b: &Circuit) -> Result<f64> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::QubitMismatch(a.n_qubits(), b.n_qubits()));
    }
    Ok(phase_distance(&unitary(a)?, &unitary(b)?))
}

/// Phase-insensitive distance between the states two circuits prepare from `|0…0⟩`.
pub fn state_distance(a: &Circuit, b: &Circuit) -> Result<f64> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::QubitMismatch(a.n_qubits(), b.n_qubits()));
    }
    let zero = StateVector::zero(a.n_qubits());
    let (x, y) = (run(a, &zero)?, run(b, &zero)?);
    let overlap = y.inner(&x);
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    Ok(x.amplitudes()
        .iter()
        .zip(y.amplitudes())
        .map(|(p, q)| (p - phase * q).norm())
        .fold(0.0, f64::max))
}
