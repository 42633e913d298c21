//! Dense matrices and sector-restricted exact diagonalization.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::pauli::QubitOperator;

/// Largest register handled by the sector-restricted eigensolver.
pub const DENSE_LIMIT: usize = 16;
/// Largest register for which the full `2^n × 2^n` matrix is materialized.
pub const FULL_MATRIX_LIMIT: usize = 12;

/// Fixed particle number and, optionally, fixed `2S_z` (interleaved spin-orbitals).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sector {
    pub n_electrons: usize,
    pub spin_2s: Option<i32>,
}

impl Sector {
    pub fn new(n_electrons: usize, spin_2s: i32) -> Self {
        Sector {
            n_electrons,
            spin_2s: Some(spin_2s),
        }
    }

    pub fn particles(n_electrons: usize) -> Self {
        Sector {
            n_electrons,
            spin_2s: None,
        }
    }

    pub fn contains(&self, b: u64) -> bool {
        if b.count_ones() as usize != self.n_electrons {
            return false;
        }
        match self.spin_2s {
            None => true,
            Some(s) => {
                let even = 0x5555_5555_5555_5555u64;
                let na = (b & even).count_ones() as i32;
                let nb = (b & !even).count_ones() as i32;
                na - nb == s
            }
        }
    }

    pub fn basis(&self, n_qubits: usize) -> Vec<usize> {
        (0..1usize << n_qubits)
            .filter(|&b| self.contains(b as u64))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub sector: Sector,
    pub dimension: usize,
    /// Ground eigenvector embedded in the full `2^n` space.
    pub amplitudes: Vec<Complex64>,
}

pub fn dense_matrix(op: &QubitOperator) -> Result<DMatrix<Complex64>> {
    let n = op.n_qubits();
    if n > FULL_MATRIX_LIMIT {
        return Err(Error::TooManyQubits {
            n,
            limit: FULL_MATRIX_LIMIT,
        });
    }
    let dim = 1usize << n;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (p, c) in op.terms() {
        for b in 0..dim {
            let (phase, out) = p.apply_basis(b);
            m[(out, b)] += c * phase;
        }
    }
    Ok(m)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Vec<f64> {
    let mut vals: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Lowest eigenpair of `op` restricted to `sector`.
pub fn exact_ground_state(op: &QubitOperator, sector: Sector) -> Result<GroundState> {
    let n = op.n_qubits();
    if n > DENSE_LIMIT {
        return Err(Error::TooManyQubits {
            n,
            limit: DENSE_LIMIT,
        });
    }
    if !op.is_hermitian() {
        return Err(Error::NotHermitian(op.max_imag()));
    }
    let basis = sector.basis(n);
    if basis.is_empty() {
        return Err(Error::EmptySector {
            n_electrons: sector.n_electrons,
            spin_2s: sector.spin_2s,
        });
    }
    let mut index = vec![usize::MAX; 1 << n];
    for (i, &b) in basis.iter().enumerate() {
        index[b] = i;
    }
    let d = basis.len();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for (col, &b) in basis.iter().enumerate() {
        for (p, c) in op.terms() {
            let (phase, out) = p.apply_basis(b);
            let row = index[out];
            if row != usize::MAX {
                m[(row, col)] += c * phase;
            }
        }
    }
    let eig = SymmetricEigen::new(m);
    let (imin, energy) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty sector");
    let mut amplitudes = vec![Complex64::default(); 1 << n];
    for (i, &b) in basis.iter().enumerate() {
        amplitudes[b] = eig.eigenvectors[(i, imin)];
    }
    Ok(GroundState {
        energy,
        sector,
        dimension: d,
        amplitudes,
    })
}

pub fn exact_ground_energy(op: &QubitOperator, sector: Sector) -> Result<f64> {
    exact_ground_state(op, sector).map(|g| g.energy)
}
