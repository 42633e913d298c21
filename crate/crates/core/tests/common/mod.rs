#![allow(dead_code)]

use std::path::PathBuf;

use ald_vqe::operators::{MolecularIntegrals, PauliLetter, PauliString, QubitOperator};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub const STATES: [&str; 3] = ["r", "ts", "p1"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.fcidump"))
}

pub fn integrals(name: &str) -> MolecularIntegrals {
    MolecularIntegrals::from_file(fixture(name)).unwrap()
}

pub fn all_fixtures() -> Vec<String> {
    let mut names = vec!["h2_like".to_string()];
    for size in ["22", "44"] {
        names.extend(STATES.iter().map(|s| format!("{s}_{size}")));
    }
    names
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Annihilator on `mode` as a dense matrix; parity string over lower modes.
pub fn annihilator(mode: usize, n_modes: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n_modes;
    let mut m = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        if b >> mode & 1 == 1 {
            let sign = if (b & ((1 << mode) - 1)).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            m[(b ^ (1 << mode), b)] = c(sign);
        }
    }
    m
}

/// Second-quantized Hamiltonian built directly from the integrals by
/// acting with ladder operators on occupation bitstrings.
pub fn ladder_hamiltonian(ints: &MolecularIntegrals) -> DMatrix<f64> {
    let n = ints.n_orbitals;
    let modes = 2 * n;
    let dim = 1usize << modes;
    let mut m = DMatrix::zeros(dim, dim);
    // (create?, mode) sequence applied right to left.
    let apply = |ops: &[(bool, usize)], b: usize| -> Option<(f64, usize)> {
        let mut state = b;
        let mut sign = 1.0;
        for &(create, mode) in ops.iter().rev() {
            let occupied = state >> mode & 1 == 1;
            if occupied == create {
                return None;
            }
            if (state & ((1 << mode) - 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            state ^= 1 << mode;
        }
        Some((sign, state))
    };
    let spin = |p: usize, s: usize| 2 * p + s;
    for b in 0..dim {
        m[(b, b)] += ints.core_energy;
        for p in 0..n {
            for q in 0..n {
                for s in 0..2 {
                    if let Some((sign, k)) = apply(&[(true, spin(p, s)), (false, spin(q, s))], b) {
                        m[(k, b)] += sign * ints.h(p, q);
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for t in 0..n {
                        let v = ints.g(p, q, r, t);
                        if v == 0.0 {
                            continue;
                        }
                        for s in 0..2 {
                            for u in 0..2 {
                                let ops = [
                                    (true, spin(p, s)),
                                    (true, spin(r, u)),
                                    (false, spin(t, u)),
                                    (false, spin(q, s)),
                                ];
                                if let Some((sign, k)) = apply(&ops, b) {
                                    m[(k, b)] += 0.5 * sign * v;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

fn letter_matrix(l: PauliLetter) -> DMatrix<Complex64> {
    let (o, z, i) = (c(1.0), c(0.0), Complex64::new(0.0, 1.0));
    match l {
        PauliLetter::I => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        PauliLetter::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        PauliLetter::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        PauliLetter::Z => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Kronecker product with qubit 0 as the rightmost factor.
pub fn pauli_matrix(p: &PauliString, n: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, c(1.0));
    for q in (0..n).rev() {
        m = m.kronecker(&letter_matrix(p.letter(q)));
    }
    m
}

pub fn operator_matrix(op: &QubitOperator) -> DMatrix<Complex64> {
    let n = op.n_qubits();
    let mut m = DMatrix::zeros(1 << n, 1 << n);
    for (p, k) in op.terms() {
        m += pauli_matrix(p, n) * *k;
    }
    m
}

/// Lowest eigenvalue of a real symmetric matrix restricted to basis states
/// with the given numbers of α (even) and β (odd) electrons.
pub fn sector_minimum(m: &DMatrix<f64>, n_alpha: u32, n_beta: u32) -> f64 {
    let even = 0x5555_5555_5555_5555u64;
    let basis: Vec<usize> = (0..m.nrows())
        .filter(|&b| {
            (b as u64 & even).count_ones() == n_alpha && (b as u64 & !even).count_ones() == n_beta
        })
        .collect();
    let sub = DMatrix::from_fn(basis.len(), basis.len(), |i, j| m[(basis[i], basis[j])]);
    sub.symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

pub fn oracle_ground_energy(ints: &MolecularIntegrals) -> f64 {
    let n_alpha = (ints.n_electrons as i32 + ints.spin_2s) / 2;
    let n_beta = ints.n_electrons as i32 - n_alpha;
    sector_minimum(&ladder_hamiltonian(ints), n_alpha as u32, n_beta as u32)
}
