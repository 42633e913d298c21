//! Fermionic and Pauli operator algebra, integral input, the Jordan–Wigner
//! map and the exact-diagonalization reference.

pub mod exact;
pub mod fcidump;
pub mod fermion;
pub mod jordan_wigner;
pub mod pauli;

pub use exact::{dense_matrix, exact_ground_energy, exact_ground_state, GroundState, Sector};
pub use fcidump::{parse_fcidump, MolecularIntegrals};
pub use fermion::{
    hamiltonian_from_integrals, number_operator, sz_operator, FermionOperator, Ladder,
};
pub use jordan_wigner::jordan_wigner;
pub use pauli::{PauliLetter, PauliString, QubitOperator};

use crate::error::Result;

/// Qubit Hamiltonian of an active space: JW image of the second-quantized
/// Hamiltonian on `2 × n_orbitals` qubits, with imaginary round-off removed.
pub fn qubit_hamiltonian(ints: &MolecularIntegrals) -> Result<QubitOperator> {
    let f = hamiltonian_from_integrals(ints)?;
    jordan_wigner(&f, ints.n_spin_orbitals())?.into_real(1e-12)
}

pub fn qubit_number_operator(n_qubits: usize) -> QubitOperator {
    jordan_wigner(&number_operator(n_qubits), n_qubits).expect("modes in range")
}

pub fn qubit_sz_operator(n_qubits: usize) -> QubitOperator {
    jordan_wigner(&sz_operator(n_qubits), n_qubits).expect("modes in range")
}

/// Ground state in the integrals' own `(N, 2S_z)` sector.
pub fn reference_ground_state(ints: &MolecularIntegrals) -> Result<GroundState> {
    let h = qubit_hamiltonian(ints)?;
    exact_ground_state(&h, Sector::new(ints.n_electrons, ints.spin_2s))
}
