//! Qubit Hamiltonian of a bundled active space and its exact ground energy.

use ald_vqe::operators::{
    exact_ground_energy, qubit_hamiltonian, qubit_number_operator, MolecularIntegrals, Sector,
};

fn main() -> ald_vqe::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/h2_like.fcidump");
    let ints = MolecularIntegrals::from_file(path)?;
    let h = qubit_hamiltonian(&ints)?;
    println!("{} qubits, {} Pauli terms", h.n_qubits(), h.len());
    for (p, k) in h.terms() {
        println!("  {:+.8}  {}", k.re, p);
    }
    let commutator = h.commutator(&qubit_number_operator(h.n_qubits()))?;
    println!("[H, N] has {} terms", commutator.len());
    let e = exact_ground_energy(&h, Sector::new(ints.n_electrons, ints.spin_2s))?;
    println!("ground energy {e:.10} Ha");
    Ok(())
}
