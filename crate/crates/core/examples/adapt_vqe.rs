//! ADAPT-VQE growth on the four-orbital transition state.

use ald_vqe::ansatz::{adapt_vqe, uccsd_pool, AdaptConfig};
use ald_vqe::circuits::hartree_fock_state;
use ald_vqe::operators::{qubit_hamiltonian, reference_ground_state, MolecularIntegrals};

fn main() -> ald_vqe::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ts_44.fcidump");
    let ints = MolecularIntegrals::from_file(path)?;
    let h = qubit_hamiltonian(&ints)?;
    let n = ints.n_spin_orbitals();
    let pool = uccsd_pool(ints.n_electrons, n)?;
    let config = AdaptConfig {
        grad_threshold: 1e-4,
        ..AdaptConfig::default()
    };
    let result = adapt_vqe(
        &h,
        &pool,
        &hartree_fock_state(n, ints.n_electrons)?,
        &config,
    )?;
    print!("{}", result.report());
    let exact = reference_ground_state(&ints)?.energy;
    println!(
        "{} of {} excitations, error {:.2e} Ha",
        result.spec.n_parameters(),
        pool.len(),
        result.energy - exact
    );
    Ok(())
}
