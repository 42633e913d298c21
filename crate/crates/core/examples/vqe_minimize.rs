//! Filtered UCCSD ansatz optimized with the quasi-Newton VQE loop.

use ald_vqe::ansatz::{chemically_aware_filter, uccsd_pool, AnsatzSpec};
use ald_vqe::circuits::hartree_fock_state;
use ald_vqe::operators::{qubit_hamiltonian, reference_ground_state, MolecularIntegrals};
use ald_vqe::vqe::{minimize, VqeConfig};

fn main() -> ald_vqe::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ts_44.fcidump");
    let ints = MolecularIntegrals::from_file(path)?;
    let h = qubit_hamiltonian(&ints)?;
    let n = ints.n_spin_orbitals();
    let pool = uccsd_pool(ints.n_electrons, n)?;
    let kept = chemically_aware_filter(&pool, &hartree_fock_state(n, ints.n_electrons)?, &h);
    println!("pool {} -> {} after filtering", pool.len(), kept.len());

    let spec = AnsatzSpec::hartree_fock(n, ints.n_electrons)?.with_excitations(kept);
    let result = minimize(&h, &spec, &VqeConfig::default())?;
    let exact = reference_ground_state(&ints)?.energy;
    println!(
        "E = {:.10} Ha after {} iterations (converged {}), exact {exact:.10}, error {:.2e}",
        result.energy,
        result.iterations,
        result.converged,
        result.energy - exact
    );
    Ok(())
}
