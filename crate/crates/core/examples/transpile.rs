//! Lowering the measurement circuits of an optimized ansatz to the native gate set.

use ald_vqe::harness::optimized_ansatz;
use ald_vqe::harness::PoolChoice;
use ald_vqe::noisy::MeasurementCircuits;
use ald_vqe::operators::{qubit_hamiltonian, MolecularIntegrals};
use ald_vqe::transpiler::{transpile, transpile_from_zero, TranspileReport};
use ald_vqe::vqe::VqeConfig;

fn main() -> ald_vqe::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/r_22.fcidump");
    let ints = MolecularIntegrals::from_file(path)?;
    let h = qubit_hamiltonian(&ints)?;
    let spec = optimized_ansatz(&ints, &h, PoolChoice::Filtered, &VqeConfig::default())?;
    let sources = MeasurementCircuits::sources(&h, &spec)?;

    let mut unitary = Vec::new();
    let mut from_zero = Vec::new();
    for (g, c) in sources.iter().enumerate() {
        unitary.push((format!("group{g}"), transpile(c)?.metrics()));
        from_zero.push((format!("group{g}"), transpile_from_zero(c)?.metrics()));
    }
    println!("unitary-equivalent lowering");
    print!("{}", TranspileReport::new(h.n_qubits(), unitary)?.to_text());
    println!("\nlowering for the |0000> input");
    print!(
        "{}",
        TranspileReport::new(h.n_qubits(), from_zero)?.to_text()
    );
    println!(
        "\n{}",
        transpile_from_zero(&sources[0])?.optimized.to_text()
    );
    Ok(())
}
