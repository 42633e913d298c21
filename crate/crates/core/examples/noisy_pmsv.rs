//! Noisy energy estimate with and without parity post-selection.

use ald_vqe::harness::{optimized_ansatz, PoolChoice};
use ald_vqe::noisy::{
    repeat_experiments, Engine, MeasurementCircuits, MitigationSpec, NoiseModel, NoisyEmulator,
};
use ald_vqe::operators::{qubit_hamiltonian, MolecularIntegrals};
use ald_vqe::vqe::VqeConfig;

fn main() -> ald_vqe::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ts_22.fcidump");
    let ints = MolecularIntegrals::from_file(path)?;
    let h = qubit_hamiltonian(&ints)?;
    let spec = optimized_ansatz(&ints, &h, PoolChoice::Filtered, &VqeConfig::default())?;
    let noiseless = spec.energy_at(&h, &spec.theta)?;

    let circuits = MeasurementCircuits::build(&h, &spec)?;
    let emulator = NoisyEmulator::new(&h, circuits, NoiseModel::default(), Engine::Auto)?;
    let mitigation = MitigationSpec::spin_parities(&h, spec.reference)?;
    let summary = repeat_experiments(&emulator, 20, 20_000, 1, Some(&mitigation))?;
    let mitigated = summary.mitigated.expect("mitigation requested");

    println!("noiseless   {noiseless:.6} Ha");
    println!(
        "raw         {:.6} +- {:.6} Ha",
        summary.raw.mean, summary.raw.std
    );
    println!(
        "post-select {:.6} +- {:.6} Ha (kept {:.1}% of shots)",
        mitigated.mean,
        mitigated.std,
        100.0 * summary.mean_retained
    );
    println!(
        "infinite-shot limits: raw {:.6}, post-selected {:.6}",
        emulator.exact_energy(None)?,
        emulator.exact_energy(Some(&mitigation))?
    );
    Ok(())
}
