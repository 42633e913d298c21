use super::config::RunConfig;
use super::pipeline::{load_hamiltonian, optimized_ansatz};
use crate::error::Result;
use crate::noisy::MeasurementCircuits;
use crate::transpiler::{transpile, transpile_from_zero, TranspileReport};

/// Gate resources of one state's measurement circuits.
#[derive(Clone, Debug)]
pub struct StateResources {
    pub state: String,
    /// Unitary-equivalent lowering of each circuit.
    pub unitary: TranspileReport,
    /// Lowering specialized to the `|0…0⟩` input, as executed by the noisy backend.
    pub from_zero: TranspileReport,
}

/// Transpiles the optimized ansatz followed by every measurement-basis change.
pub fn measurement_resources(config: &RunConfig) -> Result<Vec<StateResources>> {
    config
        .states
        .labeled()
        .into_iter()
        .map(|(state, path)| {
            let (ints, h) = load_hamiltonian(path, state)?;
            let spec = optimized_ansatz(&ints, &h, config.pool, &config.vqe)
                .map_err(|e| e.at_stage("vqe", state))?;
            let n = spec.n_qubits;
            let run = || -> Result<_> {
                let mut unitary = Vec::new();
                let mut from_zero = Vec::new();
                for (g, c) in MeasurementCircuits::sources(&h, &spec)?.iter().enumerate() {
                    unitary.push((format!("group{g:02}"), transpile(c)?.metrics()));
                    from_zero.push((format!("group{g:02}"), transpile_from_zero(c)?.metrics()));
                }
                Ok(StateResources {
                    state: state.to_string(),
                    unitary: TranspileReport::new(n, unitary)?,
                    from_zero: TranspileReport::new(n, from_zero)?,
                })
            };
            run().map_err(|e| e.at_stage("transpile", state))
        })
        .collect()
}
