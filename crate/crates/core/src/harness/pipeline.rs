use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use super::config::{Mode, PoolChoice, RunConfig};
use super::report::{ReactionReport, StateEnergy};
use crate::ansatz::{
    adapt_vqe, build_circuit, chemically_aware_filter, uccsd_pool, AdaptConfig, AnsatzSpec,
};
use crate::circuits::{hartree_fock_state, Circuit};
use crate::error::{Error, Result};
use crate::noisy::{repeat_experiments, MeasurementCircuits, MitigationSpec, NoisyEmulator};
use crate::operators::{
    exact_ground_energy, qubit_hamiltonian, MolecularIntegrals, QubitOperator, Sector,
};
use crate::rng::{derive_seed, label};
use crate::vqe::{minimize, VqeConfig};

/// Everything computed for one stationary point.
#[derive(Clone, Debug)]
pub struct StateOutcome {
    pub energy: StateEnergy,
    /// Text-format circuits keyed by file stem.
    pub circuits: Vec<(String, Circuit)>,
    pub seed: u64,
    pub seconds: f64,
}

/// Reaction report plus per-state artifacts.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: ReactionReport,
    pub states: Vec<StateOutcome>,
}

pub fn load_hamiltonian(path: &Path, state: &str) -> Result<(MolecularIntegrals, QubitOperator)> {
    let ints = MolecularIntegrals::from_file(path).map_err(|e| e.at_stage("parse", state))?;
    let h = qubit_hamiltonian(&ints).map_err(|e| e.at_stage("hamiltonian", state))?;
    Ok((ints, h))
}

/// Noiseless VQE over the configured UCCSD pool; returns the optimized ansatz.
pub fn optimized_ansatz(
    ints: &MolecularIntegrals,
    h: &QubitOperator,
    pool: PoolChoice,
    vqe: &VqeConfig,
) -> Result<AnsatzSpec> {
    let n = ints.n_spin_orbitals();
    let full = uccsd_pool(ints.n_electrons, n)?;
    let excitations = match pool {
        PoolChoice::Full => full,
        PoolChoice::Filtered => {
            chemically_aware_filter(&full, &hartree_fock_state(n, ints.n_electrons)?, h)
        }
    };
    let mut spec = AnsatzSpec::hartree_fock(n, ints.n_electrons)?.with_excitations(excitations);
    spec.theta = minimize(h, &spec, vqe)?.theta;
    Ok(spec)
}

/// Symmetries from the configuration, or the parities of the reference determinant.
pub fn mitigation_spec(
    config: &RunConfig,
    h: &QubitOperator,
    reference: u64,
) -> Result<MitigationSpec> {
    match &config.symmetries {
        Some(list) => MitigationSpec::new(list.clone(), h),
        None => MitigationSpec::spin_parities(h, reference),
    }
}

fn base_energy(state: &str, ints: &MolecularIntegrals, energy: f64) -> StateEnergy {
    StateEnergy {
        label: state.to_string(),
        n_electrons: ints.n_electrons,
        n_orbitals: ints.n_orbitals,
        n_qubits: ints.n_spin_orbitals(),
        energy,
        std: None,
        sem: None,
        noiseless: None,
        unmitigated: None,
        unmitigated_std: None,
        retained_fraction: None,
        n_parameters: None,
    }
}

/// Runs the configured mode for one state.
pub fn solve_state(state: &str, path: &Path, config: &RunConfig) -> Result<StateOutcome> {
    let start = Instant::now();
    let seed = derive_seed(config.seed, &[label(state)]);
    let (ints, h) = load_hamiltonian(path, state)?;
    let mut circuits = Vec::new();
    let energy = match config.mode {
        Mode::Exact => {
            let e = exact_ground_energy(&h, Sector::new(ints.n_electrons, ints.spin_2s))
                .map_err(|e| e.at_stage("exact", state))?;
            base_energy(state, &ints, e)
        }
        Mode::Vqe => {
            let spec = optimized_ansatz(&ints, &h, config.pool, &config.vqe)
                .map_err(|e| e.at_stage("vqe", state))?;
            let e = spec
                .energy_at(&h, &spec.theta)
                .map_err(|e| e.at_stage("vqe", state))?;
            circuits.push((format!("{state}_ansatz"), build_circuit(&spec)));
            StateEnergy {
                n_parameters: Some(spec.n_parameters()),
                ..base_energy(state, &ints, e)
            }
        }
        Mode::Adapt => {
            let run = || -> Result<_> {
                let n = ints.n_spin_orbitals();
                let pool = uccsd_pool(ints.n_electrons, n)?;
                let reference = hartree_fock_state(n, ints.n_electrons)?;
                let cfg = AdaptConfig {
                    grad_threshold: config.adapt.grad_threshold,
                    max_rounds: config.adapt.max_rounds,
                    vqe: config.vqe.clone(),
                };
                adapt_vqe(&h, &pool, &reference, &cfg)
            };
            let result = run().map_err(|e| e.at_stage("adapt", state))?;
            circuits.push((format!("{state}_ansatz"), build_circuit(&result.spec)));
            StateEnergy {
                n_parameters: Some(result.spec.n_parameters()),
                ..base_energy(state, &ints, result.energy)
            }
        }
        Mode::Noisy | Mode::NoisyPmsv => {
            let spec = optimized_ansatz(&ints, &h, config.pool, &config.vqe)
                .map_err(|e| e.at_stage("vqe", state))?;
            let noiseless = spec
                .energy_at(&h, &spec.theta)
                .map_err(|e| e.at_stage("vqe", state))?;
            let measured = MeasurementCircuits::build(&h, &spec)
                .map_err(|e| e.at_stage("transpile", state))?;
            circuits.push((format!("{state}_ansatz"), build_circuit(&spec)));
            for (g, c) in measured.circuits.iter().enumerate() {
                circuits.push((format!("{state}_group{g:02}"), c.clone()));
            }
            let noisy = || -> Result<_> {
                let emulator = NoisyEmulator::new(&h, measured, config.noise, config.engine)?;
                let mitigation = match config.mode {
                    Mode::NoisyPmsv => Some(mitigation_spec(config, &h, spec.reference)?),
                    _ => None,
                };
                repeat_experiments(
                    &emulator,
                    config.experiments,
                    config.shots,
                    seed,
                    mitigation.as_ref(),
                )
            };
            let summary = noisy().map_err(|e| e.at_stage("noisy", state))?;
            let root_n = (summary.experiments as f64).sqrt();
            let (stats, unmitigated) = match summary.mitigated {
                Some(m) => (m, Some(summary.raw)),
                None => (summary.raw, None),
            };
            StateEnergy {
                std: Some(stats.std),
                sem: Some(stats.std / root_n),
                noiseless: Some(noiseless),
                unmitigated: unmitigated.map(|s| s.mean),
                unmitigated_std: unmitigated.map(|s| s.std),
                retained_fraction: unmitigated.map(|_| summary.mean_retained),
                n_parameters: Some(spec.n_parameters()),
                ..base_energy(state, &ints, stats.mean)
            }
        }
    };
    Ok(StateOutcome {
        energy,
        circuits,
        seed,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Solves R, TS and P1 and assembles the report without touching the filesystem.
pub fn compute(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let states = config
        .states
        .labeled()
        .into_iter()
        .map(|(state, path)| solve_state(state, path, config))
        .collect::<Result<Vec<_>>>()?;
    let (ne, no) = (states[0].energy.n_electrons, states[0].energy.n_orbitals);
    if states
        .iter()
        .any(|s| (s.energy.n_electrons, s.energy.n_orbitals) != (ne, no))
    {
        return Err(Error::Config(
            "R, TS and P1 must share one active space".into(),
        ));
    }
    let report = ReactionReport::new(
        config.mode.label(),
        states.iter().map(|s| s.energy.clone()).collect(),
    );
    Ok(RunOutput { report, states })
}

#[derive(Serialize)]
struct Meta<'a> {
    version: &'static str,
    mode: &'a str,
    master_seed: u64,
    state_seeds: Vec<(&'a str, u64)>,
    seconds: Vec<(&'a str, f64)>,
    config: &'a RunConfig,
}

/// Writes `report.json`, `report.csv`, `report.txt`, `circuits/` and `meta.json` under `config.out`.
pub fn write_run(config: &RunConfig, output: &RunOutput) -> Result<()> {
    let dir = &config.out;
    let io = |e: std::io::Error| Error::Io(e).at_stage("write", "all");
    fs::create_dir_all(dir.join("circuits")).map_err(io)?;
    fs::write(dir.join("report.json"), output.report.to_json()?).map_err(io)?;
    fs::write(dir.join("report.csv"), output.report.to_csv()?).map_err(io)?;
    fs::write(dir.join("report.txt"), output.report.to_text()).map_err(io)?;
    for s in &output.states {
        for (stem, c) in &s.circuits {
            fs::write(
                dir.join("circuits").join(format!("{stem}.txt")),
                c.to_text(),
            )
            .map_err(io)?;
        }
    }
    let meta = Meta {
        version: env!("CARGO_PKG_VERSION"),
        mode: config.mode.label(),
        master_seed: config.seed,
        state_seeds: output
            .states
            .iter()
            .map(|s| (s.energy.label.as_str(), s.seed))
            .collect(),
        seconds: output
            .states
            .iter()
            .map(|s| (s.energy.label.as_str(), s.seconds))
            .collect(),
        config,
    };
    fs::write(
        dir.join("meta.json"),
        serde_json::to_string_pretty(&meta)? + "\n",
    )
    .map_err(io)?;
    Ok(())
}

/// Full pipeline: solve every state, then write the run directory.
pub fn run_pipeline(config: &RunConfig) -> Result<ReactionReport> {
    let output = compute(config)?;
    write_run(config, &output)?;
    Ok(output.report)
}
