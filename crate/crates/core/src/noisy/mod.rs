//! Shot-based emulation of native circuits under relaxation and dephasing,
//! energy estimation from counts, and symmetry post-selection.

pub mod density;
pub mod estimate;
pub mod model;
pub mod pmsv;
pub mod trajectory;

use serde::{Deserialize, Serialize};

use crate::ansatz::{build_circuit, AnsatzSpec};
use crate::circuits::measure::sample_distribution;
use crate::circuits::{measurement_groups, Circuit, Gate, MeasurementGroup, ShotCounts};
use crate::error::{Error, Result};
use crate::operators::QubitOperator;
use crate::rng::derive_seed;
use crate::transpiler::transpile_from_zero;

pub use density::{density_matrix_run, DensityMatrix, DENSITY_LIMIT};
pub use estimate::{energy_from_distributions, estimate_energy, Estimate};
pub use model::NoiseModel;
pub use pmsv::{filter_distribution, pmsv_filter, Filtered, MitigationSpec, Symmetry};
pub use trajectory::trajectory_run;

/// How shots are produced.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Density matrix when the register fits, trajectories otherwise.
    #[default]
    Auto,
    /// Sample the exact noisy distribution shot by shot.
    DensityMatrix,
    Trajectory,
}

/// Native measurement circuits for every group of a Hamiltonian at fixed parameters.
#[derive(Clone, Debug)]
pub struct MeasurementCircuits {
    pub groups: Vec<MeasurementGroup>,
    pub circuits: Vec<Circuit>,
}

impl MeasurementCircuits {
    pub fn build(h: &QubitOperator, spec: &AnsatzSpec) -> Result<Self> {
        let groups = measurement_groups(h)?;
        let circuits = Self::sources(h, spec)?
            .iter()
            .map(|c| Ok(transpile_from_zero(c)?.optimized))
            .collect::<Result<Vec<_>>>()?;
        Ok(MeasurementCircuits { groups, circuits })
    }

    /// Ansatz, basis change and measurement for each group, before lowering.
    pub fn sources(h: &QubitOperator, spec: &AnsatzSpec) -> Result<Vec<Circuit>> {
        if h.n_qubits() != spec.n_qubits {
            return Err(Error::QubitMismatch(h.n_qubits(), spec.n_qubits));
        }
        let ansatz = build_circuit(spec);
        measurement_groups(h)?
            .iter()
            .map(|g| {
                let mut c = ansatz.clone();
                c.extend(&g.basis_change(spec.n_qubits))?;
                c.push(Gate::MeasureAll)?;
                Ok(c)
            })
            .collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.circuits.first().map_or(0, Circuit::n_qubits)
    }
}

/// One noisy energy measurement: every group sampled once.
#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub counts: Vec<ShotCounts>,
    pub raw: Estimate,
    pub mitigated: Option<Estimate>,
    /// Retained fraction per group after post-selection.
    pub retained: Vec<f64>,
}

/// Noisy backend bound to a Hamiltonian and its measurement circuits.
#[derive(Clone, Debug)]
pub struct NoisyEmulator {
    h: QubitOperator,
    circuits: MeasurementCircuits,
    noise: NoiseModel,
    engine: Engine,
    distributions: Option<Vec<Vec<f64>>>,
}

impl NoisyEmulator {
    pub fn new(
        h: &QubitOperator,
        circuits: MeasurementCircuits,
        noise: NoiseModel,
        engine: Engine,
    ) -> Result<Self> {
        noise.validate()?;
        let fits = circuits.n_qubits() <= DENSITY_LIMIT;
        let dense = match engine {
            Engine::Auto => fits,
            Engine::DensityMatrix => true,
            Engine::Trajectory => false,
        };
        let distributions = if dense {
            Some(
                circuits
                    .circuits
                    .iter()
                    .map(|c| density_matrix_run(c, &noise))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        Ok(NoisyEmulator {
            h: h.clone(),
            circuits,
            noise,
            engine,
            distributions,
        })
    }

    pub fn groups(&self) -> &[MeasurementGroup] {
        &self.circuits.groups
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits.circuits
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// Exact noisy outcome distributions, one per group.
    pub fn distributions(&self) -> Result<Vec<Vec<f64>>> {
        match &self.distributions {
            Some(d) => Ok(d.clone()),
            None => self
                .circuits()
                .iter()
                .map(|c| density_matrix_run(c, &self.noise))
                .collect(),
        }
    }

    /// Infinite-shot energy, optionally after post-selection.
    pub fn exact_energy(&self, mitigation: Option<&MitigationSpec>) -> Result<f64> {
        let mut dists = self.distributions()?;
        if let Some(spec) = mitigation {
            for (d, g) in dists.iter_mut().zip(self.groups()) {
                *d = filter_distribution(d, spec, g)?.0;
            }
        }
        energy_from_distributions(&dists, &self.h, self.groups())
    }

    /// Histograms for every group; group `g` uses the seed derived from `(seed, g)`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Vec<ShotCounts>> {
        (0..self.circuits().len())
            .map(|g| {
                let s = derive_seed(seed, &[g as u64]);
                match &self.distributions {
                    Some(d) => sample_distribution(&d[g], self.circuits.n_qubits(), shots, s),
                    None => trajectory_run(&self.circuits()[g], &self.noise, shots, s),
                }
            })
            .collect()
    }

    pub fn experiment(
        &self,
        shots: u64,
        seed: u64,
        mitigation: Option<&MitigationSpec>,
    ) -> Result<ExperimentOutcome> {
        let counts = self.sample(shots, seed)?;
        let raw = estimate_energy(&counts, &self.h, self.groups())?;
        let (mitigated, retained) = match mitigation {
            Some(spec) => {
                let filtered = counts
                    .iter()
                    .zip(self.groups())
                    .map(|(c, g)| pmsv_filter(c, spec, g))
                    .collect::<Result<Vec<_>>>()?;
                let retained = filtered.iter().map(|f| f.retained).collect();
                let kept: Vec<ShotCounts> = filtered.into_iter().map(|f| f.counts).collect();
                (
                    Some(estimate_energy(&kept, &self.h, self.groups())?),
                    retained,
                )
            }
            None => (None, vec![1.0; counts.len()]),
        };
        Ok(ExperimentOutcome {
            counts,
            raw,
            mitigated,
            retained,
        })
    }
}

/// Mean and sample standard deviation.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub mean: f64,
    pub std: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Stats {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Stats {
            mean,
            std: var.sqrt(),
        }
    }
}

/// Energies of independent repetitions at one shot budget.
#[derive(Clone, Debug, Serialize)]
pub struct RepeatSummary {
    pub shots: u64,
    pub experiments: usize,
    pub raw: Stats,
    pub mitigated: Option<Stats>,
    pub mean_retained: f64,
    #[serde(skip)]
    pub raw_energies: Vec<f64>,
    #[serde(skip)]
    pub mitigated_energies: Vec<f64>,
}

/// Runs `n_experiments` independent experiments; experiment `e` uses the seed
/// derived from `(seed, shots, e)`.
pub fn repeat_experiments(
    emulator: &NoisyEmulator,
    n_experiments: usize,
    shots: u64,
    seed: u64,
    mitigation: Option<&MitigationSpec>,
) -> Result<RepeatSummary> {
    if n_experiments < 2 {
        return Err(Error::Config(format!(
            "need at least 2 experiments, got {n_experiments}"
        )));
    }
    let mut raw = Vec::with_capacity(n_experiments);
    let mut mitigated = Vec::new();
    let mut retained = 0.0;
    for e in 0..n_experiments {
        let out = emulator.experiment(shots, derive_seed(seed, &[shots, e as u64]), mitigation)?;
        raw.push(out.raw.energy);
        if let Some(m) = out.mitigated {
            mitigated.push(m.energy);
        }
        retained += out.retained.iter().sum::<f64>() / out.retained.len() as f64;
    }
    Ok(RepeatSummary {
        shots,
        experiments: n_experiments,
        raw: Stats::of(&raw),
        mitigated: (!mitigated.is_empty()).then(|| Stats::of(&mitigated)),
        mean_retained: retained / n_experiments as f64,
        raw_energies: raw,
        mitigated_energies: mitigated,
    })
}

/// [`repeat_experiments`] at each budget.
pub fn shot_sweep(
    emulator: &NoisyEmulator,
    budgets: &[u64],
    n_experiments: usize,
    seed: u64,
    mitigation: Option<&MitigationSpec>,
) -> Result<Vec<RepeatSummary>> {
    budgets
        .iter()
        .map(|&shots| repeat_experiments(emulator, n_experiments, shots, seed, mitigation))
        .collect()
}
