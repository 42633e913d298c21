use serde::Serialize;

use super::config::{Mode, RunConfig, Trio};
use super::pipeline::{compute, load_hamiltonian, mitigation_spec, optimized_ansatz};
use super::report::{csv_string, ReactionReport, KCAL_PER_HARTREE};
use crate::error::{Error, Result};
use crate::noisy::{shot_sweep, MeasurementCircuits, NoisyEmulator};
use crate::rng::{derive_seed, label};

/// Spread of the energy estimate of one state at one shot budget.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShotRow {
    pub state: String,
    pub shots: u64,
    pub mean: f64,
    pub std: f64,
    /// Mean fraction of shots kept by post-selection (1 without it).
    pub retained: f64,
}

/// Mean and spread over `config.experiments` repetitions at every budget, per state.
pub fn shots_sweep(config: &RunConfig, budgets: &[u64]) -> Result<Vec<ShotRow>> {
    if !config.mode.is_noisy() {
        return Err(Error::Config(format!(
            "shot sweeps need a noisy mode, not `{}`",
            config.mode
        )));
    }
    config.validate()?;
    let mut rows = Vec::new();
    for (state, path) in config.states.labeled() {
        let seed = derive_seed(config.seed, &[label(state)]);
        let (ints, h) = load_hamiltonian(path, state)?;
        let spec = optimized_ansatz(&ints, &h, config.pool, &config.vqe)
            .map_err(|e| e.at_stage("vqe", state))?;
        let run = || -> Result<_> {
            let measured = MeasurementCircuits::build(&h, &spec)?;
            let emulator = NoisyEmulator::new(&h, measured, config.noise, config.engine)?;
            let mitigation = match config.mode {
                Mode::NoisyPmsv => Some(mitigation_spec(config, &h, spec.reference)?),
                _ => None,
            };
            shot_sweep(
                &emulator,
                budgets,
                config.experiments,
                seed,
                mitigation.as_ref(),
            )
        };
        for s in run().map_err(|e| e.at_stage("noisy", state))? {
            let stats = s.mitigated.unwrap_or(s.raw);
            rows.push(ShotRow {
                state: state.to_string(),
                shots: s.shots,
                mean: stats.mean,
                std: stats.std,
                retained: s.mean_retained,
            });
        }
    }
    Ok(rows)
}

pub fn shots_csv(rows: &[ShotRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["state", "shots", "mean", "std", "retained"])?;
    for r in rows {
        w.write_record([
            r.state.clone(),
            r.shots.to_string(),
            format!("{:.12}", r.mean),
            format!("{:.12}", r.std),
            format!("{:.6}", r.retained),
        ])?;
    }
    csv_string(w)
}

/// One reaction profile per active space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceRow {
    pub electrons: usize,
    pub orbitals: usize,
    pub report: ReactionReport,
}

impl SpaceRow {
    pub fn label(&self) -> String {
        format!("({},{})", self.electrons, self.orbitals)
    }
}

/// Runs the configured mode on each trio; trios mixing active spaces are rejected.
pub fn activespace_sweep(config: &RunConfig, trios: &[Trio]) -> Result<Vec<SpaceRow>> {
    if trios.is_empty() {
        return Err(Error::Config(
            "active-space sweep needs at least one trio".into(),
        ));
    }
    trios
        .iter()
        .enumerate()
        .map(|(i, trio)| {
            let mut c = config.clone();
            c.states = trio.clone();
            c.spaces.clear();
            let out = compute(&c).map_err(|e| match e {
                Error::Config(msg) => Error::Config(format!("trio {i}: {msg}")),
                other => other,
            })?;
            let s = &out.report.states[0];
            Ok(SpaceRow {
                electrons: s.n_electrons,
                orbitals: s.n_orbitals,
                report: out.report,
            })
        })
        .collect()
}

pub fn space_csv(rows: &[SpaceRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "space",
        "electrons",
        "orbitals",
        "method",
        "e_r",
        "e_ts",
        "e_p1",
        "de_ts_ha",
        "de_p1_ha",
        "de_ts_kcal_mol",
        "de_p1_kcal_mol",
    ])?;
    for r in rows {
        let e = |l: &str| r.report.state(l).map_or(f64::NAN, |s| s.energy);
        let d = |l: &str| r.report.delta(l).unwrap_or(f64::NAN);
        w.write_record([
            r.label(),
            r.electrons.to_string(),
            r.orbitals.to_string(),
            r.report.method.clone(),
            format!("{:.12}", e("R")),
            format!("{:.12}", e("TS")),
            format!("{:.12}", e("P1")),
            format!("{:.12}", d("TS")),
            format!("{:.12}", d("P1")),
            format!("{:.9}", d("TS") * KCAL_PER_HARTREE),
            format!("{:.9}", d("P1") * KCAL_PER_HARTREE),
        ])?;
    }
    csv_string(w)
}
