//! Reaction-profile runs over the R, TS and P1 stationary points: configuration,
//! per-state solvers, reports and sweeps.

pub mod config;
pub mod pipeline;
pub mod report;
pub mod resources;
pub mod sweep;

pub use config::{AdaptSettings, Mode, Overrides, PoolChoice, RunConfig, Trio};
pub use pipeline::{
    compute, load_hamiltonian, mitigation_spec, optimized_ansatz, run_pipeline, solve_state,
    write_run, RunOutput, StateOutcome,
};
pub use report::{ReactionReport, Relative, StateEnergy, FIXTURE_NOTE, KCAL_PER_HARTREE};
pub use resources::{measurement_resources, StateResources};
pub use sweep::{activespace_sweep, shots_csv, shots_sweep, space_csv, ShotRow, SpaceRow};
