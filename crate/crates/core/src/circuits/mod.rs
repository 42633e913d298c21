//! Gate-level IR, statevector simulation, expectation values and sampling.

pub mod circuit;
pub mod gate;
pub mod measure;
pub mod statevector;

pub use circuit::{pauli_exp_ladder, Circuit};
pub use gate::{Axis, Gate};
pub use measure::{measurement_groups, sample_counts, MeasurementGroup, ShotCounts};
pub use statevector::{expectation, hartree_fock_state, run, StateVector};
