//! Active-space VQE workflow for reaction energetics.
//!
//! Integrals in FCIDUMP form become Jordan–Wigner qubit Hamiltonians, which
//! are solved exactly, by UCCSD / ADAPT-VQE on a statevector simulator, and
//! by shot-based emulation of iSWAP-native circuits under relaxation and
//! dephasing noise with symmetry post-selection.
//!
//! Conventions used throughout:
//! - spin-orbitals are interleaved (`2p` = alpha, `2p + 1` = beta);
//! - qubit 0 is the least significant bit of a basis index and the
//!   rightmost character of a printed bitstring;
//! - energies are in Hartree.

pub mod ansatz;
pub mod circuits;
pub mod error;
pub mod harness;
pub mod noisy;
pub mod operators;
pub mod rng;
pub mod transpiler;
pub mod vqe;

pub use error::{Error, Result};
