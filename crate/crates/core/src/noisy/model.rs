use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuits::gate::Mat2;
use crate::error::{Error, Result};

/// Per-gate relaxation and dephasing probabilities plus symmetric readout error.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseModel {
    /// Amplitude damping after a single-qubit gate.
    pub gamma1: f64,
    /// Phase flip after a single-qubit gate.
    pub lambda1: f64,
    /// Amplitude damping on each operand of a two-qubit gate.
    pub gamma2: f64,
    pub lambda2: f64,
    /// Probability that a measured bit is reported flipped.
    pub readout_flip: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel {
            gamma1: 0.005,
            lambda1: 0.002,
            gamma2: 0.02,
            lambda2: 0.008,
            readout_flip: 0.01,
        }
    }
}

impl NoiseModel {
    pub fn ideal() -> Self {
        NoiseModel {
            gamma1: 0.0,
            lambda1: 0.0,
            gamma2: 0.0,
            lambda2: 0.0,
            readout_flip: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("gamma1", self.gamma1),
            ("lambda1", self.lambda1),
            ("gamma2", self.gamma2),
            ("lambda2", self.lambda2),
            ("readout_flip", self.readout_flip),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Noise(format!("{name} = {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self) -> bool {
        *self == NoiseModel::ideal()
    }

    /// `(γ, λ)` applied to every qubit touched by a gate of the given arity.
    pub fn channel_for(&self, two_qubit: bool) -> (f64, f64) {
        if two_qubit {
            (self.gamma2, self.lambda2)
        } else {
            (self.gamma1, self.lambda1)
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Kraus pair of amplitude damping toward `|0⟩`.
pub fn amplitude_damping(gamma: f64) -> [Mat2; 2] {
    [
        [[c(1.0), c(0.0)], [c(0.0), c((1.0 - gamma).sqrt())]],
        [[c(0.0), c(gamma.sqrt())], [c(0.0), c(0.0)]],
    ]
}

/// Kraus pair of the phase-flip channel `ρ → (1−λ)ρ + λ ZρZ`.
pub fn dephasing(lambda: f64) -> [Mat2; 2] {
    let a = (1.0 - lambda).sqrt();
    let b = lambda.sqrt();
    [
        [[c(a), c(0.0)], [c(0.0), c(a)]],
        [[c(b), c(0.0)], [c(0.0), c(-b)]],
    ]
}

/// `‖Σ K†K − I‖_max`.
pub fn completeness_defect(kraus: &[Mat2]) -> f64 {
    let mut sum = [[Complex64::default(); 2]; 2];
    for k in kraus {
        for i in 0..2 {
            for j in 0..2 {
                for m in 0..2 {
                    sum[i][j] += k[m][i].conj() * k[m][j];
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((sum[i][j] - c(target)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_and_defaults() {
        let m: NoiseModel =
            serde_json::from_str(r#"{"gamma1": 0.1, "readout_flip": 0.0}"#).unwrap();
        assert_eq!(m.gamma1, 0.1);
        assert_eq!(m.gamma2, NoiseModel::default().gamma2);
        assert!(serde_json::from_str::<NoiseModel>(r#"{"gamma3": 0.1}"#).is_err());
        let bad = NoiseModel {
            lambda2: 1.5,
            ..NoiseModel::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn kraus_sets_are_complete() {
        for p in [0.0, 0.013, 0.5, 1.0] {
            assert!(completeness_defect(&amplitude_damping(p)) < 1e-12);
            assert!(completeness_defect(&dephasing(p)) < 1e-12);
        }
    }
}
