//! Monte-Carlo wavefunction sampling, one quantum trajectory per shot.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::model::NoiseModel;
use crate::circuits::measure::{cumulative, invert_cdf};
use crate::circuits::{Circuit, ShotCounts, StateVector};
use crate::error::{Error, Result};
use crate::rng;

fn damp(state: &mut [Complex64], qubit: usize, gamma: f64, rng: &mut ChaCha8Rng) {
    let bit = 1usize << qubit;
    let excited: f64 = state
        .iter()
        .enumerate()
        .filter(|(b, _)| b & bit != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum();
    let jump = gamma * excited;
    if rng.gen::<f64>() < jump {
        let scale = 1.0 / excited.sqrt();
        for b in 0..state.len() {
            if b & bit == 0 {
                state[b] = state[b | bit] * scale;
                state[b | bit] = Complex64::default();
            }
        }
    } else {
        let keep = (1.0 - gamma).sqrt();
        let scale = 1.0 / (1.0 - jump).sqrt();
        for (b, a) in state.iter_mut().enumerate() {
            *a *= if b & bit != 0 { keep * scale } else { scale };
        }
    }
}

fn phase_flip(state: &mut [Complex64], qubit: usize) {
    let bit = 1usize << qubit;
    for (b, a) in state.iter_mut().enumerate() {
        if b & bit != 0 {
            *a = -*a;
        }
    }
}

/// Samples `shots` noisy executions of a native circuit from `|0…0⟩`.
///
/// Shot `i` reads stream `i` of `seed`: the outcome uniform first, then channel
/// branch draws, then readout flips. With every probability at zero the counts
/// equal [`crate::circuits::sample_counts`] on the ideal final state.
pub fn trajectory_run(
    circuit: &Circuit,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts> {
    noise.validate()?;
    if !circuit.is_native() {
        return Err(Error::UnsupportedGate(
            "trajectory and density engines take native circuits".into(),
        ));
    }
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let n = circuit.n_qubits();
    let gates: Vec<_> = circuit
        .gates()
        .iter()
        .filter(|g| !g.is_measurement())
        .collect();
    let mut counts = ShotCounts::new(n);
    let mut ideal_cdf: Option<Vec<f64>> = None;
    let streams = rng::Streams::new(seed);
    for shot in 0..shots {
        let mut rng = streams.get(shot);
        let u: f64 = rng.gen();
        let outcome = if noise.gamma1 == 0.0
            && noise.gamma2 == 0.0
            && noise.lambda1 == 0.0
            && noise.lambda2 == 0.0
        {
            let cdf = ideal_cdf.get_or_insert_with(|| {
                let mut s = StateVector::zero(n);
                for g in &gates {
                    s.apply_gate(g);
                }
                cumulative(&s.probabilities())
            });
            invert_cdf(cdf, u)
        } else {
            let mut s = StateVector::zero(n);
            for g in &gates {
                s.apply_gate(g);
                let (gamma, lambda) = noise.channel_for(g.is_two_qubit());
                for q in g.qubits() {
                    if gamma > 0.0 {
                        damp(s.amplitudes_mut(), q, gamma, &mut rng);
                    }
                    if lambda > 0.0 && rng.gen::<f64>() < lambda {
                        phase_flip(s.amplitudes_mut(), q);
                    }
                }
            }
            invert_cdf(&cumulative(&s.probabilities()), u)
        };
        let mut b = outcome as u64;
        if noise.readout_flip > 0.0 {
            for q in 0..n {
                if rng.gen::<f64>() < noise.readout_flip {
                    b ^= 1 << q;
                }
            }
        }
        counts.add(b, 1);
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{run, sample_counts, Gate};

    #[test]
    fn full_damping_returns_ground() {
        let c = Circuit::from_gates(1, vec![Gate::rx(0, std::f64::consts::PI)]).unwrap();
        let noise = NoiseModel {
            gamma1: 1.0,
            ..NoiseModel::ideal()
        };
        let counts = trajectory_run(&c, &noise, 500, 1).unwrap();
        assert_eq!(counts.get(0), 500);
    }

    #[test]
    fn zero_noise_reproduces_ideal_sampling() {
        let c = Circuit::from_gates(
            2,
            vec![Gate::ry(0, 1.1), Gate::iswap(0, 1), Gate::rx(1, 0.4)],
        )
        .unwrap();
        let ideal = run(&c, &StateVector::zero(2)).unwrap();
        assert_eq!(
            trajectory_run(&c, &NoiseModel::ideal(), 4000, 9).unwrap(),
            sample_counts(&ideal, 4000, 9).unwrap()
        );
    }

    #[test]
    fn rejects_non_native() {
        let c = Circuit::from_gates(2, vec![Gate::cx(0, 1)]).unwrap();
        assert!(trajectory_run(&c, &NoiseModel::default(), 10, 0).is_err());
    }
}
