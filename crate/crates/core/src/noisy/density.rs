//! Exact channel evolution of the density operator, used as the sampling oracle.

use num_complex::Complex64;

use super::model::NoiseModel;
use crate::circuits::gate::Mat2;
use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};

/// Largest register evolved as a dense density matrix.
pub const DENSITY_LIMIT: usize = 6;

/// `ρ` stored row-major; row bits sit above column bits in the flat index.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > DENSITY_LIMIT {
            return Err(Error::TooManyQubits {
                n: n_qubits,
                limit: DENSITY_LIMIT,
            });
        }
        let dim = 1usize << n_qubits;
        let mut data = vec![Complex64::default(); dim * dim];
        data[index * dim + index] = Complex64::new(1.0, 0.0);
        Ok(DensityMatrix { n: n_qubits, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let dim = 1usize << self.n;
        (0..dim).map(|i| self.data[i * dim + i].re).collect()
    }

    fn apply_bit(&mut self, bit: usize, m: &Mat2) {
        let stride = 1usize << bit;
        let len = self.data.len();
        let mut base = 0;
        while base < len {
            for i in base..base + stride {
                let j = i | stride;
                let (a, b) = (self.data[i], self.data[j]);
                self.data[i] = m[0][0] * a + m[0][1] * b;
                self.data[j] = m[1][0] * a + m[1][1] * b;
            }
            base += 2 * stride;
        }
    }

    /// `ρ → U ρ U†` for `U` on `qubit`.
    pub fn apply_1q(&mut self, qubit: usize, u: &Mat2) {
        let conj = [
            [u[0][0].conj(), u[0][1].conj()],
            [u[1][0].conj(), u[1][1].conj()],
        ];
        self.apply_bit(qubit + self.n, u);
        self.apply_bit(qubit, &conj);
    }

    fn permute(&mut self, f: impl Fn(usize) -> (usize, Complex64)) {
        let dim = 1usize << self.n;
        let mut out = vec![Complex64::default(); self.data.len()];
        let images: Vec<(usize, Complex64)> = (0..dim).map(f).collect();
        for r in 0..dim {
            let (r2, pr) = images[r];
            for col in 0..dim {
                let (c2, pc) = images[col];
                out[r2 * dim + c2] = pr * pc.conj() * self.data[r * dim + col];
            }
        }
        self.data = out;
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        match *gate {
            Gate::Cx { control, target } => {
                let (cb, tb) = (1usize << control, 1usize << target);
                self.permute(|b| {
                    (
                        if b & cb != 0 { b ^ tb } else { b },
                        Complex64::new(1.0, 0.0),
                    )
                });
            }
            Gate::ISwap { a, b } => {
                let (ab, bb) = (1usize << a, 1usize << b);
                self.permute(|k| {
                    if (k & ab != 0) != (k & bb != 0) {
                        (k ^ ab ^ bb, Complex64::new(0.0, 1.0))
                    } else {
                        (k, Complex64::new(1.0, 0.0))
                    }
                });
            }
            Gate::PauliExp { .. } | Gate::MeasureAll => {}
            ref g => {
                let q = g.qubits()[0];
                self.apply_1q(q, &g.matrix_1q().expect("single-qubit gate"));
            }
        }
    }

    /// Amplitude damping with probability `gamma` on `qubit`.
    pub fn damp(&mut self, qubit: usize, gamma: f64) {
        let rb = 1usize << (qubit + self.n);
        let cb = 1usize << qubit;
        let keep = (1.0 - gamma).sqrt();
        for i in 0..self.data.len() {
            if i & (rb | cb) != 0 {
                continue;
            }
            let i11 = i | rb | cb;
            let excited = self.data[i11];
            self.data[i] += excited * gamma;
            self.data[i11] *= 1.0 - gamma;
            self.data[i | cb] *= keep;
            self.data[i | rb] *= keep;
        }
    }

    /// Phase flip with probability `lambda` on `qubit`.
    pub fn dephase(&mut self, qubit: usize, lambda: f64) {
        let rb = 1usize << (qubit + self.n);
        let cb = 1usize << qubit;
        let f = 1.0 - 2.0 * lambda;
        for (i, v) in self.data.iter_mut().enumerate() {
            if ((i & rb) != 0) != ((i & cb) != 0) {
                *v *= f;
            }
        }
    }
}

/// Bit-flip readout error applied to an outcome distribution.
pub fn apply_readout(probs: &mut [f64], n_qubits: usize, flip: f64) {
    if flip == 0.0 {
        return;
    }
    for q in 0..n_qubits {
        let bit = 1usize << q;
        for b in 0..probs.len() {
            if b & bit == 0 {
                let (p0, p1) = (probs[b], probs[b | bit]);
                probs[b] = (1.0 - flip) * p0 + flip * p1;
                probs[b | bit] = (1.0 - flip) * p1 + flip * p0;
            }
        }
    }
}

/// Exact noisy outcome distribution of a native circuit started in `|0…0⟩`.
pub fn density_matrix_run(circuit: &Circuit, noise: &NoiseModel) -> Result<Vec<f64>> {
    noise.validate()?;
    if !circuit.is_native() {
        return Err(Error::UnsupportedGate(
            "trajectory and density engines take native circuits".into(),
        ));
    }
    let mut rho = DensityMatrix::basis(circuit.n_qubits(), 0)?;
    for g in circuit.gates() {
        if g.is_measurement() {
            continue;
        }
        rho.apply_gate(g);
        let (gamma, lambda) = noise.channel_for(g.is_two_qubit());
        for q in g.qubits() {
            if gamma > 0.0 {
                rho.damp(q, gamma);
            }
            if lambda > 0.0 {
                rho.dephase(q, lambda);
            }
        }
    }
    let mut probs: Vec<f64> = rho.diagonal().into_iter().map(|p| p.max(0.0)).collect();
    apply_readout(&mut probs, circuit.n_qubits(), noise.readout_flip);
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{run, StateVector};

    #[test]
    fn damping_on_excited_state() {
        let noise = NoiseModel {
            gamma1: 0.3,
            ..NoiseModel::ideal()
        };
        let c = Circuit::from_gates(1, vec![Gate::rx(0, std::f64::consts::PI)]).unwrap();
        let p = density_matrix_run(&c, &noise).unwrap();
        assert!((p[0] - 0.3).abs() < 1e-12);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noiseless_matches_statevector() {
        let c = Circuit::from_gates(
            3,
            vec![
                Gate::ry(0, 0.7),
                Gate::iswap(0, 2),
                Gate::rx(1, -1.2),
                Gate::iswap(1, 0),
                Gate::rz(2, 0.4),
                Gate::ry(2, 1.9),
            ],
        )
        .unwrap();
        let p = density_matrix_run(&c, &NoiseModel::ideal()).unwrap();
        let q = run(&c, &StateVector::zero(3)).unwrap().probabilities();
        for (a, b) in p.iter().zip(&q) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_survives_noise() {
        let c = Circuit::from_gates(
            2,
            vec![Gate::ry(0, 0.7), Gate::iswap(0, 1), Gate::rx(1, 0.3)],
        )
        .unwrap();
        let p = density_matrix_run(
            &c,
            &NoiseModel {
                gamma2: 0.4,
                lambda1: 0.2,
                readout_flip: 0.1,
                ..NoiseModel::default()
            },
        )
        .unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn register_limit() {
        let c = Circuit::new(DENSITY_LIMIT + 1);
        assert!(matches!(
            density_matrix_run(&c, &NoiseModel::ideal()),
            Err(Error::TooManyQubits { .. })
        ));
    }
}
