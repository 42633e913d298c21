//! Noiseless variational optimization: parameter-shift gradients and BFGS.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::ansatz::AnsatzSpec;
use crate::circuits::{expectation, StateVector};
use crate::error::{Error, Result};
use crate::operators::QubitOperator;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VqeConfig {
    pub energy_tol: f64,
    pub grad_tol: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig {
            energy_tol: 1e-9,
            grad_tol: 1e-6,
            max_iterations: 500,
            seed: 0,
        }
    }
}

impl VqeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.energy_tol > 0.0 && self.grad_tol > 0.0) {
            return Err(Error::Config("VQE tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VqeResult {
    pub energy: f64,
    pub theta: Vec<f64>,
    /// Accepted iterates `(θ, E)`, starting with the initial point.
    pub history: Vec<(Vec<f64>, f64)>,
    pub iterations: usize,
    pub energy_evaluations: usize,
    pub converged: bool,
}

/// `dE/dθ` by the two-point shift rule applied to every `PauliExp` and
/// accumulated per parameter through the chain rule.
pub fn parameter_shift_gradient(
    h: &QubitOperator,
    spec: &AnsatzSpec,
    theta: &[f64],
) -> Result<Vec<f64>> {
    Ok(shift_gradient(h, spec, theta)?.0)
}

fn shift_gradient(
    h: &QubitOperator,
    spec: &AnsatzSpec,
    theta: &[f64],
) -> Result<(Vec<f64>, usize)> {
    let terms = spec.terms();
    let angles: Vec<f64> = terms.iter().map(|t| t.factor * theta[t.param]).collect();
    let mut grad = vec![0.0; theta.len()];
    let mut evals = 0;
    let mut prefix = spec.reference_state();
    for (j, t) in terms.iter().enumerate() {
        let shifted = |delta: f64| -> Result<f64> {
            let mut s: StateVector = prefix.clone();
            s.apply_pauli_exp(&t.pauli, angles[j] + delta);
            for (u, a) in terms[j + 1..].iter().zip(&angles[j + 1..]) {
                s.apply_pauli_exp(&u.pauli, *a);
            }
            expectation(&s, h)
        };
        let d_phi = 0.5 * (shifted(FRAC_PI_2)? - shifted(-FRAC_PI_2)?);
        evals += 2;
        grad[t.param] += t.factor * d_phi;
        prefix.apply_pauli_exp(&t.pauli, angles[j]);
    }
    Ok((grad, evals))
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

const ARMIJO_C1: f64 = 1e-4;
const MAX_STEP: f64 = 1.0;
const MIN_ALPHA: f64 = 1e-12;

/// BFGS with Armijo backtracking, started from `spec.theta`.
pub fn minimize(h: &QubitOperator, spec: &AnsatzSpec, config: &VqeConfig) -> Result<VqeResult> {
    config.validate()?;
    let n = spec.n_parameters();
    let mut theta = spec.theta.clone();
    let mut energy = spec.energy_at(h, &theta)?;
    let mut evals = 1;
    let (mut grad, e) = shift_gradient(h, spec, &theta)?;
    evals += e;
    let mut history = vec![(theta.clone(), energy)];

    if inf_norm(&grad) < config.grad_tol {
        return Ok(VqeResult {
            energy,
            theta,
            history,
            iterations: 0,
            energy_evaluations: evals,
            converged: true,
        });
    }

    // inverse-Hessian approximation, row-major
    let identity = |n: usize| {
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        m
    };
    let mut hinv = identity(n);
    let mut converged = false;
    let mut iterations = 0;

    while iterations < config.max_iterations {
        let mut dir: Vec<f64> = (0..n)
            .map(|i| -dot(&hinv[i * n..(i + 1) * n], &grad))
            .collect();
        let mut slope = dot(&grad, &dir);
        if slope >= 0.0 {
            hinv = identity(n);
            dir = grad.iter().map(|g| -g).collect();
            slope = dot(&grad, &dir);
        }
        let len = dot(&dir, &dir).sqrt();
        if len > MAX_STEP {
            let s = MAX_STEP / len;
            dir.iter_mut().for_each(|d| *d *= s);
            slope *= s;
        }

        let mut alpha = 1.0;
        let accepted = loop {
            let trial: Vec<f64> = theta.iter().zip(&dir).map(|(t, d)| t + alpha * d).collect();
            let e_trial = spec.energy_at(h, &trial)?;
            evals += 1;
            if e_trial <= energy + ARMIJO_C1 * alpha * slope {
                break Some((trial, e_trial));
            }
            alpha *= 0.5;
            if alpha < MIN_ALPHA {
                break None;
            }
        };
        let Some((new_theta, new_energy)) = accepted else {
            // no descent possible at working precision
            converged = inf_norm(&grad) < config.grad_tol;
            break;
        };
        iterations += 1;
        let (new_grad, e) = shift_gradient(h, spec, &new_theta)?;
        evals += e;

        let s: Vec<f64> = new_theta.iter().zip(&theta).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = new_grad.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-14 {
            let hy: Vec<f64> = (0..n).map(|i| dot(&hinv[i * n..(i + 1) * n], &y)).collect();
            let yhy = dot(&y, &hy);
            let rho = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    hinv[i * n + j] +=
                        rho * ((1.0 + rho * yhy) * s[i] * s[j] - hy[i] * s[j] - s[i] * hy[j]);
                }
            }
        }

        let delta = (new_energy - energy).abs();
        theta = new_theta;
        energy = new_energy;
        grad = new_grad;
        history.push((theta.clone(), energy));
        if delta < config.energy_tol && inf_norm(&grad) < config.grad_tol {
            converged = true;
            break;
        }
    }

    Ok(VqeResult {
        energy,
        theta,
        history,
        iterations,
        energy_evaluations: evals,
        converged,
    })
}
