//! Shot sampling and qubit-wise-commuting measurement groups.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::circuit::Circuit;
use crate::circuits::gate::Gate;
use crate::circuits::statevector::StateVector;
use crate::error::{Error, Result};
use crate::operators::{PauliLetter, PauliString, QubitOperator};
use crate::rng;

/// Histogram of measured bitstrings. Keys are basis indices (qubit 0 = LSB).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShotCounts {
    n_qubits: usize,
    counts: BTreeMap<u64, u64>,
}

impl ShotCounts {
    pub fn new(n_qubits: usize) -> Self {
        ShotCounts {
            n_qubits,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(n_qubits: usize, pairs: I) -> Self {
        let mut c = Self::new(n_qubits);
        for (b, k) in pairs {
            c.add(b, k);
        }
        c
    }

    /// Parses keys written with qubit 0 rightmost, e.g. `"0011"`.
    pub fn from_bitstrings<'a, I: IntoIterator<Item = (&'a str, u64)>>(
        n_qubits: usize,
        pairs: I,
    ) -> Result<Self> {
        let mut c = Self::new(n_qubits);
        for (s, k) in pairs {
            if s.len() != n_qubits {
                return Err(Error::Config(format!(
                    "bitstring `{s}` is not {n_qubits} bits"
                )));
            }
            let b = u64::from_str_radix(s, 2)
                .map_err(|_| Error::Config(format!("bad bitstring `{s}`")))?;
            c.add(b, k);
        }
        Ok(c)
    }

    pub fn add(&mut self, bitstring: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(bitstring).or_default() += count;
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, bitstring: u64) -> u64 {
        self.counts.get(&bitstring).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(b, k)| (*b, *k))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn bitstring(&self, b: u64) -> String {
        format!("{:0width$b}", b, width = self.n_qubits)
    }

    pub fn to_string_map(&self) -> BTreeMap<String, u64> {
        self.counts
            .iter()
            .map(|(b, k)| (self.bitstring(*b), *k))
            .collect()
    }

    /// Empirical probabilities over all `2^n` outcomes.
    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.total() as f64;
        let mut f = vec![0.0; 1 << self.n_qubits];
        for (b, k) in &self.counts {
            f[*b as usize] = *k as f64 / total;
        }
        f
    }

    pub fn merge(&mut self, other: &ShotCounts) {
        for (b, k) in other.iter() {
            self.add(b, k);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ShotCountsJson {
    n_qubits: usize,
    shots: u64,
    counts: BTreeMap<String, u64>,
}

impl Serialize for ShotCounts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ShotCountsJson {
            n_qubits: self.n_qubits,
            shots: self.total(),
            counts: self.to_string_map(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ShotCounts {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ShotCountsJson::deserialize(d)?;
        let c =
            ShotCounts::from_bitstrings(j.n_qubits, j.counts.iter().map(|(k, v)| (k.as_str(), *v)))
                .map_err(serde::de::Error::custom)?;
        if c.total() != j.shots {
            return Err(serde::de::Error::custom("shot total does not match counts"));
        }
        Ok(c)
    }
}

/// Uniform draw that decides the measured outcome of shot `shot`.
#[inline]
pub fn measurement_uniform(seed: u64, shot: u64) -> f64 {
    rng::stream(seed, shot).gen::<f64>()
}

/// Index of the outcome selected by `u` from a cumulative distribution.
#[inline]
pub fn invert_cdf(cumulative: &[f64], u: f64) -> usize {
    let total = *cumulative.last().expect("non-empty distribution");
    let target = u * total;
    cumulative
        .partition_point(|&c| c <= target)
        .min(cumulative.len() - 1)
}

pub fn cumulative(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    probs
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

/// Draws `shots` outcomes from `probs`; shot `i` uses stream `i` of `seed`.
pub fn sample_distribution(
    probs: &[f64],
    n_qubits: usize,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let cdf = cumulative(probs);
    let streams = rng::Streams::new(seed);
    let mut hist = vec![0u64; probs.len()];
    for shot in 0..shots {
        hist[invert_cdf(&cdf, streams.get(shot).gen::<f64>())] += 1;
    }
    Ok(ShotCounts::from_pairs(
        n_qubits,
        hist.into_iter().enumerate().map(|(b, k)| (b as u64, k)),
    ))
}

/// Multinomial sample of computational-basis outcomes from `|amp|²`.
pub fn sample_counts(state: &StateVector, shots: u64, seed: u64) -> Result<ShotCounts> {
    sample_distribution(&state.probabilities(), state.n_qubits(), shots, seed)
}

/// Terms measured together after one basis change.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementGroup {
    /// Measured letter per qubit; identity where the group leaves a qubit alone.
    pub basis: PauliString,
    /// Non-identity terms with real coefficients.
    pub terms: Vec<(PauliString, f64)>,
}

impl MeasurementGroup {
    /// Rotations mapping each measured letter to Z: H for X, Rx(π/2) for Y.
    pub fn basis_change(&self, n_qubits: usize) -> Circuit {
        let mut c = Circuit::new(n_qubits);
        for q in self.basis.qubits() {
            match self.basis.letter(q) {
                PauliLetter::X => c.push(Gate::h(q)).expect("qubit in range"),
                PauliLetter::Y => c.push(Gate::rx(q, FRAC_PI_2)).expect("qubit in range"),
                _ => {}
            }
        }
        c
    }

    /// Qubits not measured in Z, i.e. rotated before readout.
    pub fn rotated_mask(&self) -> u64 {
        self.basis.x
    }

    /// Per-shot value `Σ c_j (−1)^{parity of b on supp P_j}` in the rotated frame.
    pub fn shot_value(&self, b: u64) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c * PauliString::parity_sign(p.support(), b))
            .sum()
    }

    /// Exact group contribution from an outcome distribution in the rotated frame.
    pub fn value_from_distribution(&self, probs: &[f64]) -> f64 {
        probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != 0.0)
            .map(|(b, p)| p * self.shot_value(b as u64))
            .sum()
    }
}

/// Greedy qubit-wise-commuting partition, largest |coefficient| first.
pub fn measurement_groups(op: &QubitOperator) -> Result<Vec<MeasurementGroup>> {
    if !op.is_hermitian() {
        return Err(Error::NotHermitian(op.max_imag()));
    }
    let mut terms: Vec<(PauliString, f64)> = op
        .terms()
        .filter(|(p, _)| !p.is_identity())
        .map(|(p, c)| (*p, c.re))
        .collect();
    // stable sort keeps canonical order among equal magnitudes
    terms.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
    let mut groups: Vec<MeasurementGroup> = Vec::new();
    for (p, c) in terms {
        match groups.iter_mut().find(|g| g.basis.qubitwise_commutes(&p)) {
            Some(g) => {
                g.basis = PauliString::new(g.basis.x | p.x, g.basis.z | p.z);
                g.terms.push((p, c));
            }
            None => groups.push(MeasurementGroup {
                basis: p,
                terms: vec![(p, c)],
            }),
        }
    }
    Ok(groups)
}
