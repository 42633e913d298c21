//! Partition-measurement symmetry verification: post-selection of shots on
//! the eigenvalues of Z-string symmetries measurable in a group's basis.

use serde::{Deserialize, Serialize};

use crate::circuits::{MeasurementGroup, ShotCounts};
use crate::error::{Error, Result};
use crate::operators::{PauliString, QubitOperator};

/// `Π_{q ∈ qubits} Z_q` with its expected eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetry {
    pub qubits: Vec<usize>,
    pub eigenvalue: i32,
}

impl Symmetry {
    pub fn mask(&self) -> u64 {
        self.qubits.iter().fold(0, |m, q| m | 1 << q)
    }

    /// Whether outcome `b` has the expected eigenvalue.
    pub fn holds(&self, b: u64) -> bool {
        let sign = if (b & self.mask()).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        };
        sign == self.eigenvalue
    }
}

/// Symmetries used to discard shots, each verified to commute with the Hamiltonian.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MitigationSpec {
    symmetries: Vec<Symmetry>,
}

impl MitigationSpec {
    pub fn new(symmetries: Vec<Symmetry>, h: &QubitOperator) -> Result<Self> {
        for s in &symmetries {
            if s.eigenvalue != 1 && s.eigenvalue != -1 {
                return Err(Error::SymmetryBreaking(format!(
                    "eigenvalue {} is not ±1",
                    s.eigenvalue
                )));
            }
            if s.qubits.iter().any(|&q| q >= h.n_qubits()) {
                return Err(Error::SymmetryBreaking(format!(
                    "{:?} leaves the register",
                    s.qubits
                )));
            }
            let z = PauliString::z_string(s.mask());
            if let Some((p, _)) = h.terms().find(|(p, _)| !p.commutes_with(&z)) {
                return Err(Error::SymmetryBreaking(format!(
                    "{z} anticommutes with Hamiltonian term {p}"
                )));
            }
        }
        Ok(MitigationSpec { symmetries })
    }

    /// Alpha parity, beta parity and total particle parity with eigenvalues read off `reference`.
    pub fn spin_parities(h: &QubitOperator, reference: u64) -> Result<Self> {
        let n = h.n_qubits();
        let alpha: Vec<usize> = (0..n).step_by(2).collect();
        let beta: Vec<usize> = (1..n).step_by(2).collect();
        let all: Vec<usize> = (0..n).collect();
        let symmetries = [alpha, beta, all]
            .into_iter()
            .map(|qubits| {
                let mut s = Symmetry {
                    qubits,
                    eigenvalue: 1,
                };
                s.eigenvalue = if s.holds(reference) { 1 } else { -1 };
                s
            })
            .collect();
        Self::new(symmetries, h)
    }

    pub fn symmetries(&self) -> &[Symmetry] {
        &self.symmetries
    }

    /// Every symmetry is diagonal in the group's measured basis.
    pub fn compatible_with(&self, group: &MeasurementGroup) -> bool {
        self.symmetries
            .iter()
            .all(|s| group.basis.x & s.mask() == 0)
    }

    pub fn accepts(&self, b: u64) -> bool {
        self.symmetries.iter().all(|s| s.holds(b))
    }
}

/// Post-selected histogram of one group.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtered {
    pub counts: ShotCounts,
    pub retained: f64,
    /// False when the group basis cannot resolve the symmetries and the counts passed through.
    pub applied: bool,
}

/// Discards shots that violate `spec`; incompatible groups pass through unchanged.
pub fn pmsv_filter(
    counts: &ShotCounts,
    spec: &MitigationSpec,
    group: &MeasurementGroup,
) -> Result<Filtered> {
    if !spec.compatible_with(group) {
        return Ok(Filtered {
            counts: counts.clone(),
            retained: 1.0,
            applied: false,
        });
    }
    let kept = ShotCounts::from_pairs(
        counts.n_qubits(),
        counts.iter().filter(|(b, _)| spec.accepts(*b)),
    );
    if kept.total() == 0 {
        return Err(Error::TotalSymmetryViolation);
    }
    Ok(Filtered {
        retained: kept.total() as f64 / counts.total() as f64,
        counts: kept,
        applied: true,
    })
}

/// Distribution analogue of [`pmsv_filter`]: renormalized accepted mass and the retained weight.
pub fn filter_distribution(
    probs: &[f64],
    spec: &MitigationSpec,
    group: &MeasurementGroup,
) -> Result<(Vec<f64>, f64)> {
    if !spec.compatible_with(group) {
        return Ok((probs.to_vec(), 1.0));
    }
    let kept: Vec<f64> = probs
        .iter()
        .enumerate()
        .map(|(b, &p)| if spec.accepts(b as u64) { p } else { 0.0 })
        .collect();
    let mass: f64 = kept.iter().sum();
    if mass <= 0.0 {
        return Err(Error::TotalSymmetryViolation);
    }
    Ok((kept.into_iter().map(|p| p / mass).collect(), mass))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_group(n: usize) -> MeasurementGroup {
        MeasurementGroup {
            basis: PauliString::z_string((1 << n) - 1),
            terms: vec![],
        }
    }

    fn diag_h() -> QubitOperator {
        &QubitOperator::from_str_real(4, "Z0", 0.3) + &QubitOperator::from_str_real(4, "Z1 Z3", 0.2)
    }

    #[test]
    fn particle_parity_filter() {
        let spec = MitigationSpec::new(
            vec![Symmetry {
                qubits: vec![0, 1, 2, 3],
                eigenvalue: 1,
            }],
            &diag_h(),
        )
        .unwrap();
        let counts = ShotCounts::from_bitstrings(4, [("0011", 900), ("0001", 100)]).unwrap();
        let f = pmsv_filter(&counts, &spec, &z_group(4)).unwrap();
        assert_eq!(
            f.counts,
            ShotCounts::from_bitstrings(4, [("0011", 900)]).unwrap()
        );
        assert!((f.retained - 0.9).abs() < 1e-15 && f.applied);
    }

    #[test]
    fn total_violation_and_passthrough() {
        let spec = MitigationSpec::new(
            vec![Symmetry {
                qubits: vec![0],
                eigenvalue: -1,
            }],
            &diag_h(),
        )
        .unwrap();
        let counts = ShotCounts::from_bitstrings(4, [("0000", 10)]).unwrap();
        assert!(matches!(
            pmsv_filter(&counts, &spec, &z_group(4)),
            Err(Error::TotalSymmetryViolation)
        ));
        let x_group = MeasurementGroup {
            basis: PauliString::parse("X0").unwrap(),
            terms: vec![],
        };
        let f = pmsv_filter(&counts, &spec, &x_group).unwrap();
        assert!(!f.applied && f.counts == counts);
    }

    #[test]
    fn rejects_symmetry_breaking_hamiltonian() {
        let h = QubitOperator::from_str_real(2, "X0", 1.0);
        assert!(MitigationSpec::new(
            vec![Symmetry {
                qubits: vec![0, 1],
                eigenvalue: 1
            }],
            &h
        )
        .is_err());
    }
}
