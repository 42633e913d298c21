use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const KCAL_PER_HARTREE: f64 = 627.5094740631;

/// Statement carried by every report about the bundled integrals.
pub const FIXTURE_NOTE: &str = "Bundled integral files are synthetic active spaces built to reproduce the \
qualitative reaction profile (P1 between R and TS); absolute energies are not those of any real molecule.";

/// Energy of one stationary point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateEnergy {
    pub label: String,
    pub n_electrons: usize,
    pub n_orbitals: usize,
    pub n_qubits: usize,
    pub energy: f64,
    /// Spread over repeated experiments (stochastic modes only).
    pub std: Option<f64>,
    /// Standard error of the mean over experiments.
    pub sem: Option<f64>,
    /// Noiseless energy at the parameters used by a noisy run.
    pub noiseless: Option<f64>,
    /// Noisy mean before post-selection, when post-selection was applied.
    pub unmitigated: Option<f64>,
    pub unmitigated_std: Option<f64>,
    pub retained_fraction: Option<f64>,
    pub n_parameters: Option<usize>,
}

/// `E_X − E_R` for X ∈ {TS, P1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relative {
    pub label: String,
    pub hartree: f64,
    pub kcal_mol: f64,
    /// Combined spread of the two absolute energies.
    pub std: Option<f64>,
    pub sem: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReactionReport {
    pub note: String,
    pub method: String,
    pub states: Vec<StateEnergy>,
    pub relative: Vec<Relative>,
}

fn quad(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    Some((a?.powi(2) + b?.powi(2)).sqrt())
}

impl ReactionReport {
    /// Assembles the report; relative energies are differences of the stored absolutes.
    pub fn new(method: impl Into<String>, states: Vec<StateEnergy>) -> Self {
        let reference = states[0].clone();
        let relative = states[1..]
            .iter()
            .map(|s| {
                let hartree = s.energy - reference.energy;
                Relative {
                    label: s.label.clone(),
                    hartree,
                    kcal_mol: hartree * KCAL_PER_HARTREE,
                    std: quad(s.std, reference.std),
                    sem: quad(s.sem, reference.sem),
                }
            })
            .collect();
        ReactionReport {
            note: FIXTURE_NOTE.to_string(),
            method: method.into(),
            states,
            relative,
        }
    }

    pub fn state(&self, label: &str) -> Option<&StateEnergy> {
        self.states.iter().find(|s| s.label == label)
    }

    pub fn delta(&self, label: &str) -> Option<f64> {
        self.relative
            .iter()
            .find(|r| r.label == label)
            .map(|r| r.hartree)
    }

    /// Relative columns equal the recomputed differences exactly.
    pub fn is_consistent(&self) -> bool {
        let r = &self.states[0];
        self.relative.iter().all(|rel| {
            self.state(&rel.label)
                .is_some_and(|s| (s.energy - r.energy).to_bits() == rel.hartree.to_bits())
                && (rel.hartree * KCAL_PER_HARTREE).to_bits() == rel.kcal_mol.to_bits()
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One row per state, with its energy relative to R.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "method",
            "state",
            "electrons",
            "orbitals",
            "energy_ha",
            "std_ha",
            "sem_ha",
            "delta_ha",
            "delta_kcal_mol",
            "delta_std_ha",
        ])?;
        let opt = |v: Option<f64>| v.map_or_else(String::new, |x| format!("{x:.12}"));
        for s in &self.states {
            let rel = self.relative.iter().find(|r| r.label == s.label);
            w.write_record([
                self.method.clone(),
                s.label.clone(),
                s.n_electrons.to_string(),
                s.n_orbitals.to_string(),
                format!("{:.12}", s.energy),
                opt(s.std),
                opt(s.sem),
                format!("{:.12}", rel.map_or(0.0, |r| r.hartree)),
                format!("{:.9}", rel.map_or(0.0, |r| r.kcal_mol)),
                opt(rel.and_then(|r| r.std)),
            ])?;
        }
        csv_string(w)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}", self.note);
        let _ = writeln!(s, "method: {}", self.method);
        let _ = writeln!(
            s,
            "{:<5} {:>18} {:>12} {:>14} {:>14}",
            "state", "energy / Ha", "std / Ha", "dE / Ha", "dE / kcal/mol"
        );
        for st in &self.states {
            let rel = self.relative.iter().find(|r| r.label == st.label);
            let _ = writeln!(
                s,
                "{:<5} {:>18.10} {:>12} {:>14.8} {:>14.4}",
                st.label,
                st.energy,
                st.std.map_or("-".to_string(), |x| format!("{x:.6}")),
                rel.map_or(0.0, |r| r.hartree),
                rel.map_or(0.0, |r| r.kcal_mol)
            );
        }
        s
    }
}

pub(crate) fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| crate::Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(label: &str, energy: f64) -> StateEnergy {
        StateEnergy {
            label: label.into(),
            n_electrons: 2,
            n_orbitals: 2,
            n_qubits: 4,
            energy,
            std: None,
            sem: None,
            noiseless: None,
            unmitigated: None,
            unmitigated_std: None,
            retained_fraction: None,
            n_parameters: None,
        }
    }

    #[test]
    fn relative_energies_are_exact_differences() {
        let r = ReactionReport::new(
            "exact",
            vec![state("R", -1.1), state("TS", -1.03), state("P1", -1.07)],
        );
        assert!(r.is_consistent());
        assert_eq!(r.delta("TS").unwrap(), -1.03 - -1.1);
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 4);
        let back: ReactionReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
