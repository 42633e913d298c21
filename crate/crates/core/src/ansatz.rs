//! UCCSD excitation pools, symmetry filtering, ADAPT selection and circuit synthesis.

use std::fmt::{self, Write as _};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuits::{expectation, Circuit, Gate, StateVector};
use crate::error::{Error, Result};
use crate::operators::{jordan_wigner, FermionOperator, Ladder, PauliString, QubitOperator};
use crate::vqe::{minimize, VqeConfig};

/// Magnitude below which a reference-state gradient counts as symmetry-forbidden.
pub const FILTER_TOL: f64 = 1e-12;
/// Default ADAPT gradient threshold in Hartree.
pub const DEFAULT_GRAD_THRESHOLD: f64 = 1e-3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExcitationKind {
    Single,
    Double,
    PairedDouble,
}

impl fmt::Display for ExcitationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExcitationKind::Single => "single",
            ExcitationKind::Double => "double",
            ExcitationKind::PairedDouble => "paired-double",
        })
    }
}

/// One spin-orbital excitation `occupied → virtual`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinExcitation {
    pub occupied: Vec<usize>,
    pub virtuals: Vec<usize>,
}

impl SpinExcitation {
    /// `a†_a a†_b … a_j a_i`
    pub fn operator(&self) -> FermionOperator {
        let mut ops: Vec<Ladder> = self.virtuals.iter().map(|&v| Ladder::create(v)).collect();
        ops.extend(self.occupied.iter().rev().map(|&o| Ladder::annihilate(o)));
        FermionOperator::from_term(ops, Complex64::new(1.0, 0.0))
    }
}

impl fmt::Display for SpinExcitation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}->{}", join(&self.occupied), join(&self.virtuals))
    }
}

/// A pool element: one or more spin excitations sharing a parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Excitation {
    pub kind: ExcitationKind,
    pub components: Vec<SpinExcitation>,
    /// `JW(T − T†)`; every coefficient purely imaginary.
    pub generator: QubitOperator,
}

impl Excitation {
    pub fn new(
        kind: ExcitationKind,
        components: Vec<SpinExcitation>,
        n_spin_orbitals: usize,
    ) -> Result<Self> {
        let mut t = FermionOperator::zero();
        for c in &components {
            t.add(&c.operator());
        }
        let mut anti = t.clone();
        anti.add(&t.adjoint().scaled(Complex64::new(-1.0, 0.0)));
        let mut generator = jordan_wigner(&anti, n_spin_orbitals)?;
        generator.canonicalize();
        Ok(Excitation {
            kind,
            components,
            generator,
        })
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        format!("{} {}", self.kind, parts.join(" + "))
    }

    /// Pauli terms `(P_j, b_j)` with `G = Σ i b_j P_j`, in canonical order.
    pub fn pauli_terms(&self) -> Vec<(PauliString, f64)> {
        self.generator.terms().map(|(p, c)| (*p, c.im)).collect()
    }
}

/// Closed-shell UCCSD pool on interleaved spin-orbitals with spin-adapted parameters.
pub fn uccsd_pool(n_electrons: usize, n_spin_orbitals: usize) -> Result<Vec<Excitation>> {
    if n_electrons % 2 == 1 {
        return Err(Error::OpenShell(n_electrons));
    }
    if n_spin_orbitals % 2 == 1 {
        return Err(Error::Config(format!(
            "odd spin-orbital count {n_spin_orbitals}"
        )));
    }
    if n_electrons > n_spin_orbitals {
        return Err(Error::Occupation {
            electrons: n_electrons,
            qubits: n_spin_orbitals,
        });
    }
    let n_occ = n_electrons / 2;
    let n_orb = n_spin_orbitals / 2;
    let occ: Vec<usize> = (0..n_occ).collect();
    let virt: Vec<usize> = (n_occ..n_orb).collect();
    let ex = |o: &[usize], v: &[usize]| SpinExcitation {
        occupied: o.to_vec(),
        virtuals: v.to_vec(),
    };

    let mut singles = Vec::new();
    for &i in &occ {
        for &a in &virt {
            singles.push((
                ExcitationKind::Single,
                vec![ex(&[2 * i], &[2 * a]), ex(&[2 * i + 1], &[2 * a + 1])],
            ));
        }
    }

    let mut doubles = Vec::new();
    for (x, &i) in occ.iter().enumerate() {
        for &j in &occ[x + 1..] {
            for (y, &a) in virt.iter().enumerate() {
                for &b in &virt[y + 1..] {
                    doubles.push((
                        ExcitationKind::Double,
                        vec![
                            ex(&[2 * i, 2 * j], &[2 * a, 2 * b]),
                            ex(&[2 * i + 1, 2 * j + 1], &[2 * a + 1, 2 * b + 1]),
                        ],
                    ));
                }
            }
        }
    }
    for &i in &occ {
        for &j in &occ {
            for &a in &virt {
                for &b in &virt {
                    let this = ex(&[2 * i, 2 * j + 1], &[2 * a, 2 * b + 1]);
                    if i == j && a == b {
                        doubles.push((ExcitationKind::PairedDouble, vec![this]));
                        continue;
                    }
                    let mirror = ex(&[2 * j, 2 * i + 1], &[2 * b, 2 * a + 1]);
                    if this < mirror {
                        doubles.push((ExcitationKind::Double, vec![this, mirror]));
                    }
                }
            }
        }
    }
    doubles.sort_by(|a, b| a.1[0].cmp(&b.1[0]));

    singles
        .into_iter()
        .chain(doubles)
        .map(|(kind, comps)| Excitation::new(kind, comps, n_spin_orbitals))
        .collect()
}

/// Number of spin-orbital excitations before spin adaptation.
pub fn raw_excitation_count(pool: &[Excitation]) -> usize {
    pool.iter().map(|e| e.components.len()).sum()
}

/// `<ψ|[H, G]|ψ>` evaluated as `2 Re <ψ|H G|ψ>`.
pub fn commutator_gradient(
    h: &QubitOperator,
    generator: &QubitOperator,
    state: &StateVector,
) -> f64 {
    let hg = state.apply_operator(generator).apply_operator(h);
    2.0 * state.inner(&hg).re
}

/// Drops excitations whose gradient at `reference` vanishes by symmetry.
pub fn chemically_aware_filter(
    pool: &[Excitation],
    reference: &StateVector,
    h: &QubitOperator,
) -> Vec<Excitation> {
    pool.iter()
        .filter(|e| commutator_gradient(h, &e.generator, reference).abs() >= FILTER_TOL)
        .cloned()
        .collect()
}

/// One parametrized `PauliExp` of the Trotterized ansatz.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct AnsatzTerm {
    pub param: usize,
    pub pauli: PauliString,
    /// Gate angle per unit parameter: `φ = factor · θ`.
    pub factor: f64,
}

/// Ordered excitations and their parameters on top of a basis-state reference.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    /// Occupation bitmask of the reference determinant.
    pub reference: u64,
    pub excitations: Vec<Excitation>,
    pub theta: Vec<f64>,
}

impl AnsatzSpec {
    pub fn new(n_qubits: usize, reference: u64) -> Self {
        AnsatzSpec {
            n_qubits,
            reference,
            excitations: Vec::new(),
            theta: Vec::new(),
        }
    }

    pub fn hartree_fock(n_qubits: usize, n_electrons: usize) -> Result<Self> {
        if n_electrons > n_qubits {
            return Err(Error::Occupation {
                electrons: n_electrons,
                qubits: n_qubits,
            });
        }
        Ok(Self::new(n_qubits, (1u64 << n_electrons) - 1))
    }

    /// Reference bitmask of a computational basis state.
    pub fn from_reference_state(state: &StateVector) -> Result<Self> {
        let idx = state
            .amplitudes()
            .iter()
            .position(|a| (a.norm_sqr() - 1.0).abs() < 1e-12)
            .ok_or_else(|| Error::Config("reference must be a computational basis state".into()))?;
        Ok(Self::new(state.n_qubits(), idx as u64))
    }

    pub fn with_excitations(mut self, excitations: Vec<Excitation>) -> Self {
        self.theta = vec![0.0; excitations.len()];
        self.excitations = excitations;
        self
    }

    pub fn push(&mut self, excitation: Excitation, theta: f64) {
        self.excitations.push(excitation);
        self.theta.push(theta);
    }

    pub fn n_parameters(&self) -> usize {
        self.theta.len()
    }

    pub fn n_electrons(&self) -> usize {
        self.reference.count_ones() as usize
    }

    pub fn terms(&self) -> Vec<AnsatzTerm> {
        let mut out = Vec::new();
        for (k, e) in self.excitations.iter().enumerate() {
            for (pauli, b) in e.pauli_terms() {
                // exp(θ · i b P) = exp(−i (−2bθ)/2 · P)
                out.push(AnsatzTerm {
                    param: k,
                    pauli,
                    factor: -2.0 * b,
                });
            }
        }
        out
    }

    pub fn reference_state(&self) -> StateVector {
        StateVector::basis(self.n_qubits, self.reference as usize)
    }

    /// Ansatz state at parameters `theta`.
    pub fn state_at(&self, theta: &[f64]) -> StateVector {
        let mut s = self.reference_state();
        for t in self.terms() {
            s.apply_pauli_exp(&t.pauli, t.factor * theta[t.param]);
        }
        s
    }

    pub fn state(&self) -> StateVector {
        self.state_at(&self.theta)
    }

    pub fn energy_at(&self, h: &QubitOperator, theta: &[f64]) -> Result<f64> {
        expectation(&self.state_at(theta), h)
    }

    pub fn report(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "ansatz qubits {} reference {:0w$b} parameters {}",
            self.n_qubits,
            self.reference,
            self.n_parameters(),
            w = self.n_qubits
        );
        for (k, (e, t)) in self.excitations.iter().zip(&self.theta).enumerate() {
            let _ = writeln!(s, "{k:>3} {:<40} theta {:+.12e}", e.label(), t);
        }
        s
    }
}

/// HF preparation followed by one `PauliExp` per generator term.
pub fn build_circuit(spec: &AnsatzSpec) -> Circuit {
    let mut gates: Vec<Gate> = (0..spec.n_qubits)
        .filter(|q| spec.reference >> q & 1 == 1)
        .map(Gate::x)
        .collect();
    gates.extend(
        spec.terms()
            .into_iter()
            .map(|t| Gate::pauli_exp(t.pauli, t.factor * spec.theta[t.param])),
    );
    Circuit::from_gates(spec.n_qubits, gates).expect("ansatz gates act on the register")
}

#[derive(Clone, Debug)]
pub struct AdaptConfig {
    pub grad_threshold: f64,
    pub max_rounds: usize,
    pub vqe: VqeConfig,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        AdaptConfig {
            grad_threshold: DEFAULT_GRAD_THRESHOLD,
            max_rounds: 50,
            vqe: VqeConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdaptRound {
    pub round: usize,
    pub pool_index: usize,
    pub label: String,
    pub max_gradient: f64,
    pub energy: f64,
    pub optimizer_converged: bool,
}

#[derive(Clone, Debug)]
pub struct AdaptResult {
    pub spec: AnsatzSpec,
    pub reference_energy: f64,
    pub energy: f64,
    pub rounds: Vec<AdaptRound>,
    /// Largest pool gradient at the final state.
    pub final_max_gradient: f64,
    /// Gradient criterion met before `max_rounds`.
    pub converged: bool,
    /// Every re-optimization met its own tolerances.
    pub optimizer_converged: bool,
}

impl AdaptResult {
    pub fn energy_history(&self) -> Vec<f64> {
        std::iter::once(self.reference_energy)
            .chain(self.rounds.iter().map(|r| r.energy))
            .collect()
    }

    pub fn report(&self) -> String {
        let mut s = self.spec.report();
        let _ = writeln!(
            s,
            "round   0 energy {:+.12} (reference)",
            self.reference_energy
        );
        for r in &self.rounds {
            let _ = writeln!(
                s,
                "round {:>3} energy {:+.12} grad {:.6e} pool {:>3} {}",
                r.round, r.energy, r.max_gradient, r.pool_index, r.label
            );
        }
        let _ = writeln!(
            s,
            "converged {} optimizer_converged {} final_max_gradient {:.6e}",
            self.converged, self.optimizer_converged, self.final_max_gradient
        );
        s
    }
}

fn argmax_abs(values: &[f64]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.iter().enumerate() {
        if best.is_none_or(|(_, b)| v.abs() > b) {
            best = Some((i, v.abs()));
        }
    }
    best
}

/// Gradient-driven ansatz growth with full re-optimization after every addition.
pub fn adapt_vqe(
    h: &QubitOperator,
    pool: &[Excitation],
    reference: &StateVector,
    config: &AdaptConfig,
) -> Result<AdaptResult> {
    if !(config.grad_threshold > 0.0) {
        return Err(Error::Config(
            "ADAPT gradient threshold must be positive".into(),
        ));
    }
    let mut spec = AnsatzSpec::from_reference_state(reference)?;
    let commutators = pool
        .iter()
        .map(|e| h.commutator(&e.generator))
        .collect::<Result<Vec<_>>>()?;
    let reference_energy = expectation(reference, h)?;
    let mut energy = reference_energy;
    let mut state = reference.clone();
    let mut rounds = Vec::new();
    let mut optimizer_converged = true;

    let gradients = |s: &StateVector| -> Result<Vec<f64>> {
        commutators.iter().map(|c| expectation(s, c)).collect()
    };

    let mut grads = gradients(&state)?;
    let mut converged = false;
    loop {
        let (k, gmax) = argmax_abs(&grads).unwrap_or((0, 0.0));
        if gmax < config.grad_threshold {
            converged = true;
            break;
        }
        if rounds.len() >= config.max_rounds {
            break;
        }
        spec.push(pool[k].clone(), 0.0);
        let res = minimize(h, &spec, &config.vqe)?;
        spec.theta = res.theta;
        energy = res.energy;
        optimizer_converged &= res.converged;
        state = spec.state();
        rounds.push(AdaptRound {
            round: rounds.len() + 1,
            pool_index: k,
            label: pool[k].label(),
            max_gradient: gmax,
            energy,
            optimizer_converged: res.converged,
        });
        grads = gradients(&state)?;
    }
    let final_max_gradient = argmax_abs(&grads).map_or(0.0, |(_, g)| g);
    Ok(AdaptResult {
        spec,
        reference_energy,
        energy,
        rounds,
        final_max_gradient,
        converged,
        optimizer_converged,
    })
}
