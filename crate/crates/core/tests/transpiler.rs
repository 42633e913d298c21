mod common;

use ald_vqe::ansatz::{chemically_aware_filter, uccsd_pool, AnsatzSpec};
use ald_vqe::circuits::{hartree_fock_state, run, Circuit, Gate, StateVector};
use ald_vqe::noisy::MeasurementCircuits;
use ald_vqe::operators::{qubit_hamiltonian, PauliLetter, PauliString};
use ald_vqe::transpiler::{
    circuit_distance, decompose, optimize, state_distance, transpile, transpile_from_zero, unitary,
    Metrics,
};
use ald_vqe::vqe::{minimize, VqeConfig};
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn measurement_circuits(name: &str) -> Vec<Circuit> {
    let ints = integrals(name);
    let h = qubit_hamiltonian(&ints).unwrap();
    let n = ints.n_spin_orbitals();
    let hf = hartree_fock_state(n, ints.n_electrons).unwrap();
    let pool = chemically_aware_filter(&uccsd_pool(ints.n_electrons, n).unwrap(), &hf, &h);
    let mut spec = AnsatzSpec::hartree_fock(n, ints.n_electrons)
        .unwrap()
        .with_excitations(pool);
    spec.theta = minimize(&h, &spec, &VqeConfig::default()).unwrap().theta;
    MeasurementCircuits::sources(&h, &spec).unwrap()
}

/// Overlap-based check on random inputs, independent of the dense unitary.
fn agree_on_random_inputs(a: &Circuit, b: &Circuit, seed: u64) -> bool {
    let n = a.n_qubits();
    let mut s = seed | 1;
    let mut next = || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let amps: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(next(), next()))
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let input = StateVector::from_amplitudes(amps.into_iter().map(|z| z / norm).collect()).unwrap();
    let sa = run(a, &input).unwrap();
    let sb = run(b, &input).unwrap();
    sa.inner(&sb).norm() > 1.0 - 1e-10
}

#[test]
fn native_cx_matches_cx() {
    let cx = Circuit::from_gates(2, vec![Gate::cx(0, 1)]).unwrap();
    let native = decompose(&cx).unwrap();
    assert!(native.is_native());
    assert!(circuit_distance(&native, &cx).unwrap() < 1e-10);
    let u = unitary(&native).unwrap();
    // |q1 q0> = |01> maps to |11>
    let phase = u[(0, 0)];
    assert!((u[(3, 1)] - phase).norm() < 1e-10);
    assert!((u[(1, 3)] - phase).norm() < 1e-10);
    assert!((u[(2, 2)] - phase).norm() < 1e-10);
}

#[test]
fn measurement_circuits_are_equivalent_after_lowering() {
    for name in ["r_22", "ts_22", "p1_22", "r_44"] {
        for (i, c) in measurement_circuits(name).iter().enumerate() {
            let t = transpile(c).unwrap();
            assert!(t.optimized.is_native());
            let d = t.distance.unwrap();
            assert!(d < 1e-10, "{name} group {i}: {d:e}");
            assert!(agree_on_random_inputs(&t.optimized, c, i as u64));
        }
    }
}

#[test]
fn lowering_shortens_the_small_measurement_circuits() {
    for s in STATES {
        for c in measurement_circuits(&format!("{s}_22")) {
            let m = transpile(&c).unwrap().metrics();
            assert!(m.optimized.depth < m.decomposed.depth, "{m:?}");
            assert!(m.decomposed.depth <= m.ir.depth, "{m:?}");
        }
    }
}

#[test]
fn from_zero_lowering_prepares_the_same_states() {
    for name in ["ts_22", "p1_44"] {
        for c in measurement_circuits(name) {
            let t = transpile_from_zero(&c).unwrap();
            assert!(t.optimized.is_native());
            let zero = StateVector::zero(c.n_qubits());
            let a = run(&t.optimized, &zero).unwrap();
            let b = run(&c, &zero).unwrap();
            assert!(a.inner(&b).norm() > 1.0 - 1e-10);
            if c.n_qubits() <= 4 {
                assert!(
                    Metrics::of(&t.optimized).depth
                        <= Metrics::of(&transpile(&c).unwrap().optimized).depth
                );
            }
        }
    }
}

fn letter(k: u8) -> PauliLetter {
    [
        PauliLetter::I,
        PauliLetter::X,
        PauliLetter::Y,
        PauliLetter::Z,
    ][k as usize % 4]
}

fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    let angle = -7.0f64..7.0;
    let pair = (0..n, 1..n.max(2)).prop_map(move |(a, d)| (a, (a + d) % n));
    prop_oneof![
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::rx(q, a)),
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::ry(q, a)),
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::rz(q, a)),
        q.clone().prop_map(Gate::h),
        q.prop_map(Gate::x),
        pair.clone().prop_map(|(a, b)| Gate::cx(a, b)),
        pair.prop_map(|(a, b)| Gate::iswap(a, b)),
        (prop::collection::vec(any::<u8>(), n), 0..n, angle).prop_map(|(ls, q, a)| {
            let mut p =
                PauliString::from_letters(ls.into_iter().enumerate().map(|(i, l)| (i, letter(l))));
            if p.is_identity() {
                p.set(q, PauliLetter::Z);
            }
            Gate::pauli_exp(p, a)
        }),
    ]
}

fn circuit_strategy() -> impl Strategy<Value = Circuit> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(gate_strategy(n), 0..=100)
            .prop_map(move |g| Circuit::from_gates(n, g).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_circuits_survive_lowering(c in circuit_strategy(), seed in any::<u64>()) {
        let t = transpile(&c).unwrap();
        prop_assert!(t.optimized.is_native());
        prop_assert!(circuit_distance(&t.optimized, &c).unwrap() < 1e-10);
        prop_assert!(agree_on_random_inputs(&t.optimized, &c, seed));
    }

    #[test]
    fn optimize_is_monotone_and_idempotent(c in circuit_strategy()) {
        let native = decompose(&c.expand_pauli_exps()).unwrap();
        let once = optimize(&native);
        prop_assert!(once.depth() <= native.depth());
        prop_assert!(once.gate_count() <= native.gate_count());
        prop_assert_eq!(optimize(&once), once.clone());
        prop_assert!(circuit_distance(&once, &native).unwrap() < 1e-10);
    }

    #[test]
    fn from_zero_lowering_keeps_the_prepared_state(c in circuit_strategy()) {
        let t = transpile_from_zero(&c).unwrap();
        prop_assert!(state_distance(&t.optimized, &c).unwrap() < 1e-10);
        let zero = StateVector::zero(c.n_qubits());
        let a = run(&t.optimized, &zero).unwrap();
        let b = run(&c, &zero).unwrap();
        prop_assert!(a.inner(&b).norm() > 1.0 - 1e-10);
    }
}
