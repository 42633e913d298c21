use ald_vqe::circuits::{pauli_exp_ladder, run, Circuit, Gate, StateVector};
use ald_vqe::operators::{PauliLetter, PauliString};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter_matrix(l: PauliLetter) -> DMatrix<Complex64> {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match l {
        PauliLetter::I => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        PauliLetter::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        PauliLetter::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        PauliLetter::Z => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Kronecker product with qubit 0 as the rightmost factor.
fn pauli_matrix(p: &PauliString, n: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for q in (0..n).rev() {
        m = m.kronecker(&letter_matrix(p.letter(q)));
    }
    m
}

fn random_state(n: usize, seed: u64) -> StateVector {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut next = || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let amps: Vec<Complex64> = (0..1 << n).map(|_| c(next(), next())).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn letter_strategy() -> impl Strategy<Value = PauliLetter> {
    prop_oneof![
        Just(PauliLetter::I),
        Just(PauliLetter::X),
        Just(PauliLetter::Y),
        Just(PauliLetter::Z)
    ]
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(letter_strategy(), n)
        .prop_map(|ls| PauliString::from_letters(ls.into_iter().enumerate()))
        .prop_filter("non-identity", |p| !p.is_identity())
}

fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    let pair = (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b);
    let angle = -7.0f64..7.0;
    prop_oneof![
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::rx(q, a)),
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::ry(q, a)),
        (q.clone(), angle.clone()).prop_map(|(q, a)| Gate::rz(q, a)),
        q.clone().prop_map(Gate::h),
        q.prop_map(Gate::x),
        pair.clone().prop_map(|(a, b)| Gate::cx(a, b)),
        pair.prop_map(|(a, b)| Gate::iswap(a, b)),
        (pauli_strategy(n), angle).prop_map(|(p, a)| Gate::pauli_exp(p, a)),
    ]
}

#[test]
fn pauli_exp_y0x1_matches_matrix_exponential() {
    let p = PauliString::parse("Y0 X1").unwrap();
    let theta = 0.731;
    let gen = pauli_matrix(&p, 2) * c(0.0, -theta / 2.0);
    let u = gen.exp();
    for b in 0..4 {
        let mut s = StateVector::basis(2, b);
        s.apply_pauli_exp(&p, theta);
        for r in 0..4 {
            assert!((s.amplitudes()[r] - u[(r, b)]).norm() < 1e-12);
        }
    }
}

#[test]
fn cx_truth_table() {
    // control 0, target 1: |01> -> |11>
    let s = run(
        &Circuit::from_gates(2, vec![Gate::cx(0, 1)]).unwrap(),
        &StateVector::basis(2, 0b01),
    )
    .unwrap();
    assert!((s.amplitudes()[0b11].re - 1.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ladder_matches_direct_pauli_exp(p in pauli_strategy(4), theta in -6.3f64..6.3, seed in any::<u64>()) {
        let init = random_state(4, seed);
        let mut direct = init.clone();
        direct.apply_pauli_exp(&p, theta);
        let ladder = run(&Circuit::from_gates(4, pauli_exp_ladder(&p, theta)).unwrap(), &init).unwrap();
        for (a, b) in direct.amplitudes().iter().zip(ladder.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn direct_pauli_exp_matches_exponential(p in pauli_strategy(3), theta in -6.3f64..6.3, seed in any::<u64>()) {
        let init = random_state(3, seed);
        let u = (pauli_matrix(&p, 3) * c(0.0, -theta / 2.0)).exp();
        let v = nalgebra::DVector::from_column_slice(init.amplitudes());
        let expected = u * v;
        let mut s = init.clone();
        s.apply_pauli_exp(&p, theta);
        for (a, b) in s.amplitudes().iter().zip(expected.iter()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn random_circuits_preserve_norm(gates in prop::collection::vec(gate_strategy(4), 1..40), seed in any::<u64>()) {
        let circuit = Circuit::from_gates(4, gates).unwrap();
        let a = random_state(4, seed);
        let b = random_state(4, seed ^ 0xABCD);
        let overlap_before = a.inner(&b);
        let (ra, rb) = (run(&circuit, &a).unwrap(), run(&circuit, &b).unwrap());
        prop_assert!((ra.norm_sqr() - 1.0).abs() < 1e-12);
        prop_assert!((ra.inner(&rb) - overlap_before).norm() < 1e-12);
    }

    #[test]
    fn text_format_round_trips(gates in prop::collection::vec(gate_strategy(3), 0..20)) {
        let circuit = Circuit::from_gates(3, gates).unwrap();
        let back = Circuit::from_text(&circuit.to_text()).unwrap();
        prop_assert_eq!(back.gates().len(), circuit.gates().len());
        let s = random_state(3, 5);
        let (x, y) = (run(&circuit, &s).unwrap(), run(&back, &s).unwrap());
        for (a, b) in x.amplitudes().iter().zip(y.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }
}
