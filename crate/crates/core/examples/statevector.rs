//! Bell-state preparation, Pauli rotations and seeded sampling.

use ald_vqe::circuits::{run, sample_counts, Circuit, Gate, StateVector};
use ald_vqe::operators::PauliString;

fn main() -> ald_vqe::Result<()> {
    let mut c = Circuit::new(2);
    c.push(Gate::h(0))?;
    c.push(Gate::cx(0, 1))?;
    c.push(Gate::pauli_exp(
        PauliString::parse("Z0 Z1").expect("valid string"),
        0.4,
    ))?;
    print!("{}", c.to_text());

    let state = run(&c, &StateVector::zero(2))?;
    for (b, p) in state.probabilities().iter().enumerate() {
        println!("|{b:02b}> {p:.4}");
    }
    let counts = sample_counts(&state, 10_000, 7)?;
    for (bits, n) in counts.to_string_map() {
        println!("{bits}: {n}");
    }
    Ok(())
}
