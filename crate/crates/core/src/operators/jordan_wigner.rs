use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::fermion::{FermionOperator, Ladder};
use crate::operators::pauli::{PauliLetter, PauliString, QubitOperator};

/// `a†_j -> ½(X_j − iY_j) Z_{j−1}…Z_0`, `a_j -> ½(X_j + iY_j) Z_{j−1}…Z_0`.
fn ladder_to_qubits(l: Ladder, n_qubits: usize) -> QubitOperator {
    let below = (1u64 << l.mode) - 1;
    let mut x = PauliString::z_string(below);
    x.set(l.mode, PauliLetter::X);
    let mut y = PauliString::z_string(below);
    y.set(l.mode, PauliLetter::Y);
    let ysign = if l.create { -0.5 } else { 0.5 };
    let mut op = QubitOperator::zero(n_qubits);
    op.add_term(x, Complex64::new(0.5, 0.0));
    op.add_term(y, Complex64::new(0.0, ysign));
    op
}

/// Jordan–Wigner image of a fermionic operator on `n_modes` qubits.
pub fn jordan_wigner(op: &FermionOperator, n_modes: usize) -> Result<QubitOperator> {
    if let Some(m) = op.max_mode() {
        if m >= n_modes {
            return Err(Error::ModeOutOfRange { index: m, n_modes });
        }
    }
    let cache: Vec<[QubitOperator; 2]> = (0..n_modes)
        .map(|j| {
            [
                ladder_to_qubits(Ladder::annihilate(j), n_modes),
                ladder_to_qubits(Ladder::create(j), n_modes),
            ]
        })
        .collect();
    let mut out = QubitOperator::zero(n_modes);
    for (ladders, coeff) in op.terms() {
        let mut prod = QubitOperator::identity(n_modes, 1.0);
        for l in ladders {
            prod = prod.try_mul(&cache[l.mode][l.create as usize])?;
            if prod.is_zero() {
                break;
            }
        }
        for (p, c) in prod.terms() {
            out.add_term(*p, c * coeff);
        }
    }
    out.canonicalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::exact::dense_matrix;

    #[test]
    fn number_operator_on_mode_zero() {
        let n0 = jordan_wigner(&FermionOperator::hop(0, 0, 1.0), 1).unwrap();
        let mut expected = QubitOperator::identity(1, 0.5);
        expected = &expected + &QubitOperator::from_str_real(1, "Z0", -0.5);
        assert_eq!(n0, expected);
    }

    #[test]
    fn hopping_term() {
        let mut f = FermionOperator::hop(1, 0, 1.0);
        f.add(&FermionOperator::hop(0, 1, 1.0));
        let q = jordan_wigner(&f, 2).unwrap();
        let expected = &QubitOperator::from_str_real(2, "X0 X1", 0.5)
            + &QubitOperator::from_str_real(2, "Y0 Y1", 0.5);
        assert_eq!(q.len(), 2);
        assert!((&q - &expected).max_abs() < 1e-15);
        // matrix route agrees with the ladder-matrix route
        let a = dense_matrix(&q).unwrap();
        let b = f.to_dense(2).unwrap();
        assert!((a - b).iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn mode_out_of_range() {
        let f = FermionOperator::hop(3, 0, 1.0);
        assert!(jordan_wigner(&f, 3).is_err());
    }
}
