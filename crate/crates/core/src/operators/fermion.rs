//! Second-quantized operators over spin-orbitals.
//!
//! Spin-orbitals are interleaved: mode `2p` is spatial orbital `p` with spin
//! alpha, mode `2p + 1` the same orbital with spin beta.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::fcidump::MolecularIntegrals;
use crate::operators::pauli::PRUNE_TOL;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ladder {
    pub mode: usize,
    pub create: bool,
}

impl Ladder {
    pub fn create(mode: usize) -> Self {
        Ladder { mode, create: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        Ladder {
            mode,
            create: false,
        }
    }

    pub fn dagger(self) -> Self {
        Ladder {
            mode: self.mode,
            create: !self.create,
        }
    }
}

#[inline]
pub fn alpha(p: usize) -> usize {
    2 * p
}

#[inline]
pub fn beta(p: usize) -> usize {
    2 * p + 1
}

/// Sum of coefficient-weighted ladder products, applied right to left.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FermionOperator {
    terms: BTreeMap<Vec<Ladder>, Complex64>,
}

impl FermionOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut op = Self::zero();
        op.add_term(Vec::new(), Complex64::new(c, 0.0));
        op
    }

    pub fn from_term(ops: Vec<Ladder>, coeff: Complex64) -> Self {
        let mut op = Self::zero();
        op.add_term(ops, coeff);
        op
    }

    /// `a†_p a_q`
    pub fn hop(p: usize, q: usize, coeff: f64) -> Self {
        Self::from_term(
            vec![Ladder::create(p), Ladder::annihilate(q)],
            Complex64::new(coeff, 0.0),
        )
    }

    pub fn add_term(&mut self, ops: Vec<Ladder>, coeff: Complex64) {
        let entry = self.terms.entry(ops).or_default();
        *entry += coeff;
        if entry.norm() < PRUNE_TOL {
            // keeps the map canonical as terms cancel
            self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
        }
    }

    pub fn add(&mut self, other: &FermionOperator) {
        for (ops, c) in &other.terms {
            self.add_term(ops.clone(), *c);
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = Self::zero();
        for (ops, v) in &self.terms {
            out.add_term(ops.clone(), v * c);
        }
        out
    }

    /// Hermitian conjugate: reverse each product and flip every ladder.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (ops, c) in &self.terms {
            let rev: Vec<Ladder> = ops.iter().rev().map(|l| l.dagger()).collect();
            out.add_term(rev, c.conj());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Ladder>, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.terms.keys().flatten().map(|l| l.mode).max()
    }

    /// Matrix in the occupation-number basis by direct action on bitstrings;
    /// bit `j` of the basis index is the occupation of mode `j`.
    pub fn to_dense(&self, n_modes: usize) -> Result<DMatrix<Complex64>> {
        if let Some(m) = self.max_mode() {
            if m >= n_modes {
                return Err(Error::ModeOutOfRange { index: m, n_modes });
            }
        }
        if n_modes > super::exact::DENSE_LIMIT {
            return Err(Error::TooManyQubits {
                n: n_modes,
                limit: super::exact::DENSE_LIMIT,
            });
        }
        let dim = 1usize << n_modes;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (ops, c) in &self.terms {
            for b in 0..dim {
                if let Some((sign, out)) = apply_ladders(ops, b) {
                    m[(out, b)] += c * sign;
                }
            }
        }
        Ok(m)
    }
}

/// Applies a ladder product to occupation bitstring `b`; `None` when annihilated.
pub fn apply_ladders(ops: &[Ladder], mut b: usize) -> Option<(f64, usize)> {
    let mut sign = 1.0;
    for l in ops.iter().rev() {
        let bit = 1usize << l.mode;
        let occupied = b & bit != 0;
        if occupied == l.create {
            return None;
        }
        if (b & (bit - 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        b ^= bit;
    }
    Some((sign, b))
}

impl fmt::Display for FermionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (ops, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{:+.12}", c.re)?;
            if c.im != 0.0 {
                write!(f, "{:+.12}i", c.im)?;
            }
            for l in ops {
                write!(f, " {}{}", l.mode, if l.create { "^" } else { "" })?;
            }
        }
        Ok(())
    }
}

/// Electronic Hamiltonian
/// `E_core + Σ h_pq a†_pσ a_qσ + ½ Σ (ps|qr) a†_pσ a†_qτ a_rτ a_sσ`.
pub fn hamiltonian_from_integrals(ints: &MolecularIntegrals) -> Result<FermionOperator> {
    ints.validate()?;
    let n = ints.n_orbitals;
    let mut op = FermionOperator::zero();
    if ints.core_energy != 0.0 {
        op.add_term(Vec::new(), Complex64::new(ints.core_energy, 0.0));
    }
    for p in 0..n {
        for q in 0..n {
            let v = ints.h(p, q);
            if v == 0.0 {
                continue;
            }
            for sigma in 0..2 {
                op.add_term(
                    vec![
                        Ladder::create(2 * p + sigma),
                        Ladder::annihilate(2 * q + sigma),
                    ],
                    Complex64::new(v, 0.0),
                );
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = ints.g(p, s, q, r);
                    if v == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (ps, qt, rt, ss) =
                                (2 * p + sigma, 2 * q + tau, 2 * r + tau, 2 * s + sigma);
                            if ps == qt || rt == ss {
                                continue;
                            }
                            op.add_term(
                                vec![
                                    Ladder::create(ps),
                                    Ladder::create(qt),
                                    Ladder::annihilate(rt),
                                    Ladder::annihilate(ss),
                                ],
                                Complex64::new(0.5 * v, 0.0),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(op)
}

/// Total particle number `Σ_j a†_j a_j`.
pub fn number_operator(n_modes: usize) -> FermionOperator {
    let mut op = FermionOperator::zero();
    for j in 0..n_modes {
        op.add(&FermionOperator::hop(j, j, 1.0));
    }
    op
}

/// `S_z = ½ Σ_p (n_pα − n_pβ)`.
pub fn sz_operator(n_modes: usize) -> FermionOperator {
    let mut op = FermionOperator::zero();
    for j in 0..n_modes {
        let s = if j % 2 == 0 { 0.5 } else { -0.5 };
        op.add(&FermionOperator::hop(j, j, s));
    }
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_orbital_expansion() {
        let mut ints = MolecularIntegrals::zeros(1, 1, 1);
        ints.set_h(0, 0, -1.0);
        let h = hamiltonian_from_integrals(&ints).unwrap();
        let expected = {
            let mut op = FermionOperator::hop(0, 0, -1.0);
            op.add(&FermionOperator::hop(1, 1, -1.0));
            op
        };
        assert_eq!(h, expected);
    }

    #[test]
    fn constant_only() {
        let mut ints = MolecularIntegrals::zeros(2, 2, 0);
        ints.core_energy = 0.7;
        let h = hamiltonian_from_integrals(&ints).unwrap();
        assert_eq!(h, FermionOperator::constant(0.7));
    }

    #[test]
    fn ladder_signs() {
        // a†_1 a_0 on |01> (mode 0 occupied) gives |10>, no sign
        assert_eq!(
            apply_ladders(&[Ladder::create(1), Ladder::annihilate(0)], 0b01),
            Some((1.0, 0b10))
        );
        // a_1 on |11> passes mode 0: sign -1
        assert_eq!(
            apply_ladders(&[Ladder::annihilate(1)], 0b11),
            Some((-1.0, 0b01))
        );
        assert_eq!(apply_ladders(&[Ladder::create(0)], 0b01), None);
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let mut ints = MolecularIntegrals::zeros(2, 2, 0);
        ints.set_h(0, 1, 0.1);
        ints.set_g(0, 1, 1, 1, 0.05);
        ints.set_g(0, 0, 1, 1, 0.4);
        let h = hamiltonian_from_integrals(&ints).unwrap();
        let m = h.to_dense(4).unwrap();
        let diff = (m.adjoint() - &m)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-14);
    }

    #[test]
    fn out_of_range_modes() {
        let op = FermionOperator::hop(5, 0, 1.0);
        assert!(matches!(
            op.to_dense(4),
            Err(Error::ModeOutOfRange { index: 5, .. })
        ));
    }
}
