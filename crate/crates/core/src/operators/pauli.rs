//! Pauli strings in symplectic form and weighted sums of them.
//!
//! A string is a pair of bitmasks: bit `q` of `x` marks an X component on
//! qubit `q`, bit `q` of `z` a Z component; both set means Y. The string is
//! the Hermitian operator `i^{|x&z|} X^x Z^z`, so `Y = iXZ` per qubit and
//! every stored string is a plain tensor product of I/X/Y/Z letters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients below this magnitude are pruned on canonicalization.
pub const PRUNE_TOL: f64 = 1e-14;

pub const MAX_QUBITS: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// Tensor product of single-qubit Paulis, without phase.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
}

/// `i^k` for `k` taken mod 4.
pub fn i_pow(k: u32) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    pub fn new(x: u64, z: u64) -> Self {
        PauliString { x, z }
    }

    pub fn single(qubit: usize, letter: PauliLetter) -> Self {
        let (x, z) = letter.bits();
        PauliString {
            x: (x as u64) << qubit,
            z: (z as u64) << qubit,
        }
    }

    /// Z on every qubit of `mask`.
    pub fn z_string(mask: u64) -> Self {
        PauliString { x: 0, z: mask }
    }

    /// Builds a string from `(qubit, letter)` pairs; later pairs overwrite earlier ones.
    pub fn from_letters<I: IntoIterator<Item = (usize, PauliLetter)>>(letters: I) -> Self {
        let mut p = PauliString::IDENTITY;
        for (q, l) in letters {
            p.set(q, l);
        }
        p
    }

    pub fn set(&mut self, qubit: usize, letter: PauliLetter) {
        let bit = 1u64 << qubit;
        let (x, z) = letter.bits();
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        let x = (self.x >> qubit) & 1 == 1;
        let z = (self.z >> qubit) & 1 == 1;
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    /// Highest qubit index touched plus one.
    pub fn min_qubits(&self) -> usize {
        (64 - self.support().leading_zeros()) as usize
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let s = self.support();
        (0..64).filter(move |q| (s >> q) & 1 == 1)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// True when the two strings agree letter-by-letter wherever both act.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> bool {
        let both = self.support() & other.support();
        (self.x ^ other.x) & both == 0 && (self.z ^ other.z) & both == 0
    }

    /// `self * other = i^k * result`; returns `(k mod 4, result)`.
    pub fn multiply(&self, other: &PauliString) -> (u32, PauliString) {
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let xo1 = x1 & !z1;
        let yo1 = x1 & z1;
        let zo1 = z1 & !x1;
        let xo2 = x2 & !z2;
        let yo2 = x2 & z2;
        let zo2 = z2 & !x2;
        // XY = iZ, YZ = iX, ZX = iY and the reverses with -i.
        let plus = ((xo1 & yo2) | (yo1 & zo2) | (zo1 & xo2)).count_ones();
        let minus = ((yo1 & xo2) | (zo1 & yo2) | (xo1 & zo2)).count_ones();
        let k = (4 + plus % 4 - minus % 4) % 4;
        (
            k,
            PauliString {
                x: x1 ^ x2,
                z: z1 ^ z2,
            },
        )
    }

    /// Action on a computational basis state: `P|b> = phase |b'>`.
    #[inline]
    pub fn apply_basis(&self, b: usize) -> (Complex64, usize) {
        let b64 = b as u64;
        let k = (self.x & self.z).count_ones() + 2 * (b64 & self.z).count_ones();
        (i_pow(k), (b64 ^ self.x) as usize)
    }

    /// `(-1)^{parity of b on the support}`, the eigenvalue of the Z-string with this support.
    #[inline]
    pub fn parity_sign(mask: u64, b: u64) -> f64 {
        if (mask & b).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Parses `"X0 Y1 Z3"`, or a dense word like `"XYIZ"` read qubit 0 first.
    pub fn parse(s: &str) -> Option<PauliString> {
        let s = s.trim();
        if s.is_empty() || s == "I" {
            return Some(PauliString::IDENTITY);
        }
        if s.chars().all(|c| PauliLetter::from_char(c).is_some()) {
            let mut p = PauliString::IDENTITY;
            for (q, c) in s.chars().enumerate() {
                p.set(q, PauliLetter::from_char(c)?);
            }
            return Some(p);
        }
        let mut p = PauliString::IDENTITY;
        for tok in s.split_whitespace() {
            let mut chars = tok.chars();
            let letter = PauliLetter::from_char(chars.next()?)?;
            let q: usize = chars.as_str().parse().ok()?;
            if q >= MAX_QUBITS {
                return None;
            }
            p.set(q, letter);
        }
        Some(p)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for q in self.qubits() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}{}", self.letter(q), q)?;
            first = false;
        }
        Ok(())
    }
}

/// Weighted sum of Pauli strings on a fixed register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitOperator {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl QubitOperator {
    pub fn zero(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        QubitOperator {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize, coeff: f64) -> Self {
        Self::term(n_qubits, PauliString::IDENTITY, Complex64::new(coeff, 0.0))
    }

    pub fn term(n_qubits: usize, pauli: PauliString, coeff: Complex64) -> Self {
        let mut op = Self::zero(n_qubits);
        op.add_term(pauli, coeff);
        op.canonicalize();
        op
    }

    /// `"X0 Y1"`-style constructor with a real coefficient. Panics on malformed input.
    pub fn from_str_real(n_qubits: usize, pauli: &str, coeff: f64) -> Self {
        let p = PauliString::parse(pauli).expect("malformed Pauli string");
        assert!(p.min_qubits() <= n_qubits, "string exceeds register");
        Self::term(n_qubits, p, Complex64::new(coeff, 0.0))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    /// Coefficient of the identity string.
    pub fn constant(&self) -> Complex64 {
        self.coefficient(&PauliString::IDENTITY)
    }

    /// Accumulates without pruning; call [`canonicalize`](Self::canonicalize) afterwards.
    pub fn add_term(&mut self, pauli: PauliString, coeff: Complex64) {
        debug_assert!(pauli.min_qubits() <= self.n_qubits);
        *self.terms.entry(pauli).or_default() += coeff;
    }

    pub fn canonicalize(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_real(&self) -> f64 {
        self.terms.values().map(|c| c.re.abs()).fold(0.0, f64::max)
    }

    /// Every coefficient real within `tol`.
    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        self.max_imag() < tol
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian_within(1e-12)
    }

    /// Every coefficient purely imaginary within `tol`.
    pub fn is_anti_hermitian_within(&self, tol: f64) -> bool {
        self.max_real() < tol
    }

    pub fn adjoint(&self) -> Self {
        QubitOperator {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(p, c)| (*p, c.conj())).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch(self.n_qubits, other.n_qubits));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, *c);
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n_qubits);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let (k, r) = p.multiply(q);
                out.add_term(r, a * b * i_pow(k));
            }
        }
        out.canonicalize();
        Ok(out)
    }

    /// `[A, B] = AB - BA`, computed only over anticommuting pairs.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.n_qubits);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if p.commutes_with(q) {
                    continue;
                }
                let (k, r) = p.multiply(q);
                out.add_term(r, 2.0 * a * b * i_pow(k));
            }
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = QubitOperator {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(p, v)| (*p, v * c)).collect(),
        };
        out.canonicalize();
        out
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Largest coefficient magnitude; zero for the empty operator.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops imaginary parts after checking they are below `tol`.
    pub fn into_real(mut self, tol: f64) -> Result<Self> {
        let m = self.max_imag();
        if m >= tol {
            return Err(Error::NotHermitian(m));
        }
        for c in self.terms.values_mut() {
            c.im = 0.0;
        }
        self.canonicalize();
        Ok(self)
    }
}

impl fmt::Display for QubitOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            if c.im == 0.0 {
                write!(f, "{:+.12} [{}]", c.re, p)?;
            } else {
                write!(f, "({:+.12}{:+.12}i) [{}]", c.re, c.im, p)?;
            }
        }
        Ok(())
    }
}

impl Add for &QubitOperator {
    type Output = QubitOperator;
    fn add(self, rhs: &QubitOperator) -> QubitOperator {
        self.try_add(rhs).expect("qubit count mismatch")
    }
}

impl Sub for &QubitOperator {
    type Output = QubitOperator;
    fn sub(self, rhs: &QubitOperator) -> QubitOperator {
        self.try_sub(rhs).expect("qubit count mismatch")
    }
}

impl Mul for &QubitOperator {
    type Output = QubitOperator;
    fn mul(self, rhs: &QubitOperator) -> QubitOperator {
        self.try_mul(rhs).expect("qubit count mismatch")
    }
}

impl Neg for &QubitOperator {
    type Output = QubitOperator;
    fn neg(self) -> QubitOperator {
        self.scale_real(-1.0)
    }
}
