use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::operators::PauliString;

/// Single-qubit matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    Rx {
        qubit: usize,
        angle: f64,
    },
    Ry {
        qubit: usize,
        angle: f64,
    },
    Rz {
        qubit: usize,
        angle: f64,
    },
    H {
        qubit: usize,
    },
    X {
        qubit: usize,
    },
    Cx {
        control: usize,
        target: usize,
    },
    ISwap {
        a: usize,
        b: usize,
    },
    /// `exp(−i angle/2 · P)`
    PauliExp {
        pauli: PauliString,
        angle: f64,
    },
    MeasureAll,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Gate {
    pub fn rx(qubit: usize, angle: f64) -> Gate {
        Gate::Rx { qubit, angle }
    }
    pub fn ry(qubit: usize, angle: f64) -> Gate {
        Gate::Ry { qubit, angle }
    }
    pub fn rz(qubit: usize, angle: f64) -> Gate {
        Gate::Rz { qubit, angle }
    }
    pub fn rot(axis: Axis, qubit: usize, angle: f64) -> Gate {
        match axis {
            Axis::X => Gate::Rx { qubit, angle },
            Axis::Y => Gate::Ry { qubit, angle },
            Axis::Z => Gate::Rz { qubit, angle },
        }
    }
    pub fn h(qubit: usize) -> Gate {
        Gate::H { qubit }
    }
    pub fn x(qubit: usize) -> Gate {
        Gate::X { qubit }
    }
    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Cx { control, target }
    }
    pub fn iswap(a: usize, b: usize) -> Gate {
        Gate::ISwap { a, b }
    }
    pub fn pauli_exp(pauli: PauliString, angle: f64) -> Gate {
        Gate::PauliExp { pauli, angle }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Rx { .. } => "RX",
            Gate::Ry { .. } => "RY",
            Gate::Rz { .. } => "RZ",
            Gate::H { .. } => "H",
            Gate::X { .. } => "X",
            Gate::Cx { .. } => "CX",
            Gate::ISwap { .. } => "ISWAP",
            Gate::PauliExp { .. } => "PAULIEXP",
            Gate::MeasureAll => "MEASURE",
        }
    }

    /// Operand qubits; empty for `MeasureAll`.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Rx { qubit, .. }
            | Gate::Ry { qubit, .. }
            | Gate::Rz { qubit, .. }
            | Gate::H { qubit }
            | Gate::X { qubit } => vec![*qubit],
            Gate::Cx { control, target } => vec![*control, *target],
            Gate::ISwap { a, b } => vec![*a, *b],
            Gate::PauliExp { pauli, .. } => pauli.qubits().collect(),
            Gate::MeasureAll => Vec::new(),
        }
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, Gate::MeasureAll)
    }

    /// Member of {Rx, Ry, Rz, iSWAP} (measurement is allowed alongside).
    pub fn is_native(&self) -> bool {
        matches!(
            self,
            Gate::Rx { .. }
                | Gate::Ry { .. }
                | Gate::Rz { .. }
                | Gate::ISwap { .. }
                | Gate::MeasureAll
        )
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cx { .. } | Gate::ISwap { .. })
            || matches!(self, Gate::PauliExp { pauli, .. } if pauli.weight() >= 2)
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Gate::Rx { angle, .. } | Gate::Ry { angle, .. } | Gate::Rz { angle, .. } => {
                Some(*angle)
            }
            Gate::PauliExp { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    /// Axis and qubit of a rotation gate.
    pub fn rotation(&self) -> Option<(Axis, usize, f64)> {
        match *self {
            Gate::Rx { qubit, angle } => Some((Axis::X, qubit, angle)),
            Gate::Ry { qubit, angle } => Some((Axis::Y, qubit, angle)),
            Gate::Rz { qubit, angle } => Some((Axis::Z, qubit, angle)),
            _ => None,
        }
    }

    /// Matrix of a single-qubit gate.
    pub fn matrix_1q(&self) -> Option<Mat2> {
        match *self {
            Gate::Rx { angle, .. } => Some(rotation_matrix(Axis::X, angle)),
            Gate::Ry { angle, .. } => Some(rotation_matrix(Axis::Y, angle)),
            Gate::Rz { angle, .. } => Some(rotation_matrix(Axis::Z, angle)),
            Gate::H { .. } => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                Some([[s, s], [s, -s]])
            }
            Gate::X { .. } => {
                let (o, l) = (Complex64::default(), Complex64::new(1.0, 0.0));
                Some([[o, l], [l, o]])
            }
            _ => None,
        }
    }
}

pub fn rotation_matrix(axis: Axis, angle: f64) -> Mat2 {
    let c = (angle / 2.0).cos();
    let s = (angle / 2.0).sin();
    let z = Complex64::default();
    match axis {
        Axis::X => [
            [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
            [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
        ],
        Axis::Y => [
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ],
        Axis::Z => [[Complex64::new(c, -s), z], [z, Complex64::new(c, s)]],
    }
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::default(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_identity() -> Mat2 {
    let (o, l) = (Complex64::default(), Complex64::new(1.0, 0.0));
    [[l, o], [o, l]]
}

/// Maps an angle into `(−2π, 2π]`.
pub fn normalize_angle(angle: f64) -> f64 {
    let tau = 4.0 * PI;
    let mut a = angle % tau;
    if a <= -2.0 * PI {
        a += tau;
    } else if a > 2.0 * PI {
        a -= tau;
    }
    a
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Rx { qubit, angle } | Gate::Ry { qubit, angle } | Gate::Rz { qubit, angle } => {
                write!(f, "{} {} {:?}", self.name(), qubit, angle)
            }
            Gate::H { qubit } | Gate::X { qubit } => write!(f, "{} {}", self.name(), qubit),
            Gate::Cx { control, target } => write!(f, "CX {control} {target}"),
            Gate::ISwap { a, b } => write!(f, "ISWAP {a} {b}"),
            Gate::PauliExp { pauli, angle } => write!(f, "PAULIEXP {pauli} {angle:?}"),
            Gate::MeasureAll => write!(f, "MEASURE"),
        }
    }
}
