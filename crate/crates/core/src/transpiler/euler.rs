//! Shortest rotation sequence for a single-qubit unitary.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::circuits::gate::{mat2_mul, Axis, Gate, Mat2};

const ZERO_ANGLE: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn dagger(m: &Mat2) -> Mat2 {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

fn pauli(axis: Axis) -> Mat2 {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match axis {
        Axis::X => [[o, l], [l, o]],
        Axis::Y => [[o, -i], [i, o]],
        Axis::Z => [[l, o], [o, -l]],
    }
}

fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() < tol))
}

/// `max |a − e^{iφ} b|` for the best global phase.
pub fn distance_up_to_phase(a: &Mat2, b: &Mat2) -> f64 {
    let mut overlap = c(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            overlap += b[i][j].conj() * a[i][j];
        }
    }
    let ph = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        c(1.0, 0.0)
    };
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((a[i][j] - ph * b[i][j]).norm());
        }
    }
    d
}

/// Maps into `(−π, π]`; rotations are 4π-periodic but 2π shifts only flip the global sign.
pub fn wrap(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

pub fn is_zero_angle(angle: f64) -> bool {
    wrap(angle).abs() < ZERO_ANGLE
}

/// `(α, β, γ)` with `u ∝ Rz(α) Ry(β) Rz(γ)`.
fn zyz(u: &Mat2) -> (f64, f64, f64) {
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let s = det.sqrt();
    let v = [[u[0][0] / s, u[0][1] / s], [u[1][0] / s, u[1][1] / s]];
    let (a00, a10) = (v[0][0].norm(), v[1][0].norm());
    let beta = 2.0 * a10.atan2(a00);
    if a10 < 1e-14 {
        return (v[1][1].arg() - v[0][0].arg(), 0.0, 0.0);
    }
    if a00 < 1e-14 {
        return (v[1][0].arg() - (-v[0][1]).arg(), beta, 0.0);
    }
    let alpha = v[1][0].arg() - v[0][0].arg();
    let gamma = v[1][1].arg() - v[1][0].arg();
    (alpha, beta, gamma)
}

/// Conjugation frame: `F Z F† = sa·A` and `F Y F† = sb·B`.
struct Frame {
    outer: Axis,
    inner: Axis,
    f: Mat2,
    sa: f64,
    sb: f64,
}

fn frames() -> &'static Vec<Frame> {
    static FRAMES: OnceLock<Vec<Frame>> = OnceLock::new();
    FRAMES.get_or_init(|| {
        let h: Mat2 = [
            [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)],
            [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)],
        ];
        let s: Mat2 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]];
        // words in {H, S} reach every single-qubit Clifford within length 5
        let mut cliffords: Vec<Mat2> =
            vec![[[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]];
        let mut frontier = cliffords.clone();
        for _ in 0..6 {
            let mut next = Vec::new();
            for m in &frontier {
                for g in [&h, &s] {
                    let p = mat2_mul(g, m);
                    if !cliffords.iter().any(|q| distance_up_to_phase(q, &p) < 1e-9) {
                        cliffords.push(p);
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        let axes = [Axis::Z, Axis::X, Axis::Y];
        let mut out = Vec::new();
        for &outer in &axes {
            for &inner in &axes {
                if outer == inner {
                    continue;
                }
                let found = cliffords.iter().find_map(|f| {
                    let fz = mat2_mul(&mat2_mul(f, &pauli(Axis::Z)), &dagger(f));
                    let fy = mat2_mul(&mat2_mul(f, &pauli(Axis::Y)), &dagger(f));
                    let sign = |m: &Mat2, a: Axis| {
                        let p = pauli(a);
                        let neg = [[-p[0][0], -p[0][1]], [-p[1][0], -p[1][1]]];
                        if close(m, &p, 1e-9) {
                            Some(1.0)
                        } else if close(m, &neg, 1e-9) {
                            Some(-1.0)
                        } else {
                            None
                        }
                    };
                    Some(Frame {
                        outer,
                        inner,
                        f: *f,
                        sa: sign(&fz, outer)?,
                        sb: sign(&fy, inner)?,
                    })
                });
                out.push(found.expect("single-qubit Clifford group maps any axis pair"));
            }
        }
        out
    })
}

fn gates_from(seq: &[(Axis, f64)], qubit: usize) -> Vec<Gate> {
    // time order is right to left in the matrix product
    seq.iter()
        .rev()
        .filter(|(_, a)| !is_zero_angle(*a))
        .map(|(ax, a)| Gate::rot(*ax, qubit, wrap(*a)))
        .collect()
}

pub fn product(gates: &[Gate]) -> Mat2 {
    let mut m = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    for g in gates {
        m = mat2_mul(&g.matrix_1q().expect("single-qubit gate"), &m);
    }
    m
}

/// Fewest rotations (at most three) equal to `u` up to global phase.
pub fn synthesize(u: &Mat2, qubit: usize) -> Vec<Gate> {
    let mut best: Option<Vec<Gate>> = None;
    for fr in frames() {
        let v = mat2_mul(&mat2_mul(&dagger(&fr.f), u), &fr.f);
        let (a, b, g) = zyz(&v);
        let seq = [
            (fr.outer, fr.sa * a),
            (fr.inner, fr.sb * b),
            (fr.outer, fr.sa * g),
        ];
        let mut gates = gates_from(&seq, qubit);
        // merge a collapsed outer pair
        if gates.len() == 2 && gates[0].rotation().map(|r| r.0) == gates[1].rotation().map(|r| r.0)
        {
            let (ax, q, a0) = gates[0].rotation().unwrap();
            let a1 = gates[1].rotation().unwrap().2;
            gates = if is_zero_angle(a0 + a1) {
                vec![]
            } else {
                vec![Gate::rot(ax, q, wrap(a0 + a1))]
            };
        }
        if distance_up_to_phase(&product(&gates), u) > 1e-10 {
            continue;
        }
        if best.as_ref().is_none_or(|b| gates.len() < b.len()) {
            best = Some(gates);
        }
    }
    best.expect("ZYZ frame always succeeds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_needs_nothing() {
        assert!(synthesize(&product(&[Gate::rx(0, 2.0 * PI)]), 0).is_empty());
    }

    #[test]
    fn single_axis_is_one_gate() {
        for g in [Gate::rx(0, 0.3), Gate::ry(0, -1.1), Gate::rz(0, 2.9)] {
            let s = synthesize(&product(std::slice::from_ref(&g)), 0);
            assert_eq!(s.len(), 1);
            assert!(distance_up_to_phase(&product(&s), &product(&[g])) < 1e-12);
        }
    }

    #[test]
    fn hadamard_is_two_rotations() {
        let s = synthesize(&product(&[Gate::h(0)]), 0);
        assert_eq!(s.len(), 2);
    }

    proptest! {
        #[test]
        fn synthesis_is_exact(a in -7.0f64..7.0, b in -7.0f64..7.0, g in -7.0f64..7.0, k in 0usize..3) {
            let axes = [Axis::X, Axis::Y, Axis::Z];
            let gates = vec![Gate::rot(axes[k], 0, a), Gate::rot(axes[(k + 1) % 3], 0, b), Gate::rot(axes[k], 0, g)];
            let u = product(&gates);
            let s = synthesize(&u, 0);
            prop_assert!(s.len() <= 3);
            prop_assert!(distance_up_to_phase(&product(&s), &u) < 1e-10);
        }
    }
}
