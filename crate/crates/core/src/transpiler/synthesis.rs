//! Joint synthesis of commuting Pauli exponentials.
//!
//! A run of mutually commuting `PauliExp` gates is conjugated by a Clifford
//! `W` into Z-strings, the resulting diagonal rotations are realized with a
//! CX parity network, and `W` is undone.

use std::f64::consts::FRAC_PI_2;

use crate::circuits::{Circuit, Gate};
use crate::operators::PauliString;

/// `i^k · P`
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Signed {
    k: u32,
    p: PauliString,
}

impl Signed {
    fn new(k: u32, p: PauliString) -> Self {
        Signed { k: k & 3, p }
    }

    fn mul(self, other: Signed) -> Signed {
        let (kk, p) = self.p.multiply(&other.p);
        Signed::new(self.k + other.k + kk, p)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Clifford {
    H(usize),
    S(usize),
    Sdg(usize),
    Cx(usize, usize),
}

impl Clifford {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            Clifford::H(q) | Clifford::S(q) | Clifford::Sdg(q) => vec![q],
            Clifford::Cx(c, t) => vec![c, t],
        }
    }

    /// Images of `X_q` and `Z_q` under `C · C†`.
    fn images(&self, q: usize) -> (Signed, Signed) {
        let x = |m: u64| PauliString::new(m, 0);
        let z = |m: u64| PauliString::new(0, m);
        let b = 1u64 << q;
        match *self {
            Clifford::H(_) => (Signed::new(0, z(b)), Signed::new(0, x(b))),
            Clifford::S(_) => (Signed::new(0, PauliString::new(b, b)), Signed::new(0, z(b))),
            Clifford::Sdg(_) => (Signed::new(2, PauliString::new(b, b)), Signed::new(0, z(b))),
            Clifford::Cx(c, t) => {
                let (cb, tb) = (1u64 << c, 1u64 << t);
                if q == c {
                    (Signed::new(0, x(cb | tb)), Signed::new(0, z(cb)))
                } else {
                    (Signed::new(0, x(tb)), Signed::new(0, z(cb | tb)))
                }
            }
        }
    }

    fn conjugate(&self, s: Signed) -> Signed {
        let mut acted = 0u64;
        for q in self.qubits() {
            acted |= 1 << q;
        }
        let rest = PauliString::new(s.p.x & !acted, s.p.z & !acted);
        let mut acc = Signed::new(s.k, rest);
        for q in self.qubits() {
            let (xi, zi) = self.images(q);
            let (bx, bz) = ((s.p.x >> q) & 1 == 1, (s.p.z >> q) & 1 == 1);
            match (bx, bz) {
                (true, false) => acc = acc.mul(xi),
                (false, true) => acc = acc.mul(zi),
                // Y = i X Z
                (true, true) => {
                    acc = acc
                        .mul(Signed::new(1, PauliString::IDENTITY))
                        .mul(xi)
                        .mul(zi)
                }
                _ => {}
            }
        }
        acc
    }

    fn gates(&self) -> Vec<Gate> {
        match *self {
            Clifford::H(q) => vec![Gate::h(q)],
            Clifford::S(q) => vec![Gate::rz(q, FRAC_PI_2)],
            Clifford::Sdg(q) => vec![Gate::rz(q, -FRAC_PI_2)],
            Clifford::Cx(c, t) => vec![Gate::cx(c, t)],
        }
    }

    fn inverse(&self) -> Clifford {
        match *self {
            Clifford::S(q) => Clifford::Sdg(q),
            Clifford::Sdg(q) => Clifford::S(q),
            other => other,
        }
    }
}

/// Clifford sequence (time order) that maps every string in `paulis` to a signed Z-string.
///
/// With `clear_z` unset the pivot keeps its Z tail; this is cheaper but may fail to
/// terminate in a diagonal frame, in which case `None` is returned.
fn diagonalize(paulis: &mut [Signed], clear_z: bool) -> Option<Vec<Clifford>> {
    let mut ops = Vec::new();
    let apply = |op: Clifford, ps: &mut [Signed], ops: &mut Vec<Clifford>| {
        for p in ps.iter_mut() {
            *p = op.conjugate(*p);
        }
        ops.push(op);
    };
    let mut rounds = 0;
    while let Some(idx) = paulis.iter().position(|s| s.p.x != 0) {
        rounds += 1;
        if rounds > 2 * paulis.len() + 64 {
            return None;
        }
        let pivot = paulis[idx].p;
        let c = pivot.x.trailing_zeros() as usize;
        // pairwise reduction keeps the CX layer count logarithmic
        let mut live: Vec<usize> = (0..64).filter(|b| (pivot.x >> b) & 1 == 1).collect();
        while live.len() > 1 {
            for pair in live.chunks(2) {
                if let [a, t] = *pair {
                    apply(Clifford::Cx(a, t), paulis, &mut ops);
                }
            }
            live = live.iter().copied().step_by(2).collect();
        }
        if (paulis[idx].p.z >> c) & 1 == 1 {
            apply(Clifford::Sdg(c), paulis, &mut ops);
        }
        if clear_z {
            let zs = paulis[idx].p.z & !(1u64 << c);
            for t in 0..64 {
                if (zs >> t) & 1 == 1 {
                    // CZ(c, t) = H_t CX(c, t) H_t
                    apply(Clifford::H(t), paulis, &mut ops);
                    apply(Clifford::Cx(c, t), paulis, &mut ops);
                    apply(Clifford::H(t), paulis, &mut ops);
                }
            }
        }
        apply(Clifford::H(c), paulis, &mut ops);
    }
    Some(ops)
}

/// Expresses `target` over the current wire parities; returns the wire subset.
fn solve(rows: &[u64], wires: &[usize], target: u64) -> Option<Vec<usize>> {
    // Gaussian elimination over GF(2) with combination tracking
    let mut basis: Vec<(u64, u64)> = Vec::new(); // (reduced vector, combination of wire slots)
    for (slot, &w) in wires.iter().enumerate() {
        let mut v = rows[w];
        let mut comb = 1u64 << slot;
        for &(bv, bc) in &basis {
            if v ^ bv < v {
                v ^= bv;
                comb ^= bc;
            }
        }
        if v != 0 {
            basis.push((v, comb));
            basis.sort_by(|a, b| b.0.cmp(&a.0));
        }
    }
    let mut v = target;
    let mut comb = 0u64;
    for &(bv, bc) in &basis {
        if v ^ bv < v {
            v ^= bv;
            comb ^= bc;
        }
    }
    (v == 0).then(|| {
        (0..wires.len())
            .filter(|s| (comb >> s) & 1 == 1)
            .map(|s| wires[s])
            .collect()
    })
}

/// CX sequence returning every wire in `wires` to its own qubit.
fn restore(rows: &mut [u64], wires: &[usize]) -> Vec<(usize, usize)> {
    let mut cx = Vec::new();
    for &i in wires {
        let bit = 1u64 << i;
        if rows[i] & bit == 0 {
            let j = *wires
                .iter()
                .find(|&&j| j != i && rows[j] & bit != 0 && wires_after(wires, i, j))
                .expect("parity map stays invertible");
            rows[i] ^= rows[j];
            cx.push((j, i));
        }
        for &k in wires {
            if k != i && rows[k] & bit != 0 {
                rows[k] ^= rows[i];
                cx.push((i, k));
            }
        }
    }
    cx
}

fn wires_after(wires: &[usize], i: usize, j: usize) -> bool {
    let pos = |w: usize| wires.iter().position(|&x| x == w).unwrap();
    pos(j) > pos(i)
}

/// Parity network for rotations `exp(−i φ/2 · Z_mask)`.
fn phase_network(terms: &[(u64, f64)], n_qubits: usize) -> Vec<Gate> {
    let greedy = greedy_network(terms, n_qubits);
    match gray_network(terms) {
        Some(gray) if cx_count(&gray) < cx_count(&greedy) => gray,
        _ => greedy,
    }
}

fn cx_count(gates: &[Gate]) -> usize {
    gates
        .iter()
        .filter(|g| matches!(g, Gate::Cx { .. }))
        .count()
}

/// Walks the masks in Gray-code order on a qubit shared by all of them.
fn gray_network(terms: &[(u64, f64)]) -> Option<Vec<Gate>> {
    let common = terms.iter().fold(u64::MAX, |m, t| m & t.0);
    if common == 0 {
        return None;
    }
    let target = common.trailing_zeros() as usize;
    let tbit = 1u64 << target;
    let mut masks: Vec<(u64, f64)> = Vec::new();
    for &(m, a) in terms {
        match masks.iter_mut().find(|(mm, _)| *mm == m) {
            Some(entry) => entry.1 += a,
            None => masks.push((m, a)),
        }
    }
    let rest = masks.iter().fold(0u64, |acc, t| acc | t.0) & !tbit;
    let bits: Vec<usize> = (0..64).filter(|b| (rest >> b) & 1 == 1).collect();
    // rank of a mask in the reflected Gray sequence over `bits`
    let rank = |m: u64| {
        let mut g = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            g |= ((m >> b) & 1) << i;
        }
        let mut r = g;
        let mut shift = g >> 1;
        while shift != 0 {
            r ^= shift;
            shift >>= 1;
        }
        r
    };
    masks.sort_by_key(|(m, _)| rank(*m));
    let mut out = Vec::new();
    let mut current = tbit;
    let step = |from: u64, to: u64, out: &mut Vec<Gate>| {
        let diff = from ^ to;
        for b in 0..64 {
            if (diff >> b) & 1 == 1 {
                out.push(Gate::cx(b, target));
            }
        }
    };
    for (m, a) in masks {
        step(current, m, &mut out);
        current = m;
        out.push(Gate::rz(target, a));
    }
    step(current, tbit, &mut out);
    Some(out)
}

fn greedy_network(terms: &[(u64, f64)], n_qubits: usize) -> Vec<Gate> {
    let support = terms.iter().fold(0u64, |m, t| m | t.0);
    let wires: Vec<usize> = (0..n_qubits).filter(|q| (support >> q) & 1 == 1).collect();
    let mut rows: Vec<u64> = (0..n_qubits).map(|q| 1u64 << q).collect();
    let mut pending: Vec<(u64, f64)> = terms.to_vec();
    let mut forward: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    while !pending.is_empty() {
        // cheapest next rotation; ties keep the original order
        let (pick, subset) = pending
            .iter()
            .enumerate()
            .map(|(i, (m, _))| {
                (
                    i,
                    solve(&rows, &wires, *m).expect("mask inside the support span"),
                )
            })
            .min_by_key(|(_, s)| s.len())
            .unwrap();
        let (mask, angle) = pending.remove(pick);
        let target = *subset
            .iter()
            .max_by_key(|&&w| (rows[w] == mask, w))
            .unwrap();
        for &w in &subset {
            if w != target {
                rows[target] ^= rows[w];
                forward.push((w, target));
                out.push(Gate::cx(w, target));
            }
        }
        debug_assert_eq!(rows[target], mask);
        out.push(Gate::rz(target, angle));
    }
    let mut rows_copy = rows.clone();
    let elim = restore(&mut rows_copy, &wires);
    if elim.len() <= forward.len() {
        out.extend(elim.into_iter().map(|(c, t)| Gate::cx(c, t)));
    } else {
        out.extend(forward.into_iter().rev().map(|(c, t)| Gate::cx(c, t)));
    }
    out
}

/// Gates for the product of commuting exponentials `exp(−i φ_j/2 · P_j)`.
pub fn synthesize_commuting(block: &[(PauliString, f64)], n_qubits: usize) -> Vec<Gate> {
    let start: Vec<Signed> = block.iter().map(|(p, _)| Signed::new(0, *p)).collect();
    [false, true]
        .into_iter()
        .filter_map(|clear_z| {
            let mut signed = start.clone();
            diagonalize(&mut signed, clear_z).map(|ops| realize(block, &signed, &ops, n_qubits))
        })
        .min_by_key(|gates| (cx_count(gates), gates.len()))
        .expect("full Z clearing always diagonalizes")
}

fn realize(
    block: &[(PauliString, f64)],
    signed: &[Signed],
    ops: &[Clifford],
    n_qubits: usize,
) -> Vec<Gate> {
    let diag: Vec<(u64, f64)> = signed
        .iter()
        .zip(block)
        .map(|(s, (_, angle))| {
            debug_assert!(s.p.x == 0 && s.k % 2 == 0);
            let sign = if s.k == 2 { -1.0 } else { 1.0 };
            (s.p.z, sign * angle)
        })
        .collect();
    let mut gates: Vec<Gate> = ops.iter().flat_map(|c| c.gates()).collect();
    gates.extend(phase_network(&diag, n_qubits));
    gates.extend(ops.iter().rev().flat_map(|c| c.inverse().gates()));
    gates
}

/// Replaces maximal runs of mutually commuting `PauliExp` gates by their joint synthesis.
pub fn synthesize_pauli_blocks(circuit: &Circuit) -> Circuit {
    let n = circuit.n_qubits();
    let mut out: Vec<Gate> = Vec::new();
    let mut block: Vec<(PauliString, f64)> = Vec::new();
    let flush = |block: &mut Vec<(PauliString, f64)>, out: &mut Vec<Gate>| {
        if !block.is_empty() {
            out.extend(synthesize_commuting(block, n));
            block.clear();
        }
    };
    for g in circuit.gates() {
        match g {
            Gate::PauliExp { pauli, angle } => {
                if !block.iter().all(|(p, _)| p.commutes_with(pauli)) {
                    flush(&mut block, &mut out);
                }
                block.push((*pauli, *angle));
            }
            other => {
                flush(&mut block, &mut out);
                out.push(other.clone());
            }
        }
    }
    flush(&mut block, &mut out);
    let out = super::optimize::resynthesize_runs(&out, n);
    Circuit::from_gates(n, out).expect("synthesized gates stay on the register")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transpiler::unitary::circuit_distance;

    fn exp_circuit(n: usize, terms: &[(&str, f64)]) -> Circuit {
        Circuit::from_gates(
            n,
            terms
                .iter()
                .map(|(p, a)| Gate::pauli_exp(PauliString::parse(p).unwrap(), *a))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn clifford_images_match_conjugation() {
        let y0 = Signed::new(0, PauliString::parse("Y0").unwrap());
        assert_eq!(Clifford::H(0).conjugate(y0), Signed::new(2, y0.p));
        assert_eq!(
            Clifford::Sdg(0).conjugate(y0),
            Signed::new(0, PauliString::parse("X0").unwrap())
        );
        let x0z1 = Signed::new(0, PauliString::parse("X0 Z1").unwrap());
        let img = Clifford::Cx(0, 1).conjugate(x0z1);
        // X0 Z1 -> (X0 X1)(Z0 Z1) = -Y0 Y1
        assert_eq!(img, Signed::new(2, PauliString::parse("Y0 Y1").unwrap()));
    }

    #[test]
    fn paired_double_block_is_exact() {
        let terms = [
            ("X0 X1 X2 Y3", 0.1),
            ("X0 X1 Y2 X3", 0.1),
            ("X0 Y1 X2 X3", -0.1),
            ("Y0 X1 X2 X3", -0.1),
            ("X0 Y1 Y2 Y3", 0.1),
            ("Y0 X1 Y2 Y3", 0.1),
            ("Y0 Y1 X2 Y3", -0.1),
            ("Y0 Y1 Y2 X3", -0.1),
        ];
        let c = exp_circuit(4, &terms);
        let s = synthesize_pauli_blocks(&c);
        assert!(circuit_distance(&c, &s).unwrap() < 1e-12);
        let cx = s
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::Cx { .. }))
            .count();
        let ladder_cx = c
            .expand_pauli_exps()
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::Cx { .. }))
            .count();
        assert!(cx < ladder_cx / 2, "{cx} vs {ladder_cx}");
    }

    #[test]
    fn non_commuting_runs_split() {
        let c = exp_circuit(2, &[("X0", 0.3), ("Z0 Z1", 0.2), ("Y1", -0.4)]);
        let s = synthesize_pauli_blocks(&c);
        assert!(circuit_distance(&c, &s).unwrap() < 1e-12);
    }
}
