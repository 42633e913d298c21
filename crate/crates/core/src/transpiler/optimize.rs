//! Peephole passes over native circuits.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circuits::gate::{mat2_mul, Gate, Mat2};
use crate::circuits::Circuit;
use crate::transpiler::euler::{self, is_zero_angle, wrap};

type Slots = Vec<Option<Gate>>;

fn compact(slots: Slots) -> Vec<Gate> {
    slots.into_iter().flatten().collect()
}

/// Positions of gates touching each qubit, in order.
fn timelines(gates: &[Gate], n: usize) -> Vec<Vec<usize>> {
    let mut t = vec![Vec::new(); n];
    for (i, g) in gates.iter().enumerate() {
        for q in g.qubits() {
            t[q].push(i);
        }
    }
    t
}

/// Merges same-axis neighbours and drops rotations that are the identity up to phase.
fn merge_rotations(gates: &[Gate], n: usize) -> Vec<Gate> {
    let mut slots: Slots = Vec::with_capacity(gates.len());
    let mut stack: Vec<Vec<usize>> = vec![Vec::new(); n];
    for g in gates {
        if let Some((axis, q, angle)) = g.rotation() {
            if let Some(&last) = stack[q].last() {
                if let Some((ax2, _, a2)) = slots[last].as_ref().and_then(Gate::rotation) {
                    if ax2 == axis {
                        let merged = wrap(a2 + angle);
                        if is_zero_angle(merged) {
                            slots[last] = None;
                            stack[q].pop();
                        } else {
                            slots[last] = Some(Gate::rot(axis, q, merged));
                        }
                        continue;
                    }
                }
            }
            if is_zero_angle(angle) {
                continue;
            }
            stack[q].push(slots.len());
            slots.push(Some(Gate::rot(axis, q, wrap(angle))));
        } else {
            for q in g.qubits() {
                stack[q].push(slots.len());
            }
            slots.push(Some(g.clone()));
        }
    }
    compact(slots)
}

/// `iSWAP · iSWAP = Z ⊗ Z ∝ Rz(π) ⊗ Rz(π)`.
fn fold_iswap_pairs(gates: &[Gate], n: usize) -> Vec<Gate> {
    let mut slots: Slots = gates.iter().cloned().map(Some).collect();
    let mut last: Vec<Option<usize>> = vec![None; n];
    for i in 0..slots.len() {
        let Some(g) = slots[i].clone() else { continue };
        if let Gate::ISwap { a, b } = g {
            if let (Some(la), Some(lb)) = (last[a], last[b]) {
                if la == lb && matches!(slots[la], Some(Gate::ISwap { .. })) {
                    slots[la] = Some(Gate::rz(a, PI));
                    slots[i] = Some(Gate::rz(b, PI));
                    last[a] = Some(la);
                    last[b] = Some(i);
                    continue;
                }
            }
        }
        for q in g.qubits() {
            last[q] = Some(i);
        }
    }
    compact(slots)
}

/// Replaces each run of consecutive single-qubit gates by its shortest rotation form.
pub(crate) fn resynthesize_runs(gates: &[Gate], n: usize) -> Vec<Gate> {
    let mut slots: Vec<Vec<Gate>> = gates.iter().map(|g| vec![g.clone()]).collect();
    for line in timelines(gates, n) {
        let mut i = 0;
        while i < line.len() {
            let mut j = i;
            while j < line.len()
                && gates[line[j]].qubits().len() == 1
                && !gates[line[j]].is_measurement()
            {
                j += 1;
            }
            if j - i >= 2 {
                let run: Vec<Gate> = line[i..j].iter().map(|&k| gates[k].clone()).collect();
                let q = run[0].qubits()[0];
                let replacement = euler::synthesize(&euler::product(&run), q);
                if native_cost(&replacement) < native_cost(&run) {
                    for &k in &line[i..j] {
                        slots[k].clear();
                    }
                    // nothing else touches this qubit inside the run
                    slots[line[i]] = replacement;
                }
            }
            i = j.max(i + 1);
        }
    }
    flatten(slots)
}

fn native_cost(gates: &[Gate]) -> usize {
    gates
        .iter()
        .map(|g| if matches!(g, Gate::H { .. }) { 3 } else { 1 })
        .sum()
}

fn flatten(slots: Vec<Vec<Gate>>) -> Vec<Gate> {
    slots.into_iter().flatten().collect()
}

type Mat4 = [[Complex64; 4]; 4];

fn mat4_identity() -> Mat4 {
    let mut m = [[Complex64::default(); 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[Complex64::default(); 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k] == Complex64::default() {
                continue;
            }
            for j in 0..4 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Two-qubit matrix with `lo` as bit 0 and `hi` as bit 1.
fn embed(g: &Gate, lo: usize) -> Mat4 {
    match g {
        Gate::ISwap { .. } => {
            let mut m = [[Complex64::default(); 4]; 4];
            let (o, i) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
            m[0][0] = o;
            m[3][3] = o;
            m[1][2] = i;
            m[2][1] = i;
            m
        }
        _ => {
            let u = g.matrix_1q().expect("single-qubit gate");
            let on_lo = g.qubits()[0] == lo;
            let mut m = [[Complex64::default(); 4]; 4];
            for r in 0..4 {
                for c in 0..4 {
                    let (rl, rh, cl, ch) = (r & 1, r >> 1, c & 1, c >> 1);
                    m[r][c] = if on_lo {
                        if rh == ch {
                            u[rl][cl]
                        } else {
                            Complex64::default()
                        }
                    } else if rl == cl {
                        u[rh][ch]
                    } else {
                        Complex64::default()
                    };
                }
            }
            m
        }
    }
}

/// Splits `u = hi ⊗ lo` when the block is a product of single-qubit unitaries.
fn split_local(u: &Mat4) -> Option<(Mat2, Mat2)> {
    // realignment R[(rh,ch)][(rl,cl)] = u[2rh+rl][2ch+cl]
    let r = |rh: usize, ch: usize, rl: usize, cl: usize| u[2 * rh + rl][2 * ch + cl];
    let mut best = (0, 0, 0, 0);
    let mut bv = 0.0;
    for rh in 0..2 {
        for ch in 0..2 {
            for rl in 0..2 {
                for cl in 0..2 {
                    let v = r(rh, ch, rl, cl).norm();
                    if v > bv {
                        bv = v;
                        best = (rh, ch, rl, cl);
                    }
                }
            }
        }
    }
    let (ph, pc, pl, plc) = best;
    let pivot = r(ph, pc, pl, plc);
    let mut hi = [[Complex64::default(); 2]; 2];
    let mut lo = [[Complex64::default(); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            hi[a][b] = r(a, b, pl, plc);
            lo[a][b] = r(ph, pc, a, b) / pivot;
        }
    }
    for rh in 0..2 {
        for ch in 0..2 {
            for rl in 0..2 {
                for cl in 0..2 {
                    if (r(rh, ch, rl, cl) - hi[rh][ch] * lo[rl][cl]).norm() > 1e-11 {
                        return None;
                    }
                }
            }
        }
    }
    Some((hi, lo))
}

/// Replaces two-qubit blocks whose product is a tensor product of local gates.
fn collapse_local_blocks(gates: &[Gate], n: usize) -> Vec<Gate> {
    let lines = timelines(gates, n);
    let mut pos_in_line: Vec<Vec<usize>> = vec![Vec::new(); gates.len()];
    for line in &lines {
        for (p, &g) in line.iter().enumerate() {
            pos_in_line[g].push(p);
        }
    }
    let mut consumed = vec![false; gates.len()];
    let mut slots: Vec<Vec<Gate>> = gates.iter().map(|g| vec![g.clone()]).collect();
    for start in 0..gates.len() {
        let Gate::ISwap { a, b } = gates[start] else {
            continue;
        };
        if consumed[start] {
            continue;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let line_pos = |q: usize, g: usize| {
            let qs = gates[g].qubits();
            let idx = qs.iter().position(|&x| x == q).unwrap();
            pos_in_line[g][idx]
        };
        let (mut pa, mut pb) = (line_pos(lo, start) + 1, line_pos(hi, start) + 1);
        let mut block = vec![start];
        loop {
            while pa < lines[lo].len() && gates[lines[lo][pa]].qubits().len() == 1 {
                block.push(lines[lo][pa]);
                pa += 1;
            }
            while pb < lines[hi].len() && gates[lines[hi][pb]].qubits().len() == 1 {
                block.push(lines[hi][pb]);
                pb += 1;
            }
            if pa < lines[lo].len() && pb < lines[hi].len() && lines[lo][pa] == lines[hi][pb] {
                let g = lines[lo][pa];
                if matches!(gates[g], Gate::ISwap { .. }) && !consumed[g] {
                    block.push(g);
                    pa += 1;
                    pb += 1;
                    continue;
                }
            }
            break;
        }
        block.sort_unstable();
        if block
            .iter()
            .any(|&g| consumed[g] || gates[g].is_measurement())
        {
            continue;
        }
        let mut u = mat4_identity();
        for &g in &block {
            u = mat4_mul(&embed(&gates[g], lo), &u);
        }
        let Some((hm, lm)) = split_local(&u) else {
            continue;
        };
        let mut repl = euler::synthesize(&normalize(hm), hi);
        repl.extend(euler::synthesize(&normalize(lm), lo));
        for &g in &block {
            consumed[g] = true;
            slots[g].clear();
        }
        slots[block[0]] = repl;
    }
    flatten(slots)
}

fn normalize(m: Mat2) -> Mat2 {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let s = det.sqrt();
    let id = [
        [Complex64::new(1.0, 0.0) / s, Complex64::default()],
        [Complex64::default(), Complex64::new(1.0, 0.0) / s],
    ];
    mat2_mul(&id, &m)
}

/// `(gate count, depth, two-qubit count)`
fn cost(gates: &[Gate], n: usize) -> (usize, usize, usize) {
    let c = Circuit::from_gates(n, gates.to_vec()).expect("optimizer keeps operands valid");
    (c.gate_count(), c.depth(), c.two_qubit_count())
}

fn improves(new: (usize, usize, usize), old: (usize, usize, usize)) -> bool {
    new.0 <= old.0 && new.1 <= old.1 && new.2 <= old.2 && new != old
}

fn optimize_segment(mut gates: Vec<Gate>, n: usize) -> Vec<Gate> {
    let passes: [fn(&[Gate], usize) -> Vec<Gate>; 4] = [
        merge_rotations,
        fold_iswap_pairs,
        resynthesize_runs,
        collapse_local_blocks,
    ];
    let mut current = cost(&gates, n);
    loop {
        let mut changed = false;
        for pass in passes {
            let candidate = pass(&gates, n);
            let c = cost(&candidate, n);
            if improves(c, current) {
                gates = candidate;
                current = c;
                changed = true;
            }
        }
        if !changed {
            return gates;
        }
    }
}

/// Peephole optimization to a fixpoint. Never increases gate count, depth or
/// two-qubit count; measurement markers act as barriers.
pub fn optimize(circuit: &Circuit) -> Circuit {
    let n = circuit.n_qubits();
    let mut out = Vec::new();
    let mut segment = Vec::new();
    for g in circuit.gates() {
        if g.is_measurement() {
            out.extend(optimize_segment(std::mem::take(&mut segment), n));
            out.push(g.clone());
        } else {
            segment.push(g.clone());
        }
    }
    out.extend(optimize_segment(segment, n));
    Circuit::from_gates(n, out).expect("optimizer keeps operands valid")
}
