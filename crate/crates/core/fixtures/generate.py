"""Writes the synthetic FCIDUMP fixtures in this directory.

Integrals carry a Z2 orbital parity: h couples equal-parity orbitals only and
(pq|rs) vanishes unless parity(p)+parity(q)+parity(r)+parity(s) is even.
Two-electron integrals come from a density-fitting-like factorization
(pq|rs) = sum_L B[L,p,q] B[L,r,s], which keeps them positive semidefinite.
R, TS and P1 differ along a reaction coordinate s that narrows the HOMO-LUMO
gap towards the transition state.
"""

import itertools
import pathlib

import numpy as np

HERE = pathlib.Path(__file__).resolve().parent


def write_fcidump(path, h, g, core, n_elec):
    n = h.shape[0]
    lines = [f" &FCI NORB={n},NELEC={n_elec},MS2=0,", "  ORBSYM=" + "1," * n, "  ISYM=1,", " &END"]
    seen = set()
    for p, q, r, s in itertools.product(range(n), repeat=4):
        key = min(
            (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
            (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
        )
        if key in seen:
            continue
        seen.add(key)
        v = g[p, q, r, s]
        if abs(v) > 1e-15:
            lines.append(f"{v: .16e} {p + 1:3d} {q + 1:3d} {r + 1:3d} {s + 1:3d}")
    for p in range(n):
        for q in range(p + 1):
            if abs(h[p, q]) > 1e-15:
                lines.append(f"{h[p, q]: .16e} {p + 1:3d} {q + 1:3d}   0   0")
    lines.append(f"{core: .16e}   0   0   0   0")
    path.write_text("\n".join(lines) + "\n")


def eri(factors):
    return np.einsum("lpq,lrs->pqrs", factors, factors)


def symmetric(n, entries):
    m = np.zeros((n, n))
    for (p, q), v in entries.items():
        m[p, q] = m[q, p] = v
    return m


def cas22(s):
    h = np.diag([-0.62 + 0.06 * s, -0.18 - 0.05 * s])
    factors = np.array([
        symmetric(2, {(0, 0): 0.66, (1, 1): 0.60}),
        symmetric(2, {(0, 1): 0.30 + 0.06 * s}),
    ])
    return h, eri(factors)


def cas44(s):
    h = symmetric(4, {
        (0, 0): -0.78 + 0.05 * s, (1, 1): -0.64 + 0.04 * s,
        (2, 2): -0.12 - 0.05 * s, (3, 3): -0.02 - 0.04 * s,
        (0, 2): 0.035, (1, 3): -0.028,
    })
    factors = np.array([
        symmetric(4, {(0, 0): 0.64, (1, 1): 0.61, (2, 2): 0.57, (3, 3): 0.55, (0, 2): 0.03, (1, 3): 0.02}),
        symmetric(4, {(0, 1): 0.14 + 0.02 * s, (2, 3): 0.13, (0, 3): 0.08, (1, 2): 0.10 + 0.02 * s}),
        symmetric(4, {(0, 2): 0.15 + 0.02 * s, (1, 3): 0.13 + 0.02 * s, (0, 0): 0.03, (2, 2): -0.04}),
        symmetric(4, {(0, 3): 0.06, (1, 2): -0.05, (0, 1): 0.04}),
    ])
    return h, eri(factors)


STATES = {"r": (0.0, -7.8500), "ts": (1.0, -7.8500), "p1": (0.55, -7.8500)}


def main():
    for name, (s, core) in STATES.items():
        h, g = cas22(s)
        write_fcidump(HERE / f"{name}_22.fcidump", h, g, core + {"r": 0.0, "ts": -0.060, "p1": -0.040}[name], 2)
        h, g = cas44(s)
        write_fcidump(HERE / f"{name}_44.fcidump", h, g, core + {"r": 0.0, "ts": -0.120, "p1": -0.075}[name], 4)
    # minimal-basis H2 near equilibrium
    h = np.diag([-1.252477495, -0.475934275])
    g = np.zeros((2, 2, 2, 2))
    g[0, 0, 0, 0] = 0.674493166
    g[1, 1, 1, 1] = 0.697397633
    for idx in [(0, 0, 1, 1), (1, 1, 0, 0)]:
        g[idx] = 0.663472101
    for idx in [(0, 1, 0, 1), (1, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 1)]:
        g[idx] = 0.181287518
    write_fcidump(HERE / "h2_like.fcidump", h, g, 0.713753990, 2)


if __name__ == "__main__":
    main()
