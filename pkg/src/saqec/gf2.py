"""Small GF(2) linear-algebra helpers on uint8 numpy arrays."""

from __future__ import annotations

import numpy as np


def as_bits(a) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) & 1).astype(np.uint8)


def rref(a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_bits(a).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1])


def solve(a, b) -> np.ndarray | None:
    """One solution x of ``a @ x = b`` over GF(2), or None if inconsistent."""
    a = as_bits(a)
    b = as_bits(b).reshape(-1)
    aug = np.concatenate([a, b[:, None]], axis=1)
    m, piv = rref(aug)
    ncols = a.shape[1]
    if ncols in piv:
        return None
    x = np.zeros(ncols, dtype=np.uint8)
    for row, c in enumerate(piv):
        x[c] = m[row, -1]
    return x


def nullspace(a) -> np.ndarray:
    """Basis of the right null space, one vector per row."""
    a = as_bits(a)
    m, piv = rref(a)
    ncols = a.shape[1]
    free = [c for c in range(ncols) if c not in piv]
    out = np.zeros((len(free), ncols), dtype=np.uint8)
    for i, f in enumerate(free):
        out[i, f] = 1
        for row, c in enumerate(piv):
            out[i, c] = m[row, f]
    return out


def inverse(a) -> np.ndarray:
    a = as_bits(a)
    n = a.shape[0]
    m, piv = rref(np.concatenate([a, np.eye(n, dtype=np.uint8)], axis=1))
    if piv[:n] != list(range(n)):
        raise np.linalg.LinAlgError("matrix is singular over GF(2)")
    return m[:, n:]
