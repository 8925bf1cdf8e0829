"""GF(2) linear algebra on dense uint8 matrices."""

from __future__ import annotations

import numpy as np


def gf2_rref(h) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2); returns (rref, pivot columns)."""
    a = (np.asarray(h, dtype=np.uint8) & 1).copy()
    if a.ndim != 2:
        raise ValueError(f"expected 2-d matrix, got shape {a.shape}")
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def gf2_rank(h) -> int:
    return len(gf2_rref(h)[1])


def gf2_nullspace(h) -> np.ndarray:
    """Basis of the GF(2) nullspace of h, one vector per row.

    Every returned vector x satisfies h @ x = 0 (mod 2); the rows are
    linearly independent and span the nullspace, so the basis has
    exactly ``n - rank(h)`` rows (possibly zero).
    """
    a, pivots = gf2_rref(h)
    n = a.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = a[r, f]
    return basis


def gf2_matvec(h, x) -> np.ndarray:
    """h @ x over GF(2)."""
    h = np.asarray(h, dtype=np.int64) & 1
    x = np.asarray(x, dtype=np.int64) & 1
    return ((h @ x) % 2).astype(np.uint8)
