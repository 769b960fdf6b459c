"""Dense linear algebra over F_p with numpy int64 arrays."""

from __future__ import annotations

import numpy as np

__all__ = ["rref", "rank", "nullspace", "left_nullspace", "row_basis", "span_contains"]


def _check(p: int):
    if p <= 1 or p >= 3_000_000_000:
        raise ValueError("need a prime below 3e9 for int64 arithmetic")


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    _check(p)
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("rref needs a 2d array")
    nrows, ncols = A.shape
    piv: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        piv.append(c)
        r += 1
    return A[:r], piv


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Rows form a basis of {v : A v = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = (-R[r, f]) % p
    return out


def left_nullspace(A, p: int) -> np.ndarray:
    """Rows y with y A = 0."""
    A = np.asarray(A, dtype=np.int64)
    return nullspace(A.T, p)


def row_basis(A, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    return rref(A, p)[0]


def span_contains(B, V, p: int) -> bool:
    """Every row of V lies in the row space of B."""
    B = np.asarray(B, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    if V.size == 0:
        return True
    if B.size == 0:
        return not np.any(V % p)
    return rank(np.vstack([B, V]), p) == rank(B, p)
