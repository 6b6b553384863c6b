"""Dense exact linear algebra over prime fields GF(p).

All matrices are numpy int64 arrays with entries reduced into [0, p).
Every routine is pure and exact; nothing here ever touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PRIMES = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
}


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p), 2 <= p <= 97."""

    p: int

    def __post_init__(self):
        if self.p not in _PRIMES:
            raise ValueError(f"p must be a prime in [2, 97], got {self.p}")


def asmat(a, p: int) -> np.ndarray:
    """Coerce to a 2-d int64 matrix with entries reduced mod p."""
    m = np.atleast_2d(np.asarray(a, dtype=np.int64))
    return np.mod(m, p)


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def matmul(a, b, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64), p)


def rref(a, p: int):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    m = asmat(a, p).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * inv_mod(m[r, c], p)) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    _, pivots = rref(a, p)
    return len(pivots)


def solve(a, b, p: int):
    """Some x with a @ x = b, or None if the system is inconsistent."""
    a = asmat(a, p)
    b = asmat(b, p)
    if a.shape[0] != b.shape[0]:
        raise ValueError("row counts differ")
    n = a.shape[1]
    aug, pivots = rref(np.hstack([a, b]), p)
    if any(c >= n for c in pivots):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = aug[r, n:]
    return x


def nullspace(a, p: int) -> np.ndarray:
    """Basis of {x : a @ x = 0}, as columns."""
    a = asmat(a, p)
    n = a.shape[1]
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r[row, fc]) % p
    return basis


def kron(a, b, p: int) -> np.ndarray:
    return np.mod(np.kron(asmat(a, p), asmat(b, p)), p)


def row_basis(a, p: int) -> np.ndarray:
    """Canonical (RREF) basis of the row space; zero rows dropped."""
    r, pivots = rref(a, p)
    return r[: len(pivots)]


def coords_in_rows(basis, v, p: int):
    """Express vector(s) v as combinations of the rows of `basis`.

    v may be a vector or a matrix of stacked row vectors; returns the
    coefficient rows, or None if some v is outside the span.
    """
    basis = asmat(basis, p)
    v = asmat(v, p)
    x = solve(basis.T, v.T, p)
    return None if x is None else x.T


def in_rowspace(basis, v, p: int) -> bool:
    return coords_in_rows(basis, v, p) is not None


def intersect_rowspaces(a, b, p: int) -> np.ndarray:
    """RREF basis of (row space of a) ∩ (row space of b)."""
    a = row_basis(a, p)
    b = row_basis(b, p)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    # x = u a = w b  <=>  (u | w) in left kernel of vstack(a, -b)
    stacked = np.vstack([a, (-b) % p])
    left_kernel = nullspace(stacked.T, p).T
    if left_kernel.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return row_basis(matmul(left_kernel[:, : a.shape[0]], a, p), p)


def sum_rowspaces(a, b, p: int) -> np.ndarray:
    return row_basis(np.vstack([asmat(a, p), asmat(b, p)]), p)


def is_invertible(a, p: int) -> bool:
    a = asmat(a, p)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def inverse(a, p: int) -> np.ndarray:
    a = asmat(a, p)
    n = a.shape[0]
    x = solve(a, np.eye(n, dtype=np.int64), p)
    if x is None or a.shape[0] != a.shape[1]:
        raise ValueError("matrix not invertible")
    return x
