"""Dense linear algebra mod a prime, vectorized with numpy int64 arrays."""

from __future__ import annotations

import numpy as np


def asmod(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def rref(mat, p: int):
    """Reduced row echelon form mod p.  Returns (R, pivot_columns)."""
    a = asmod(mat, p).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        other = np.nonzero(a[:, c])[0]
        other = other[other != r]
        if other.size:
            a[other] = (a[other] - np.outer(a[other, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def kernel(mat, p: int) -> np.ndarray:
    """Basis of the right null space mod p, one vector per row."""
    a, pivots = rref(mat, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-a[r, c]) % p
    return basis


def solve(mat, rhs, p: int):
    """One solution of mat @ x = rhs mod p, or None.  rhs may be 1-D or 2-D."""
    a = asmod(mat, p)
    b = asmod(rhs, p)
    single = b.ndim == 1
    if single:
        b = b[:, None]
    aug, pivots = rref(np.hstack([a, b]), p)
    ncols = a.shape[1]
    if any(c >= ncols for c in pivots):
        return None
    x = np.zeros((ncols, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = aug[r, ncols:]
    return x[:, 0] if single else x


def inverse(mat, p: int):
    """Matrix inverse mod p, or None if singular."""
    a = asmod(mat, p)
    n = a.shape[0]
    aug, pivots = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if pivots != list(range(n)):
        return None
    return aug[:, n:]


def det(mat, p: int) -> int:
    """Determinant mod p by Gaussian elimination."""
    a = asmod(mat, p).copy()
    n = a.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            a[[c, i]] = a[[i, c]]
            d = -d
        d = (d * int(a[c, c])) % p
        inv = pow(int(a[c, c]), -1, p)
        below = np.nonzero(a[c + 1:, c])[0]
        if below.size:
            rows = below + c + 1
            factors = (a[rows, c] * inv) % p
            a[rows] = (a[rows] - np.outer(factors, a[c])) % p
    return d % p


def matpow(mat, e: int, p: int) -> np.ndarray:
    """mat ** e mod p by binary powering."""
    a = asmod(mat, p)
    out = np.eye(a.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            out = (out @ a) % p
        a = (a @ a) % p
        e >>= 1
    return out
