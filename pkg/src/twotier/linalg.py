"""Row reduction and rank over prime fields GF(p).

Matrices are numpy integer arrays with entries reduced mod p. Pivoting is
deterministic (first nonzero entry in column order) so reduced bases are
reproducible across runs.
"""

import numpy as np


def as_array(rows, p: int) -> np.ndarray:
    mat = np.array(rows, dtype=np.int64)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    return mat % p


def rref(rows, p: int):
    """Reduced row echelon form; returns (matrix, pivot column tuple)."""
    mat = as_array(rows, p).copy()
    n_rows, n_cols = mat.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        hit = None
        for i in range(r, n_rows):
            if mat[i, c]:
                hit = i
                break
        if hit is None:
            continue
        if hit != r:
            mat[[r, hit]] = mat[[hit, r]]
        inv = pow(int(mat[r, c]), -1, p)
        mat[r] = (mat[r] * inv) % p
        for i in range(n_rows):
            if i != r and mat[i, c]:
                mat[i] = (mat[i] - mat[i, c] * mat[r]) % p
        pivots.append(c)
        r += 1
    return mat, tuple(pivots)


def rank(rows, p: int) -> int:
    mat = as_array(rows, p)
    if mat.size == 0:
        return 0
    _, pivots = rref(mat, p)
    return len(pivots)


def basis_rows(rows, p: int):
    """Nonzero RREF rows as a tuple of int tuples (canonical basis)."""
    mat, pivots = rref(rows, p)
    return tuple(tuple(int(x) for x in mat[i]) for i in range(len(pivots)))


def solve(mat, rhs, p: int):
    """One solution x of mat @ x = rhs over GF(p), or None if inconsistent."""
    a = as_array(mat, p)
    b = np.asarray(rhs, dtype=np.int64).reshape(-1, 1) % p
    aug, pivots = rref(np.hstack([a, b]), p)
    n_cols = a.shape[1]
    if n_cols in pivots:
        return None
    x = [0] * n_cols
    for i, c in enumerate(pivots):
        x[c] = int(aug[i, n_cols])
    return tuple(x)


def kernel_basis(mat, p: int):
    """Basis of the right kernel {x : mat @ x = 0} as row tuples."""
    a = as_array(mat, p)
    red, pivots = rref(a, p)
    n_cols = a.shape[1]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n_cols
        v[fc] = 1
        for i, c in enumerate(pivots):
            v[c] = int(-red[i, fc]) % p
        basis.append(tuple(v))
    return basis


def in_row_space(rows, vector, p: int) -> bool:
    mat = as_array(rows, p)
    base = rank(mat, p)
    stacked = np.vstack([mat, as_array([vector], p)])
    return rank(stacked, p) == base
