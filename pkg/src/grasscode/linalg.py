"""Gaussian elimination over GF(q) on uint8 index arrays."""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


def as_array(mat) -> np.ndarray:
    return np.array(mat, dtype=np.uint8, ndmin=2)


def rref(mat, spec: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    a = as_array(mat).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row] = spec.vmul(a[row], np.uint8(spec.inv(int(a[row, col]))))
        factors = a[:, col].copy()
        factors[row] = 0
        others = np.nonzero(factors)[0]
        if others.size:
            sub = spec.vmul(factors[others, None], a[row][None, :])
            a[others] = spec.vsub(a[others], sub)
        pivots.append(col)
        row += 1
    return a, pivots


def rank(mat, spec: FieldSpec) -> int:
    a = as_array(mat)
    if a.size == 0:
        return 0
    return len(rref(a, spec)[1])


def nullspace(mat, spec: FieldSpec) -> list[tuple[int, ...]]:
    """Basis of {x : mat @ x = 0}, one vector per free column, in column order."""
    a = as_array(mat)
    ncols = a.shape[1]
    r, pivots = rref(a, spec)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = spec.neg(int(r[i, f]))
        basis.append(tuple(v))
    return basis


def det(mat, spec: FieldSpec) -> int:
    a = as_array(mat).copy()
    n = a.shape[0]
    result = 1
    for col in range(n):
        nz = np.nonzero(a[col:, col])[0]
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            result = spec.neg(result)
        d = int(a[col, col])
        result = spec.mul(result, d)
        inv = np.uint8(spec.inv(d))
        for r in range(col + 1, n):
            if a[r, col]:
                f = spec.vmul(a[r, col], inv)
                a[r] = spec.vsub(a[r], spec.vmul(f, a[col]))
    return result


def inverse(mat, spec: FieldSpec) -> np.ndarray:
    a = as_array(mat)
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.uint8)], axis=1)
    r, pivots = rref(aug, spec)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def matmul(a, b, spec: FieldSpec) -> np.ndarray:
    a, b = as_array(a), as_array(b)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    for t in range(a.shape[1]):
        out = spec.vadd(out, spec.vmul(a[:, t, None], b[None, t, :]))
    return out


def batch_rank(mats: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Ranks of a stack of matrices, shape (B, R, C) -> (B,)."""
    a = np.array(mats, dtype=np.uint8, copy=True)
    nb, nrows, ncols = a.shape
    cur = np.zeros(nb, dtype=np.int64)
    rows = np.arange(nrows)
    bidx = np.arange(nb)
    for col in range(ncols):
        cand = (a[:, :, col] != 0) & (rows[None, :] >= cur[:, None])
        has = cand.any(axis=1) & (cur < nrows)
        if not has.any():
            continue
        b = bidx[has]
        piv = np.argmax(cand[has], axis=1)
        c = cur[has]
        prow = a[b, piv].copy()
        a[b, piv] = a[b, c]
        inv = spec.vinv(prow[:, col])
        prow = spec.vmul(prow, inv[:, None])
        a[b, c] = prow
        factors = a[b, :, col].copy()
        factors[np.arange(b.size), c] = 0
        a[b] = spec.vsub(a[b], spec.vmul(factors[:, :, None], prow[:, None, :]))
        cur[has] += 1
    return cur
