"""Characteristic-free Pfaffians of 2-forms.

``Pf_k(lam)`` is the 2k-form determined by ``iota_v Pf_k = iota_v lam ^ Pf_{k-1}``
for every v.  Its coefficient at ``I = (i1 < ... < i2k)`` is the pairing of
``iota_{e_i1} lam ^ Pf_{k-1}`` with ``e_i2 ^ ... ^ e_i2k``; that is how
:func:`pfaffians` builds it, one level at a time.  No division is involved, so
this works in characteristic 2 and 3 where ``lam^k / k!`` makes no sense.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg
from .errors import GradeError, OddSize
from .extalg import AltForm, basis_vector, interior, wedge
from .gf import FieldSpec


def pfaffians(lam: AltForm, kmax: int) -> list[AltForm]:
    """``[Pf_0(lam), ..., Pf_kmax(lam)]``."""
    if lam.grade != 2 and lam:
        raise GradeError(f"Pfaffians need a 2-form, got grade {lam.grade}")
    if 2 * kmax > lam.m:
        raise GradeError(f"Pf_{kmax} has grade {2 * kmax} > m={lam.m}")
    f, m = lam.field, lam.m
    out = [AltForm.scalar(f, m)]
    if kmax == 0:
        return out
    contractions = [interior(basis_vector(m, i), lam) if lam else AltForm.zero(f, m, 1)
                    for i in range(1, m + 1)]
    for k in range(1, kmax + 1):
        prev = out[-1]
        coeffs: dict[tuple, int] = {}
        if prev:
            for i in range(1, m + 1):
                w = wedge(contractions[i - 1], prev)
                for J, c in w.items():
                    if J[0] > i:
                        coeffs[(i,) + J] = c
        out.append(AltForm(f, m, 2 * k, coeffs))
    return out


def pf_k(lam: AltForm, k: int) -> AltForm:
    return pfaffians(lam, k)[k]


def rank_2form(lam: AltForm) -> int:
    """Rank 2r of lam, read off as the last nonvanishing Pfaffian."""
    if lam.grade != 2 and lam:
        raise GradeError(f"rank_2form needs a 2-form, got grade {lam.grade}")
    if lam.is_zero():
        return 0
    pfs = pfaffians(lam, lam.m // 2)
    r = 0
    while r + 1 < len(pfs) and pfs[r + 1]:
        r += 1
    return 2 * r


def gram_matrix(lam: AltForm) -> np.ndarray:
    """Matrix of values lam(e_i, e_j)."""
    f, m = lam.field, lam.m
    a = np.zeros((m, m), dtype=np.uint8)
    for (i, j), c in lam.items():
        a[i - 1, j - 1] = c
        a[j - 1, i - 1] = f.neg(c)
    return a


def gram_rank(lam: AltForm) -> int:
    return linalg.rank(gram_matrix(lam), lam.field)


def form_from_skew(a, spec: FieldSpec) -> AltForm:
    """The 2-form sum_{i<j} A_ij e^i ^ e^j; A must be skew with zero diagonal."""
    a = np.asarray(a, dtype=np.uint8)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    for i in range(n):
        if a[i, i]:
            raise ValueError("skew matrix must have zero diagonal")
        for j in range(i + 1, n):
            if spec.add(int(a[i, j]), int(a[j, i])):
                raise ValueError("matrix is not skew-symmetric")
    return AltForm(spec, n, 2, {(i + 1, j + 1): int(a[i, j]) for i in range(n) for j in range(i + 1, n)})


def matrix_pfaffian(a, spec: FieldSpec) -> int:
    """Pfaffian of a skew matrix with zero diagonal, as the top coefficient of Pf_k."""
    a = np.asarray(a, dtype=np.uint8)
    n = a.shape[0]
    if n % 2:
        raise OddSize(f"Pfaffian of odd size {n}")
    if n == 0:
        return 1
    lam = form_from_skew(a, spec)
    return pf_k(lam, n // 2).coeff(tuple(range(1, n + 1)))


# -- batched kernel ------------------------------------------------------------

def batch_pfaffians(mats: np.ndarray, spec: FieldSpec, kmax: int) -> list[np.ndarray]:
    """Pfaffian coefficients for a stack of skew matrices.

    ``mats`` has shape (N, m, m).  Entry k of the result has shape
    (N, C(m, 2k)), columns in lex order of the index subsets.  Uses the same
    first-index expansion as :func:`pfaffians`.
    """
    mats = np.asarray(mats, dtype=np.uint8)
    n, m, _ = mats.shape
    kmax = min(kmax, m // 2)
    prev: dict[tuple, np.ndarray] = {(): np.ones(n, dtype=np.uint8)}
    out = [np.ones((n, 1), dtype=np.uint8)]
    for k in range(1, kmax + 1):
        cur: dict[tuple, np.ndarray] = {}
        for S in combinations(range(m), 2 * k):
            i0 = S[0]
            acc = None
            for t in range(1, 2 * k):
                rest = S[1:t] + S[t + 1:]
                term = spec.vmul(mats[:, i0, S[t]], prev[rest])
                if not t & 1:
                    term = spec.vneg(term)
                acc = term if acc is None else spec.vadd(acc, term)
            cur[S] = acc
        out.append(np.stack([cur[S] for S in combinations(range(m), 2 * k)], axis=1))
        prev = cur
    return out


def batch_half_rank(mats: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """For each skew matrix, the largest k with Pf_k nonzero (rank / 2)."""
    levels = batch_pfaffians(mats, spec, mats.shape[1] // 2)
    r = np.zeros(mats.shape[0], dtype=np.int64)
    for k in range(1, len(levels)):
        r[levels[k].any(axis=1)] = k
    return r
