"""Points of G(l, m) over GF(q), Plücker coordinates and Grassmann-code weights.

Points are enumerated as reduced row-echelon l x m matrices, ordered by pivot
column set (lex) and then by the free entries (lex, row-major).  The same order
fixes the columns of the generator matrix.
"""

from __future__ import annotations

import csv
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterable, TextIO

import numpy as np

from . import linalg
from .errors import BudgetExceeded, NonDivisible, Unsupported, ZeroForm
from .extalg import AltForm, all_minors, full_tensor, multi_indices
from .gf import FieldSpec

DEFAULT_BUDGET = 2_000_000
# triple enumeration is vectorized; one budget unit covers this many triples
TRIPLES_PER_UNIT = 16


def budget() -> int:
    """Enumeration budget; the GW_BUDGET environment variable overrides it."""
    return int(os.environ.get("GW_BUDGET", DEFAULT_BUDGET))


def check_budget(cost: int, what: str) -> None:
    if cost > budget():
        raise BudgetExceeded(f"{what}: cost {cost} exceeds budget {budget()} (set GW_BUDGET)")


def grassmannian_size(l: int, m: int, q: int) -> int:
    num = den = 1
    for i in range(l):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def projective_size(d: int, q: int) -> int:
    """|P^d| over GF(q)."""
    return (q ** (d + 1) - 1) // (q - 1)


def gl_order(m: int, q: int) -> int:
    out = q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        out *= q**i - 1
    return out


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int


def code_params(l: int, m: int, q: int) -> CodeParams:
    return CodeParams(n=grassmannian_size(l, m, q), k=comb(m, l))


@dataclass(frozen=True)
class SubspaceRepr:
    field: FieldSpec
    l: int
    m: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r, pivots = linalg.rref(self.rows, self.field)
        if len(pivots) != self.l or r.tolist() != [list(x) for x in self.rows]:
            raise ValueError("rows are not a full-rank reduced row-echelon matrix")

    @classmethod
    def from_span(cls, vectors, spec: FieldSpec) -> "SubspaceRepr":
        r, pivots = linalg.rref(vectors, spec)
        rows = tuple(tuple(int(x) for x in row) for row in r[: len(pivots)])
        return cls(spec, len(pivots), r.shape[1], rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)


@dataclass(frozen=True)
class PluckerVector:
    field: FieldSpec
    l: int
    m: int
    coords: dict

    def multivector(self) -> AltForm:
        return AltForm(self.field, self.m, self.l, self.coords)


def normalize_rows(vals: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Scale each row so its first nonzero entry is 1."""
    vals = np.asarray(vals, dtype=np.uint8)
    nz = vals != 0
    if not nz.any(axis=1).all():
        raise ValueError("zero row cannot be normalized")
    lead = vals[np.arange(vals.shape[0]), np.argmax(nz, axis=1)]
    return spec.vmul(vals, spec.vinv(lead)[:, None])


def plucker(sub: SubspaceRepr) -> PluckerVector:
    vals = all_minors(np.array(sub.rows, dtype=np.uint8)[None], sub.field)
    vals = normalize_rows(vals, sub.field)[0]
    coords = {I: int(v) for I, v in zip(multi_indices(sub.m, sub.l), vals) if v}
    return PluckerVector(sub.field, sub.l, sub.m, coords)


@lru_cache(maxsize=8)
def grassmannian_array(l: int, m: int, spec: FieldSpec) -> np.ndarray:
    """All points of G(l, m) as an (n, l, m) uint8 array in canonical order."""
    if not 1 <= l <= m <= 10:
        raise Unsupported(f"need 1 <= l <= m <= 10, got l={l}, m={m}")
    check_budget(spec.q ** (l * (m - l)), f"G({l},{m}) over GF({spec.q})")
    q = spec.q
    blocks = []
    for piv in combinations(range(m), l):
        free = [(i, j) for i in range(l) for j in range(piv[i] + 1, m) if j not in piv]
        count = q ** len(free)
        block = np.zeros((count, l, m), dtype=np.uint8)
        for i, p in enumerate(piv):
            block[:, i, p] = 1
        codes = np.arange(count, dtype=np.int64)
        for pos in range(len(free) - 1, -1, -1):
            i, j = free[pos]
            block[:, i, j] = codes % q
            codes //= q
        blocks.append(block)
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


def enum_grassmannian(l: int, m: int, spec: FieldSpec) -> list[SubspaceRepr]:
    arr = grassmannian_array(l, m, spec)
    return [SubspaceRepr(spec, l, m, tuple(tuple(int(x) for x in row) for row in pt)) for pt in arr]


@lru_cache(maxsize=8)
def plucker_array(l: int, m: int, spec: FieldSpec) -> np.ndarray:
    """Normalized Plücker coordinates of every point, shape (n, C(m, l))."""
    arr = grassmannian_array(l, m, spec)
    chunks = [all_minors(arr[s:s + 200_000], spec) for s in range(0, arr.shape[0], 200_000)]
    out = normalize_rows(np.concatenate(chunks), spec)
    out.setflags(write=False)
    return out


def generator_matrix(l: int, m: int, spec: FieldSpec) -> np.ndarray:
    """k x n generator matrix of C(l, m); column j is the Plücker vector of point j."""
    return np.ascontiguousarray(plucker_array(l, m, spec).T)


def write_generator_csv(out: TextIO, l: int, m: int, spec: FieldSpec) -> None:
    g = generator_matrix(l, m, spec)
    w = csv.writer(out, lineterminator="\n")
    w.writerow([l, m, spec.q, g.shape[0], g.shape[1]])
    w.writerows(g.tolist())


def _form_values(a: AltForm, pl: np.ndarray) -> np.ndarray:
    """<a, P> for every row P of a Plücker array."""
    spec = a.field
    index = {I: t for t, I in enumerate(multi_indices(a.m, a.grade))}
    acc = np.zeros(pl.shape[0], dtype=np.uint8)
    for I, c in a.items():
        acc = spec.vadd(acc, spec.vmul(pl[:, index[I]], np.uint8(c)))
    return acc


def codeword_weight_direct(a: AltForm) -> int:
    """Number of points P of G(l, m) with <a, P> != 0."""
    if a.is_zero():
        raise ZeroForm("weight of the zero form")
    pl = plucker_array(a.grade, a.m, a.field)
    return int(np.count_nonzero(_form_values(a, pl)))


def triple_count(a: AltForm) -> int:
    """Number of ordered triples (v1, v2, v3) with a(v1, v2, v3) != 0."""
    spec, m = a.field, a.m
    if a.grade != 3:
        raise ValueError("triple count needs a 3-form")
    if not spec.is_prime:
        raise Unsupported("triple count implemented for prime fields only")
    q = spec.q
    check_budget(q ** (3 * m) // TRIPLES_PER_UNIT, f"triple enumeration over GF({q})^{m}")
    t = full_tensor(a).astype(np.int64)
    vecs = np.array(np.unravel_index(np.arange(q**m), (q,) * m)).T.astype(np.int64)  # (q^m, m)
    # u[v1, v2, c] = a(v1, v2, e_c)
    mats = np.einsum("vi,ijk->vjk", vecs, t) % q
    if q == 2:
        weights = 1 << np.arange(m, dtype=np.int64)
        total = 0
        parity = (np.bitwise_count(np.arange(1 << m, dtype=np.uint32)) & 1).astype(np.int64)
        v3 = vecs @ weights
        for v1 in range(q**m):
            u = (vecs @ mats[v1] % 2) @ weights  # one packed functional per v2
            total += int(parity[u[:, None] & v3[None, :]].sum())
        return total
    total = 0
    for v1 in range(q**m):
        u = vecs @ mats[v1] % q
        vals = (u @ vecs.T) % q
        total += int(np.count_nonzero(vals))
    return total


def triple_count_weight(a: AltForm) -> int:
    """Weight from the count of ordered bases: triples / |GL(3, q)|."""
    total = triple_count(a)
    g3 = gl_order(3, a.field.q)
    if total % g3:
        raise NonDivisible(f"{total} triples not divisible by |GL(3)|={g3}")
    return total // g3


def _messages(k: int, q: int, start: int, stop: int) -> np.ndarray:
    codes = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((codes.size, k), dtype=np.uint8)
    for t in range(k - 1, -1, -1):
        out[:, t] = codes % q
        codes //= q
    return out


def exhaustive_spectrum(l: int, m: int, spec: FieldSpec,
                        weight_fn: Callable[[AltForm], int] | None = None) -> list[tuple[int, int]]:
    """Weight distribution over all nonzero message words, as sorted (weight, count).

    With ``weight_fn=None`` the codewords are generated from the generator
    matrix (Gray-code XOR of packed rows for q = 2); otherwise ``weight_fn`` is
    called on the form of each message word.
    """
    q, k = spec.q, comb(m, l)
    check_budget(q**k, f"spectrum of C({l},{m}) over GF({q})")
    counts: Counter = Counter()
    if weight_fn is not None:
        for start in range(1, q**k, 4096):
            for msg in _messages(k, q, start, min(q**k, start + 4096)):
                counts[weight_fn(AltForm.from_dense(spec, m, l, msg))] += 1
    elif q == 2:
        g = generator_matrix(l, m, spec)
        rows = [int("".join("1" if x else "0" for x in row[::-1]), 2) for row in g]
        cw = 0
        for i in range(1, 1 << k):
            cw ^= rows[(i & -i).bit_length() - 1]
            counts[cw.bit_count()] += 1
    else:
        g = generator_matrix(l, m, spec)
        check_budget(q**k * g.shape[1] // 64, f"codeword generation for C({l},{m})")
        for start in range(1, q**k, 2048):
            msgs = _messages(k, q, start, min(q**k, start + 2048))
            cw = np.zeros((msgs.shape[0], g.shape[1]), dtype=np.uint8)
            for t in range(k):
                cw = spec.vadd(cw, spec.vmul(msgs[:, t, None], g[None, t]))
            counts.update(np.count_nonzero(cw, axis=1).tolist())
    return sorted(counts.items())


def weights_direct(forms: Iterable[AltForm]) -> list[int]:
    return [codeword_weight_direct(a) for a in forms]
