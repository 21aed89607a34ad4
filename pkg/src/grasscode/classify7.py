"""The eleven projective classes of 3-forms on F^7.

A form is recognized by the pair (r, |X_1|): the kernel dimension of
``v -> iota_v w`` and the size of the first weight variety of the reduced
non-degenerate form.  The table of pairs is rebuilt from the representatives
for each field and checked to be collision-free before any lookup.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import AmbiguousMatch, NoMatch, VariantMismatch, ZeroForm
from .extalg import AltForm, multi_indices
from .gf import FieldSpec, field_new, special_s
from .grassmann import grassmannian_size
from .pfaffian import batch_pfaffians
from .qpoly import Q, QPoly, ni_table, projective, wt_table
from .weightvar import contractions, phi_matrix, projective_points, reduce_degenerate, variety_sizes

TRIPLES = multi_indices(7, 3)
TRIPLE_INDEX = {I: t for t, I in enumerate(TRIPLES)}


@dataclass(frozen=True)
class ClassId:
    index: int
    char_variant: str | None = None  # "a" (odd characteristic) or "b" (characteristic 2)

    def __str__(self):
        return f"omega_{self.index}{self.char_variant or ''}"


@dataclass(frozen=True)
class Fingerprint:
    r: int
    x1_card: int | None


@dataclass(frozen=True)
class SpectrumEntry:
    weight: int
    count: int
    classes: tuple[ClassId, ...]


def class_id(index: int, spec: FieldSpec) -> ClassId:
    if not 1 <= index <= 11:
        raise ValueError(f"class index {index} outside 1..11")
    if index in (5, 11):
        return ClassId(index, "b" if spec.p == 2 else "a")
    return ClassId(index)


def representative(cid: ClassId | int, spec: FieldSpec) -> AltForm:
    """The listed representative of a class, using :func:`special_s` for s."""
    if isinstance(cid, int):
        cid = class_id(cid, spec)
    i = cid.index
    if i in (5, 11):
        want = "b" if spec.p == 2 else "a"
        if cid.char_variant != want:
            raise VariantMismatch(f"{cid} does not exist in characteristic {spec.p}")
    elif cid.char_variant is not None:
        raise VariantMismatch(f"class {i} has no characteristic variants")
    s = special_s(spec)
    omega2 = [((1, 2, 3), 1), ((1, 4, 5), 1)]
    omega5 = omega2 + [((6, 2, 4), 1), ((6, 3, 5), s)]
    if spec.p == 2:
        omega5 = omega5 + [((6, 4, 5), 1)]
    terms = {
        1: [((1, 2, 3), 1)],
        2: omega2,
        3: [((1, 2, 3), 1), ((4, 5, 6), 1)],
        4: [((1, 2, 3), 1), ((3, 4, 5), 1), ((5, 6, 1), 1)],
        5: omega5,
        6: omega2 + [((2, 6, 7), 1)],
        7: omega2 + [((1, 6, 7), 1)],
        8: [((1, 2, 3), 1), ((1, 5, 7), 1), ((6, 2, 7), 1), ((6, 4, 5), 1)],
        9: omega2 + [((1, 6, 7), 1), ((2, 4, 6), 1)],
        10: [((1, 2, 3), 1), ((4, 5, 6), 1), ((7, 1, 4), 1), ((7, 2, 5), 1), ((7, 3, 6), 1)],
        11: omega5 + [((1, 6, 7), 1)],
    }[i]
    return AltForm.from_terms(spec, 7, terms)


def all_representatives(spec: FieldSpec) -> dict[int, AltForm]:
    return {i: representative(i, spec) for i in range(1, 12)}


def fingerprint(w: AltForm) -> Fingerprint:
    if w.is_zero():
        raise ZeroForm("the zero form has no class")
    red = reduce_degenerate(w)
    if w.m - red.r >= 5:
        return Fingerprint(red.r, variety_sizes(red.reduced)[1])
    return Fingerprint(red.r, None)


@lru_cache(maxsize=None)
def fingerprint_table(spec: FieldSpec) -> dict[Fingerprint, int]:
    table: dict[Fingerprint, int] = {}
    for i, w in all_representatives(spec).items():
        fp = fingerprint(w)
        if fp in table:
            raise AmbiguousMatch(f"classes {table[fp]} and {i} share fingerprint {fp} over GF({spec.q})")
        table[fp] = i
    return table


def lookup(fp: Fingerprint, spec: FieldSpec) -> ClassId:
    table = fingerprint_table(spec)
    if fp not in table:
        raise NoMatch(f"fingerprint {fp} matches no class over GF({spec.q})")
    return class_id(table[fp], spec)


def classify(w: AltForm) -> ClassId:
    if w.m != 7 or w.grade != 3:
        raise ValueError("classify needs a 3-form on F^7")
    return lookup(fingerprint(w), w.field)


# -- random forms and group elements ------------------------------------------------

def random_dense_forms(spec: FieldSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` uniform nonzero 3-forms on F^7 as (count, 35) coefficient rows."""
    out = np.empty((0, 35), dtype=np.uint8)
    while out.shape[0] < count:
        draw = rng.integers(0, spec.q, size=(count - out.shape[0], 35), dtype=np.uint8)
        out = np.concatenate([out, draw[draw.any(axis=1)]])
    return out


def random_form(spec: FieldSpec, seed) -> AltForm:
    rng = np.random.default_rng(seed)
    return AltForm.from_dense(spec, 7, 3, random_dense_forms(spec, rng, 1)[0])


def random_gl(m: int, spec: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform element of GL(m, q) by rejection sampling."""
    while True:
        g = rng.integers(0, spec.q, size=(m, m), dtype=np.uint8)
        if linalg.rank(g, spec) == m:
            return g


# -- batch classification ------------------------------------------------------------

def _dense_tensors(forms: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Alternating (B, 7, 7, 7) arrays of a stack of dense 3-forms."""
    t = np.zeros((forms.shape[0], 7, 7, 7), dtype=np.uint8)
    for col, (a, b, c) in enumerate(TRIPLES):
        pos = forms[:, col]
        neg = spec.vneg(pos)
        a, b, c = a - 1, b - 1, c - 1
        for (i, j, k), sign in (((a, b, c), pos), ((b, c, a), pos), ((c, a, b), pos),
                                ((b, a, c), neg), ((a, c, b), neg), ((c, b, a), neg)):
            t[:, i, j, k] = sign
    return t


def _batch_x1_nondegenerate(forms: np.ndarray, spec: FieldSpec, block: int = 120_000) -> np.ndarray:
    """|X_1| for a stack of non-degenerate dense forms on F^7."""
    xs = projective_points(7, spec)
    npts = xs.shape[0]
    per = max(1, block // npts)
    out = np.zeros(forms.shape[0], dtype=np.int64)
    for s in range(0, forms.shape[0], per):
        t = _dense_tensors(forms[s:s + per], spec)
        mats = np.zeros((t.shape[0], npts, 7, 7), dtype=np.uint8)
        for i in range(7):
            mats = spec.vadd(mats, spec.vmul(xs[None, :, i, None, None], t[:, None, i]))
        pf2 = batch_pfaffians(mats.reshape(-1, 7, 7), spec, 2)[2]
        vanish = ~pf2.any(axis=1)
        out[s:s + per] = vanish.reshape(t.shape[0], npts).sum(axis=1)
    return out


def classify_dense(forms: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Class indices (1..11) for a stack of dense 3-forms on F^7."""
    forms = np.asarray(forms, dtype=np.uint8)
    n = forms.shape[0]
    if not forms.any(axis=1).all():
        raise ZeroForm("zero form in batch")
    # phi matrices for all forms at once: (n, 21, 7)
    cols = _phi_columns()
    mats = np.zeros((n, 21, 7), dtype=np.uint8)
    for i, entries in enumerate(cols):
        for row, src, neg in entries:
            vals = forms[:, src]
            mats[:, row, i] = spec.vneg(vals) if neg else vals
    ranks = linalg.batch_rank(mats, spec)
    result = np.zeros(n, dtype=np.int64)
    nondeg = np.nonzero(ranks == 7)[0]
    x1 = _batch_x1_nondegenerate(forms[nondeg], spec) if nondeg.size else []
    for b, card in zip(nondeg, x1):
        result[b] = lookup(Fingerprint(0, int(card)), spec).index
    for b in np.nonzero(ranks < 7)[0]:
        result[b] = classify(AltForm.from_dense(spec, 7, 3, forms[b])).index
    return result


@lru_cache(maxsize=None)
def _phi_columns():
    """For each i, the (row of iota_{e_i} coefficient, source triple column, negate) entries."""
    pairs = {J: t for t, J in enumerate(multi_indices(7, 2))}
    cols = []
    for i in range(1, 8):
        entries = []
        for t, I in enumerate(TRIPLES):
            if i in I:
                pos = I.index(i)
                J = I[:pos] + I[pos + 1:]
                entries.append((pairs[J], t, bool(pos & 1)))
        cols.append(entries)
    return cols


# -- Monte Carlo orbit frequencies -------------------------------------------------

CHUNK = 5_000


def _sample_chunk(args) -> np.ndarray:
    q, seed_seq, count = args
    spec = field_new(q)
    rng = np.random.default_rng(seed_seq)
    labels = classify_dense(random_dense_forms(spec, rng, count), spec)
    return np.bincount(labels, minlength=12)[1:]


def sample_class_counts(spec: FieldSpec, count: int, seed: int, workers: int | None = None) -> np.ndarray:
    """Observed class counts for ``count`` uniform nonzero forms.

    Samples are drawn in fixed-size chunks, each from its own child of
    ``SeedSequence(seed)``, so the result does not depend on ``workers``.
    """
    nchunks = math.ceil(count / CHUNK)
    children = np.random.SeedSequence(seed).spawn(nchunks)
    jobs = [(spec.q, children[c], min(CHUNK, count - c * CHUNK)) for c in range(nchunks)]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or nchunks == 1:
        parts = [_sample_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sample_chunk, jobs))
    return np.sum(parts, axis=0)


def expected_class_probabilities(q: int) -> list[float]:
    """Probability that a uniform nonzero 3-form on F^7 lies in each class."""
    total = q**35 - 1
    return [float((q - 1) * n.at_int(q)) / total for n in ni_table()]


def sample_report(spec: FieldSpec, count: int, seed: int, workers: int | None = None) -> list[dict]:
    observed = sample_class_counts(spec, count, seed, workers)
    rows = []
    for i, (obs, p) in enumerate(zip(observed, expected_class_probabilities(spec.q)), start=1):
        mean = count * p
        sigma = math.sqrt(count * p * (1 - p))
        rows.append({"class": i, "observed": int(obs), "expected": mean, "sigma": sigma,
                     "z": (obs - mean) / sigma if sigma else 0.0})
    return rows


# -- spectrum of C(3,7) -------------------------------------------------------------

def spectrum_c37(spec: FieldSpec) -> list[SpectrumEntry]:
    """Weight distribution of C(3,7), merging classes whose weights coincide at this q."""
    q = spec.q
    merged: dict[int, tuple[int, list[ClassId]]] = {}
    for i, (n, w) in enumerate(zip(ni_table(), wt_table()), start=1):
        wt = w.at_int(q)
        cnt, ids = merged.get(wt, (0, []))
        merged[wt] = (cnt + (q - 1) * n.at_int(q), ids + [class_id(i, spec)])
    return [SpectrumEntry(wt, cnt, tuple(ids)) for wt, (cnt, ids) in sorted(merged.items())]


def code_length_37(q: int) -> int:
    return grassmannian_size(3, 7, q)



# |X_1| and |X_2| of the non-degenerate representatives, as polynomials in q
VARIETY_TABLE: dict[int, tuple[QPoly, QPoly]] = {
    6: (1 + 2 * Q + 2 * Q**2, 2 * projective(5) - projective(4)),
    7: (projective(5), projective(5)),
    8: (1 + Q, Q**3 * projective(1) ** 2 + projective(2)),
    9: (projective(2), projective(5)),
    10: (QPoly(), projective(5)),
    11: (QPoly.const(1), projective(4)),
}
