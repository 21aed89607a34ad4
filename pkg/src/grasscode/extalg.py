"""Alternating forms and multivectors on F^m.

An :class:`AltForm` of grade j is a sparse map from strictly increasing
1-based index tuples to nonzero field-element indices.  The same type is used
for j-forms (dual basis ``e^I``) and j-multivectors (basis ``e_I``); which one
is meant is decided by context, exactly as with the pairing ``<e^I, e_J>``.

Vectors are plain tuples of element indices of length m.
"""

from __future__ import annotations

import re
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (ArityMismatch, FormParseError, GradeMismatch, GradeOverflow,
                     GradeUnderflow, WrongGradeOrDim, ZeroEta)
from .gf import FieldSpec, field_new

Vector = tuple


def sort_sign(seq: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Sort ``seq``; return (sorted tuple, parity of inversions) or None on a repeat."""
    s = tuple(sorted(seq))
    if len(set(s)) != len(s):
        return None
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return s, inv & 1


def multi_indices(m: int, j: int) -> list[tuple[int, ...]]:
    """All strictly increasing 1-based j-tuples in lex order."""
    return list(combinations(range(1, m + 1), j))


class AltForm:
    __slots__ = ("field", "m", "grade", "_c")

    def __init__(self, field: FieldSpec, m: int, grade: int, coeffs: Mapping[tuple, int] | None = None):
        if not 0 <= grade <= m:
            raise GradeOverflow(f"grade {grade} outside [0, {m}]")
        self.field = field
        self.m = m
        self.grade = grade
        c: dict[tuple[int, ...], int] = {}
        for key, val in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != grade or any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"bad multi-index {key} for grade {grade}")
            if key and not (1 <= key[0] and key[-1] <= m):
                raise ValueError(f"multi-index {key} out of range 1..{m}")
            val = int(val)
            if not 0 <= val < field.q:
                raise ValueError(f"coefficient {val} not an element of GF({field.q})")
            if val:
                c[key] = val
        self._c = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_terms(cls, field: FieldSpec, m: int, terms: Iterable[tuple[Sequence[int], int]]) -> "AltForm":
        """Sum of ``c * e^{i1...ij}`` terms; indices may be unsorted, signs applied."""
        acc: dict[tuple, int] = {}
        grade = None
        for idx, c in terms:
            idx = tuple(idx)
            if grade is None:
                grade = len(idx)
            elif len(idx) != grade:
                raise GradeMismatch("terms of different grades")
            ss = sort_sign(idx)
            if ss is None:
                continue
            key, par = ss
            c = field.from_int(c) if isinstance(c, int) and c < 0 else int(c)
            if par:
                c = field.neg(c)
            acc[key] = field.add(acc.get(key, 0), c)
        return cls(field, m, grade or 0, acc)

    @classmethod
    def basis(cls, field: FieldSpec, m: int, idx: Sequence[int]) -> "AltForm":
        return cls(field, m, len(idx), {tuple(idx): 1})

    @classmethod
    def zero(cls, field: FieldSpec, m: int, grade: int) -> "AltForm":
        return cls(field, m, grade)

    @classmethod
    def scalar(cls, field: FieldSpec, m: int, c: int = 1) -> "AltForm":
        return cls(field, m, 0, {(): c})

    @classmethod
    def from_vector(cls, field: FieldSpec, v: Sequence[int]) -> "AltForm":
        return cls(field, len(v), 1, {(i + 1,): c for i, c in enumerate(v)})

    @classmethod
    def decomposable(cls, field: FieldSpec, vectors: Sequence[Sequence[int]], m: int | None = None) -> "AltForm":
        """The multivector ``v_1 ^ ... ^ v_j``."""
        if m is None:
            m = len(vectors[0])
        out = cls.scalar(field, m)
        for v in vectors:
            out = wedge(out, cls.from_vector(field, v))
        return out

    @classmethod
    def from_dense(cls, field: FieldSpec, m: int, grade: int, values) -> "AltForm":
        return cls(field, m, grade, dict(zip(multi_indices(m, grade), (int(x) for x in values))))

    # -- accessors ---------------------------------------------------------

    @property
    def coeffs(self) -> dict[tuple[int, ...], int]:
        return dict(self._c)

    def coeff(self, idx: Sequence[int]) -> int:
        return self._c.get(tuple(idx), 0)

    def items(self):
        return sorted(self._c.items())

    def to_dense(self) -> np.ndarray:
        return np.array([self._c.get(I, 0) for I in multi_indices(self.m, self.grade)], dtype=np.uint8)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def _check(self, other: "AltForm"):
        if other.field != self.field or other.m != self.m:
            raise ValueError("forms over different fields or dimensions")

    def __eq__(self, other):
        if not isinstance(other, AltForm):
            return NotImplemented
        if self.field != other.field or self.m != other.m:
            return False
        if not self._c and not other._c:
            return True
        return self.grade == other.grade and self._c == other._c

    def __hash__(self):
        return hash((self.field.q, self.m, self.grade, tuple(sorted(self._c.items()))))

    def __add__(self, other: "AltForm") -> "AltForm":
        self._check(other)
        if other.grade != self.grade:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise GradeMismatch(f"cannot add grades {self.grade} and {other.grade}")
        f = self.field
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = f.add(c.get(k, 0), v)
        return AltForm(f, self.m, self.grade, c)

    def __neg__(self) -> "AltForm":
        f = self.field
        return AltForm(f, self.m, self.grade, {k: f.neg(v) for k, v in self._c.items()})

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + (-other)

    def scale(self, c: int) -> "AltForm":
        f = self.field
        return AltForm(f, self.m, self.grade, {k: f.mul(c, v) for k, v in self._c.items()})

    def __repr__(self):
        if not self._c:
            return f"AltForm(0, grade={self.grade}, m={self.m}, GF({self.field.q}))"
        terms = []
        for k, v in self.items():
            name = "e^{" + "".join(map(str, k)) + "}" if k else "1"
            terms.append(name if v == 1 else f"{v}*{name}")
        return " + ".join(terms)


def wedge(a: AltForm, b: AltForm) -> AltForm:
    a._check(b)
    if a.grade + b.grade > a.m:
        raise GradeOverflow(f"grades {a.grade}+{b.grade} exceed m={a.m}")
    f = a.field
    char2 = f.p == 2
    out: dict[tuple, int] = {}
    for I, x in a._c.items():
        sI = set(I)
        for J, y in b._c.items():
            if sI.intersection(J):
                continue
            ss = sort_sign(I + J)
            key, par = ss
            c = f.mul(x, y)
            if par and not char2:
                c = f.neg(c)
            out[key] = f.add(out.get(key, 0), c)
    return AltForm(f, a.m, a.grade + b.grade, out)


def interior(v: Sequence[int], a: AltForm) -> AltForm:
    """Contraction ``iota_v a``; adjoint to ``beta -> v ^ beta`` under :func:`pair`."""
    if a.grade == 0:
        raise GradeUnderflow("interior product of a grade-0 form")
    if len(v) != a.m:
        raise ArityMismatch(f"vector of length {len(v)} for m={a.m}")
    f = a.field
    char2 = f.p == 2
    out: dict[tuple, int] = {}
    for I, x in a._c.items():
        for pos, i in enumerate(I):
            vi = v[i - 1]
            if not vi:
                continue
            c = f.mul(int(vi), x)
            if pos & 1 and not char2:
                c = f.neg(c)
            J = I[:pos] + I[pos + 1:]
            out[J] = f.add(out.get(J, 0), c)
    return AltForm(f, a.m, a.grade - 1, out)


def basis_vector(m: int, i: int) -> Vector:
    """The 1-based standard basis vector e_i."""
    v = [0] * m
    v[i - 1] = 1
    return tuple(v)


def pair(a: AltForm, b: AltForm) -> int:
    """``<a, b>`` with ``<e^I, e_J> = [I == J]``."""
    a._check(b)
    if a.grade != b.grade and a and b:
        raise GradeMismatch(f"cannot pair grades {a.grade} and {b.grade}")
    f = a.field
    s = 0
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    for I, x in small._c.items():
        y = big._c.get(I)
        if y:
            s = f.add(s, f.mul(x, y))
    return s


def eval_on_vectors(a: AltForm, *vectors: Sequence[int]) -> int:
    """``a(v_1, ..., v_j)``, computed by successive contractions."""
    if len(vectors) != a.grade:
        raise ArityMismatch(f"{len(vectors)} vectors for a grade-{a.grade} form")
    cur = a
    for v in vectors:
        cur = interior(v, cur)
    return cur.coeff(())


def star7(a: AltForm) -> Vector:
    """Isomorphism sending e^{1..i^..7} to (-1)^(i-1) e_i."""
    if a.m != 7 or (a.grade != 6 and a):
        raise WrongGradeOrDim("star7 needs a 6-form on F^7")
    f = a.field
    out = [0] * 7
    for i in range(1, 8):
        c = a.coeff(tuple(j for j in range(1, 8) if j != i))
        out[i - 1] = f.neg(c) if (i - 1) & 1 else c
    return tuple(out)


def h_eta(a: AltForm, eta: AltForm) -> Vector:
    """The vector H with ``a ^ beta = <beta, H> eta`` for every 1-form beta."""
    if a.m != 7 or eta.m != 7 or eta.grade != 7 or (a.grade != 6 and a):
        raise WrongGradeOrDim("h_eta needs a 6-form and a 7-form on F^7")
    c = eta.coeff(tuple(range(1, 8)))
    if not c:
        raise ZeroEta("eta must be nonzero")
    f = a.field
    cinv = f.inv(c)
    if a.is_zero():
        return (0,) * 7
    out = []
    for i in range(1, 8):
        top = wedge(a, AltForm.basis(f, 7, (i,))).coeff(tuple(range(1, 8)))
        out.append(f.mul(top, cinv))
    return tuple(out)


def all_minors(rows: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """All j x j minors of a stack of j x m matrices.

    ``rows`` has shape (N, j, m); the result has shape (N, C(m, j)) with
    columns in lex order of the column subsets.
    """
    rows = np.asarray(rows, dtype=np.uint8)
    n, j, m = rows.shape
    if j == 0:
        return np.ones((n, 1), dtype=np.uint8)
    level = {(c,): rows[:, 0, c] for c in range(m)}
    for r in range(1, j):
        nxt = {}
        for S in combinations(range(m), r + 1):
            acc = None
            for t, c in enumerate(S):
                term = spec.vmul(rows[:, r, c], level[S[:t] + S[t + 1:]])
                if (r + t) & 1:
                    term = spec.vneg(term)
                acc = term if acc is None else spec.vadd(acc, term)
            nxt[S] = acc
        level = nxt
    return np.stack([level[S] for S in combinations(range(m), j)], axis=1)


def pullback(g, a: AltForm) -> AltForm:
    """``(g.a)(v_1..v_j) = a(g v_1, ..., g v_j)`` for a matrix g acting on column vectors."""
    f = a.field
    g = np.asarray(g, dtype=np.uint8)
    if a.is_zero() or a.grade == 0:
        return a
    keys = list(a._c)
    # row J of g restricted gives det(g[J, I]) for every column set I
    stack = np.stack([g[[i - 1 for i in J], :] for J in keys])
    minors = all_minors(stack, f)
    coeffs = np.array([a._c[J] for J in keys], dtype=np.uint8)
    prod = f.vmul(minors, coeffs[:, None])
    total = prod[0]
    for row in prod[1:]:
        total = f.vadd(total, row)
    return AltForm.from_dense(f, a.m, a.grade, total)


def full_tensor(a: AltForm) -> np.ndarray:
    """Dense alternating array T with T[i1-1, ..., ij-1] = a(e_i1, ..., e_ij)."""
    f = a.field
    t = np.zeros((a.m,) * a.grade, dtype=np.uint8)
    for I, c in a._c.items():
        neg = f.neg(c)
        for perm in permutations(range(a.grade)):
            par = sort_sign([I[p] for p in perm])[1]
            t[tuple(I[p] - 1 for p in perm)] = neg if par else c
    return t


# -- text format --------------------------------------------------------------

_HEADER = {
    0: (re.compile(r"^field\s+q\s*=\s*(\d+)$"), "field q=<q>"),
    1: (re.compile(r"^dim\s+m\s*=\s*(\d+)$"), "dim m=<m>"),
    2: (re.compile(r"^grade\s+(\d+)$"), "grade <j>"),
}


def parse_form(text: str) -> AltForm:
    """Parse the text form format (see README)."""
    header: list[int] = []
    terms: dict[tuple, int] = {}
    field = None
    m = grade = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if len(header) < 3:
            pat, shape = _HEADER[len(header)]
            mt = pat.match(line)
            if not mt:
                raise FormParseError(f"expected '{shape}', got {raw.strip()!r}", lineno)
            header.append(int(mt.group(1)))
            if len(header) == 1:
                try:
                    field = field_new(header[0])
                except ValueError as exc:
                    raise FormParseError(str(exc), lineno) from exc
            if len(header) == 3:
                m, grade = header[1], header[2]
                if not 0 <= grade <= m:
                    raise FormParseError(f"grade {grade} out of range for m={m}", lineno)
            continue
        if ":" not in line:
            raise FormParseError("term line must look like '<i1> ... <ij> : <coeff>'", lineno)
        lhs, rhs = line.split(":", 1)
        try:
            idx = tuple(int(x) for x in lhs.split())
            coeff = int(rhs.strip())
        except ValueError as exc:
            raise FormParseError(f"non-integer token in {raw.strip()!r}", lineno) from exc
        if len(idx) != grade:
            raise FormParseError(f"expected {grade} indices, got {len(idx)}", lineno)
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise FormParseError("indices must be strictly increasing", lineno)
        if idx and not (idx[0] >= 1 and idx[-1] <= m):
            raise FormParseError(f"index out of range 1..{m}", lineno)
        if not 0 <= coeff < field.q:
            raise FormParseError(f"coefficient {coeff} not in [0, {field.q})", lineno)
        if idx in terms:
            raise FormParseError(f"duplicate index tuple {idx}", lineno)
        terms[idx] = coeff
    if len(header) < 3:
        raise FormParseError("incomplete header")
    return AltForm(field, m, grade, terms)


def dump_form(a: AltForm) -> str:
    lines = [f"field q={a.field.q}", f"dim m={a.m}", f"grade {a.grade}"]
    for I, c in a.items():
        lines.append(" ".join(map(str, I)) + f" : {c}")
    return "\n".join(lines) + "\n"
