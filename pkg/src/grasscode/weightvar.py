"""Weight varieties of 3-forms and the weight formulas built on them.

For a non-degenerate 3-form w on F^m, ``X_i(w)`` is the set of projective
points x where the 2-form ``iota_x w`` has rank at most 2i, i.e. where
``Pf_{i+1}(iota_x w)`` vanishes.  The weight of w as a codeword of C(3, m) is
a fixed rational combination of the sizes of these sets.  Degenerate forms
are first reduced to a non-degenerate form on a complement of the kernel of
``v -> iota_v w``, which multiplies the weight by q^(3r).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import DegenerateInput, NonIntegerResult, RankOutOfRange, ZeroForm
from .extalg import AltForm, basis_vector, full_tensor, h_eta, interior, multi_indices
from .gf import FieldSpec
from .grassmann import codeword_weight_direct, grassmannian_array
from .pfaffian import batch_pfaffians, pf_k


def phi_matrix(w: AltForm) -> np.ndarray:
    """Matrix of v -> iota_v w; column i is iota_{e_i} w in lex coordinates."""
    cols = [interior(basis_vector(w.m, i), w).to_dense() for i in range(1, w.m + 1)]
    return np.stack(cols, axis=1)


def phi_kernel(w: AltForm) -> list[tuple[int, ...]]:
    if w.grade == 0:
        raise ValueError("phi is defined for forms of positive grade")
    return linalg.nullspace(phi_matrix(w), w.field)


def is_nondegenerate(w: AltForm) -> bool:
    return linalg.rank(phi_matrix(w), w.field) == w.m


@dataclass(frozen=True)
class ReductionResult:
    r: int
    reduced: AltForm
    basis_change: np.ndarray  # columns: complement basis, then kernel basis


def reduce_degenerate(w: AltForm) -> ReductionResult:
    """Restrict w to a complement W of its kernel.

    The kernel basis is put in RREF; W is spanned by the standard basis
    vectors at the non-pivot columns.
    """
    if w.is_zero():
        raise ZeroForm("cannot reduce the zero form")
    f, m = w.field, w.m
    kernel = phi_kernel(w)
    r = len(kernel)
    if r:
        kr, pivots = linalg.rref(kernel, f)
        kernel_rows = [tuple(int(x) for x in row) for row in kr]
    else:
        pivots, kernel_rows = [], []
    keep = [j for j in range(m) if j not in pivots]
    relabel = {j + 1: t + 1 for t, j in enumerate(keep)}
    coeffs = {}
    for I, c in w.items():
        if all(i in relabel for i in I):
            coeffs[tuple(relabel[i] for i in I)] = c
    reduced = AltForm(f, m - r, w.grade, coeffs)
    cols = [basis_vector(m, j + 1) for j in keep] + kernel_rows
    basis_change = np.array(cols, dtype=np.uint8).T
    return ReductionResult(r=r, reduced=reduced, basis_change=basis_change)


def projective_points(m: int, spec: FieldSpec) -> np.ndarray:
    """Canonical representatives of P^(m-1) (first nonzero coordinate 1), shape (N, m)."""
    return grassmannian_array(1, m, spec)[:, 0, :]


def contractions(w: AltForm, xs: np.ndarray) -> np.ndarray:
    """Skew matrices of iota_x w for each row x of ``xs``; shape (N, m, m)."""
    f = w.field
    t = full_tensor(w)
    out = np.zeros((xs.shape[0], w.m, w.m), dtype=np.uint8)
    for i in range(w.m):
        if t[i].any():
            out = f.vadd(out, f.vmul(xs[:, i, None, None], t[i][None]))
    return out


def _require_nondegenerate(w: AltForm) -> None:
    if w.grade != 3:
        raise ValueError("weight varieties are defined for 3-forms")
    if not is_nondegenerate(w):
        raise DegenerateInput("form has a nontrivial kernel; reduce it first")


def half_ranks(w: AltForm, kmax: int | None = None, chunk: int = 50_000) -> tuple[np.ndarray, np.ndarray]:
    """Points of P^(m-1) and, for each, the largest k <= kmax with Pf_k(iota_x w) != 0."""
    xs = projective_points(w.m, w.field)
    if kmax is None:
        kmax = w.m // 2
    ranks = np.zeros(xs.shape[0], dtype=np.int64)
    for s in range(0, xs.shape[0], chunk):
        mats = contractions(w, xs[s:s + chunk])
        levels = batch_pfaffians(mats, w.field, kmax)
        for k in range(1, len(levels)):
            ranks[s:s + chunk][levels[k].any(axis=1)] = k
    return xs, ranks


def x_variety(w: AltForm, i: int) -> list[tuple[int, ...]]:
    """Points x of P^(m-1) with Pf_{i+1}(iota_x w) = 0."""
    _require_nondegenerate(w)
    top = (w.m - 1) // 2
    if not 0 <= i <= top:
        raise ValueError(f"variety index {i} outside [0, {top}]")
    xs, ranks = half_ranks(w, i + 1)
    return [tuple(int(v) for v in x) for x in xs[ranks <= i]]


def variety_sizes(w: AltForm) -> list[int]:
    """``[|X_0|, |X_1|, ..., |X_top|]`` with top = floor((m-1)/2)."""
    _require_nondegenerate(w)
    top = (w.m - 1) // 2
    _, ranks = half_ranks(w, top + 1)
    return [int(np.count_nonzero(ranks <= i)) for i in range(top + 1)]


def nogin_c2_weight(r: int, m: int, q: int) -> int:
    """Weight in C(2, m) of a 2-form of rank 2r."""
    if not 1 <= r <= m // 2:
        raise RankOutOfRange(f"rank 2*{r} impossible for m={m}")
    return q ** (2 * (m - r - 1)) * (q ** (2 * r) - 1) // (q**2 - 1)


def formula_from_sizes(sizes: list[int], m: int, q: int) -> int:
    """Weight of a non-degenerate 3-form from its variety sizes."""
    total = Fraction(0)
    for i in range(1, len(sizes)):
        n_i = sizes[i] - sizes[i - 1]
        total += n_i * (1 - Fraction(1, q ** (2 * i)))
    wt = Fraction(q ** (2 * m - 4), (q**2 - 1) * (1 + q + q**2)) * total
    if wt.denominator != 1 or wt < 0:
        raise NonIntegerResult(f"weight formula gave {wt}")
    return wt.numerator


def weight_nondeg_formula(w: AltForm) -> int:
    return formula_from_sizes(variety_sizes(w), w.m, w.field.q)


def weight_via_reduction(w: AltForm, method: str = "formula") -> int:
    """q^(3r) times the weight of the reduced form (``formula`` or ``direct``)."""
    red = reduce_degenerate(w)
    if method == "formula":
        inner = weight_nondeg_formula(red.reduced)
    elif method == "direct":
        inner = codeword_weight_direct(red.reduced)
    else:
        raise ValueError(f"unknown method {method!r}")
    return w.field.q ** (3 * red.r) * inner


def _exact(value: Fraction) -> int:
    if value.denominator != 1:
        raise NonIntegerResult(f"specialized weight formula gave {value}")
    return value.numerator


def wt6_specialized(w: AltForm) -> int:
    """Weight of a non-degenerate 3-form on F^6 from |X_1| alone."""
    if w.m != 6:
        raise ValueError("needs m = 6")
    q = w.field.q
    n1 = variety_sizes(w)[1]
    return _exact(q**4 * (Fraction(q**5 + q**3 + q**2 + 1) - Fraction(n1, 1 + q + q**2)))


def wt7_specialized(w: AltForm) -> int:
    """Weight of a non-degenerate 3-form on F^7 from |X_1| and |X_2|."""
    if w.m != 7:
        raise ValueError("needs m = 7")
    q = w.field.q
    _, x1, x2, _ = variety_sizes(w)
    n1, n2 = x1, x2 - x1
    base = q**8 + q**6 + q**5 + q**4 + q**3 + q**2 + 1
    return _exact(q**4 * (Fraction(base) - Fraction(n2 + n1 * (1 + q**2), 1 + q + q**2)))


# -- the quadratic form of a 3-form on F^7 ---------------------------------------

@dataclass(frozen=True)
class QuadForm7:
    field: FieldSpec
    coeffs: dict  # (i, j) with 1 <= i <= j <= 7 -> nonzero element index

    def __call__(self, x) -> int:
        f = self.field
        acc = 0
        for (i, j), c in self.coeffs.items():
            acc = f.add(acc, f.mul(c, f.mul(int(x[i - 1]), int(x[j - 1]))))
        return acc

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        f = self.field
        acc = np.zeros(xs.shape[0], dtype=np.uint8)
        for (i, j), c in self.coeffs.items():
            acc = f.vadd(acc, f.vmul(np.uint8(c), f.vmul(xs[:, i - 1], xs[:, j - 1])))
        return acc

    def zero_locus(self) -> list[tuple[int, ...]]:
        xs = projective_points(7, self.field)
        return [tuple(int(v) for v in x) for x in xs[self.evaluate_many(xs) == 0]]

    def __repr__(self):
        terms = []
        for (i, j), c in sorted(self.coeffs.items()):
            mono = f"x{i}^2" if i == j else f"x{i}x{j}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) or "0"


def _q_at(w: AltForm, x, comp: int, eta: AltForm) -> int:
    vec = h_eta(pf_k(interior(x, w), 3), eta)
    return vec[comp]


def q_omega(w: AltForm) -> QuadForm7:
    """The quadratic form Q with H_eta(Pf_3(iota_x w)) = Q(x) x, eta = e^{1..7}."""
    if w.m != 7:
        raise ValueError("q_omega needs a 3-form on F^7")
    _require_nondegenerate(w)
    f = w.field
    eta = AltForm.basis(f, 7, tuple(range(1, 8)))
    diag = [_q_at(w, basis_vector(7, i), i - 1, eta) for i in range(1, 8)]
    coeffs = {(i, i): diag[i - 1] for i in range(1, 8)}
    for i in range(1, 8):
        for j in range(i + 1, 8):
            x = tuple(1 if t in (i - 1, j - 1) else 0 for t in range(7))
            both = _q_at(w, x, i - 1, eta)
            coeffs[(i, j)] = f.sub(f.sub(both, diag[i - 1]), diag[j - 1])
    return QuadForm7(f, {k: v for k, v in coeffs.items() if v})


def star_pf3_batch(w: AltForm, xs: np.ndarray) -> np.ndarray:
    """``*(Pf_3(iota_x w))`` for each row x, with * the standard 6-form -> vector map."""
    f = w.field
    pf3 = batch_pfaffians(contractions(w, xs), f, 3)[3]  # columns: 6-subsets of 0..6, lex
    # lex 6-subsets of 7 omit 6, 5, ..., 0 in turn
    out = np.zeros((xs.shape[0], 7), dtype=np.uint8)
    for col in range(7):
        i = 6 - col
        vals = pf3[:, col]
        out[:, i] = f.vneg(vals) if i & 1 else vals
    return out
