from __future__ import annotations

from itertools import permutations

import numpy as np
import pytest

from grasscode import linalg
from grasscode.classify7 import representative
from grasscode.errors import (ArityMismatch, FormParseError, GradeMismatch, GradeOverflow,
                              GradeUnderflow, WrongGradeOrDim, ZeroEta)
from grasscode.extalg import (AltForm, basis_vector, dump_form, eval_on_vectors, h_eta, interior,
                              multi_indices, pair, parse_form, pullback, star7, wedge)
from grasscode.gf import field_new


def E(f, m, *idx):
    return AltForm.basis(f, m, idx)


def rand_form(f, m, j, rng):
    return AltForm.from_dense(f, m, j, rng.integers(0, f.q, size=len(multi_indices(m, j))))


def rand_vec(f, m, rng):
    return tuple(int(x) for x in rng.integers(0, f.q, size=m))


def test_wedge_examples():
    f = field_new(3)
    assert wedge(E(f, 4, 1), E(f, 4, 2)) == E(f, 4, 1, 2)
    assert wedge(E(f, 4, 1, 2), E(f, 4, 1, 3)).is_zero()
    assert wedge(E(f, 4, 1, 3), E(f, 4, 2)) == -E(f, 4, 1, 2, 3)
    f2 = field_new(2)
    assert wedge(E(f2, 4, 1, 3), E(f2, 4, 2)) == E(f2, 4, 1, 2, 3)
    with pytest.raises(GradeOverflow):
        wedge(E(f, 3, 1, 2), E(f, 3, 1, 2))


def test_interior_examples():
    f = field_new(5)
    assert interior(basis_vector(3, 1), E(f, 3, 1, 2, 3)) == E(f, 3, 2, 3)
    assert interior(basis_vector(3, 2), E(f, 3, 1, 2, 3)) == -E(f, 3, 1, 3)
    with pytest.raises(GradeUnderflow):
        interior(basis_vector(3, 1), AltForm.scalar(f, 3))
    with pytest.raises(ArityMismatch):
        interior((1, 0), E(f, 3, 1))


def test_interior_omega10_leading_term():
    f = field_new(3)
    got = interior(basis_vector(7, 1), representative(10, f))
    assert got == E(f, 7, 4, 7) + E(f, 7, 2, 3)


def test_pair_examples():
    f = field_new(2)
    assert pair(E(f, 7, 1, 2, 3), E(f, 7, 1, 2, 3)) == 1
    assert pair(E(f, 7, 1, 2, 3), E(f, 7, 1, 2, 4)) == 0
    multivector = AltForm.decomposable(f, [(1, 0, 0, 1, 0, 0, 0), basis_vector(7, 2), basis_vector(7, 3)])
    assert pair(representative(1, f), multivector) == 1
    with pytest.raises(GradeMismatch):
        pair(E(f, 7, 1), E(f, 7, 1, 2))


def test_eval_examples():
    f = field_new(3)
    w1, w3 = representative(1, f), representative(3, f)
    e = [basis_vector(7, i) for i in range(1, 8)]
    assert eval_on_vectors(w1, e[0], e[1], e[2]) == 1
    assert eval_on_vectors(w1, e[0], e[0], e[2]) == 0
    assert eval_on_vectors(w3, e[3], e[4], e[5]) == 1
    with pytest.raises(ArityMismatch):
        eval_on_vectors(w1, e[0])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_graded_commutativity(q):
    f = field_new(q)
    rng = np.random.default_rng(10 + q)
    for _ in range(30):
        m = int(rng.integers(3, 8))
        i, j = (int(x) for x in rng.integers(0, 4, size=2))
        if i + j > m:
            continue
        a, b = rand_form(f, m, i, rng), rand_form(f, m, j, rng)
        ab = wedge(a, b)
        assert wedge(b, a) == (ab if (i * j) % 2 == 0 else -ab)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_interior_twice_and_adjunction(q):
    f = field_new(q)
    rng = np.random.default_rng(20 + q)
    for _ in range(40):
        m = int(rng.integers(2, 8))
        j = int(rng.integers(1, m + 1))
        a = rand_form(f, m, j, rng)
        v = rand_vec(f, m, rng)
        if j >= 2:
            assert interior(v, interior(v, a)).is_zero()
        b = rand_form(f, m, j - 1, rng)
        assert pair(interior(v, a), b) == pair(a, wedge(AltForm.from_vector(f, v), b))


def _det(rows, f):
    # Leibniz expansion, independent of the contraction path
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for x in range(n) for y in range(x + 1, n) if perm[x] > perm[y])
        term = 1
        for r, c in enumerate(perm):
            term = f.mul(term, rows[r][c])
        total = f.add(total, f.neg(term) if inv % 2 else term)
    return total


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_eval_vs_determinant_oracle(q):
    f = field_new(q)
    rng = np.random.default_rng(30 + q)
    for _ in range(25):
        m = int(rng.integers(1, 8))
        j = int(rng.integers(1, min(m, 4) + 1))
        a = rand_form(f, m, j, rng)
        vs = [rand_vec(f, m, rng) for _ in range(j)]
        want = 0
        for I, c in a.items():
            sub = [[v[i - 1] for v in vs] for i in I]
            want = f.add(want, f.mul(c, _det(sub, f)))
        assert eval_on_vectors(a, *vs) == want


def test_star7_examples():
    f = field_new(3)
    assert star7(E(f, 7, 2, 3, 4, 5, 6, 7)) == basis_vector(7, 1)
    assert star7(E(f, 7, 1, 3, 4, 5, 6, 7)) == (0, 2, 0, 0, 0, 0, 0)
    assert star7(AltForm.zero(f, 7, 6)) == (0,) * 7
    with pytest.raises(WrongGradeOrDim):
        star7(E(f, 7, 1, 2))


def test_h_eta_examples():
    f5 = field_new(5)
    top = tuple(range(1, 8))
    a = E(f5, 7, 2, 3, 4, 5, 6, 7)
    assert h_eta(a, E(f5, 7, *top)) == basis_vector(7, 1)
    assert h_eta(a, E(f5, 7, *top).scale(2)) == (3, 0, 0, 0, 0, 0, 0)
    with pytest.raises(ZeroEta):
        h_eta(a, AltForm.zero(f5, 7, 7))


def test_h_eta_defining_identity():
    f = field_new(3)
    rng = np.random.default_rng(40)
    top = tuple(range(1, 8))
    for _ in range(20):
        a = rand_form(f, 7, 6, rng)
        eta = E(f, 7, *top).scale(int(rng.integers(1, 3)))
        beta = rand_form(f, 7, 1, rng)
        hv = AltForm.from_vector(f, h_eta(a, eta))
        lhs = wedge(a, beta)
        assert lhs == eta.scale(pair(beta, hv))
        assert h_eta(a, E(f, 7, *top)) == star7(a)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_pullback_matches_evaluation(q):
    f = field_new(q)
    rng = np.random.default_rng(50 + q)
    for _ in range(20):
        a = rand_form(f, 5, 3, rng)
        g = rng.integers(0, q, size=(5, 5), dtype=np.uint8)
        vs = [rand_vec(f, 5, rng) for _ in range(3)]
        gv = [tuple(int(x) for x in linalg.matmul(g, np.array(v, dtype=np.uint8)[:, None], f)[:, 0]) for v in vs]
        assert eval_on_vectors(pullback(g, a), *vs) == eval_on_vectors(a, *gv)


def test_from_terms_signs_and_repr():
    f = field_new(5)
    a = AltForm.from_terms(f, 4, [((2, 1), 1), ((3, 4), -1)])
    assert a.coeff((1, 2)) == 4 and a.coeff((3, 4)) == 4
    assert repr(E(f, 7, 1, 2, 3) + E(f, 7, 4, 5, 6).scale(2)) == "e^{123} + 2*e^{456}"


def test_parse_roundtrip():
    f = field_new(3)
    w = representative(11, f)
    assert parse_form(dump_form(w)) == w


@pytest.mark.parametrize("text,line", [
    ("field q=2\ndim m=7\ngrade 3\n1 3 2 : 1\n", 4),
    ("field q=2\ndim m=7\ngrade 3\n1 2 3 : 1\n1 2 3 : 1\n", 5),
    ("field q=2\ndim m=7\ngrade 3\n1 2 : 1\n", 4),
    ("field q=2\ndim m=7\ngrade 3\n1 2 8 : 1\n", 4),
    ("field q=2\ndim m=7\ngrade 3\n1 2 3 : 2\n", 4),
    ("field q=6\n", 1),
    ("dim m=7\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(FormParseError) as exc:
        parse_form(text)
    assert exc.value.line == line


def test_parse_comments_and_blanks():
    text = "# a form\nfield q=2\n\ndim m=4\ngrade 2\n1 2 : 1  # first\n3 4 : 1\n"
    f = field_new(2)
    assert parse_form(text) == E(f, 4, 1, 2) + E(f, 4, 3, 4)
