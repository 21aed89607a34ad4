from __future__ import annotations

import numpy as np
import pytest

from grasscode import linalg
from grasscode.classify7 import all_representatives, random_gl, representative
from grasscode.errors import DegenerateInput, RankOutOfRange, ZeroForm
from grasscode.extalg import AltForm, basis_vector, h_eta, interior, pullback
from grasscode.gf import field_new, special_s
from grasscode.grassmann import codeword_weight_direct
from grasscode.pfaffian import pf_k
from grasscode.weightvar import (is_nondegenerate, nogin_c2_weight, phi_kernel, projective_points, q_omega,
                                 reduce_degenerate, star_pf3_batch, variety_sizes, weight_nondeg_formula,
                                 weight_via_reduction, wt6_specialized, wt7_specialized, x_variety)


def E(f, m, *idx):
    return AltForm.basis(f, m, idx)


def test_kernel_examples():
    f = field_new(2)
    assert phi_kernel(representative(1, f)) == [basis_vector(7, i) for i in range(4, 8)]
    assert phi_kernel(representative(10, f)) == []
    assert phi_kernel(representative(2, f)) == [basis_vector(7, 6), basis_vector(7, 7)]


def test_reduction_examples():
    f = field_new(3)
    red = reduce_degenerate(representative(1, f))
    assert red.r == 4 and red.reduced == E(f, 3, 1, 2, 3)
    red = reduce_degenerate(representative(3, f))
    assert red.r == 1 and red.reduced == E(f, 6, 1, 2, 3) + E(f, 6, 4, 5, 6)
    w11 = representative(11, f)
    red = reduce_degenerate(w11)
    assert red.r == 0 and red.reduced == w11
    with pytest.raises(ZeroForm):
        reduce_degenerate(AltForm.zero(f, 7, 3))


@pytest.mark.parametrize("q", [2, 3])
def test_reduction_random(q):
    f = field_new(q)
    rng = np.random.default_rng(400 + q)
    for _ in range(15):
        # a random form on a random 5-dim subspace of F^7 is degenerate
        inner = AltForm.from_dense(f, 7, 3, np.concatenate([rng.integers(0, q, size=10), np.zeros(25, int)]))
        if inner.is_zero():
            continue
        w = pullback(random_gl(7, f, rng), inner)
        red = reduce_degenerate(w)
        assert is_nondegenerate(red.reduced)
        assert linalg.rank(red.basis_change, f) == 7
        assert weight_via_reduction(w) == codeword_weight_direct(w)


def test_variety_examples():
    f2, f3 = field_new(2), field_new(3)
    assert variety_sizes(representative(8, f2))[1] == 3
    for q in (2, 3, 4):
        assert variety_sizes(representative(10, field_new(q)))[1] == 0
    assert variety_sizes(representative(6, f3))[2] == 607
    with pytest.raises(DegenerateInput):
        x_variety(representative(3, f2), 1)


@pytest.mark.parametrize("q", [2, 3])
def test_varieties_nested(q):
    for i, w in all_representatives(field_new(q)).items():
        if i < 6:
            continue
        xs = [set(x_variety(w, k)) for k in range(4)]
        assert xs[0] <= xs[1] <= xs[2] <= xs[3]
        assert xs[0] == set()
        assert len(xs[3]) == (q**7 - 1) // (q - 1)


def test_nogin_examples():
    assert nogin_c2_weight(1, 4, 2) == 16
    assert nogin_c2_weight(2, 4, 2) == 20
    for q in (2, 3, 5):
        assert nogin_c2_weight(1, 2, q) == 1
    with pytest.raises(RankOutOfRange):
        nogin_c2_weight(3, 4, 2)


def test_formula_examples():
    f = field_new(2)
    w9 = representative(9, f)
    sizes = variety_sizes(w9)
    assert [sizes[1], sizes[2] - sizes[1], sizes[3] - sizes[2]] == [7, 56, 64]
    assert weight_nondeg_formula(w9) == 5888
    assert wt7_specialized(representative(11, f)) == 6016
    assert wt7_specialized(representative(8, f)) == 5888
    assert wt7_specialized(representative(6, f)) == 5760
    assert weight_via_reduction(representative(1, f)) == 4096
    assert weight_via_reduction(representative(5, f)) == 5760
    assert weight_via_reduction(representative(2, field_new(3))) == 590490


@pytest.mark.parametrize("q", [2, 3])
def test_wt6_specialized(q):
    f = field_new(q)
    for i in (3, 4, 5):
        red = reduce_degenerate(representative(i, f))
        assert red.reduced.m == 6
        assert wt6_specialized(red.reduced) == codeword_weight_direct(red.reduced)


def test_q_omega_examples():
    f3 = field_new(3)
    assert q_omega(representative(6, f3)).coeffs == {(1, 2): 1}
    assert q_omega(representative(7, f3)).coeffs == {(1, 1): 1}
    assert q_omega(representative(10, f3)).coeffs == {(1, 4): 1, (2, 5): 1, (3, 6): 1, (7, 7): 2}
    # x1^2 - s x6^2 in odd characteristic, x1^2 + x1x6 + s x6^2 in characteristic 2
    assert q_omega(representative(11, f3)).coeffs == {(1, 1): 1, (6, 6): f3.neg(special_s(f3))}
    f2 = field_new(2)
    assert q_omega(representative(11, f2)).coeffs == {(1, 1): 1, (1, 6): 1, (6, 6): 1}


@pytest.mark.parametrize("q", [2, 3, 4])
def test_q_omega_identity(q):
    f = field_new(q)
    eta = E(f, 7, *range(1, 8))
    rng = np.random.default_rng(500 + q)
    for i, w in all_representatives(f).items():
        if i < 6:
            continue
        qf = q_omega(w)
        xs = projective_points(7, f)
        pick = xs[rng.choice(xs.shape[0], size=min(40, xs.shape[0]), replace=False)]
        batch = star_pf3_batch(w, pick)
        vals = qf.evaluate_many(pick)
        for x, hb, v in zip(pick, batch, vals):
            x = tuple(int(t) for t in x)
            h = h_eta(pf_k(interior(x, w), 3), eta)
            assert h == tuple(f.mul(int(v), t) for t in x)
            assert tuple(int(t) for t in hb) == h
