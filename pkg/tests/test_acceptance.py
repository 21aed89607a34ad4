"""Acceptance criteria, one test per criterion."""

from __future__ import annotations

import math

import numpy as np

from grasscode.classify7 import (VARIETY_TABLE, all_representatives, classify, fingerprint_table,
                                 random_dense_forms, random_gl, sample_report)
from grasscode.extalg import AltForm, interior, multi_indices, pullback, wedge
from grasscode.gf import field_new
from grasscode.grassmann import codeword_weight_direct, exhaustive_spectrum, triple_count_weight
from grasscode.pfaffian import gram_rank, pfaffians, rank_2form
from grasscode.qpoly import IDENTITIES, wt_table
from grasscode.weightvar import (is_nondegenerate, nogin_c2_weight, q_omega, variety_sizes,
                                 weight_nondeg_formula, weight_via_reduction, x_variety)

WT_Q2 = [4096, 5120, 5504, 5632, 5760, 5760, 5376, 5888, 5888, 5952, 6016]


def test_c01_weight_table(record):
    bad = []
    for q in (2, 3):
        want = [w.at_int(q) for w in wt_table()]
        if q == 2:
            assert want == WT_Q2
        for i, w in all_representatives(field_new(q)).items():
            got = codeword_weight_direct(w)
            if got != want[i - 1]:
                bad.append((q, i, got, want[i - 1]))
    record(1, not bad, f"direct weights of 11 representatives at q=2,3 match the table; mismatches {bad}")


def test_c02_variety_tables(record):
    bad = []
    for q in (2, 3, 4, 5):
        reps = all_representatives(field_new(q))
        for i in range(6, 12):
            sizes = variety_sizes(reps[i])
            want = tuple(p.at_int(q) for p in VARIETY_TABLE[i])
            if (sizes[1], sizes[2]) != want:
                bad.append((q, i, sizes[1:3], want))
    record(2, not bad, f"|X_1|, |X_2| for classes 6..11 at q=2..5; mismatches {bad}")


def test_c03_quadric_locus(record):
    bad = []
    for q in (2, 3):
        reps = all_representatives(field_new(q))
        for i in range(6, 12):
            qf = q_omega(reps[i])
            if set(x_variety(reps[i], 2)) != set(qf.zero_locus()):
                bad.append((q, i))
    record(3, not bad, f"X_2 equals the zero locus of Q for classes 6..11 at q=2,3; mismatches {bad}")


def _random_nondegenerate(spec, rng, count):
    out = []
    while len(out) < count:
        w = AltForm.from_dense(spec, 7, 3, random_dense_forms(spec, rng, 1)[0])
        if is_nondegenerate(w):
            out.append(w)
    return out


def test_c04_formula_vs_direct(record):
    bad, total = [], 0
    for q, count in ((2, 100), (3, 25)):
        spec = field_new(q)
        rng = np.random.default_rng(2024 + q)
        for w in _random_nondegenerate(spec, rng, count):
            total += 1
            f, d = weight_nondeg_formula(w), codeword_weight_direct(w)
            if f != d:
                bad.append((q, repr(w), f, d))
    record(4, not bad, f"formula = direct on {total} random non-degenerate forms; mismatches {len(bad)}")


def test_c05_reduction(record):
    bad = []
    for q in (2, 3):
        spec = field_new(q)
        reps = all_representatives(spec)
        for i in range(1, 6):
            w = reps[i]
            direct = codeword_weight_direct(w)
            if weight_via_reduction(w) != direct:
                bad.append(("formula", q, i))
            if weight_via_reduction(w, method="direct") != direct:
                bad.append(("reduced direct", q, i))
            on6 = AltForm(spec, 6, 3, dict(w.items()))
            if direct != q**3 * codeword_weight_direct(on6):
                bad.append(("q^3 factor", q, i))
    record(5, not bad, f"reduction for classes 1..5 at q=2,3 and the q^3 factor from F^6; failures {bad}")


def _rand2(spec, m, rng):
    return AltForm.from_dense(spec, m, 2, rng.integers(0, spec.q, size=len(multi_indices(m, 2))))


def test_c06_pfaffian_suite(record):
    bad = []
    n_forms = 500
    for q in (2, 3, 4, 5):
        spec = field_new(q)
        rng = np.random.default_rng(600 + q)
        for _ in range(n_forms):
            m = int(rng.integers(2, 9))
            kmax = m // 2
            lam, mu = _rand2(spec, m, rng), _rand2(spec, m, rng)
            pl, pm, ps = pfaffians(lam, kmax), pfaffians(mu, kmax), pfaffians(lam + mu, kmax)
            v = tuple(int(x) for x in rng.integers(0, q, size=m))
            power = AltForm.scalar(spec, m)
            for k in range(1, kmax + 1):
                if interior(v, pl[k]) != wedge(interior(v, lam), pl[k - 1]):
                    bad.append(("adjunction", q, m, k))
                total = AltForm.zero(spec, m, 2 * k)
                for j in range(k + 1):
                    total = total + wedge(pl[j], pm[k - j])
                if total != ps[k]:
                    bad.append(("additivity", q, m, k))
                power = wedge(power, lam)
                if spec.p > k and power != pl[k].scale(spec.from_int(math.factorial(k))):
                    bad.append(("power", q, m, k))
            if rank_2form(lam) != gram_rank(lam):
                bad.append(("rank", q, m))
            g = random_gl(m, spec, rng)
            pg = pfaffians(pullback(g, lam), kmax)
            if any(pg[k] != pullback(g, pl[k]) for k in range(kmax + 1)):
                bad.append(("equivariance", q, m))
    record(6, not bad, f"Pfaffian identities on {n_forms} random 2-forms per q=2..5, m<=8; failures {bad[:5]}")


def test_c07_identities(record):
    results = {name: fn() for name, fn in IDENTITIES.items()}
    record(7, all(results.values()), f"exact polynomial identities {results}")


def test_c08_monte_carlo(record):
    count, seed = 100_000, 0
    rows = sample_report(field_new(2), count, seed)
    out = [(r["class"], r["observed"], round(r["expected"], 2)) for r in rows
           if abs(r["observed"] - r["expected"]) > 4 * r["sigma"]]
    assert sum(r["observed"] for r in rows) == count
    zs = " ".join(f"{r['z']:+.2f}" for r in rows)
    record(8, not out, f"{count} samples at q=2, seed {seed}, z-scores {zs}; outside 4 sigma {out}")


def test_c09_classifier(record):
    bad = []
    for q in (2, 3):
        spec = field_new(q)
        rng = np.random.default_rng(900 + q)
        for i, w in all_representatives(spec).items():
            for _ in range(50):
                g = random_gl(7, spec, rng)
                c = int(rng.integers(1, q))
                got = classify(pullback(g, w).scale(c)).index
                if got != i:
                    bad.append((q, i, got))
    sizes = {}
    for q in (2, 3, 4, 5):
        table = fingerprint_table(field_new(q))
        sizes[q] = len(table)
        if len(table) != 11:
            bad.append(("fingerprints", q, len(table)))
    record(9, not bad, f"classify(g.omega_i) = i for 50 g per class at q=2,3; distinct fingerprints {sizes}; failures {bad[:5]}")


def test_c10_c2_spectrum(record):
    bad = []
    spec = field_new(2)
    for m in (4, 5):
        allowed = {nogin_c2_weight(r, m, 2) for r in range(1, m // 2 + 1)}
        spectrum = exhaustive_spectrum(2, m, spec)
        if not {w for w, _ in spectrum} <= allowed:
            bad.append(("weights", m, spectrum))
        per_word = exhaustive_spectrum(
            2, m, spec, weight_fn=lambda a: codeword_weight_direct(a) - nogin_c2_weight(rank_2form(a) // 2, a.m, 2))
        if per_word != [(0, 2 ** math.comb(m, 2) - 1)]:
            bad.append(("per codeword", m, per_word))
    record(10, not bad, f"C(2,4), C(2,5) at q=2 spectra use only rank-formula weights; failures {bad}")


def test_c11_triple_count(record):
    bad = []
    for i, w in all_representatives(field_new(2)).items():
        t, d = triple_count_weight(w), codeword_weight_direct(w)
        if t != d:
            bad.append((i, t, d))
    record(11, not bad, f"triple count = direct weight for 11 representatives at q=2; mismatches {bad}")
