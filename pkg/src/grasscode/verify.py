"""Named consistency checks used by ``grasscode verify``.

Each check returns ``(name, passed, detail)``.
"""

from __future__ import annotations

from typing import Iterator

from . import qpoly
from .classify7 import VARIETY_TABLE, all_representatives, classify
from .gf import field_new
from .grassmann import codeword_weight_direct, triple_count_weight
from .weightvar import variety_sizes, weight_via_reduction, wt7_specialized

Check = tuple[str, bool, str]


def identity_checks() -> Iterator[Check]:
    for name, fn in qpoly.IDENTITIES.items():
        yield name, fn(), "exact polynomial identity"


def table_checks(q: int) -> Iterator[Check]:
    spec = field_new(q)
    reps = all_representatives(spec)
    wts = qpoly.wt_table()
    for i in range(6, 12):
        sizes = variety_sizes(reps[i])
        want1, want2 = (p.at_int(q) for p in VARIETY_TABLE[i])
        yield f"q={q} |X_1(omega_{i})|", sizes[1] == want1, f"{sizes[1]} vs {want1}"
        yield f"q={q} |X_2(omega_{i})|", sizes[2] == want2, f"{sizes[2]} vs {want2}"
        wt, want = wt7_specialized(reps[i]), wts[i - 1].at_int(q)
        yield f"q={q} wt7(omega_{i})", wt == want, f"{wt} vs {want}"


def oracle_checks(q: int) -> Iterator[Check]:
    spec = field_new(q)
    reps = all_representatives(spec)
    wts = qpoly.wt_table()
    for i, w in reps.items():
        want = wts[i - 1].at_int(q)
        direct = codeword_weight_direct(w)
        yield f"q={q} direct wt(omega_{i})", direct == want, f"{direct} vs {want}"
        formula = weight_via_reduction(w)
        yield f"q={q} formula wt(omega_{i})", formula == direct, f"{formula} vs {direct}"
        if q == 2:
            triples = triple_count_weight(w)
            yield f"q={q} triples wt(omega_{i})", triples == direct, f"{triples} vs {direct}"
        cid = classify(w)
        yield f"q={q} classify(omega_{i})", cid.index == i, str(cid)
