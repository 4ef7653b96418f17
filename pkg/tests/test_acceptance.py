"""Acceptance checks, one test per numbered criterion.

Each test records a PASS/FAIL/SKIP line; the lines are printed in the
terminal summary (see conftest.py) and when the file is run directly.
"""

from __future__ import annotations

import functools
import os
import random
import time
from pathlib import Path

import pytest

from altan.catalog import p3_pair, path_graph, pentalene
from altan.graph import altan, make_pair
from altan.kernel import check_local_condition, excess_nullity, iterated_nullities, special_vector
from altan.lattice import canonical_cells
from altan.linalg import nullity, nullity_float_oracle
from altan.matchings import count_perfect_matchings
from altan.patch import altan_of_patch, parse_bec, patch_pair
from altan.planar_code import read_planar_code
from altan.survey import find_extremal, iter_records, run_survey

from oracles import random_attachment, random_graph

FIXTURES = Path(__file__).parent / "fixtures"
RESULTS: dict[int, str] = {}
LONG = os.environ.get("ALTAN_LONG") == "1"


def criterion(n: int, title: str, budget: float | None = None):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **k):
            t0 = time.perf_counter()
            try:
                note = fn(*a, **k)
            except pytest.skip.Exception as exc:
                RESULTS[n] = f"CRITERION {n:2d} SKIP  {title} ({exc.msg})"
                raise
            except BaseException as exc:
                RESULTS[n] = f"CRITERION {n:2d} FAIL  {title}: {type(exc).__name__}: {str(exc)[:200]}"
                raise
            dt = time.perf_counter() - t0
            if budget is not None and dt > budget:
                RESULTS[n] = f"CRITERION {n:2d} FAIL  {title}: {dt:.1f}s exceeds {budget:.0f}s"
                pytest.fail(f"runtime {dt:.1f}s over budget {budget}s")
            extra = f"; {note}" if note else ""
            RESULTS[n] = f"CRITERION {n:2d} PASS  {title} [{dt:.1f}s{extra}]"
        return run
    return wrap


def named_pairs():
    out = [p3_pair(h) for h in ("H1", "H2", "H3", "H4")]
    out.append(patch_pair(pentalene()))
    out.append(patch_pair(parse_bec("53225221")))
    return out


def window_pairs(count=10_000, seed=2024):
    rng = random.Random(seed)
    for _ in range(count):
        G = random_graph(rng, 10)
        yield make_pair(G, random_attachment(rng, G.n, 8))


def stability_pairs(count=500, seed=13):
    yield from window_pairs(count, seed)


@functools.lru_cache(maxsize=None)
def survey(family: str, sizes: tuple):
    """Shared survey runs; every instance passes the identity and parity checks inside."""
    recs = list(iter_records(family, sizes))
    return recs


def table_of(recs):
    rows: dict = {}
    for r in recs:
        key = (r.parent_nullity, r.altan_nullity, r.h_parity)
        rows.setdefault(r.size[0], {}).setdefault(key, 0)
        rows[r.size[0]][key] += 1
    return rows


E, O = "even", "odd"

TABLE1 = {
    1: {(0, 1, E): 1},
    2: {(0, 1, E): 1},
    3: {(0, 1, E): 2, (1, 1, O): 1},
    4: {(0, 1, E): 6, (1, 1, O): 1},
    5: {(0, 1, E): 14, (0, 2, E): 1, (1, 1, O): 7},
    6: {(0, 1, E): 51, (2, 2, E): 1, (2, 3, E): 1, (1, 1, O): 28},
    7: {(0, 1, E): 187, (0, 2, E): 3, (2, 2, E): 7, (1, 1, O): 134},
    8: {(0, 1, E): 764, (2, 2, E): 51, (2, 3, E): 1, (1, 1, O): 619},
}

TABLE2 = {
    2: {(0, 1, E): 1},
    3: {(0, 1, E): 2},
    4: {(0, 1, E): 5},
    5: {(0, 1, E): 11, (0, 2, E): 1},
    6: {(0, 1, E): 36},
    7: {(0, 1, E): 117, (0, 2, E): 1},
    8: {(0, 1, E): 411},
    9: {(0, 1, E): 1482, (0, 2, E): 7},
}

# cumulative: odd h, even h with excess 0, (0 -> 1), (2 -> 3)
TABLE3 = {
    10: (6, 1, 17, 1), 20: (23, 8, 43, 2), 30: (49, 24, 77, 2), 40: (85, 44, 115, 3),
    50: (131, 73, 157, 3), 60: (184, 109, 204, 4), 70: (245, 153, 255, 4),
    80: (320, 201, 308, 4), 90: (401, 260, 365, 5), 100: (486, 324, 425, 5),
}


@criterion(1, "named-example nullities", budget=1.0)
def test_criterion_01_named_examples():
    assert nullity(path_graph(3)) == 1
    got = [nullity(altan(p3_pair(h)).graph) for h in ("H1", "H2", "H3", "H4")]
    assert got == [1, 1, 2, 3]
    P = pentalene()
    assert (nullity(P.graph), nullity(altan_of_patch(P).graph)) == (1, 2)
    B = parse_bec("53225221")
    assert (nullity(B.graph), nullity(altan_of_patch(B).graph)) == (0, 2)


@criterion(2, "excess window on 10,000 random pairs", budget=120.0)
def test_criterion_02_window():
    bad = []
    for pair in window_pairs():
        e0 = nullity(pair.graph)
        e1 = nullity(altan(pair).graph)
        ok = e1 - e0 in (0, 1, 2) if pair.h % 2 == 0 else e1 == e0
        if not ok:
            bad.append((pair, e0, e1))
    assert not bad, f"{len(bad)} violations, first {bad[0]}"
    return "0 violations"


@criterion(3, "stability of iterated altans", budget=300.0)
def test_criterion_03_stability():
    pairs = list(stability_pairs()) + named_pairs()
    bad = []
    for pair in pairs:
        etas = iterated_nullities(pair, 3)
        if not (etas[1] == etas[2] == etas[3]):
            bad.append((pair, etas))
    assert not bad, f"{len(bad)} violations, first {bad[0]}"
    return f"{len(pairs)} pairs"


@criterion(4, "special vector is a kernel vector for every even-h instance")
def test_criterion_04_special_vector():
    checked = 0
    for pair in window_pairs():
        if pair.h % 2 == 0:
            nxt = altan(pair)
            assert check_local_condition(nxt.graph, special_vector(nxt), 0)
            checked += 1
    # criterion 3 instances, through the third altan
    for pair in list(stability_pairs()) + named_pairs():
        if pair.h % 2 == 0:
            cur = pair
            for _ in range(3):
                cur = altan(cur)
                assert check_local_condition(cur.graph, special_vector(cur), 0)
                checked += 1
    return f"{checked} altans"


@criterion(5, "benzenoid table for eps <= 8", budget=600.0)
def test_criterion_05_table1():
    rows = table_of(survey("benzenoid", tuple(range(1, 9))))
    assert rows == TABLE1


@criterion(6, "catafused table for eps <= 9", budget=600.0)
def test_criterion_06_table2():
    rows = table_of(survey("catafused", tuple(range(1, 10))))
    # benzene is emitted; the reference table leaves eps = 1 blank
    assert rows.pop(1) == {(0, 1, E): 1}
    assert rows == TABLE2


@criterion(7, "convex cumulative table for eps <= 100", budget=300.0)
def test_criterion_07_table3():
    recs = survey("convex", tuple(range(1, 101)))
    assert not [r for r in recs if r.excess == 2]
    for eps, want in TABLE3.items():
        sub = [r for r in recs if r.size[0] <= eps]
        got = (
            sum(r.h_parity == O for r in sub),
            sum(r.h_parity == E and r.excess == 0 for r in sub),
            sum((r.parent_nullity, r.altan_nullity) == (0, 1) for r in sub),
            sum((r.parent_nullity, r.altan_nullity) == (2, 3) for r in sub),
        )
        assert got == want, (eps, got, want)
    assert len(recs) == 1240
    return "0 convex instances with excess 2"


@criterion(8, "extremal search", budget=None)
def test_criterion_08_extremal():
    hits = find_extremal("benzenoid", "excess=2", range(1, 9))
    assert len(hits) == 1 and hits[0].size == (5,)
    ref = canonical_cells(parse_bec("53225221").cells)
    assert canonical_cells(parse_bec(hits[0].instance_id).cells) == ref
    # the nine known fifteen-hexagon (2 -> 4) instances, checked directly
    rows = [line.split() for line in (FIXTURES / "nullity_two_to_four.txt").read_text().splitlines()
            if line and not line.startswith("#")]
    classes = set()
    for code, bay in rows:
        P = parse_bec(code)
        rep = excess_nullity(patch_pair(P))
        assert len(P.cells) == 15 and (rep.parent_nullity, rep.altan_nullity) == (2, 4)
        classes.add(canonical_cells(P.cells))
    assert len(classes) == 9
    if LONG:
        hits = find_extremal("benzenoid", "parent=2,excess=2", range(1, 16), cap=None)
        assert hits[0].size == (15,) and len(hits) == 9
        return "full eps=15 run done"
    pytest.skip("eps <= 8 extremal and the 9 known eps=15 instances verified; "
                "exhaustive eps=15 count not run, set ALTAN_LONG=1")


@criterion(9, "Euler, bay and parity identities on every instance of 5-7")
def test_criterion_09_identities():
    # survey() runs analyze_patch with identity checks on; any violation raises
    n = 0
    for fam, sizes in (("benzenoid", tuple(range(1, 9))), ("catafused", tuple(range(1, 10))),
                       ("convex", tuple(range(1, 101)))):
        recs = survey(fam, sizes)
        n += len(recs)
        for r in recs:
            if r.bay_number is not None:
                assert (r.parent_nullity - r.h) % 2 == 0
    return f"{n} instances"


@criterion(10, "exact vs float nullity on 2,000 sub-cubic graphs")
def test_criterion_10_oracle():
    rng = random.Random(99)
    bad = 0
    for _ in range(2000):
        G = random_graph(rng, 12, max_degree=3)
        bad += nullity(G) != nullity_float_oracle(G, 1e-8)
    assert bad == 0
    return "0 disagreements"


@criterion(11, "perfect matching counts")
def test_criterion_11_matchings():
    assert count_perfect_matchings(parse_bec("53225221").graph) == 9
    assert count_perfect_matchings(parse_bec("6").graph) == 2
    rows = [line.split() for line in (FIXTURES / "excess_two_smallest.txt").read_text().splitlines()
            if line and not line.startswith("#")]
    got = [count_perfect_matchings(parse_bec(r[0]).graph) for r in rows]
    assert got == [int(r[3]) for r in rows]
    assert got == [9, 28, 9, 9, 55, 59, 49, 65, 62, 61, 76, 56, 52, 52, 36, 58]


@criterion(12, "ingested pent-hex and pentagonal fixtures")
def test_criterion_12_ingested():
    penta = FIXTURES / "ngons" / "pentagonal_8.pc"
    penthex = FIXTURES / "ngons" / "penthex_6faces.pc"
    if not (penta.exists() and penthex.exists()):
        pytest.skip("no external planar_code fixtures in tests/fixtures/ngons")
    table = run_survey("ingested", (), patches=list(read_planar_code(penta.read_bytes())), group="pentagons")
    row = [table.count(8, p, a, E) for p, a in ((0, 1), (0, 2), (1, 1), (1, 2), (2, 2))]
    assert row == [36, 4, 5, 1, 1]
    hits = find_extremal("ingested", "excess=2", (), patches=list(read_planar_code(penthex.read_bytes())),
                         group="faces")
    assert len(hits) == 7 and all(sum(r.faces.values()) == 6 for r in hits)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
