"""Acceptance criteria 1-8.

Each test prints one ``PASS``/``FAIL`` line; the lines are repeated in the
terminal summary.  Run ``python tests/test_acceptance.py`` to get only the
lines.  Wall-clock limits are reported next to the measured time but not
asserted, since they depend on the host.
"""

import sys
import time

import pytest

from rowconvex.basis import rank
from rowconvex.core import Alphabet, enumerate_row_standard, enumerate_straight, shape_of, tableau
from rowconvex.letterplace import tableau_to_polynomial
from rowconvex.straightening import straighten_tableau
from rowconvex.suites import run_suite

LINES: list[str] = []

# cells per suite; criterion 3 fixes 6 cells and the rest follow it where the
# time limit allows
BUDGETS = {
    "echelon": 6,
    "straightening-oracle": 6,
    "skew-classical": 6,
    "flagged": 5,
    "porism": 4,
    "branching": 5,
    "filtration": 5,
}


def record(n: int, ok: bool, what: str, seconds: float, limit: float) -> None:
    note = "" if seconds <= limit else " (over the time limit)"
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what} [{seconds:.1f}s of {limit:.0f}s{note}]"
    LINES.append(line)
    print(line)


def suites(n: int, names, limit: float, what: str):
    t0 = time.perf_counter()
    results = [run_suite(name, BUDGETS[name]) for name in names]
    ok = all(r.passed for r in results)
    detail = ", ".join(f"{r.name} {BUDGETS[r.name]} cells {r.cases} cases" for r in results)
    record(n, ok, f"{what} ({detail})", time.perf_counter() - t0, limit)
    for r in results:
        assert r.passed, r.failures[:5]


EXPECTED = {
    ((2, 4), (1, 3, 5, 7), (5,), (3, 8)): -1,
    ((2, 5), (1, 3, 4, 7), (5,), (3, 8)): 1,
    ((2, 5), (1, 3, 4, 5), (7,), (3, 8)): -1,
    ((2, 5), (1, 3, 5, 7), (3,), (4, 8)): 1,
    ((2, 5), (1, 3, 4, 7), (3,), (5, 8)): -1,
    ((2, 5), (1, 3, 4, 5), (3,), (7, 8)): 1,
    ((2, 5), (3, 4, 5, 7), (3,), (1, 8)): 1,
    ((1, 5), (3, 4, 5, 7), (2,), (3, 8)): -1,
    ((1, 2), (3, 4, 5, 7), (5,), (3, 8)): 1,
}


def test_criterion_1_worked_example(ex5):
    t0 = time.perf_counter()
    out = straighten_tableau(ex5)
    got = {tuple(tuple(int(a.symbol) for a in r) for r in t.rows): c for t, c in out.terms.items()}
    ok = got == EXPECTED and out.expand() == tableau_to_polynomial(ex5)
    record(1, ok, "worked example gives the 9 signed tableaux", time.perf_counter() - t0, 5)
    assert ok


def test_criterion_2_weyl_example():
    t0 = time.perf_counter()
    ab = Alphabet.parse("a+,b+")
    a, b = ab.letters
    d = shape_of([(1, 3), (2, 2)])
    zeros = [tableau_to_polynomial(tableau([(1, [x] * 3), (2, [x])])) for x in (a, b)]
    straight = {t.rows for t in enumerate_straight(d, ab)}
    gens = enumerate_row_standard(d, ab)
    ok = (not any(zeros)
          and straight == {((a, a, a), (b,)), ((a, a, b), (b,)), ((b, b, b), (a,))}
          and len(gens) == 8 and rank(tableau_to_polynomial(t) for t in gens) == 3)
    record(2, ok, "two zero tableaux, straight set, rank 3 of 8 generators", time.perf_counter() - t0, 1)
    assert ok


def test_criterion_3_echelon():
    suites(3, ["echelon"], 120, "distinct initial monomials with unit pivots")


def test_criterion_4_straightening():
    suites(4, ["straightening-oracle"], 600, "sound, straight, monotone; all-minus depth 1")


def test_criterion_5_skew():
    suites(5, ["skew-classical"], 120, "skew straight iff standard; fake-letter straightening")


def test_criterion_6_flagged():
    suites(6, ["flagged"], 300, "flags kill unflagged tableaux; flagged ranks")


def test_criterion_7_porism():
    suites(7, ["porism"], 600, "porism, vanishing relations, SAGBI")


def test_criterion_8_branching():
    suites(8, ["branching", "filtration"], 600, "branching with t_a^|E|; strips; filtration")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
