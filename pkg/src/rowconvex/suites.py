"""Exhaustive property suites over small shapes and alphabets.

Each suite returns a :class:`SuiteResult`; the CLI ``verify`` command and the
acceptance tests both run them.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .basis import apply_flag, echelon_certificate, rank
from .branching import (
    branching_check,
    enumerate_strips,
    filtration_ranks,
    strip_from_columns,
)
from .core import (
    Alphabet,
    Shape,
    Tableau,
    enumerate_row_standard,
    enumerate_shapes,
    enumerate_straight,
    is_flagged,
    is_standard,
    is_straight,
    modified_key,
    plain_key,
)
from .errors import RowConvexError
from .letterplace import tableau_to_polynomial
from .ring import interleave, relations_for_pair, sagbi_subduct
from .straightening import Trace, row_straighten, straighten_tableau


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, what: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(what)
        else:
            self.failures[-1] = "... more failures"

    def row(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name:<22} {verdict}  cases={self.cases}  {self.seconds:.1f}s"


def default_alphabets(max_letters: int = 3) -> list[Alphabet]:
    """Every sign pattern with 1..max_letters letters."""
    return [Alphabet.from_signs("".join(p)) for k in range(1, max_letters + 1)
            for p in itertools.product("+-", repeat=k)]


def _cases(max_cells: int, alphabets: Optional[Sequence[Alphabet]], shapes: Optional[Iterable[Shape]] = None,
           sample: Optional[int] = None, seed: int = 0):
    shapes = list(shapes) if shapes is not None else enumerate_shapes(max_cells)
    alphabets = list(alphabets) if alphabets else default_alphabets()
    cases = [(d, a) for a in alphabets for d in shapes]
    if sample is not None and sample < len(cases):
        cases = random.Random(seed).sample(cases, sample)
    return cases


def _flags(columns: Sequence[int], letters: Sequence) -> Iterable[dict]:
    for combo in itertools.combinations_with_replacement(range(len(letters)), len(columns)):
        yield {c: letters[k] for c, k in zip(columns, combo)}


def _timed(fn: Callable[[SuiteResult], None], name: str) -> SuiteResult:
    res = SuiteResult(name)
    t0 = time.perf_counter()
    fn(res)
    res.seconds = time.perf_counter() - t0
    return res


def _label(d: Shape, a: Alphabet, *extra) -> str:
    return " ".join([f"rows={list(d.rows)}", f"alphabet={a.spec()}"] + [str(x) for x in extra])


# ---------------------------------------------------------------- suites


def echelon_suite(max_cells: int = 6, alphabets=None, sample=None, seed: int = 0) -> SuiteResult:
    def run(res):
        for d, a in _cases(max_cells, alphabets, sample=sample, seed=seed):
            res.cases += 1
            try:
                echelon_certificate(d, a)
            except RowConvexError as e:
                res.fail(_label(d, a, e))
    return _timed(run, "echelon")


def straightening_suite(max_cells: int = 6, alphabets=None, sample=None, seed: int = 0) -> SuiteResult:
    """Expansion equality, straight outputs, monotone modified words, and depth 1 for minus letters."""
    def run(res):
        for d, a in _cases(max_cells, alphabets, sample=sample, seed=seed):
            all_minus = all(x.negative for x in a)
            for t in enumerate_row_standard(d, a):
                res.cases += 1
                out = straighten_tableau(t, check=False)
                if out.expand() != tableau_to_polynomial(t):
                    res.fail(_label(d, a, "expansion differs", t.rows))
                    continue
                if not all(is_straight(s)[0] for s in out.terms):
                    res.fail(_label(d, a, "non-straight output", t.rows))
                if out.terms and min(modified_key(s) for s in out.terms) < modified_key(t):
                    res.fail(_label(d, a, "modified word decreased", t.rows))
                ok, wit = is_straight(t)
                if all_minus and not ok and wit.kind != "row":
                    i, j = wit.i, wit.j
                    pair = Tableau(Shape((d.rows[i], d.rows[j])), (t.rows[i], t.rows[j]))
                    trace = Trace()
                    row_straighten(pair, trace, check=False)
                    if trace.max_depth > 1:
                        res.fail(_label(d, a, f"recursion depth {trace.max_depth}", t.rows))
    return _timed(run, "straightening-oracle")


def skew_suite(max_cells: int = 6, alphabets=None, sample=None, seed: int = 0) -> SuiteResult:
    """On skew shapes: straight iff standard, and straightening lands in standard tableaux."""
    def run(res):
        shapes = [d for d in enumerate_shapes(max_cells) if d.is_skew()]
        for d, a in _cases(max_cells, alphabets, shapes, sample=sample, seed=seed):
            for t in enumerate_row_standard(d, a):
                res.cases += 1
                if is_straight(t)[0] != is_standard(t):
                    res.fail(_label(d, a, "straight differs from standard", t.rows))
                    continue
                out = straighten_tableau(t, check=False)
                if not all(is_standard(s) for s in out.terms) or out.expand() != tableau_to_polynomial(t):
                    res.fail(_label(d, a, "bad skew straightening", t.rows))
    return _timed(run, "skew-classical")


def flagged_suite(max_cells: int = 5, alphabets=None, sample=None, seed: int = 0) -> SuiteResult:
    """Flags kill unflagged tableaux; flagged straight images are a basis of the flagged module."""
    def run(res):
        for d, a in _cases(max_cells, alphabets, sample=sample, seed=seed):
            letters = a.letters
            rows = enumerate_row_standard(d, a)
            polys = {t: tableau_to_polynomial(t) for t in rows}
            flags = list(_flags(d.columns(), letters))
            for g in [None] + flags:
                for f in flags:
                    if g is not None and any(g[c].rank > f[c].rank for c in d.columns()):
                        continue
                    res.cases += 1
                    for t in rows:
                        if not is_flagged(t, g, f) and apply_flag(polys[t], g, f):
                            res.fail(_label(d, a, "flag does not kill", t.rows))
                    basis = enumerate_straight(d, a, g, f)
                    r = rank(apply_flag(polys[t], g, f) for t in basis)
                    span = rank(apply_flag(polys[t], g, f) for t in rows)
                    if not r == span == len(basis):
                        res.fail(_label(d, a, f"ranks {r}, {span}, count {len(basis)}"))
    return _timed(run, "flagged")


def porism_suite(max_cells: int = 4, alphabets=None, sample=None, seed: int = 0) -> SuiteResult:
    """Degree-two relations: present exactly for non-straight interleavings, vanishing, and counted by rank.

    Also runs SAGBI subduction on every product of two straight tableaux.
    """
    def run(res):
        for d, a in _cases(max_cells, alphabets, sample=sample, seed=seed):
            basis = sorted(enumerate_straight(d, a), key=plain_key)
            products = []
            standard = 0
            for p, ta in enumerate(basis):
                for tb in basis[p:]:
                    res.cases += 1
                    products.append(tableau_to_polynomial(ta) * tableau_to_polynomial(tb))
                    rels = relations_for_pair(ta, tb, check=False)
                    standard += not rels
                    if is_straight(interleave(ta, tb))[0] == bool(rels):
                        res.fail(_label(d, a, "porism", ta.rows, tb.rows))
                    if any(r.image() for r in rels):
                        res.fail(_label(d, a, "relation does not vanish", ta.rows, tb.rows))
                    try:
                        sagbi_subduct(tableau_to_polynomial(ta) * tableau_to_polynomial(tb), d)
                    except RowConvexError as e:
                        res.fail(_label(d, a, "subduction", e))
            # standard monomials span the degree-two part of the ring
            if rank(products) != standard:
                res.fail(_label(d, a, f"{standard} standard products, rank {rank(products)}"))
    return _timed(run, "porism")


def branching_suite(max_cells: int = 5, alphabets=None, sample=None, seed: int = 0,
                    flagged: bool = True) -> SuiteResult:
    """Branching identity with the t_a^{|E|} factor, and strip reconstruction.

    Every letter is removed in turn without flags; with flags only the
    smallest letter is removed.
    """
    def run(res):
        for d, a in _cases(max_cells, alphabets, sample=sample, seed=seed):
            for kind in ("horizontal", "vertical"):
                for e in enumerate_strips(d, kind):
                    r = strip_from_columns(d, kind, e.columns)
                    if r is None or r.cells != e.cells:
                        res.fail(_label(d, a, "strip round trip", kind, sorted(e.cells)))
            letters = a.letters
            for x in letters:
                res.cases += 1
                rep = branching_check(d, letters, x, strict=False)
                if not rep.holds or rep.restriction_failures:
                    res.fail(_label(d, a, "identity", x))
            if not flagged:
                continue
            flags = list(_flags(d.columns(), letters))
            for g in flags:
                for f in flags:
                    if any(g[c].rank > f[c].rank for c in d.columns()):
                        continue
                    res.cases += 1
                    rep = branching_check(d, letters, letters[0], g, f, strict=False)
                    if not rep.holds or rep.restriction_failures:
                        res.fail(_label(d, a, "flagged identity", g, f))
    return _timed(run, "branching")


def filtration_suite(max_cells: int = 4, alphabets=None, sample=None, seed: int = 0) -> SuiteResult:
    """Quotient ranks of the strip filtration match D/E, and telescope to the straight count."""
    def run(res):
        for d, a in _cases(max_cells, alphabets, sample=sample, seed=seed):
            total = len(enumerate_straight(d, a))
            for x in a.letters:
                res.cases += 1
                strata = filtration_ranks(d, a.letters, x)
                tails = [s.rank_tail for s in strata] + [0]
                bad = [s for s in strata if s.quotient != s.rank_quotient_shape]
                bad += [s for s, hi, lo in zip(strata, tails, tails[1:]) if hi - lo != s.rank_quotient_shape]
                if bad or tails[0] != total or sum(s.rank_quotient_shape for s in strata) != total:
                    res.fail(_label(d, a, "filtration", x))
    return _timed(run, "filtration")


SUITES = {
    "echelon": (echelon_suite, 6),
    "straightening-oracle": (straightening_suite, 6),
    "skew-classical": (skew_suite, 6),
    "flagged": (flagged_suite, 5),
    "porism": (porism_suite, 4),
    "branching": (branching_suite, 5),
    "filtration": (filtration_suite, 4),
}


def run_suite(name: str, max_cells: Optional[int] = None, alphabets=None, sample=None, seed: int = 0) -> SuiteResult:
    fn, default = SUITES[name]
    return fn(max_cells if max_cells is not None else default, alphabets, sample=sample, seed=seed)
