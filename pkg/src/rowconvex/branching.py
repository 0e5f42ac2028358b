"""Strips, dominance, the branching identity for characters, and filtration ranks.

A strip is the set of cells a new minimal letter occupies in some straight
tableau: horizontal for a plus letter, vertical for a minus letter.  Cells are
``(row, column)`` with rows counted from 0 as in :class:`~rowconvex.core.Shape`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Iterable, Optional, Sequence

from .basis import Echelon, Flag, content
from .core import Letter, Shape, Tableau, enumerate_row_standard, enumerate_straight, in_flags, is_straight, place
from .errors import IdentityFailure, KindMismatch, ShapeMismatch
from .letterplace import tableau_to_polynomial

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

# a letter below every alphabet in use; only its sign matters
_FRESH = {HORIZONTAL: Letter(-(10 ** 9), "a", False), VERTICAL: Letter(-(10 ** 9), "a", True)}


def kind_of(a: Letter) -> str:
    return VERTICAL if a.negative else HORIZONTAL


@dataclass(frozen=True)
class Strip:
    shape: Shape
    kind: str
    cells: frozenset

    @property
    def columns(self) -> tuple[int, ...]:
        """I_E, the sorted multiset of column indices."""
        return tuple(sorted(j for _, j in self.cells))

    def __len__(self):
        return len(self.cells)

    def prefix_counts(self) -> tuple[int, ...]:
        cols = self.columns
        return tuple(sum(1 for c in cols if c <= j) for j in self.shape.columns())

    def sorted_cells(self) -> list[tuple[int, int]]:
        return sorted(self.cells)

    def to_json(self) -> dict:
        return {"kind": self.kind, "cells": [[i + 1, j] for i, j in self.sorted_cells()],
                "columns": list(self.columns)}


def _completion(shape: Shape, kind: str, cells: Iterable) -> Tableau:
    """The strip letter on ``cells``; every other cell holds its column index as a minus letter."""
    a = _FRESH[kind]
    cells = set(cells)
    rows = tuple(tuple(a if (i, j) in cells else place(j) for j in shape.row_columns(i))
                 for i in range(shape.n_rows))
    return Tableau(shape, rows)


def is_strip(shape: Shape, kind: str, cells: Iterable) -> bool:
    """Whether ``cells`` is the cell set of a minimal letter in some straight tableau.

    The letter must fill a leftmost block of each row (at most one cell per row
    when it is a minus letter).  The remaining cells are then filled with their
    column indices as minus letters: that filling has no inversions of its own,
    so it is straight exactly when some filling is.
    """
    cells = set(cells)
    if not all(c in shape for c in cells):
        return False
    for i in range(shape.n_rows):
        k = sum(1 for j in shape.row_columns(i) if (i, j) in cells)
        if any((i, j) not in cells for j in list(shape.row_columns(i))[:k]):
            return False
        if kind == VERTICAL and k > 1:
            return False
    return is_straight(_completion(shape, kind, cells))[0]


def _candidates(shape: Shape, kind: str):
    lengths = [range(shape.row_length(i) + 1) if kind == HORIZONTAL else range(2) for i in range(shape.n_rows)]
    for ks in cartesian(*lengths):
        yield frozenset((i, j) for i, k in enumerate(ks) for j in list(shape.row_columns(i))[:k])


def _dominance_key(e: Strip) -> tuple:
    # negated prefix counts: a linear extension of dominance, least dominant first
    return tuple(-c for c in e.prefix_counts())


def enumerate_strips(shape: Shape, kind: str, a: Optional[Letter] = None,
                     lower: Optional[Flag] = None, upper: Optional[Flag] = None) -> list[Strip]:
    """All strips of ``kind`` in ``shape``, the empty one included.

    With ``a`` and flags given, only a-flagged strips are kept (cells in columns
    j with g_j <= a <= f_j).  Strips are listed least dominant first.
    """
    if a is not None and kind != kind_of(a):
        raise KindMismatch(f"{kind} strips need a {'plus' if kind == HORIZONTAL else 'minus'} letter",
                           witness=str(a))
    out = []
    for cells in _candidates(shape, kind):
        if a is not None and not all(in_flags(a, j, lower, upper) for _, j in cells):
            continue
        if is_strip(shape, kind, cells):
            out.append(Strip(shape, kind, cells))
    out.sort(key=_dominance_key)
    return out


def strip_from_columns(shape: Shape, kind: str, columns: Sequence[int]) -> Optional[Strip]:
    """Rebuild a strip from its column multiset by northmost placement, or None."""
    filled: set = set()
    for c in sorted(columns):
        for i in shape.column_cells(c):
            if (i, c) in filled:
                continue
            left = (i, c - 1)
            if left not in shape or (kind == HORIZONTAL and left in filled):
                filled.add((i, c))
                break
        else:
            return None
    if not is_strip(shape, kind, filled):
        return None
    return Strip(shape, kind, frozenset(filled))


def dominance_leq(e: Strip, ep: Strip) -> bool:
    """E <= E': every prefix of columns holds at least as many cells of E as of E'."""
    if e.kind != ep.kind:
        raise KindMismatch("strips of different kinds are not comparable", witness=[e.kind, ep.kind])
    if e.shape != ep.shape:
        raise ShapeMismatch("strips lie in different shapes", witness=[e.shape.rows, ep.shape.rows])
    return all(x >= y for x, y in zip(e.prefix_counts(), ep.prefix_counts()))


def quotient_shape(e: Strip) -> Shape:
    """D/E: remove the strip's cells and any row left empty."""
    rows = []
    for i, (s, t) in enumerate(e.shape.rows):
        k = sum(1 for j in range(s, t + 1) if (i, j) in e.cells)
        if s + k <= t:
            rows.append((s + k, t))
    return Shape(tuple(sorted(rows, key=lambda r: -r[1])))


def restrict(t: Tableau, e: Strip) -> Tableau:
    """T restricted to D/E (the strip cells must be a leftmost block of each row)."""
    d = quotient_shape(e)
    rows = [tuple(t[i, j] for j in t.shape.row_columns(i) if (i, j) not in e.cells) for i in range(t.shape.n_rows)]
    rows = [r for r in rows if r]
    return Tableau(d, tuple(rows))


# ---------------------------------------------------------------- characters


@dataclass
class BranchingReport:
    letter: Letter
    letters: tuple[Letter, ...]
    lhs: Counter
    rhs: Counter
    rhs_literal: Counter
    strips: list = field(default_factory=list)  # (strip, number of straight tableaux of D/E)
    restriction_failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return +self.lhs == +self.rhs

    @property
    def holds_literal(self) -> bool:
        """The identity read without the t_a^{|E|} factor."""
        return +self.lhs == +self.rhs_literal

    def first_mismatch(self):
        for m in sorted(set(self.lhs) | set(self.rhs)):
            if self.lhs.get(m, 0) != self.rhs.get(m, 0):
                return m
        return None

    def to_json(self) -> dict:
        def poly(c: Counter):
            return [{"monomial": {str(a): k for a, k in zip(self.letters, m) if k}, "coeff": v}
                    for m, v in sorted(c.items()) if v]

        return {
            "letter": str(self.letter),
            "strips": [dict(e.to_json(), quotient_rows=[[s, t] for s, t in quotient_shape(e).rows], count=n)
                       for e, n in self.strips],
            "lhs": poly(self.lhs),
            "rhs": poly(self.rhs),
            "identity": self.holds,
            "identity_without_factor": self.holds_literal,
            "restriction_failures": self.restriction_failures,
        }


def branching_check(shape: Shape, alphabet: Iterable[Letter], a: Letter,
                    lower: Optional[Flag] = None, upper: Optional[Flag] = None,
                    strict: bool = True) -> BranchingReport:
    """Compare ch^D(A) with the sum over a-flagged strips E of t_a^{|E|} ch^{D/E}(A minus a).

    Raises IdentityFailure (unless ``strict`` is false) when they differ.  When
    ``a`` is the smallest letter, also checks that every straight tableau
    restricts to a straight tableau of D/E.
    """
    letters = tuple(alphabet)
    if a not in letters:
        raise KindMismatch(f"letter {a} is not in the alphabet", witness=[str(b) for b in letters])
    rest = tuple(b for b in letters if b != a)
    pos = letters.index(a)
    lhs: Counter = Counter()
    straight_d = enumerate_straight(shape, letters, lower, upper)
    for t in straight_d:
        lhs[content(t, letters)] += 1
    rhs: Counter = Counter()
    literal: Counter = Counter()
    report = BranchingReport(a, letters, lhs, rhs, literal)
    for e in enumerate_strips(shape, kind_of(a), a, lower, upper):
        d = quotient_shape(e)
        sub = enumerate_straight(d, rest, lower, upper)
        report.strips.append((e, len(sub)))
        for t in sub:
            m = list(content(t, rest))
            m.insert(pos, 0)
            literal[tuple(m)] += 1
            m[pos] = len(e)
            rhs[tuple(m)] += 1
    if pos == 0:
        for t in straight_d:
            cells = frozenset(c for c in shape.cells() if t[c] == a)
            e = Strip(shape, kind_of(a), cells)
            if not is_straight(restrict(t, e))[0]:
                report.restriction_failures.append(str(t))
    if strict and not report.holds:
        m = report.first_mismatch()
        raise IdentityFailure("branching identity fails",
                              witness={"monomial": {str(b): k for b, k in zip(letters, m) if k},
                                       "lhs": lhs.get(m, 0), "rhs": rhs.get(m, 0)})
    return report


# ---------------------------------------------------------------- filtration


@dataclass(frozen=True)
class Stratum:
    strip: Strip
    rank_ge: int
    rank_gt: int
    rank_quotient_shape: int
    rank_tail: int  # rank of the span over this strip and all later ones in the linear order

    @property
    def quotient(self) -> int:
        return self.rank_ge - self.rank_gt

    def to_json(self) -> dict:
        return {"strip": self.strip.to_json(), "rank_ge": self.rank_ge, "rank_gt": self.rank_gt,
                "rank_quotient_shape": self.rank_quotient_shape, "rank_tail": self.rank_tail}


def filtration_ranks(shape: Shape, alphabet: Iterable[Letter], a: Letter) -> list[Stratum]:
    """Ranks of the dominance filtration of S_D by the position of ``a``.

    Each stratum E records the rank of the span of all [T], T row-standard with
    a-cells a strip dominating E (``rank_ge``), the same for strict dominance
    (``rank_gt``), and the size of the straight basis of D/E over the other
    letters.  ``rank_tail`` follows the linear order instead of the up-sets.

    The span of all [T] does not depend on how the alphabet is ordered, so
    ``a`` is first moved below every other letter.
    """
    letters = tuple(alphabet)
    if a not in letters:
        total = len(enumerate_straight(shape, letters))
        empty = Strip(shape, kind_of(a), frozenset())
        return [Stratum(empty, total, 0, total, total)]
    if a != min(letters):
        low = Letter(min(b.rank for b in letters) - 1, a.symbol, a.negative)
        letters = (low,) + tuple(b for b in letters if b != a)
        a = low
    rest = tuple(b for b in letters if b != a)
    strips = enumerate_strips(shape, kind_of(a))
    index = {e.cells: e for e in strips}
    groups: dict = {e.cells: [] for e in strips}
    for t in enumerate_row_standard(shape, letters):
        cells = frozenset(c for c in shape.cells() if t[c] == a)
        if cells in index:
            p = tableau_to_polynomial(t)
            if p:
                groups[cells].append(p)

    def span_rank(chosen) -> int:
        ech = Echelon()
        for e in chosen:
            for p in groups[e.cells]:
                ech.add(p)
        return ech.rank

    tail_ranks = []
    ech = Echelon()
    for e in reversed(strips):
        for p in groups[e.cells]:
            ech.add(p)
        tail_ranks.append(ech.rank)
    tail_ranks.reverse()
    out = []
    for e, tail in zip(strips, tail_ranks):
        ge = [f for f in strips if dominance_leq(e, f)]
        gt = [f for f in ge if f.cells != e.cells]
        out.append(Stratum(e, span_rank(ge), span_rank(gt),
                           len(enumerate_straight(quotient_shape(e), rest)), tail))
    return out
