"""Independence certificates, flagged modules, coordinates and characters."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Optional, Union

from .core import Alphabet, Letter, Shape, Tableau, check_flags, column_word, enumerate_straight, modified_key
from .errors import CertificateFailure, NotInModule
from .letterplace import (
    DIAG,
    DiagonalOrder,
    Polynomial,
    divided_factorial,
    initial_monomial,
    kill_variables,
    psi,
    tableau_to_polynomial,
)
from .straightening import TableauSum, straighten_tableau

Flag = Mapping[int, Letter]


# ---------------------------------------------------------------- exact ranks


def _content(v: dict) -> dict:
    g = 0
    for c in v.values():
        g = gcd(g, c)
    if g > 1:
        return {m: c // g for m, c in v.items()}
    return v


def _integral(p: Union[Polynomial, dict]) -> dict:
    """Scale a polynomial to coprime integer coefficients."""
    terms = p.terms if isinstance(p, Polynomial) else p
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return _content({m: int(c * den) for m, c in terms.items()})


class Echelon:
    """Fraction-free row echelon form over the integers.

    Each stored row is keyed by its smallest monomial under ``order``; a new
    vector is reduced by cancelling its smallest monomial until it either
    vanishes or starts at a fresh pivot.
    """

    def __init__(self, order: DiagonalOrder = DIAG):
        self.order = order
        self.rows: dict = {}
        self._keys: dict = {}

    def _key(self, m):
        k = self._keys.get(m)
        if k is None:
            k = self._keys[m] = self.order.key(m)
        return k

    def reduce(self, p) -> dict:
        v = _integral(p)
        while v:
            lead = min(v, key=self._key)
            row = self.rows.get(lead)
            if row is None:
                return v
            a, b = row[lead], v[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            out = {m: c * fa for m, c in v.items()}
            for m, c in row.items():
                s = out.get(m, 0) - fb * c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
            v = _content(out)
        return v

    def add(self, p) -> bool:
        """Insert ``p``; True when it was independent of the rows so far."""
        v = self.reduce(p)
        if not v:
            return False
        self.rows[min(v, key=self._key)] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(polys: Iterable, order: DiagonalOrder = DIAG) -> int:
    e = Echelon(order)
    for p in polys:
        e.add(p)
    return e.rank


# ---------------------------------------------------------------- certificates


@dataclass(frozen=True)
class Pivot:
    tableau: Tableau
    coefficient: int
    monomial: tuple

    def word(self) -> list[Letter]:
        return psi(self.monomial)


def echelon_certificate(shape: Shape, alphabet: Iterable[Letter], order: DiagonalOrder = DIAG,
                        lower: Optional[Flag] = None, upper: Optional[Flag] = None) -> list[Pivot]:
    """Initial monomials of the straight tableaux: pairwise distinct, each with coefficient +-1.

    With flags, the tableaux are the (doubly) flagged straight ones and the
    polynomials are taken after :func:`apply_flag`.
    """
    seen: dict = {}
    table = []
    for t in enumerate_straight(shape, alphabet, lower, upper):
        p = apply_flag(tableau_to_polynomial(t), lower, upper)
        if not p:
            raise CertificateFailure("straight tableau expands to zero", witness=str(t))
        c, m = initial_monomial(p, order)
        if c not in (1, -1):
            raise CertificateFailure(f"pivot coefficient {c} is not a unit", witness=str(t))
        if m in seen:
            raise CertificateFailure("two straight tableaux share an initial monomial",
                                     witness=[str(seen[m]), str(t)])
        seen[m] = t
        table.append(Pivot(t, int(c), m))
    return table


# ---------------------------------------------------------------- flags


def apply_flag(p: Polynomial, lower: Optional[Flag] = None, upper: Optional[Flag] = None) -> Polynomial:
    """phi_{g,f}: set (l|q) = 0 when l exceeds f at place q or falls below g there."""
    if lower is None and upper is None:
        return p

    def dead(v) -> bool:
        q = v.place.rank
        if upper is not None and q in upper and v.letter.rank > upper[q].rank:
            return True
        if lower is not None and q in lower and v.letter.rank < lower[q].rank:
            return True
        return False

    return kill_variables(p, dead)


def trivial_flags(shape: Shape, alphabet: Alphabet) -> tuple[dict, dict]:
    lo, hi = alphabet.letters[0], alphabet.letters[-1]
    cols = shape.columns()
    return {j: lo for j in cols}, {j: hi for j in cols}


# ---------------------------------------------------------------- coordinates


def coordinates(p: Union[TableauSum, Polynomial, Tableau], shape: Shape, alphabet: Iterable[Letter],
                order: DiagonalOrder = DIAG) -> dict[Tableau, int]:
    """Coefficients of ``p`` in the straight basis of ``shape``."""
    if isinstance(p, Tableau):
        p = TableauSum.single(p)
    if isinstance(p, TableauSum):
        out = TableauSum()
        for t, c in p.terms.items():
            out.add_sum(straighten_tableau(t, check=False), c)
        return dict(out.terms)
    pivots = {pv.monomial: pv for pv in echelon_certificate(shape, alphabet, order)}
    rest = p
    out: dict = {}
    while rest:
        c, m = initial_monomial(rest, order)
        pv = pivots.get(m)
        if pv is None:
            raise NotInModule("initial monomial matches no straight tableau",
                              witness={"monomial": str(Polynomial({m: 1})), "coefficient": str(c)})
        k = Fraction(c) / pv.coefficient
        if k.denominator != 1:
            raise NotInModule(f"non-integral coordinate {k}", witness=str(pv.tableau))
        out[pv.tableau] = out.get(pv.tableau, 0) + int(k)
        rest = rest - tableau_to_polynomial(pv.tableau).scale(k)
    return {t: c for t, c in out.items() if c}


# ---------------------------------------------------------------- characters


@dataclass(frozen=True)
class Character:
    """Polynomial in variables t_l, one per alphabet letter, with integer coefficients.

    ``terms`` maps exponent vectors (aligned with ``letters``) to coefficients.
    """

    letters: tuple[Letter, ...]
    terms: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_counter(cls, letters, counter: Mapping) -> "Character":
        return cls(tuple(letters), tuple(sorted((k, v) for k, v in counter.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def degrees(self) -> set[int]:
        return {sum(e) for e, _ in self.terms}

    def total(self) -> int:
        return sum(c for _, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, reverse=True):
            mono = "*".join(f"t_{a.symbol}" + (f"^{k}" if k > 1 else "") for a, k in zip(self.letters, e) if k)
            parts.append((f"{c}*" if c != 1 else "") + (mono or "1"))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"monomial": {str(a): k for a, k in zip(self.letters, e) if k}, "coeff": c}
                for e, c in self.terms]


def content(t: Tableau, letters: tuple[Letter, ...]) -> tuple[int, ...]:
    cnt = Counter(t.letters())
    return tuple(cnt.get(a, 0) for a in letters)


def character(shape: Shape, alphabet: Iterable[Letter], lower: Optional[Flag] = None,
              upper: Optional[Flag] = None) -> Character:
    """Sum over the doubly flagged straight tableaux of the product of t_entry."""
    letters = tuple(alphabet)
    cnt: Counter = Counter()
    for t in enumerate_straight(shape, letters, lower, upper):
        cnt[content(t, letters)] += 1
    return Character.from_counter(letters, cnt)
