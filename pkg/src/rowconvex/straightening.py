"""Two-row syzygies and the straightening algorithms.

The exchange identity behind every step is produced by polarizing the
positive-letter identity

    [a^(i+l) b^(j) / b^(l) c^(k)] = (-1)^l [b^(j+l) a^(i) / a^(l) c^(k)]

with fresh positive letters ``a, b, c``: each polarization ``D_{y,s}`` replaces
one occurrence of ``s`` by ``y`` and is carried out symbolically on pairs of
row words, using the Koszul rule for a letter passing the letters to its left
and the parity of the top row polynomial when crossing into the bottom row.
The resulting relation among row-sorted tableaux is solved for the input
tableau.  Every emitted sum can be (and by default is) checked against the
letterplace expansion.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .core import (
    Letter,
    Shape,
    Tableau,
    column_word,
    flippable_witness,
    is_row_standard,
    is_straight,
    lt_plus,
    modified_key,
    word_key,
)
from .errors import AlreadyStraight, BadSpec, NonUnitPivot, NotRowStandard, OracleMismatch
from .letterplace import Polynomial, linear_combination, positive_factorial, tableau_to_polynomial


# ---------------------------------------------------------------- formal sums


@dataclass
class TableauSum:
    """Integer combination of tableaux of one shape."""

    terms: dict = field(default_factory=dict)

    @classmethod
    def single(cls, t: Tableau, c: int = 1) -> "TableauSum":
        return cls({t: c} if c else {})

    def add(self, t: Tableau, c) -> None:
        if not c:
            return
        s = self.terms.get(t, 0) + c
        if s:
            self.terms[t] = s
        else:
            del self.terms[t]

    def add_sum(self, other: "TableauSum", k=1) -> None:
        for t, c in other.terms.items():
            self.add(t, c * k)

    def scaled(self, k) -> "TableauSum":
        return TableauSum({t: c * k for t, c in self.terms.items()} if k else {})

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda tc: modified_key(tc[0])))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, TableauSum) and self.terms == other.terms

    def expand(self) -> Polynomial:
        return linear_combination((tableau_to_polynomial(t), c) for t, c in self.terms.items())

    def shape(self) -> Optional[Shape]:
        for t in self.terms:
            return t.shape
        return None

    def __repr__(self):
        return " + ".join(f"{c}*{[list(map(str, r)) for r in t.rows]}" for t, c in self) or "0"


# ---------------------------------------------------------------- words


def sort_row(word: Sequence[Letter]) -> Optional[tuple[int, tuple[Letter, ...]]]:
    """Sort a row into <+ order; the sign counts transposed pairs of negative letters.

    None when a negative letter repeats (the row polynomial vanishes).
    """
    neg_inv = 0
    for p in range(len(word)):
        if word[p].negative:
            for q in range(p + 1, len(word)):
                if word[q].negative and word[q].rank < word[p].rank:
                    neg_inv += 1
    out = tuple(sorted(word, key=lambda a: a.rank))
    for x, y in zip(out, out[1:]):
        if x == y and x.negative:
            return None
    return (-1 if neg_inv % 2 else 1), out


def normalize_tableau(t: Tableau) -> Optional[tuple[int, Tableau]]:
    """Row-sort a tableau; returns (sign, row-standard tableau) or None if [t] = 0."""
    sign = 1
    rows = []
    for r in t.rows:
        s = sort_row(r)
        if s is None:
            return None
        sign *= s[0]
        rows.append(s[1])
    return sign, Tableau(t.shape, tuple(rows))


def shuffles(word: Sequence, k: int) -> list[tuple[tuple, tuple, int]]:
    """Ordered splits of ``word`` into disjoint subwords of lengths k and n-k.

    The signature counts pairs that change order and are both negative letters.
    """
    n = len(word)
    if not 0 <= k <= n:
        raise ValueError(f"cannot take {k} letters from a word of length {n}")
    out = []
    for idx in itertools.combinations(range(n), k):
        chosen = set(idx)
        rest = [p for p in range(n) if p not in chosen]
        sig = 0
        for p in idx:
            for q in rest:
                if q < p and _odd(word[p]) and _odd(word[q]):
                    sig += 1
        out.append((tuple(word[p] for p in idx), tuple(word[p] for p in rest), sig))
    return out


def _odd(a) -> bool:
    return getattr(a, "negative", True)


# ---------------------------------------------------------------- syzygy


_FRESH = 10 ** 9
_A = Letter(_FRESH, "#a", False)
_B = Letter(_FRESH + 1, "#b", False)
_C = Letter(_FRESH + 2, "#c", False)


def _canonical(top: tuple, bot: tuple):
    s1 = sort_row(top)
    if s1 is None:
        return None
    s2 = sort_row(bot)
    if s2 is None:
        return None
    return s1[0] * s2[0], s1[1], s2[1]


def _polarize_pairs(terms: dict, y: Letter, s: Letter) -> dict:
    """Apply D_{y,s} (s positive) to a combination of biproduct pairs (top | bottom)."""
    out: dict = defaultdict(Fraction)
    odd = y.negative
    for (top, bot), c in terms.items():
        neg = 0
        for r, a in enumerate(top):
            if a == s:
                sign = -1 if (odd and neg % 2) else 1
                k = _canonical(top[:r] + (y,) + top[r + 1:], bot)
                if k is not None:
                    out[k[1], k[2]] += c * sign * k[0]
            neg += a.negative
        top_parity = sum(1 for a in top if a.positive)
        neg = 0
        for r, a in enumerate(bot):
            if a == s:
                sign = -1 if (odd and (top_parity + neg) % 2) else 1
                k = _canonical(top, bot[:r] + (y,) + bot[r + 1:])
                if k is not None:
                    out[k[1], k[2]] += c * sign * k[0]
            neg += a.negative
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=4096)
def _exchange_relation(x: tuple, ut: tuple, ub: tuple, z: tuple) -> dict:
    """Relation sum_S r_S [S] = 0 among row pairs (top, bottom), both <+ sorted.

    Top row of the source holds ``x`` and ``ut``; bottom holds ``ub`` and ``z``.
    """
    i_l, j, l, k = len(x), len(ut), len(ub), len(z)
    terms: dict = defaultdict(Fraction)
    # biproduct normalisation: Tab(a^n b^m | places) = (a^n b^m | places) / (n! m!)
    terms[(_A,) * i_l + (_B,) * j, (_B,) * l + (_C,) * k] += Fraction(1, factorial(i_l) * factorial(j) * factorial(l) * factorial(k))
    if i_l >= l:
        i = i_l - l
        terms[(_B,) * (j + l) + (_A,) * i, (_A,) * l + (_C,) * k] -= Fraction(
            (-1) ** l, factorial(j + l) * factorial(i) * factorial(l) * factorial(k))
    terms = dict(terms)
    for y in ub + ut:
        terms = _polarize_pairs(terms, y, _B)
    for y in x:
        terms = _polarize_pairs(terms, y, _A)
    for y in z:
        terms = _polarize_pairs(terms, y, _C)
    # biproduct pairs to Tab pairs
    return {k: v * positive_factorial(k[0]) * positive_factorial(k[1]) for k, v in terms.items()}


@dataclass(frozen=True)
class SyzygySpec:
    """Marked columns: ``top`` in the upper row, ``bottom`` in the lower row."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]


def _check_two_row(t: Tableau):
    if t.shape.n_rows != 2:
        raise BadSpec(f"expected a two-row tableau, got {t.shape.n_rows} rows")
    if not is_row_standard(t):
        raise NotRowStandard("syzygies need row-standard input", witness=[list(map(str, r)) for r in t.rows])


def syzygy(t: Tableau, spec: SyzygySpec, method: str = "polarization", check: bool = True) -> TableauSum:
    """Expand the two-row tableau ``t`` through the exchange of its marked letters.

    ``method="polarization"`` derives the coefficients from the positive-letter
    identity; ``method="printed"`` evaluates the closed formula with the
    alpha/beta sign exponents exactly as published.  With ``check`` the result
    is compared with the letterplace expansion of ``t``.
    """
    _check_two_row(t)
    (m1, l1), (m2, l2) = t.shape.rows
    top_cols, bot_cols = tuple(spec.top), tuple(spec.bottom)
    if not top_cols and not bot_cols:
        raise BadSpec("empty marking")
    if any(c not in range(m1, l1 + 1) for c in top_cols) or any(c not in range(m2, l2 + 1) for c in bot_cols):
        raise BadSpec(f"marked columns outside the rows: {spec}")
    if (m1 > m2 or l1 < l2) and len(top_cols) + len(bot_cols) <= l1 - min(m1, m2) + 1:
        raise BadSpec("skew exchange needs more marked cells than columns")
    v, w = t.rows
    x = tuple(v[c - m1] for c in range(m1, l1 + 1) if c not in top_cols)
    ut = tuple(v[c - m1] for c in top_cols)
    ub = tuple(w[c - m2] for c in bot_cols)
    z = tuple(w[c - m2] for c in range(m2, l2 + 1) if c not in bot_cols)
    if method == "polarization":
        out = _solve(t, _exchange_relation(x, ut, ub, z))
    elif method == "printed":
        out = _printed_syzygy(t, x, ut, ub, z, top_cols[0] if top_cols else l1 + 1,
                              bot_cols[0] if bot_cols else m2)
    else:
        raise ValueError(f"unknown syzygy method {method!r}")
    if check:
        verify(t, out)
    return out


def _solve(t: Tableau, relation: dict) -> TableauSum:
    key = (t.rows[0], t.rows[1])
    pivot = relation.get(key, 0)
    if not pivot:
        raise NonUnitPivot("the exchange relation does not involve the input tableau", witness=str(t))
    out = TableauSum()
    for (top, bot), r in relation.items():
        if (top, bot) == key:
            continue
        c = -r / pivot
        if c.denominator != 1:
            raise NonUnitPivot(f"coefficient {c} is not integral (pivot {pivot})", witness=str(t))
        out.add(Tableau(t.shape, (top, bot)), int(c))
    return out


def verify(t: Tableau, s: TableauSum) -> None:
    """Raise OracleMismatch unless [t] equals the expansion of ``s``."""
    lhs = tableau_to_polynomial(t)
    rhs = s.expand()
    if lhs != rhs:
        raise OracleMismatch("expansion identity fails", witness={"tableau": str(t), "sum": repr(s),
                                                                  "difference": repr(lhs - rhs)})


# ---- the closed formula with its printed coefficients


def _neg(word) -> int:
    return sum(1 for a in word if a.negative)


def _sign_of(word) -> int:
    """Number of inversions among negative letters of ``word``."""
    return sum(1 for p in range(len(word)) for q in range(p + 1, len(word))
               if word[p].negative and word[q].negative and word[q].rank < word[p].rank)


def _m(word) -> int:
    n = _neg(word)
    return _sign_of(word) + n * (n - 1) // 2


def _cf(*words) -> int:
    return positive_factorial([a for w in words for a in w])


def _printed_syzygy(t: Tableau, x, ut, ub, z, c1: int, cp1: int) -> TableauSum:
    """Closed-form Syz with alpha_sigma, beta_tau and N1, N2 as printed.

    ``|w|`` in the sign exponents is the parity of a word: its number of negative letters.
    """
    m2 = t.shape.rows[1][0]
    w = t.rows[1]
    z1 = tuple(w[: cp1 - m2])
    z2 = tuple(w[cp1 - m2 + len(ub):])
    u = ub + ut
    l, j = len(ub), len(ut)
    n_top = len(t.rows[0])  # i + j + l

    def alpha(up, upp, sig):
        n1 = (_neg(z1) * _neg(up) + _neg(z) * n_top + _neg(up) * n_top + sig
              + _m(x + upp) + _m(z1 + up + z2))
        ratio = Fraction(_cf(x, upp), _cf(x) * _cf(upp)) * Fraction(_cf(z1, up, z2), _cf(z1, z2) * _cf(up))
        return (-1) ** (n1 % 2) * ratio

    def beta(xp, xpp, sig):
        n2 = (_neg(z) * n_top + _neg(xpp) * (n_top - len(u)) + sig + _m(u + xp) + _m(xpp + z))
        ratio = Fraction(_cf(u, xp), _cf(u) * _cf(xp)) * Fraction(_cf(xpp, z), _cf(xpp) * _cf(z))
        return (-1) ** l * (-1) ** (n2 % 2) * ratio

    alpha_e = alpha(ub, ut, 0)
    out = TableauSum()
    for up, upp, sig in shuffles(u, l):
        if up == ub and upp == ut and sig == 0:
            continue
        k = _canonical(x + upp, z1 + up + z2)
        if k is None:
            continue
        out.add(Tableau(t.shape, (k[1], k[2])), _integral(-alpha(up, upp, sig) / alpha_e))
    if len(x) >= l:
        for xpp, xp, sig in shuffles(x, l):
            k = _canonical(u + xp, xpp + z)
            if k is None:
                continue
            out.add(Tableau(t.shape, (k[1], k[2])), _integral(beta(xp, xpp, sig) / alpha_e))
    return out


def _integral(c: Fraction) -> int:
    if c.denominator != 1:
        raise NonUnitPivot(f"coefficient {c} is not integral")
    return int(c)


# ---------------------------------------------------------------- row-straighten


def two_row_word(t: Tableau) -> tuple[int, ...]:
    return modified_key(t)


_FAKE_BASE = -(10 ** 6)


def fake_letter(column: int) -> Letter:
    return Letter(_FAKE_BASE + column, f"f{column}", True)


def _is_fake(a: Letter) -> bool:
    return a.rank < _FAKE_BASE + 10 ** 5 and a.symbol.startswith("f")


@dataclass
class Trace:
    """Bookkeeping for one run of the straightening algorithms."""

    max_depth: int = 0
    syzygies: int = 0


def row_straighten(t: Tableau, trace: Optional[Trace] = None, check: bool = True,
                   method: str = "polarization") -> TableauSum:
    """Straighten a non-straight, row-standard two-row tableau."""
    _check_two_row(t)
    if is_straight(t)[0]:
        raise AlreadyStraight("tableau is already straight", witness=str(t))
    trace = trace if trace is not None else Trace()
    (m1, _), (m2, _) = t.shape.rows
    if m1 >= m2:
        out = _skew_straighten(t, trace, method)
    else:
        out = _row_straighten(t, trace, 1, method)
    if check:
        verify(t, out)
    return out


_MAX_DEPTH = 64


def marked_columns(t: Tableau) -> SyzygySpec:
    """The marked columns chosen by row-straighten for the two-row tableau ``t``."""
    (m1, l1), (m2, _) = t.shape.rows
    wit = flippable_witness(t)
    if wit is None:
        raise AlreadyStraight("no flippable inversion", witness=str(t))
    c2 = wit.k
    v = lambda c: t.get(0, c)
    w = lambda c: t.get(1, c)
    c1 = m2
    while not (c1 - 1 < m1 or lt_plus(v(c1 - 1), w(c1))):
        c1 += 1
    c3 = c2
    while w(c3 + 1) is not None and w(c3 + 1) == w(c2):
        c3 += 1
    if c1 < c2:
        start = c2
    else:
        start = next(c for c in range(m1, l1 + 1) if v(c).rank >= w(c2).rank)
    return SyzygySpec(tuple(range(start, l1 + 1)), tuple(range(c1, c3 + 1)))


def _row_straighten(t: Tableau, trace: Trace, depth: int, method: str,
                    dead: Optional[Callable[[Tableau], bool]] = None) -> TableauSum:
    """Exchange, then recurse on outputs whose column word did not grow; ``dead`` outputs are dropped."""
    if depth > _MAX_DEPTH:
        raise OracleMismatch("row-straighten failed to terminate", witness=str(t))
    trace.max_depth = max(trace.max_depth, depth)
    trace.syzygies += 1
    spec = marked_columns(t)
    base = two_row_word(t)
    out = TableauSum()
    for s, c in syzygy(t, spec, method=method, check=False).terms.items():
        if dead is not None and dead(s):
            continue
        if two_row_word(s) > base or is_straight(s)[0]:
            out.add(s, c)
        else:
            out.add_sum(_row_straighten(s, trace, depth + 1, method, dead), c)
    return out


def _skew_straighten(t: Tableau, trace: Trace, method: str) -> TableauSum:
    """Fake letters: pad the top row leftwards so it starts before the bottom row."""
    (m1, l1), (m2, l2) = t.shape.rows
    fakes = tuple(fake_letter(c) for c in range(m2 - 1, m1))
    ext = Tableau(Shape(((m2 - 1, l1), (m2, l2))), (fakes + t.rows[0], t.rows[1]))
    out = TableauSum()
    if is_straight(ext)[0]:
        raise AlreadyStraight("padded tableau is straight", witness=str(t))
    n_f = len(fakes)

    # a fake letter in the bottom row meets only places of other columns
    def dead(s: Tableau) -> bool:
        return any(_is_fake(a) for a in s.rows[1])

    for s, c in _row_straighten(ext, trace, 1, method, dead).terms.items():
        top = s.rows[0]
        if top[:n_f] != fakes or any(_is_fake(a) for a in s.rows[1]):
            continue  # sent to zero by (f_i | j) -> delta_ij
        rest = top[n_f:]
        # erasing fakes from a top row costs (-1)^(F * #negative letters left);
        # the same substitution applied to the input contributes its own factor
        sign = (-1) ** ((n_f * (_neg(rest) + _neg(t.rows[0]))) % 2)
        out.add(Tableau(t.shape, (rest, s.rows[1])), sign * c)
    return out


# ---------------------------------------------------------------- straighten-tableau


def _pos_count(rows: Iterable[Sequence[Letter]]) -> int:
    return sum(1 for r in rows for a in r if a.positive)


def straighten_tableau(t: Tableau, check: bool = True, trace: Optional[Trace] = None,
                       method: str = "polarization") -> TableauSum:
    """Express [t] in straight tableaux of the same shape.

    Rows that are not <+ sorted are sorted first (with the sign this costs);
    a repeated negative letter in a row gives the empty sum.
    """
    trace = trace if trace is not None else Trace()
    norm = normalize_tableau(t)
    if norm is None:
        out = TableauSum()
    else:
        sign, t0 = norm
        out = TableauSum({k: sign * c for k, c in _straighten(t0, method, trace).items()})
    if check:
        verify(t, out)
    return out


_memo: dict = {}


def _straighten(t: Tableau, method: str, trace: Trace) -> dict:
    key = (t, method)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    ok, wit = is_straight(t)
    if ok:
        res = {t: 1}
    else:
        i, j = wit.i, wit.j
        pair = Tableau(Shape((t.shape.rows[i], t.shape.rows[j])), (t.rows[i], t.rows[j]))
        mid = _pos_count(t.rows[i + 1:j]) % 2
        acc = TableauSum()
        for s, b in row_straighten(pair, trace, check=False, method=method).terms.items():
            n = ((_pos_count([s.rows[1]]) + _pos_count([t.rows[j]])) * mid) % 2
            nxt = t.replace_rows({i: s.rows[0], j: s.rows[1]})
            for u, c in _straighten(nxt, method, trace).items():
                acc.add(u, (-1) ** n * b * c)
        res = acc.terms
    _memo[key] = res
    return res


def clear_cache() -> None:
    _memo.clear()
    _exchange_relation.cache_clear()
