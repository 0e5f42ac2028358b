"""The letterplace superalgebra over the rationals.

A variable ``(a|d)`` pairs a letter with a place and has parity
``|a| + |d|``.  Monomials are stored in one canonical variable order (places
ascending; inside a positive place letters ascending, inside a negative place
letters descending) together with an exact coefficient; reordering odd
variables costs a sign and a repeated odd variable kills the monomial.

Coefficients are ints where possible and :class:`fractions.Fraction` otherwise.
The integral form (divided powers in the ``(+|+)`` variables, exterior and
symmetric powers elsewhere) is checked by :func:`integral_divided_powers`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Sequence, Union

from .core import Letter, Tableau, place
from .errors import LengthMismatch, MissingPlace, ZeroPolynomial

Number = Union[int, Fraction]


class Var(NamedTuple):
    key: tuple[int, int]
    letter: Letter
    place: Letter
    odd: bool

    def __hash__(self):
        return hash(self.key)


@lru_cache(maxsize=None)
def var(letter: Letter, plc: Letter) -> Var:
    key = (plc.rank, letter.rank if plc.positive else -letter.rank)
    return Var(key, letter, plc, letter.negative != plc.negative)


Monomial = tuple  # tuple[tuple[Var, int], ...] in canonical order


def _clean(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def normalize_monomial(factors: Iterable) -> Optional[tuple[int, Monomial]]:
    """Sort a product of variables into canonical order.

    ``factors`` holds :class:`Var` objects or ``(letter, place)`` pairs.
    Returns ``(sign, monomial)`` or None when an odd variable repeats.
    """
    vs = [f if isinstance(f, Var) else var(*f) for f in factors]
    sign = 1
    # insertion sort; each transposition of two odd variables flips the sign
    for p in range(1, len(vs)):
        x = vs[p]
        q = p
        while q > 0 and vs[q - 1].key > x.key:
            if x.odd and vs[q - 1].odd:
                sign = -sign
            vs[q] = vs[q - 1]
            q -= 1
        vs[q] = x
    out: list[list] = []
    for v in vs:
        if out and out[-1][0].key == v.key:
            if v.odd:
                return None
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return sign, tuple((v, e) for v, e in out)


def monomial_product(m: Monomial, n: Monomial) -> Optional[tuple[int, Monomial]]:
    """Canonical form of ``m * n`` (both canonical)."""
    if not m:
        return 1, n
    if not n:
        return 1, m
    odd_left = sum(1 for v, _ in m if v.odd)
    sign = 1
    out = []
    i = j = 0
    while i < len(m) and j < len(n):
        vm, em = m[i]
        vn, en = n[j]
        if vm.key < vn.key:
            out.append(m[i])
            if vm.odd:
                odd_left -= 1
            i += 1
        elif vn.key < vm.key:
            if vn.odd and odd_left % 2:
                sign = -sign
            out.append(n[j])
            j += 1
        else:
            if vm.odd:
                return None
            out.append((vm, em + en))
            i += 1
            j += 1
    out.extend(m[i:])
    out.extend(n[j:])
    return sign, tuple(out)


def monomial_parity(m: Monomial) -> int:
    return sum(e for v, e in m if v.odd) % 2


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def divided_factorial(m: Monomial) -> int:
    """c(M)!: product of exponent factorials over the (+|+) variables."""
    out = 1
    for v, e in m:
        if v.letter.positive and v.place.positive:
            out *= factorial(e)
    return out


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        s = f"({v.letter.symbol}|{v.place.symbol})"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "".join(parts)


class Polynomial:
    """Finite map from canonical monomials to nonzero exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for m, c in dict(terms).items():
                if c:
                    self.terms[m] = _clean(c)

    @classmethod
    def one(cls) -> "Polynomial":
        return cls({(): 1})

    @classmethod
    def variable(cls, letter: Letter, plc: Letter) -> "Polynomial":
        return cls({((var(letter, plc), 1),): 1})

    @classmethod
    def from_factors(cls, factors, coeff: Number = 1) -> "Polynomial":
        r = normalize_monomial(factors)
        if r is None:
            return cls()
        s, m = r
        return cls({m: s * coeff})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, m: Monomial) -> Number:
        return self.terms.get(m, 0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _clean(s)
            else:
                out.pop(m, None)
        r = Polynomial()
        r.terms = out
        return r

    def __neg__(self):
        r = Polynomial()
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, k: Number) -> "Polynomial":
        if not k:
            return Polynomial()
        r = Polynomial()
        r.terms = {m: _clean(c * k) for m, c in self.terms.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = scale

    def parity(self) -> Optional[int]:
        """Common parity of the terms, or None if inhomogeneous (0 for the zero polynomial)."""
        ps = {monomial_parity(m) for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def degree_set(self) -> set[int]:
        return {monomial_degree(m) for m in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_monomial(m)}" for m, c in sorted(self.terms.items(), key=lambda t: _mkey(t[0])))


def _mkey(m: Monomial):
    return tuple((v.key, e) for v, e in m)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    out: dict = {}
    for m, a in p.terms.items():
        for n, b in q.terms.items():
            r = monomial_product(m, n)
            if r is None:
                continue
            s, mn = r
            c = out.get(mn, 0) + s * a * b
            if c:
                out[mn] = c
            else:
                out.pop(mn, None)
    res = Polynomial()
    res.terms = {m: _clean(c) for m, c in out.items()}
    return res


def linear_combination(pairs: Iterable[tuple[Polynomial, Number]]) -> Polynomial:
    """Sum of c*p over ``(p, c)`` pairs, accumulated in one dictionary."""
    out: dict = {}
    for p, k in pairs:
        if not k:
            continue
        for m, c in p.terms.items():
            v = out.get(m, 0) + c * k
            if v:
                out[m] = v
            else:
                del out[m]
    res = Polynomial()
    res.terms = {m: _clean(c) for m, c in out.items()}
    return res


def product(polys: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.one()
    for p in polys:
        out = multiply(out, p)
        if not out:
            break
    return out


# ---------------------------------------------------------------- biproducts


def _sign_exponent(w: Sequence[Letter], v: Sequence[Letter], sigma: Sequence[int]) -> int:
    k = len(w)
    inv = [0] * k
    for slot, idx in enumerate(sigma):
        inv[idx] = slot
    n = 0
    for i in range(k):
        if w[i].negative:
            for j in range(i + 1, k):
                if w[j].negative and inv[i] > inv[j]:
                    n += 1
    neg_places = 0
    for i in range(k):
        if w[sigma[i]].negative:
            n += neg_places
        if v[i].negative:
            neg_places += 1
    return n


def biproduct(w: Sequence[Letter], v: Sequence[Letter]) -> Polynomial:
    """(w|v): the signed sum over permutations of products (w_s(1)|v_1)...(w_s(k)|v_k)."""
    w, v = tuple(w), tuple(v)
    if len(w) != len(v):
        raise LengthMismatch(f"biproduct of words of lengths {len(w)} and {len(v)}")
    return _biproduct(w, v)


@lru_cache(maxsize=65536)
def _biproduct(w: tuple, v: tuple) -> Polynomial:
    out: dict = {}
    for sigma in permutations(range(len(w))):
        r = normalize_monomial([(w[sigma[i]], v[i]) for i in range(len(w))])
        if r is None:
            continue
        s, m = r
        if _sign_exponent(w, v, sigma) % 2:
            s = -s
        c = out.get(m, 0) + s
        if c:
            out[m] = c
        else:
            out.pop(m, None)
    res = Polynomial()
    res.terms = out
    return res


def positive_factorial(word: Sequence[Letter]) -> int:
    """c(w)!: product over positive letters of (multiplicity)!."""
    counts: dict = {}
    for a in word:
        if a.positive:
            counts[a] = counts.get(a, 0) + 1
    out = 1
    for n in counts.values():
        out *= factorial(n)
    return out


def tab(w: Sequence[Letter], v: Sequence[Letter]) -> Polynomial:
    """Tab(w|v): the biproduct normalized so divided powers monomials have coefficients +-1."""
    w, v = tuple(w), tuple(v)
    if len(w) != len(v):
        raise LengthMismatch(f"Tab of words of lengths {len(w)} and {len(v)}")
    return _tab(w, v)


@lru_cache(maxsize=65536)
def _tab(w: tuple, v: tuple) -> Polynomial:
    n = sum(1 for i in range(len(w)) for j in range(i) if w[i].negative and v[j].positive)
    k = Fraction(-1 if n % 2 else 1, positive_factorial(w) * positive_factorial(v))
    return _biproduct(w, v).scale(k)


def row_places(t: Tableau, i: int) -> tuple[Letter, ...]:
    return tuple(place(j) for j in t.shape.row_columns(i))


def tableau_to_polynomial(t: Tableau, places: Optional[Callable[[int], Letter]] = None) -> Polynomial:
    """[T] = product over rows, top to bottom, of Tab(row | its Deruyts row).

    ``places`` maps a column index to its place letter (default: negative
    place with rank equal to the column); it must return a negative letter.
    """
    if places is None:
        return _tableau_poly(t)
    factors = []
    for i in range(t.shape.n_rows):
        plcs = []
        for j in t.shape.row_columns(i):
            p = places(j)
            if p is None or not p.negative:
                raise MissingPlace(f"no negative place for column {j}")
            plcs.append(p)
        factors.append(tab(t.rows[i], plcs))
    return product(factors)


@lru_cache(maxsize=200000)
def _tableau_poly(t: Tableau) -> Polynomial:
    return product(_tab(t.rows[i], row_places(t, i)) for i in range(t.shape.n_rows))


def integral_divided_powers(p: Polynomial) -> bool:
    """Every coefficient times c(M)! is an integer."""
    for m, c in p.terms.items():
        x = c * divided_factorial(m)
        if isinstance(x, Fraction) and x.denominator != 1:
            return False
    return True


# ---------------------------------------------------------------- term orders


class DiagonalOrder:
    """A monomial order induced by a total order on variables.

    ``weight(v)`` ranks variables (bigger weight = bigger variable); ``N < M``
    when the biggest variable occurring to different powers has the higher
    power in ``M``.
    """

    def __init__(self, weight: Callable[[Var], tuple], name: str = "custom"):
        self.weight = weight
        self.name = name

    @classmethod
    def default(cls) -> "DiagonalOrder":
        """(i|j) > (i'|j') when j < j', or j = j' and i > i'."""
        return cls(lambda v: (-v.place.rank, v.letter.rank), "diag")

    @classmethod
    def letter_major(cls) -> "DiagonalOrder":
        """Variables compared by letter first (bigger letter is bigger), then by smaller place."""
        return cls(lambda v: (v.letter.rank, -v.place.rank), "letter-major")

    def key(self, m: Monomial) -> tuple:
        return tuple(sorted(((self.weight(v), e) for v, e in m), reverse=True))

    def compare(self, m: Monomial, n: Monomial) -> int:
        a, b = self.key(m), self.key(n)
        return (a > b) - (a < b)

    def __repr__(self):
        return f"DiagonalOrder({self.name})"


DIAG = DiagonalOrder.default()


def compare_diag(m: Monomial, n: Monomial, order: DiagonalOrder = DIAG) -> int:
    """-1, 0 or 1 as ``m`` is smaller than, equal to or bigger than ``n``."""
    return order.compare(m, n)


def initial_monomial(p: Polynomial, order: DiagonalOrder = DIAG) -> tuple[Number, Monomial]:
    """Smallest monomial of ``p`` with its coefficient on the divided powers basis."""
    if not p:
        raise ZeroPolynomial("the zero polynomial has no initial monomial")
    m = min(p.terms, key=order.key)
    return _clean(p.terms[m] * divided_factorial(m)), m


def psi(m: Monomial) -> list[Letter]:
    """Letters of ``m`` in decreasing variable order (places ascending, letters descending)."""
    out = []
    for v, e in sorted(m, key=lambda t: (t[0].place.rank, -t[0].letter.rank)):
        out.extend([v.letter] * e)
    return out


# ---------------------------------------------------------------- polarization


def polarize(a: Letter, b: Letter, p: Polynomial) -> Polynomial:
    """Apply the letter polarization D_{a,b}: the superderivation sending (b|q) to (a|q)."""
    d_odd = a.negative != b.negative
    out = Polynomial()
    for m, c in p.terms.items():
        factors = [v for v, e in m for _ in range(e)]
        passed = 0
        for r, v in enumerate(factors):
            if v.letter == b:
                new = factors[:r] + [var(a, v.place)] + factors[r + 1:]
                sign = -1 if (d_odd and passed % 2) else 1
                out = out + Polynomial.from_factors(new, sign * c)
            if v.odd:
                passed += 1
    return out


def kill_variables(p: Polynomial, dead: Callable[[Var], bool]) -> Polynomial:
    """Quotient map setting every variable with ``dead(v)`` to zero."""
    r = Polynomial()
    r.terms = {m: c for m, c in p.terms.items() if not any(dead(v) for v, _ in m)}
    return r


# ---------------------------------------------------------------- serialization


def letter_token(a: Letter) -> str:
    return str(a)


def poly_to_json(p: Polynomial) -> list:
    out = []
    for m, c in sorted(p.terms.items(), key=lambda t: _mkey(t[0])):
        out.append({
            "coeff": str(c),
            "monomial": [[letter_token(v.letter), letter_token(v.place), e] for v, e in m],
        })
    return out


def poly_from_json(data: list, letters: dict[str, Letter], places: Optional[dict[str, Letter]] = None) -> Polynomial:
    """Inverse of :func:`poly_to_json`; tokens are looked up in ``letters``/``places``.

    Numeric place tokens such as ``"3-"`` default to the column place 3.
    """
    out = Polynomial()
    for term in data:
        factors = []
        for ltok, ptok, e in term["monomial"]:
            a = letters[ltok]
            if places and ptok in places:
                q = places[ptok]
            else:
                q = place(int(ptok[:-1]))
            factors.extend([(a, q)] * int(e))
        out = out + Polynomial.from_factors(factors, Fraction(term["coeff"]))
    return out
