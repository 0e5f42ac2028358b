"""The rings R^D generated by the tableau polynomials of one shape.

Products of tableaux are recorded as sorted tuples of straight tableaux
(ascending by plain column word).  Relations are quadratic: a product whose
interleaving is not straight is rewritten through one two-row exchange.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    Letter,
    Shape,
    Tableau,
    column_word,
    enumerate_straight,
    is_straight,
    plain_key,
    straight_filling,
    word_key,
)
from .errors import NotHomogeneous, NotMember, OracleMismatch, ShapeMismatch
from .letterplace import (
    DIAG,
    DiagonalOrder,
    Polynomial,
    initial_monomial,
    linear_combination,
    product,
    psi,
    tableau_to_polynomial,
)
from .straightening import TableauSum, row_straighten, straighten_tableau


def power_shape(shape: Shape, k: int) -> Shape:
    """D^(o k): every row repeated k times."""
    return Shape(tuple(r for r in shape.rows for _ in range(k)))


def interleave(*tableaux: Tableau) -> Tableau:
    """T1 o T2 o ...: the first rows of all factors, then the second rows, and so on."""
    shape = tableaux[0].shape
    for t in tableaux[1:]:
        if t.shape != shape:
            raise ShapeMismatch("interleaved tableaux must share a shape", witness=[shape.rows, t.shape.rows])
    k = len(tableaux)
    return Tableau(power_shape(shape, k), tuple(t.rows[i] for i in range(shape.n_rows) for t in tableaux))


def split(t: Tableau, k: int) -> list[Tableau]:
    """Inverse of :func:`interleave` on a shape D^(o k)."""
    n = t.shape.n_rows // k
    base = Shape(tuple(t.shape.rows[i * k] for i in range(n)))
    if power_shape(base, k) != t.shape:
        raise ShapeMismatch(f"shape is not a {k}-fold power", witness=t.shape.rows)
    return [Tableau(base, tuple(t.rows[i * k + q] for i in range(n))) for q in range(k)]


def _parity(t: Tableau) -> int:
    """Parity of [t]: the number of positive letters."""
    return sum(1 for a in t.letters() if a.positive) % 2


def sort_factors(factors: Sequence[Tableau]) -> tuple[int, tuple[Tableau, ...]]:
    """Sort factors by plain column word; odd factors anticommute."""
    fs = list(factors)
    sign = 1
    for p in range(1, len(fs)):
        q = p
        while q > 0 and plain_key(fs[q - 1]) > plain_key(fs[q]):
            if _parity(fs[q - 1]) and _parity(fs[q]):
                sign = -sign
            fs[q - 1], fs[q] = fs[q], fs[q - 1]
            q -= 1
    return sign, tuple(fs)


def monomial_key(factors: Sequence[Tableau]) -> tuple:
    """Term order on products: the plain column word of T_1 o ... o T_k, factors ascending."""
    fs = sorted(factors, key=plain_key)
    return word_key(column_word(interleave(*fs), "plain"))


def printed_monomial_key(factors: Sequence[Tableau]) -> tuple:
    """The order as literally printed: for each column c, the words c_c(T_k), ..., c_c(T_1)."""
    fs = sorted(factors, key=plain_key)
    key: list[int] = []
    for j in fs[0].shape.columns():
        for t in reversed(fs):
            key.extend(a.rank for a in reversed(t.column(j)))
    return tuple(key)


@dataclass
class TableauProductSum:
    """Integer combination of products of tableaux (sorted factor tuples)."""

    terms: dict = field(default_factory=dict)

    def add(self, factors: Sequence[Tableau], c: int) -> None:
        if not c:
            return
        s, key = sort_factors(factors)
        v = self.terms.get(key, 0) + s * c
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def expand(self) -> Polynomial:
        return linear_combination((product(tableau_to_polynomial(t) for t in fs), c)
                                  for fs, c in self.terms.items())

    def __len__(self):
        return len(self.terms)


@dataclass
class QuadraticRelation:
    """lead - tail, where ``lead`` is a product of two straight tableaux.

    ``raw_tail`` keeps the exchanged (possibly non-straight) factors; ``tail``
    rewrites them in straight tableaux.
    """

    lead: tuple[Tableau, Tableau]
    rows: tuple[int, int]
    raw_tail: TableauProductSum
    tail: TableauProductSum

    def image(self) -> Polynomial:
        lead = tableau_to_polynomial(self.lead[0]) * tableau_to_polynomial(self.lead[1])
        return lead - self.tail.expand()

    def lead_is_initial(self, key=None) -> bool:
        key = key or monomial_key
        k = key(self.lead)
        return all(key(fs) > k for fs in self.tail.terms)


def _cross_pairs(ta: Tableau, tb: Tableau):
    """Non-straight row pairs of ta o tb taking one row from each factor.

    Yields ``(a_on_top, i, j)``: row i of the upper factor over row j of the lower one.
    """
    shape = ta.shape
    for top_is_a, (top, bottom) in ((True, (ta, tb)), (False, (tb, ta))):
        for i in range(shape.n_rows):
            for j in range(i if top_is_a else i + 1, shape.n_rows):
                pair = Tableau(Shape((shape.rows[i], shape.rows[j])), (top.rows[i], bottom.rows[j]))
                if not is_straight(pair)[0]:
                    yield top_is_a, i, j


def _relation(ta: Tableau, tb: Tableau, top_is_a: bool, i: int, j: int, check: bool) -> QuadraticRelation:
    top, bottom = (ta, tb) if top_is_a else (tb, ta)
    shape = ta.shape
    pair = Tableau(Shape((shape.rows[i], shape.rows[j])), (top.rows[i], bottom.rows[j]))
    betas = row_straighten(pair, check=False)
    between = (sum(1 for r in top.rows[i + 1:] for a in r if a.positive)
               + sum(1 for r in bottom.rows[:j] for a in r if a.positive)) % 2
    pj = sum(1 for a in bottom.rows[j] if a.positive)
    # the lead was written top*bottom; reorder to ta*tb
    s0 = -1 if (not top_is_a and _parity(ta) and _parity(tb)) else 1
    raw = TableauProductSum()
    tail = TableauProductSum()
    for s, b in betas.terms.items():
        sign = s0 * (-1) ** (((sum(1 for a in s.rows[1] if a.positive) + pj) * between) % 2)
        t1 = top.replace_rows({i: s.rows[0]})
        t2 = bottom.replace_rows({j: s.rows[1]})
        raw.add((t1, t2), sign * b)
        for u1, c1 in straighten_tableau(t1, check=False).terms.items():
            for u2, c2 in straighten_tableau(t2, check=False).terms.items():
                tail.add((u1, u2), sign * b * c1 * c2)
    rel = QuadraticRelation((ta, tb), (i, j) if top_is_a else (j, i), raw, tail)
    if check and rel.image():
        raise OracleMismatch("quadratic relation does not vanish", witness=[str(ta), str(tb), (i, j)])
    return rel


def relations_for_pair(ta: Tableau, tb: Tableau, check: bool = True, full: bool = False) -> list[QuadraticRelation]:
    """Relations with lead ta*tb; empty exactly when ta o tb is straight.

    The default exchanges the two rows holding the straightness witness of
    ta o tb; ``full`` emits one relation per non-straight cross row pair.
    """
    if full:
        return [_relation(ta, tb, a_top, i, j, check) for a_top, i, j in _cross_pairs(ta, tb)]
    ok, wit = is_straight(interleave(ta, tb))
    if ok:
        return []
    (fi, i), (fj, j) = divmod(wit.i, 2)[::-1], divmod(wit.j, 2)[::-1]
    if fi == fj:
        raise OracleMismatch("a factor of the product is not straight", witness=[str(ta), str(tb)])
    return [_relation(ta, tb, fi == 0, i, j, check)]


def groebner_relations_deg2(shape: Shape, alphabet: Iterable[Letter], check: bool = True,
                            full: bool = False) -> list[QuadraticRelation]:
    """Degree-2 relations for every pair T' <= T'' of straight tableaux (ordered by c_T)."""
    basis = sorted(enumerate_straight(shape, alphabet), key=plain_key)
    out = []
    for p, ta in enumerate(basis):
        for tb in basis[p:]:
            out.extend(relations_for_pair(ta, tb, check=check, full=full))
    return out


def standard_monomials(shape: Shape, alphabet: Iterable[Letter]) -> list[tuple[Tableau, Tableau]]:
    basis = sorted(enumerate_straight(shape, alphabet), key=plain_key)
    return [(ta, tb) for p, ta in enumerate(basis) for tb in basis[p:] if is_straight(interleave(ta, tb))[0]]


# ---------------------------------------------------------------- subduction


@dataclass
class Subduction:
    expression: TableauProductSum
    steps: int


def _reverse_word_from_modified(word: Sequence[Letter], shape: Shape) -> list[Letter]:
    out: list[Letter] = []
    pos = 0
    for j in shape.columns():
        n = len(shape.column_cells(j))
        out.extend(reversed(word[pos:pos + n]))
        pos += n
    return out


def sagbi_subduct(p: Polynomial, shape: Shape, order: DiagonalOrder = DIAG, max_steps: int = 100000) -> Subduction:
    """Write ``p`` as a polynomial in straight tableaux of ``shape`` by subduction."""
    degrees = p.degree_set()
    if len(degrees) > 1:
        raise NotHomogeneous(f"polynomial has degrees {sorted(degrees)}")
    expr = TableauProductSum()
    if not p:
        return Subduction(expr, 0)
    (deg,) = degrees
    if deg % shape.size:
        raise NotMember(f"degree {deg} is not a multiple of {shape.size}")
    k = deg // shape.size
    big = power_shape(shape, k)
    rest = p
    steps = 0
    while rest:
        steps += 1
        if steps > max_steps:
            raise NotMember("subduction did not terminate within the step budget")
        _, m = initial_monomial(rest, order)
        word = psi(m)
        if len(word) != big.size:
            raise NotMember("initial monomial has the wrong degree")
        try:
            t = straight_filling(_reverse_word_from_modified(word, big), big)
        except Exception:
            t = None
        if t is None:
            raise NotMember("initial monomial is not the initial monomial of a straight tableau",
                            witness=str(Polynomial({m: 1})))
        factors = split(t, k)
        prod = product(tableau_to_polynomial(f) for f in factors)
        c = prod.coefficient(m)
        if not c or initial_monomial(prod, order)[1] != m:
            raise NotMember("initial monomial does not factor through straight tableaux",
                            witness=str(Polynomial({m: 1})))
        q = Fraction(rest.coefficient(m)) / Fraction(c)
        expr.add(factors, q)
        rest = rest - prod.scale(q)
    for key, c in expr.terms.items():
        if isinstance(c, Fraction) and c.denominator != 1:
            break
    else:
        expr.terms = {key: int(c) for key, c in expr.terms.items()}
    return Subduction(expr, steps)
