import itertools

import pytest

from rowconvex.basis import (
    Echelon,
    apply_flag,
    character,
    coordinates,
    echelon_certificate,
    rank,
    trivial_flags,
)
from rowconvex.core import Alphabet, enumerate_row_standard, enumerate_shapes, enumerate_straight, shape_of, tableau
from rowconvex.errors import NotInModule
from rowconvex.letterplace import DiagonalOrder, Polynomial, tableau_to_polynomial
from rowconvex.straightening import TableauSum, straighten_tableau


def test_echelon_rank_basics():
    x, y = Alphabet.parse("x-,y-").letters
    from rowconvex.core import place

    p = Polynomial.variable(x, place(1))
    q = Polynomial.variable(y, place(1))
    e = Echelon()
    assert e.add(p) and e.add(q)
    assert not e.add(p + q)
    assert not e.add(Polynomial())
    assert e.rank == 2
    assert rank([p, p.scale(3), q - p]) == 2


def test_weyl_generators_span_rank_three(ab, weyl31):
    gens = enumerate_row_standard(weyl31, ab)
    assert len(gens) == 8
    assert rank(tableau_to_polynomial(t) for t in gens) == 3


@pytest.mark.parametrize("signs", ["+", "-", "+-", "-+", "+-+", "--+"])
def test_certificate_small(signs):
    alphabet = Alphabet.from_signs(signs)
    for d in enumerate_shapes(4):
        pivots = echelon_certificate(d, alphabet)
        assert len({p.monomial for p in pivots}) == len(pivots)
        assert all(p.coefficient in (1, -1) for p in pivots)


def test_certificate_under_letter_major_order():
    alphabet = Alphabet.from_signs("+-")
    for d in enumerate_shapes(4):
        assert len(echelon_certificate(d, alphabet, DiagonalOrder.letter_major())) == len(
            enumerate_straight(d, alphabet))


def test_pivot_word_is_modified_column_word(ab, weyl31):
    from rowconvex.core import column_word

    for pv in echelon_certificate(weyl31, ab):
        assert pv.word() == column_word(pv.tableau, "modified")


def test_coordinates_of_worked_example(ex5, minus8):
    coords = coordinates(ex5, ex5.shape, minus8)
    assert len(coords) == 9 and set(coords.values()) == {1, -1}


def test_polynomial_coordinates_match_straightening():
    alphabet = Alphabet.from_signs("+-+")
    for d in enumerate_shapes(3):
        for t in enumerate_row_standard(d, alphabet):
            assert coordinates(tableau_to_polynomial(t), d, alphabet) == coordinates(t, d, alphabet)


def test_coordinates_reject_foreign_polynomial(weyl31, ab):
    from rowconvex.core import place

    p = Polynomial.variable(ab["a"], place(1))
    with pytest.raises(NotInModule):
        coordinates(p, weyl31, ab)


def test_coordinates_of_sum(ab, weyl31):
    a, b = ab["a"], ab["b"]
    t = tableau([(1, [a, b, b]), (2, [a])])
    s = TableauSum.single(t, 2)
    assert coordinates(s, weyl31, ab) == {u: 2 * c for u, c in straighten_tableau(t).terms.items()}


def test_weyl_character(ab, weyl31):
    ch = character(weyl31, ab)
    assert ch.as_dict() == {(3, 1): 1, (2, 2): 1, (1, 3): 1}
    assert ch.degrees() == {4} and ch.total() == 3
    assert str(ch) == "t_a^3*t_b + t_a^2*t_b^2 + t_a*t_b^3"


def test_character_json(ab, weyl31):
    data = character(weyl31, ab).to_json()
    assert {"monomial": {"a+": 2, "b+": 2}, "coeff": 1} in data


def test_trivial_flags_change_nothing(ab, weyl31):
    g, f = trivial_flags(weyl31, ab)
    assert character(weyl31, ab, g, f) == character(weyl31, ab)


def test_upper_flag_restricts(ab, weyl31):
    a, b = ab["a"], ab["b"]
    upper = {1: a, 2: b, 3: b}
    kept = enumerate_straight(weyl31, ab, upper=upper)
    assert all(t[0, 1] == a for t in kept)
    assert character(weyl31, ab, upper=upper).total() == len(kept)


def _flags(shape, letters):
    cols = shape.columns()
    for f in itertools.product(letters, repeat=len(cols)):
        if all(x.rank <= y.rank for x, y in zip(f, f[1:])):
            yield dict(zip(cols, f))


@pytest.mark.parametrize("signs", ["+-", "-+", "++", "--"])
def test_flag_kills_non_flagged(signs):
    alphabet = Alphabet.from_signs(signs)
    for d in enumerate_shapes(3):
        for f in _flags(d, alphabet.letters):
            flagged = set(enumerate_straight(d, alphabet, upper=f))
            images = [apply_flag(tableau_to_polynomial(t), upper=f) for t in enumerate_straight(d, alphabet)]
            assert rank(images) == len(flagged)
            for t in enumerate_row_standard(d, alphabet):
                if any(t[i, j].rank > f[j].rank for i, j in t.shape.cells()):
                    assert not apply_flag(tableau_to_polynomial(t), upper=f)
