import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rowconvex.core import (
    Alphabet,
    Letter,
    Shape,
    Tableau,
    column_word,
    deruyts,
    enumerate_row_standard,
    enumerate_shapes,
    enumerate_straight,
    frame_tableau,
    is_row_standard,
    is_standard,
    is_straight,
    lt_minus,
    lt_plus,
    make_shape,
    modified_key,
    shape_of,
    straight_filling,
    tableau,
)
from rowconvex.errors import BadFlag, EmptyRow, EmptyShape, LengthMismatch, UnsortedColumnSegment


def syms(word):
    return [a.symbol for a in word]


# ---------------------------------------------------------------- alphabets


def test_parse_alphabet():
    a = Alphabet.parse("a+, b-,c+")
    assert [str(x) for x in a] == ["a+", "b-", "c+"]
    assert a.spec() == "a+,b-,c+"
    assert a.without(a["b"]).spec() == "a+,c+"


def test_alphabet_rejects_duplicates():
    with pytest.raises(ValueError):
        Alphabet.parse("a+,a-")


@given(st.text("+-", min_size=1, max_size=5))
def test_signed_orders(signs):
    letters = Alphabet.from_signs(signs).letters
    for a, b in itertools.product(letters, repeat=2):
        assert lt_plus(a, b) == (a.rank < b.rank or (a == b and a.positive))
        assert lt_minus(a, b) == (a.rank < b.rank or (a == b and a.negative))
        # the two relaxed orders are complementary
        assert lt_minus(a, b) == (not lt_plus(b, a))


# ---------------------------------------------------------------- shapes


def test_make_shape_sorted_input():
    d, perm = make_shape([(3, 4), (1, 4), (3, 3), (2, 3)])
    assert d.rows == ((3, 4), (1, 4), (3, 3), (2, 3))
    assert perm == (0, 1, 2, 3)


def test_make_shape_reorders():
    d, perm = make_shape([(1, 2), (1, 3)])
    assert d.rows == ((1, 3), (1, 2))
    assert perm == (1, 0)


def test_make_shape_errors():
    with pytest.raises(EmptyRow):
        make_shape([(3, 2)])
    with pytest.raises(EmptyShape):
        make_shape([])
    assert make_shape([(1, 1)])[0].size == 1


def test_frame_and_deruyts():
    d = shape_of([(3, 4), (1, 4), (3, 3), (1, 1)])
    f = frame_tableau(d)
    assert [f[1, 1], f[3, 1]] == [1, 2]
    assert [f[1, 2]] == [3]
    assert [f[0, 3], f[1, 3], f[2, 3]] == [4, 5, 6]
    assert [f[0, 4], f[1, 4]] == [7, 8]
    der = deruyts(d)
    assert [syms(r) for r in der.rows] == [["3", "4"], ["1", "2", "3", "4"], ["3"], ["1"]]
    assert all(a.negative for a in der.letters())


def test_frame_single_row_and_column():
    assert list(frame_tableau(shape_of([(1, 3)])).values()) == [1, 2, 3]
    col = shape_of([(1, 1)] * 3)
    assert [frame_tableau(col)[i, 1] for i in range(3)] == [1, 2, 3]


def test_enumerate_shapes_counts():
    shapes = enumerate_shapes(6)
    assert len(shapes) == len(set(shapes)) == 446
    assert all(d.size <= 6 for d in shapes)
    assert all(min(s for s, _ in d.rows) == 1 for d in shapes)


# ---------------------------------------------------------------- words and straightness


def test_column_words_of_worked_example(ex5):
    assert syms(column_word(ex5, "plain")) == "1 3 3 8 2 5 4 7 5".split()
    assert syms(column_word(ex5, "reverse")) == "1 3 3 2 4 5 8 5 7".split()
    assert syms(column_word(ex5, "modified")) == "1 3 3 8 5 4 2 7 5".split()


def test_single_cell_words(ab):
    t = tableau([(1, [ab["a"]])])
    assert all(syms(column_word(t, v)) == ["a"] for v in ("plain", "modified", "reverse"))


def test_weyl_examples(ab):
    a, b = ab["a"], ab["b"]
    assert is_straight(tableau([(1, [a, a, a]), (2, [b])]))[0]
    ok, wit = is_straight(tableau([(1, [a, b, b]), (2, [a])]))
    assert not ok and wit.k == 2


def test_worked_example_witness(ex5):
    ok, wit = is_straight(ex5)
    assert not ok
    # rows (3,4) and (3,3) in the sorted order, column 3: 4 over 2
    assert (wit.i, wit.j, wit.k) == (0, 2, 3)
    assert ex5[0, 3].symbol == "4" and ex5[2, 3].symbol == "2"


def test_row_failure_witness(ab):
    ok, wit = is_straight(tableau([(1, [ab["b"], ab["a"]])]))
    assert not ok and wit.kind == "row"


# ---------------------------------------------------------------- filling and enumeration


def test_weyl_basis(ab, weyl31):
    rows = [[syms(r) for r in t.rows] for t in enumerate_straight(weyl31, ab)]
    assert sorted(rows) == sorted([[["a", "a", "a"], ["b"]], [["a", "a", "b"], ["b"]], [["b", "b", "b"], ["a"]]])


def test_filling_reconstructs_weyl_basis(ab, weyl31):
    # the word a | a b | a is realized by (a,a,a;b)
    a, b = ab["a"], ab["b"]
    t = straight_filling([a, a, b, a], weyl31)
    assert t == tableau([(1, [a, a, a]), (2, [b])])


def test_filling_impossible():
    a = Alphabet.parse("a-")["a"]
    # two equal minus letters cannot sit in one row
    assert straight_filling([a, a], shape_of([(1, 2)])) is None


def test_filling_errors(ab, weyl31):
    a, b = ab["a"], ab["b"]
    with pytest.raises(LengthMismatch):
        straight_filling([a], weyl31)
    with pytest.raises(UnsortedColumnSegment):
        straight_filling([a, b, a, a], weyl31)


def test_filling_single_column():
    letters = Alphabet.from_signs("-+-").letters
    t = straight_filling(list(letters), shape_of([(1, 1)] * 3))
    assert [r[0] for r in t.rows] == list(letters)


def test_partition_over_two_minus():
    assert len(enumerate_straight(shape_of([(1, 2), (1, 1)]), Alphabet.from_signs("--"))) == 2


def test_empty_alphabet():
    assert enumerate_straight(shape_of([(1, 2)]), []) == []


def test_flag_validation(ab, weyl31):
    a, b = ab["a"], ab["b"]
    with pytest.raises(BadFlag):
        enumerate_straight(weyl31, ab, upper={1: b, 2: a, 3: b})
    with pytest.raises(BadFlag):
        enumerate_straight(weyl31, ab, lower={1: b, 2: b, 3: b}, upper={1: a, 2: b, 3: b})
    with pytest.raises(BadFlag):
        enumerate_straight(weyl31, ab, upper={1: a})
    trivial = ({j: a for j in (1, 2, 3)}, {j: b for j in (1, 2, 3)})
    assert enumerate_straight(weyl31, ab, *trivial) == enumerate_straight(weyl31, ab)


SMALL = [d for d in enumerate_shapes(4)]
SIGNS = ["+", "-", "+-", "-+", "--", "++"]


@pytest.mark.parametrize("signs", SIGNS)
def test_straight_is_brute_force_filter(signs):
    alphabet = Alphabet.from_signs(signs)
    for d in SMALL:
        brute = [t for t in enumerate_row_standard(d, alphabet) if is_straight(t)[0]]
        assert sorted(brute, key=modified_key) == enumerate_straight(d, alphabet)


@pytest.mark.parametrize("signs", SIGNS + ["-+-", "+-+"])
def test_round_trip_and_injectivity(signs):
    alphabet = Alphabet.from_signs(signs)
    for d in SMALL:
        basis = enumerate_straight(d, alphabet)
        assert len({modified_key(t) for t in basis}) == len(basis)
        keys = [modified_key(t) for t in basis]
        assert keys == sorted(keys)
        for t in basis:
            assert straight_filling(column_word(t, "reverse"), d) == t


@pytest.mark.parametrize("signs", ["+", "++", "+++"])
def test_positive_skew_straight_is_semistandard(signs):
    alphabet = Alphabet.from_signs(signs)
    for d in SMALL:
        if not d.is_skew():
            continue
        for t in enumerate_row_standard(d, alphabet):
            semistandard = all(
                t[i, k].rank < t[j, k].rank
                for k in d.columns() for i, j in zip(d.column_cells(k), d.column_cells(k)[1:]))
            assert is_straight(t)[0] == semistandard


@st.composite
def tableaux(draw):
    d = draw(st.sampled_from(SMALL))
    signs = draw(st.text("+-", min_size=1, max_size=3))
    letters = Alphabet.from_signs(signs).letters
    rows = tuple(tuple(draw(st.sampled_from(letters)) for _ in d.row_columns(i)) for i in range(d.n_rows))
    return Tableau(d, rows)


@settings(max_examples=300)
@given(tableaux())
def test_skew_straight_iff_standard(t):
    if t.shape.is_skew():
        assert is_straight(t)[0] == is_standard(t)


@settings(max_examples=300)
@given(tableaux())
def test_words_are_column_permutations(t):
    plain, mod, rev = (column_word(t, v) for v in ("plain", "modified", "reverse"))
    pos = 0
    for j in t.shape.columns():
        n = len(t.shape.column_cells(j))
        seg = sorted(plain[pos:pos + n], key=lambda a: a.rank)
        assert rev[pos:pos + n] == seg
        assert mod[pos:pos + n] == seg[::-1]
        pos += n
    assert is_straight(t)[0] <= is_row_standard(t)
