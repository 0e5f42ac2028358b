"""Signed alphabets, row-convex shapes, tableaux and straightness.

Rows are indexed from 0 (top) downwards.  Columns keep the user's indices
(normally starting at 1), because the column index of a cell is also the
place it is paired with in the letterplace algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import BadFlag, EmptyRow, EmptyShape, LengthMismatch, UnsortedColumnSegment


@dataclass(frozen=True, order=True)
class Letter:
    """A symbol with a parity, ordered by ``rank`` (its position in an alphabet).

    ``negative`` letters are odd (exterior-like), positive letters are even.
    """

    rank: int
    symbol: str
    negative: bool

    def __post_init__(self):
        if not self.symbol:
            raise ValueError("letter symbol must be nonempty")
        object.__setattr__(self, "_hash", hash((self.rank, self.symbol, self.negative)))

    def __hash__(self):
        return self._hash

    @property
    def positive(self) -> bool:
        return not self.negative

    def __str__(self):
        return f"{self.symbol}{'-' if self.negative else '+'}"

    __repr__ = __str__


def lt_plus(a: Letter, b: Letter) -> bool:
    """``a <+ b``: strictly smaller, or equal and positive."""
    return a.rank < b.rank or (a.rank == b.rank and a.positive)


def lt_minus(a: Letter, b: Letter) -> bool:
    """``a <- b``: strictly smaller, or equal and negative."""
    return a.rank < b.rank or (a.rank == b.rank and a.negative)


def place(column: int) -> Letter:
    """The negative place attached to a column (used by Deruyts tableaux)."""
    return Letter(column, str(column), True)


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[Letter, ...]

    def __post_init__(self):
        symbols = [a.symbol for a in self.letters]
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet: {symbols}")
        ranks = [a.rank for a in self.letters]
        if ranks != sorted(set(ranks)):
            raise ValueError("alphabet letters must be listed in strictly increasing order")

    @classmethod
    def parse(cls, spec: str) -> "Alphabet":
        """Parse ``"a+,b-,c+"`` (increasing order)."""
        letters = []
        items = [s.strip() for s in spec.split(",") if s.strip()]
        for rank, item in enumerate(items):
            letters.append(parse_letter(item, rank))
        return cls(tuple(letters))

    @classmethod
    def from_signs(cls, signs: str, symbols: Optional[Sequence[str]] = None) -> "Alphabet":
        """``from_signs("+-+")`` gives letters ``1+ < 2- < 3+``."""
        symbols = symbols or [str(i + 1) for i in range(len(signs))]
        return cls(tuple(Letter(r, s, c == "-") for r, (s, c) in enumerate(zip(symbols, signs))))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, a):
        return a in self.letters

    def __getitem__(self, symbol: str) -> Letter:
        for a in self.letters:
            if a.symbol == symbol:
                return a
        raise KeyError(symbol)

    def without(self, a: Letter) -> "Alphabet":
        return Alphabet(tuple(b for b in self.letters if b != a))

    def spec(self) -> str:
        return ",".join(str(a) for a in self.letters)


def parse_letter(text: str, rank: int = 0) -> Letter:
    text = text.strip()
    if len(text) < 2 or text[-1] not in "+-":
        raise ValueError(f"letter {text!r} must be a symbol followed by '+' or '-'")
    return Letter(rank, text[:-1], text[-1] == "-")


# ---------------------------------------------------------------- shapes


@dataclass(frozen=True)
class Shape:
    """A row-convex shape: row ``i`` occupies columns ``rows[i][0]..rows[i][1]``.

    Rows are kept in the sorted convention (row ends weakly decrease downwards);
    construct through :func:`make_shape` to have that enforced.
    """

    rows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i in range(len(self.rows) - 1):
            if self.rows[i][1] < self.rows[i + 1][1]:
                raise ValueError(f"rows not sorted by descending end column: {self.rows}")
        object.__setattr__(self, "_hash", hash(self.rows))

    def __hash__(self):
        return self._hash

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row_columns(self, i: int) -> range:
        start, end = self.rows[i]
        return range(start, end + 1)

    def row_length(self, i: int) -> int:
        start, end = self.rows[i]
        return end - start + 1

    @property
    def size(self) -> int:
        return sum(e - s + 1 for s, e in self.rows)

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n_rows) for j in self.row_columns(i)]

    def __contains__(self, cell) -> bool:
        i, j = cell
        return 0 <= i < len(self.rows) and self.rows[i][0] <= j <= self.rows[i][1]

    def columns(self) -> list[int]:
        return list(_columns(self.rows))

    def column_cells(self, j: int) -> list[int]:
        """Rows having a cell in column ``j``, top to bottom."""
        return list(_column_cells(self.rows, j))

    def cell_order(self) -> list[tuple[int, int]]:
        """Cells in the column-major order of the frame tableau."""
        return [(i, j) for j in self.columns() for i in self.column_cells(j)]

    def is_skew(self) -> bool:
        """Row starts weakly decrease downwards as well as row ends."""
        return all(self.rows[i][0] >= self.rows[i + 1][0] for i in range(len(self.rows) - 1))

    def to_json(self) -> dict:
        return {"rows": [{"start": s, "end": e} for s, e in self.rows]}


@lru_cache(maxsize=None)
def _columns(rows) -> tuple[int, ...]:
    return tuple(sorted({j for s, e in rows for j in range(s, e + 1)}))


@lru_cache(maxsize=None)
def _column_cells(rows, j: int) -> tuple[int, ...]:
    return tuple(i for i, (s, e) in enumerate(rows) if s <= j <= e)


def make_shape(row_intervals: Iterable[Sequence[int]]) -> tuple[Shape, tuple[int, ...]]:
    """Build a shape, stably sorting rows by descending end column.

    Returns the shape and the permutation applied: ``perm[k]`` is the input
    index of the row placed at position ``k``.
    """
    rows = [tuple(r) for r in row_intervals]
    if not rows:
        raise EmptyShape("shape has no rows")
    for s, e in rows:
        if s > e:
            raise EmptyRow(f"row ({s}, {e}) is empty")
    perm = tuple(sorted(range(len(rows)), key=lambda k: -rows[k][1]))
    return Shape(tuple(rows[k] for k in perm)), perm


def shape_of(row_intervals: Iterable[Sequence[int]]) -> Shape:
    return make_shape(row_intervals)[0]


# ---------------------------------------------------------------- tableaux


@dataclass(frozen=True)
class Tableau:
    shape: Shape
    rows: tuple[tuple[Letter, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.shape.n_rows:
            raise ValueError("tableau must have one word per row of its shape")
        for i, row in enumerate(self.rows):
            if len(row) != self.shape.row_length(i):
                raise ValueError(f"row {i} has {len(row)} entries, shape wants {self.shape.row_length(i)}")
        object.__setattr__(self, "_hash", hash((self.shape, self.rows)))

    def __hash__(self):
        return self._hash

    def __getitem__(self, cell) -> Letter:
        i, j = cell
        return self.rows[i][j - self.shape.rows[i][0]]

    def get(self, i: int, j: int) -> Optional[Letter]:
        if (i, j) in self.shape:
            return self[i, j]
        return None

    def column(self, j: int) -> list[Letter]:
        return [self[i, j] for i in self.shape.column_cells(j)]

    def letters(self) -> list[Letter]:
        return [a for row in self.rows for a in row]

    def replace_rows(self, new_rows: Mapping[int, Sequence[Letter]]) -> "Tableau":
        rows = list(self.rows)
        for i, r in new_rows.items():
            rows[i] = tuple(r)
        return Tableau(self.shape, tuple(rows))

    def __str__(self):
        width = max(len(str(a)) for a in self.letters()) if self.rows else 1
        lo = min(s for s, _ in self.shape.rows)
        lines = []
        for i, (s, _) in enumerate(self.shape.rows):
            pad = " " * ((width + 1) * (s - lo))
            lines.append(pad + " ".join(str(a).rjust(width) for a in self.rows[i]))
        return "\n".join(lines)


def tableau(rows: Sequence[tuple[int, Sequence[Letter]]]) -> Tableau:
    """Build a tableau from ``[(start_column, row_word), ...]`` in sorted row order."""
    shape = Shape(tuple((s, s + len(w) - 1) for s, w in rows))
    return Tableau(shape, tuple(tuple(w) for _, w in rows))


def frame_tableau(shape: Shape) -> dict[tuple[int, int], int]:
    """F(D): cells numbered 1, 2, ... down each column, leftmost column first."""
    return {cell: n for n, cell in enumerate(shape.cell_order(), start=1)}


def deruyts(shape: Shape) -> Tableau:
    """Der^-(D): every cell holds its column index as a negative letter."""
    return Tableau(shape, tuple(tuple(place(j) for j in shape.row_columns(i)) for i in range(shape.n_rows)))


# ---------------------------------------------------------------- words


def column_word(t: Tableau, variant: str = "plain") -> list[Letter]:
    """Read ``t`` column by column, leftmost column first.

    ``plain`` reads each column bottom to top, ``modified`` in weakly decreasing
    order, ``reverse`` in weakly increasing order.
    """
    word: list[Letter] = []
    for j in t.shape.columns():
        rows = t.shape.column_cells(j)
        if variant == "plain":
            word.extend(t[i, j] for i in reversed(rows))
        elif variant == "modified":
            cells = sorted((t[i, j].rank, i) for i in rows)
            word.extend(t[i, j] for _, i in reversed(cells))
        elif variant == "reverse":
            cells = sorted((t[i, j].rank, i) for i in rows)
            word.extend(t[i, j] for _, i in cells)
        else:
            raise ValueError(f"unknown column word variant {variant!r}")
    return word


def word_key(word: Sequence[Letter]) -> tuple[int, ...]:
    return tuple(a.rank for a in word)


def modified_key(t: Tableau) -> tuple[int, ...]:
    return word_key(column_word(t, "modified"))


def plain_key(t: Tableau) -> tuple[int, ...]:
    return word_key(column_word(t, "plain"))


# ---------------------------------------------------------------- straightness


class Witness(NamedTuple):
    """Why a tableau fails to be straight.

    ``kind == "row"``: row ``i`` is not <+ increasing at column ``k``
    (``t[i, k-1]`` vs ``t[i, k]``); ``j`` is None.
    ``kind == "inversion"``: cells ``(i, k)`` over ``(j, k)`` form a flippable inversion.
    """

    kind: str
    i: int
    j: Optional[int]
    k: int


def row_witness(t: Tableau) -> Optional[Witness]:
    best = None
    for i in range(t.shape.n_rows):
        row = t.rows[i]
        start = t.shape.rows[i][0]
        for p in range(1, len(row)):
            if not lt_plus(row[p - 1], row[p]):
                w = Witness("row", i, None, start + p)
                if best is None or w.k < best.k:
                    best = w
                break
    return best


def is_row_standard(t: Tableau) -> bool:
    return row_witness(t) is None


def is_flippable(t: Tableau, i: int, j: int, k: int) -> bool:
    """Cells (i,k) over (j,k) (i < j) form an inversion with no excuse."""
    top, bottom = t[i, k], t[j, k]
    if not lt_plus(bottom, top):
        return False
    left = t.get(i, k - 1)
    return left is None or not lt_minus(bottom, left)


def flippable_witness(t: Tableau, rows: Optional[Sequence[int]] = None) -> Optional[Witness]:
    """Leftmost flippable inversion; ties broken by smallest lower row, then upper row."""
    shape = t.shape
    for k in shape.columns():
        in_col = shape.column_cells(k)
        if rows is not None:
            in_col = [r for r in in_col if r in rows]
        for jj, j in enumerate(in_col):
            for i in in_col[:jj]:
                if is_flippable(t, i, j, k):
                    return Witness("inversion", i, j, k)
    return None


def is_straight(t: Tableau) -> tuple[bool, Optional[Witness]]:
    w = row_witness(t) or flippable_witness(t)
    return w is None, w


def straight(t: Tableau) -> bool:
    return is_straight(t)[0]


def is_standard(t: Tableau) -> bool:
    """Rows <+ increase and columns <- increase downwards."""
    if not is_row_standard(t):
        return False
    for k in t.shape.columns():
        col = t.column(k)
        if any(not lt_minus(a, b) for a, b in zip(col, col[1:])):
            return False
    return True


# ---------------------------------------------------------------- filling


def straight_filling(wprime: Sequence[Letter], shape: Shape) -> Optional[Tableau]:
    """The unique straight tableau with reverse column word ``wprime``, or None."""
    order = shape.cell_order()
    if len(wprime) != len(order):
        raise LengthMismatch(f"word has {len(wprime)} letters, shape has {len(order)} cells")
    cols = [j for _, j in order]
    for p in range(1, len(cols)):
        if cols[p] == cols[p - 1] and wprime[p].rank < wprime[p - 1].rank:
            raise UnsortedColumnSegment(f"letters not increasing within column {cols[p]}")
    filled: dict[tuple[int, int], Letter] = {}
    for a, c in zip(wprime, cols):
        for i in shape.column_cells(c):
            if (i, c) in filled:
                continue
            if (i, c - 1) not in shape or lt_plus(filled[i, c - 1], a):
                filled[i, c] = a
                break
        else:
            return None
    return Tableau(shape, tuple(tuple(filled[i, j] for j in shape.row_columns(i)) for i in range(shape.n_rows)))


def _check_flag(flag: Optional[Mapping[int, Letter]], shape: Shape, name: str):
    if flag is None:
        return
    cols = shape.columns()
    missing = [j for j in cols if j not in flag]
    if missing:
        raise BadFlag(f"flag {name} has no bound for columns {missing}")
    for a, b in zip(cols, cols[1:]):
        if flag[b].rank < flag[a].rank:
            raise BadFlag(f"flag {name} decreases between columns {a} and {b}")


def check_flags(shape: Shape, lower=None, upper=None):
    _check_flag(lower, shape, "g")
    _check_flag(upper, shape, "f")
    if lower is not None and upper is not None:
        for j in shape.columns():
            if lower[j].rank > upper[j].rank:
                raise BadFlag(f"lower flag exceeds upper flag in column {j}")


def in_flags(a: Letter, j: int, lower=None, upper=None) -> bool:
    if lower is not None and a.rank < lower[j].rank:
        return False
    if upper is not None and a.rank > upper[j].rank:
        return False
    return True


def is_flagged(t: Tableau, lower=None, upper=None) -> bool:
    return all(in_flags(t[i, j], j, lower, upper) for i, j in t.shape.cells())


def enumerate_straight(shape: Shape, alphabet: Iterable[Letter], lower=None, upper=None) -> list[Tableau]:
    """All straight tableaux of ``shape`` over ``alphabet``, sorted by modified column word.

    ``lower``/``upper`` map each column to a letter bound (the flags g and f).
    """
    check_flags(shape, lower, upper)
    letters = list(alphabet)
    order = shape.cell_order()
    filled: dict[tuple[int, int], Letter] = {}
    out: list[Tableau] = []

    def ok(i: int, k: int, a: Letter) -> bool:
        left = filled.get((i, k - 1))
        if left is not None and not lt_plus(left, a):
            return False
        for i2 in shape.column_cells(k):
            if i2 >= i:
                break
            top = filled[i2, k]
            if lt_plus(a, top):
                excuse = filled.get((i2, k - 1))
                if excuse is None or not lt_minus(a, excuse):
                    return False
        return True

    def rec(p: int):
        if p == len(order):
            out.append(Tableau(shape, tuple(tuple(filled[i, j] for j in shape.row_columns(i))
                                            for i in range(shape.n_rows))))
            return
        i, k = order[p]
        for a in letters:
            if in_flags(a, k, lower, upper) and ok(i, k, a):
                filled[i, k] = a
                rec(p + 1)
                del filled[i, k]

    rec(0)
    out.sort(key=modified_key)
    return out


def enumerate_row_standard(shape: Shape, alphabet: Iterable[Letter]) -> list[Tableau]:
    """All row-standard tableaux (rows <+ increasing) of ``shape``."""
    letters = sorted(alphabet)

    def rows_of(length: int, prev: Optional[Letter]):
        if length == 0:
            yield ()
            return
        for a in letters:
            if prev is None or lt_plus(prev, a):
                for rest in rows_of(length - 1, a):
                    yield (a,) + rest

    out = [()]
    for i in range(shape.n_rows):
        out = [acc + (r,) for acc in out for r in rows_of(shape.row_length(i), None)]
    return [Tableau(shape, rows) for rows in out]


def enumerate_shapes(max_cells: int, max_rows: Optional[int] = None) -> list[Shape]:
    """Row-convex shapes with at most ``max_cells`` cells, up to column translation.

    Shapes occupy columns 1..n with no empty column; rows with equal end
    columns are listed by increasing start, so each diagram appears once.
    """
    out: list[Shape] = []

    def rec(rows: list, cells: int):
        if rows:
            cols = {j for s, e in rows for j in range(s, e + 1)}
            if min(cols) == 1 and len(cols) == max(cols):
                out.append(Shape(tuple(rows)))
        if max_rows is not None and len(rows) >= max_rows:
            return
        for e in range(max_cells, 0, -1):
            for s in range(1, e + 1):
                if cells + e - s + 1 > max_cells:
                    continue
                if rows and (e, -s) > (rows[-1][1], -rows[-1][0]):
                    continue
                rec(rows + [(s, e)], cells + e - s + 1)

    rec([], 0)
    out.sort(key=lambda d: (d.size, d.rows))
    return out
