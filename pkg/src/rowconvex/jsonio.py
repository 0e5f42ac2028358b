"""JSON encodings of shapes, tableaux, sums, flags and product expressions."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .core import Alphabet, Letter, Shape, Tableau, make_shape, parse_letter, plain_key
from .errors import BadFlag
from .straightening import TableauSum


def _coeff(c):
    """Integers stay integers; fractions become "p/q" strings."""
    if isinstance(c, int):
        return c
    if getattr(c, "denominator", 1) == 1:
        return int(c)
    return str(c)


def shape_to_json(d: Shape) -> dict:
    return d.to_json()


def shape_from_json(data: dict) -> tuple[Shape, tuple[int, ...]]:
    rows = [(int(r["start"]), int(r["end"])) for r in data["rows"]]
    return make_shape(rows)


def tableau_to_json(t: Tableau) -> dict:
    return {"shape": t.shape.to_json(), "rows": [[str(a) for a in row] for row in t.rows]}


def _symbol_key(token: str):
    sym = token[:-1]
    return (0, int(sym), token) if sym.isdigit() else (1, 0, token)


def infer_alphabet(tokens: Iterable[str]) -> Alphabet:
    """Order letters numerically when the symbol is a number, otherwise by symbol."""
    uniq = sorted(set(tokens), key=_symbol_key)
    return Alphabet(tuple(parse_letter(tok, rank) for rank, tok in enumerate(uniq)))


def _lookup(alphabet: Alphabet) -> dict[str, Letter]:
    return {str(a): a for a in alphabet}


def tableau_from_json(data: dict, alphabet: Optional[Alphabet] = None) -> Tableau:
    """Rows may come in any order; they are re-sorted together with the shape."""
    shape, perm = shape_from_json(data["shape"])
    raw = data["rows"]
    if len(raw) != len(perm):
        raise ValueError(f"tableau has {len(raw)} rows, shape has {len(perm)}")
    if alphabet is None:
        alphabet = infer_alphabet(tok.strip() for row in raw for tok in row)
    table = _lookup(alphabet)
    try:
        rows = tuple(tuple(table[tok.strip()] for tok in raw[k]) for k in perm)
    except KeyError as e:
        raise ValueError(f"letter {e.args[0]} is not in the alphabet {alphabet.spec()}") from None
    return Tableau(shape, rows)


def tableau_sum_to_json(s: TableauSum) -> list:
    return [{"coeff": _coeff(c), "tableau": tableau_to_json(t)} for t, c in s]


def flags_from_json(data: dict, shape: Shape, alphabet: Alphabet) -> tuple[Optional[dict], Optional[dict]]:
    """``{"g": [...], "f": [...]}``, one letter per column of the shape, left to right."""
    table = _lookup(alphabet)
    cols = shape.columns()
    out = []
    for name in ("g", "f"):
        seq = data.get(name)
        if seq is None:
            out.append(None)
            continue
        if len(seq) != len(cols):
            raise BadFlag(f"flag {name} has {len(seq)} entries for {len(cols)} columns")
        try:
            out.append({j: table[tok] for j, tok in zip(cols, seq)})
        except KeyError as e:
            raise BadFlag(f"flag letter {e.args[0]} is not in the alphabet") from None
    return out[0], out[1]


def product_terms_to_json(terms: dict) -> list:
    """Sorted factor tuples with coefficients, as produced by the ring module."""
    items = sorted(terms.items(), key=lambda kv: [plain_key(t) for t in kv[0]])
    return [{"coeff": _coeff(c), "factors": [tableau_to_json(t) for t in fs]} for fs, c in items]


def letters_json(letters: Sequence[Letter]) -> list[str]:
    return [str(a) for a in letters]
