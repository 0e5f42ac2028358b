"""Command-line front end.

Every command prints JSON (``verify`` prints a table).  Library errors exit
with status 1 and a JSON object ``{code, message, witness}``; unreadable
input exits with status 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import basis, branching, ring, straightening
from .core import Alphabet, enumerate_straight
from .errors import RowConvexError
from .jsonio import (
    flags_from_json,
    letters_json,
    product_terms_to_json,
    shape_from_json,
    tableau_from_json,
    tableau_sum_to_json,
    tableau_to_json,
)
from .letterplace import DIAG, DiagonalOrder, poly_from_json, poly_to_json, product, tableau_to_polynomial
from .suites import SUITES, run_suite

ORDERS = {"diag": DIAG, "letter-major": DiagonalOrder.letter_major()}


class InputError(Exception):
    """Input that cannot be read or parsed."""


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"{path}: {e}") from None


def _alphabet(spec: Optional[str]) -> Optional[Alphabet]:
    if spec is None:
        return None
    try:
        return Alphabet.parse(spec)
    except ValueError as e:
        raise InputError(str(e)) from None


def _need_alphabet(args) -> Alphabet:
    a = _alphabet(args.alphabet)
    if a is None:
        raise InputError("--alphabet is required")
    return a


def _shape(args):
    try:
        return shape_from_json(_load(args.shape))[0]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad shape file: {e}") from None


def _tableau(path: str, alphabet: Optional[Alphabet]):
    data = _load(path)
    try:
        return tableau_from_json(data, alphabet)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad tableau file: {e}") from None


def _flags(args, shape, alphabet):
    if not getattr(args, "flags", None):
        return None, None
    return flags_from_json(_load(args.flags), shape, alphabet)


# ---------------------------------------------------------------- commands


def cmd_straighten(args):
    t = _tableau(args.tableau, _alphabet(args.alphabet))
    out = straightening.straighten_tableau(t, check=not args.no_check, method=args.method)
    return tableau_sum_to_json(out)


def cmd_expand(args):
    t = _tableau(args.tableau, _alphabet(args.alphabet))
    return poly_to_json(tableau_to_polynomial(t))


def cmd_enumerate(args):
    a = _need_alphabet(args)
    d = _shape(args)
    g, f = _flags(args, d, a)
    return [tableau_to_json(t) for t in enumerate_straight(d, a, g, f)]


def cmd_character(args):
    a = _need_alphabet(args)
    d = _shape(args)
    g, f = _flags(args, d, a)
    return basis.character(d, a, g, f).to_json()


def cmd_branch(args):
    a = _need_alphabet(args)
    d = _shape(args)
    try:
        x = a[args.letter[:-1]] if args.letter[-1:] in "+-" else a[args.letter]
    except KeyError:
        raise InputError(f"letter {args.letter} is not in the alphabet") from None
    g, f = _flags(args, d, a)
    report = branching.branching_check(d, a.letters, x, g, f, strict=False).to_json()
    if args.filtration:
        report["filtration"] = [s.to_json() for s in branching.filtration_ranks(d, a.letters, x)]
    return report


def cmd_relations(args):
    a = _need_alphabet(args)
    d = _shape(args)
    rels = ring.groebner_relations_deg2(d, a, full=args.full)
    return [{"lead": [tableau_to_json(t) for t in r.lead], "rows": list(r.rows),
             "tail": product_terms_to_json(r.tail.terms)} for r in rels]


def cmd_subduct(args):
    a = _need_alphabet(args)
    d = _shape(args)
    if args.polynomial:
        try:
            p = poly_from_json(_load(args.polynomial), {str(x): x for x in a})
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"bad polynomial file: {e}") from None
    elif args.product:
        data = _load(args.product)
        p = product(tableau_to_polynomial(tableau_from_json(t, a)) for t in data)
    else:
        raise InputError("give --polynomial or --product")
    sub = ring.sagbi_subduct(p, d, ORDERS[args.order])
    return {"steps": sub.steps, "expression": product_terms_to_json(sub.expression.terms)}


def _cap(requested: Optional[int]) -> Optional[int]:
    env = os.environ.get("ROWCONVEX_MAX_CELLS")
    if env is None:
        return requested
    try:
        cap = int(env)
    except ValueError:
        raise InputError(f"ROWCONVEX_MAX_CELLS must be an integer, got {env!r}") from None
    return cap if requested is None else min(requested, cap)


def cmd_verify(args):
    names = list(SUITES) if "all" in args.suite else args.suite
    alphabets = [_need_alphabet(args)] if args.alphabet else None
    results = []
    for name in names:
        max_cells = _cap(args.max_cells)
        if max_cells is None:
            max_cells = _cap(SUITES[name][1])
        results.append(run_suite(name, max_cells, alphabets, sample=args.sample, seed=args.seed))
    lines = [r.row() for r in results]
    for r in results:
        lines.extend(f"  {r.name}: {msg}" for msg in r.failures)
    return "\n".join(lines), all(r.passed for r in results)


COMMANDS = {
    "straighten": cmd_straighten,
    "expand": cmd_expand,
    "enumerate": cmd_enumerate,
    "character": cmd_character,
    "branch": cmd_branch,
    "relations": cmd_relations,
    "subduct": cmd_subduct,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rowconvex", description="Straight tableaux and straightening for row-convex shapes.")
    parser.add_argument("-o", "--output", help="write the result here instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, shape=False, tableau=False, alphabet=False, flags=False):
        p = sub.add_parser(name, help=help_)
        if shape:
            p.add_argument("--shape", required=True, help="shape JSON file")
        if tableau:
            p.add_argument("--tableau", required=True, help="tableau JSON file")
        if alphabet:
            p.add_argument("--alphabet", help='letters in increasing order, e.g. "a+,b-"')
        if flags:
            p.add_argument("--flags", help='flag JSON file {"g": [...], "f": [...]}')
        return p

    p = add("straighten", "straighten a tableau", tableau=True, alphabet=True)
    p.add_argument("--method", choices=["polarization", "printed"], default="polarization")
    p.add_argument("--no-check", action="store_true", help="skip the expansion check")
    add("expand", "letterplace expansion of a tableau", tableau=True, alphabet=True)
    add("enumerate", "list straight tableaux", shape=True, alphabet=True, flags=True)
    add("character", "character of the (flagged) straight basis", shape=True, alphabet=True, flags=True)
    p = add("branch", "branching identity and filtration ranks", shape=True, alphabet=True, flags=True)
    p.add_argument("--letter", required=True, help="the letter to remove")
    p.add_argument("--filtration", action="store_true", help="also report filtration ranks")
    p = add("relations", "degree-two relations among straight tableaux", shape=True, alphabet=True)
    p.add_argument("--full", action="store_true", help="one relation per non-straight row pair")
    p = add("subduct", "write a polynomial in products of straight tableaux", shape=True, alphabet=True)
    p.add_argument("--polynomial", help="polynomial JSON file")
    p.add_argument("--product", help="JSON list of tableaux to multiply")
    p.add_argument("--order", choices=sorted(ORDERS), default="diag")
    p = add("verify", "run property suites", alphabet=True)
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--max-cells", type=int)
    p.add_argument("--sample", type=int, help="check a random sample of this many (shape, alphabet) cases")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return sorted(o) if isinstance(o, (set, frozenset)) else list(o)
    return str(o)


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _error(code: str, message: str, witness=None) -> str:
    return json.dumps({"code": code, "message": message, "witness": witness}, default=_default)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except InputError as e:
        _emit(_error("ParseError", str(e)), None)
        return 2
    except RowConvexError as e:
        _emit(_error(e.code, str(e), e.witness), None)
        return 1
    if args.command == "verify":
        text, ok = result
        _emit(text, args.output)
        return 0 if ok else 1
    _emit(json.dumps(result, indent=2, default=_default), args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
