"""Text formats for lattices, packings and codes.

Lattice file (JSON)::

    {"name": "A2", "dim": 2, "field": "Q", "gram": [["2", "1"], ["1", "2"]]}

Entries are exact strings ``"p/q"`` or ``"p/q+r/s*sqrt2"``; ``field`` is
``"Q"`` or ``"Q(sqrt2)"``.  Packing files add ``"basis"`` (square, rational)
and ``"offsets"``.  Extra keys (such as ``"source"``) are kept but ignored.

Code file: a header line ``"n k"`` (linear) or ``"n nonlinear"``, then one
word per line as a string of ``0``/``1`` (``0``-``3`` for Z/4 codes).
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union


from .codes import BinaryCode, Z4Code
from .errors import PreconditionError
from .lattice import Lattice, PeriodicPacking
from .scalar import Scalar, format_scalar, parse_scalar

PathLike = Union[str, Path]


def _field_of(M) -> str:
    return "Q" if all(Scalar.coerce(x).is_rational for r in M for x in r) else "Q(sqrt2)"


def _matrix_strings(M):
    return [[format_scalar(Scalar.coerce(x)) for x in r] for r in M]


def _parse_matrix(rows, what):
    try:
        return [[parse_scalar(str(x)) for x in r] for r in rows]
    except ValueError as exc:
        raise PreconditionError(f"bad {what} entry: {exc}") from exc


def lattice_to_dict(L: Lattice, **extra) -> dict:
    d = {"name": L.name or "", "dim": L.dim, "field": _field_of(L.gram),
         "gram": _matrix_strings(L.gram)}
    d.update(extra)
    return d


def lattice_from_dict(d: dict) -> Lattice:
    for key in ("dim", "gram"):
        if key not in d:
            raise PreconditionError(f"lattice file lacks '{key}'")
    G = _parse_matrix(d["gram"], "gram")
    if len(G) != int(d["dim"]):
        raise PreconditionError("'dim' does not match the Gram matrix")
    field = d.get("field", _field_of(G))
    if field not in ("Q", "Q(sqrt2)"):
        raise PreconditionError(f"unknown field {field!r}")
    if field == "Q" and _field_of(G) != "Q":
        raise PreconditionError("field 'Q' but entries involve sqrt2")
    return Lattice(G, name=d.get("name") or None)


def packing_to_dict(P: PeriodicPacking) -> dict:
    d = lattice_to_dict(P.base)
    d["name"] = P.name or ""
    d["basis"] = _matrix_strings(P.base.basis)
    d["offsets"] = [[format_scalar(Scalar(Fraction(x))) for x in o] for o in P.offsets]
    d["is_lattice"] = P.is_lattice
    return d


def packing_from_dict(d: dict) -> PeriodicPacking:
    if "basis" not in d or "offsets" not in d:
        raise PreconditionError("packing file needs 'basis' and 'offsets'")
    basis = _parse_matrix(d["basis"], "basis")
    base = Lattice.from_basis(basis)
    offsets = [[parse_scalar(str(x)).to_fraction() for x in o] for o in d["offsets"]]
    return PeriodicPacking(base, offsets, name=d.get("name") or None,
                           is_lattice=bool(d.get("is_lattice", False)))


def _encode(obj, level: int) -> str:
    pad = " " * level
    if isinstance(obj, dict):
        if not any(isinstance(v, (list, dict)) for v in obj.values()):
            return json.dumps(obj)
        items = [f'{pad} {json.dumps(k)}: {_encode(v, level + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [pad + " " + _encode(x, level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def dumps(obj) -> str:
    """JSON with one matrix row per line."""
    return _encode(obj, 0) + "\n"


def write_lattice(L: Lattice, path: PathLike, **extra):
    Path(path).write_text(dumps(lattice_to_dict(L, **extra)), newline="\n")


def read_lattice(path: PathLike) -> Lattice:
    d = json.loads(Path(path).read_text())
    if "offsets" in d:
        raise PreconditionError("file describes a packing, not a lattice")
    return lattice_from_dict(d)


def write_packing(P: PeriodicPacking, path: PathLike):
    Path(path).write_text(dumps(packing_to_dict(P)), newline="\n")


def read_packing(path: PathLike) -> PeriodicPacking:
    return packing_from_dict(json.loads(Path(path).read_text()))


def read_lattice_or_packing(path: PathLike):
    d = json.loads(Path(path).read_text())
    return packing_from_dict(d) if "offsets" in d else lattice_from_dict(d)


# -- codes --------------------------------------------------------------------

def code_to_text(C) -> str:
    if isinstance(C, Z4Code):
        head = f"{C.n} z4"
    elif C.linear:
        head = f"{C.n} {C.dimension}"
    else:
        head = f"{C.n} nonlinear"
    lines = [head] + ["".join(str(int(b)) for b in w) for w in C.words]
    return "\n".join(lines) + "\n"


def code_from_text(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise PreconditionError("empty code file")
    head = lines[0].split()
    if len(head) != 2:
        raise PreconditionError("code header must be 'n k' or 'n nonlinear'")
    n = int(head[0])
    words = [tuple(int(ch) for ch in ln) for ln in lines[1:]]
    if any(len(w) != n for w in words):
        raise PreconditionError("word length differs from header")
    if head[1] == "z4":
        return Z4Code.from_words(words)
    if any(b not in (0, 1) for w in words for b in w):
        raise PreconditionError("binary code words must use 0 and 1 only")
    C = BinaryCode.from_words(words)
    if head[1] == "nonlinear":
        return C
    k = int(head[1])
    lin = C.as_linear()
    if lin.dimension != k or len(lin) != len(words):
        raise PreconditionError("header dimension does not match the word list")
    return lin


def write_code(C, path: PathLike):
    Path(path).write_text(code_to_text(C), newline="\n")


def read_code(path: PathLike):
    return code_from_text(Path(path).read_text())
