"""Named lattices with exact Gram data and self-verification.

Fixed entries live in ``data/<name>.json`` (one file per lattice, written by
:mod:`spherepack.catalog.build`).  Families are generated on demand:
``Z<n>``, ``A<n>``, ``D<n>`` and ``D<n>+`` (n even).  ``Z<n>``, ``D<n>`` and
``D<n>+`` carry explicit bases, so they can be used with ambient coordinates.

>>> from spherepack import catalog
>>> catalog.get("E8").dim
8
"""
from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional

from ..enumeration import DEFAULT_MAX_NODES
from ..errors import PreconditionError, ResourceError, SpherePackError
from ..io import lattice_from_dict
from ..lattice import (Lattice, determinant, is_even, is_integral, is_unimodular,
                       kissing_number, min_norm)
from ..scalar import Scalar, format_scalar, parse_scalar

DATA_DIR = Path(__file__).with_name("data")

_FAMILY = re.compile(r"^(Z|A|D)(\d+)(\+?)$")
_lock = threading.Lock()


class UnknownLatticeError(PreconditionError, KeyError):
    """No catalog entry or family member with this name."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown lattice"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    lattice: Lattice
    source: str
    expected: dict = field(default_factory=dict)

    def provenance(self, key: str) -> Optional[str]:
        rec = self.expected.get(key)
        return rec["provenance"] if rec else None


@lru_cache(maxsize=None)
def _fixed_names() -> tuple:
    return tuple(sorted(p.stem for p in DATA_DIR.glob("*.json")))


@lru_cache(maxsize=None)
def _load(name: str) -> CatalogEntry:
    d = json.loads((DATA_DIR / f"{name}.json").read_text())
    return CatalogEntry(name, lattice_from_dict(d), d.get("source", ""), d.get("expected", {}))


def _family(name: str) -> CatalogEntry:
    from ..catalog.build import cartan_a
    from ..constructions import d_plus, dn_lattice, integer_lattice

    m = _FAMILY.match(name)
    if not m:
        raise UnknownLatticeError(f"unknown lattice {name!r}")
    kind, n, plus = m.group(1), int(m.group(2)), m.group(3)
    if n < 1:
        raise UnknownLatticeError(f"unknown lattice {name!r}")
    if plus:
        if kind != "D" or n < 4 or n % 2:
            raise UnknownLatticeError(f"{name!r}: D_n^+ is a lattice only for even n >= 4")
        L = d_plus(n).to_lattice()
        return CatalogEntry(name, Lattice(L.gram, basis=L.basis, name=name),
                            "D_n with the glue vector (1/2, ..., 1/2)")
    if kind == "Z":
        return CatalogEntry(name, integer_lattice(n, name=name), "cubic lattice")
    if kind == "A":
        return CatalogEntry(name, Lattice(cartan_a(n), name=name), f"Cartan matrix of A{n}")
    if n < 3:
        raise UnknownLatticeError(f"{name!r}: D_n needs n >= 3")
    return CatalogEntry(name, dn_lattice(n, name=name),
                        "checkerboard lattice, basis 2e_0 and e_i - e_0")


def entry(name: str) -> CatalogEntry:
    """Catalog record for ``name`` (fixed entry or family member)."""
    with _lock:
        if name in _fixed_names():
            return _load(name)
        return _family(name)


def get(name: str) -> Lattice:
    """Exact lattice for a catalog name."""
    return entry(name).lattice


def list_names() -> list:
    """Names of the fixed entries (families are listed by pattern)."""
    return list(_fixed_names())


FAMILIES = ("Z<n>", "A<n>", "D<n>", "D<n>+")


def uv_lattice(u_sq, v_sq, name: Optional[str] = None) -> Lattice:
    """Lattice spanned by ``(u, v, 0)``, ``(u, -v, 0)``, ``(0, v, u)``, Gram-first.

    Only ``u^2`` and ``v^2`` enter the inner products, so the Gram lies in
    Q(sqrt 2) whenever they do.  Equal squares give f.c.c., ratio 2 gives
    b.c.c., ratio sqrt 2 gives m.c.c. (each up to scale).
    """
    u2, v2 = Scalar.coerce(u_sq), Scalar.coerce(v_sq)
    if u2.sign() <= 0 or v2.sign() <= 0:
        raise PreconditionError("u^2 and v^2 must be positive")
    G = [[u2 + v2, u2 - v2, v2],
         [u2 - v2, u2 + v2, -v2],
         [v2, -v2, u2 + v2]]
    return Lattice(G, name=name)


# -- verification -------------------------------------------------------------

@dataclass
class Check:
    name: str
    field: str
    expected: object
    got: object
    ok: bool
    provenance: str = ""
    status: str = "ok"  # ok | mismatch | budget | error


def _to_text(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, (Scalar, int)):
        return format_scalar(Scalar.coerce(v))
    return v


def _value(rec):
    v = rec["value"]
    return parse_scalar(v) if isinstance(v, str) else v


def _modular(L: Lattice, N: int, max_nodes: int) -> bool:
    from ..isometry import n_modular_check

    if N == 1:
        return is_unimodular(L)
    return n_modular_check(L, N, max_nodes=max_nodes) is not None


def verify_entry(e: CatalogEntry, max_nodes: int = DEFAULT_MAX_NODES) -> list:
    """Recompute every expected field of one entry; one :class:`Check` per field."""
    L = e.lattice
    out = []
    compute = {
        "det": lambda: determinant(L),
        "min_norm": lambda: min_norm(L, max_nodes),
        "kissing": lambda: kissing_number(L, max_nodes),
        "even": lambda: L.is_rational and is_integral(L) and is_even(L),
        "unimodular": lambda: L.is_rational and is_unimodular(L),
        "modular_N": lambda: _modular(L, int(_value(e.expected["modular_N"]).to_fraction()),
                                      max_nodes),
    }
    for key, rec in e.expected.items():
        want = _value(rec)
        try:
            got = compute[key]()
        except ResourceError as exc:
            out.append(Check(e.name, key, _to_text(want), None, False, rec["provenance"],
                             f"budget: {exc}"))
            continue
        except SpherePackError as exc:
            out.append(Check(e.name, key, _to_text(want), None, False, rec["provenance"],
                             f"error: {exc}"))
            continue
        if key == "modular_N":
            ok, got = bool(got), (_to_text(want) if got else None)
        elif isinstance(want, bool):
            ok = bool(got) == want
        else:
            ok = Scalar.coerce(got) == want
        out.append(Check(e.name, key, _to_text(want), _to_text(got), ok, rec["provenance"],
                         "ok" if ok else "mismatch"))
    return out


def verify_all(budget: int = DEFAULT_MAX_NODES, names=None) -> list:
    """Checks for every fixed entry; each entry gets its own node budget.

    The Leech entry is also compared against a fresh run of the Golay
    construction.
    """
    from ..constructions import leech_from_golay

    report = []
    for name in names or list_names():
        e = entry(name)
        report.extend(verify_entry(e, budget))
        if name == "Leech":
            fresh = leech_from_golay()
            same = fresh.gram == e.lattice.gram
            report.append(Check(name, "gram_rederived", True, same, same, "derived",
                                "ok" if same else "mismatch"))
    return report


def mismatches(report) -> list:
    return [c for c in report if not c.ok]


__all__ = ["CatalogEntry", "Check", "DATA_DIR", "FAMILIES", "UnknownLatticeError",
           "entry", "get", "list_names", "mismatches", "uv_lattice", "verify_all",
           "verify_entry"]
