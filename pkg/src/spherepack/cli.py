"""Command-line front end.

Every subcommand prints one table, as CSV (default) or JSON::

    # schema=1
    col_a,col_b
    ...

Exact values are fraction strings (``p/q`` or ``p/q+r/s*sqrt2``); floats are
printed with 12 significant digits.  Exit codes: 0 success, 1 domain error,
2 usage error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog, codes, constructions, isometry, shadow
from . import io as fileio
from .enumeration import DEFAULT_MAX_NODES
from .errors import ResourceError, SpherePackError
from .lattice import (DEFAULT_MEMORY_BYTES, Lattice, PeriodicPacking, center_density,
                      coordination_numerator, coordination_sequence, density, determinant,
                      kissing_number, min_norm, packing_invariants, theta_series)
from .scalar import Scalar, format_scalar

SCHEMA = 1
EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


# -- formatting ---------------------------------------------------------------

def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    if isinstance(v, (int, Fraction, Scalar)):
        return format_scalar(Scalar.coerce(v))
    return str(v)


class Table:
    def __init__(self, columns, rows=(), meta=None):
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]
        self.meta = dict(meta or {})

    def render(self, kind: str) -> str:
        if kind == "json":
            doc = {"schema": SCHEMA, **{k: fmt(v) for k, v in self.meta.items()},
                   "columns": self.columns,
                   "rows": [{c: fmt(v) for c, v in zip(self.columns, r)} for r in self.rows]}
            return json.dumps(doc, indent=1) + "\n"
        buf = _stdio.StringIO()
        buf.write(f"# schema={SCHEMA}\n")
        for k, v in self.meta.items():
            buf.write(f"# {k}={fmt(v)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([fmt(v) for v in r])
        return buf.getvalue()


def _matrix_text(U) -> str:
    return ";".join(" ".join(str(int(x)) for x in row) for row in U)


# -- object resolution ----------------------------------------------------------

NAMED_PACKINGS = {
    "P10c": lambda: constructions.construction_a(codes.best_code_10(), name="P10c"),
}


def resolve(ref: str):
    """A lattice or packing from a file path, a catalog name or a named packing."""
    p = Path(ref)
    if p.suffix == ".json" or p.is_file():
        if not p.is_file():
            raise FileNotFoundError(ref)
        return fileio.read_lattice_or_packing(p)
    if ref in NAMED_PACKINGS:
        return NAMED_PACKINGS[ref]()
    return catalog.get(ref)


def resolve_lattice(ref: str) -> Lattice:
    obj = resolve(ref)
    if isinstance(obj, PeriodicPacking):
        if not obj.is_lattice:
            raise SpherePackError(f"{ref} is a nonlattice packing")
        return obj.to_lattice()
    return obj


def resolve_code(ref: str):
    builtin = {"best10": codes.best_code_10, "golay24": codes.golay24, "qr18": codes.qr18}
    if ref in builtin:
        return builtin[ref]()
    if ref.startswith("dual:"):
        return codes.dual_code(resolve_code(ref[5:]))
    return fileio.read_code(ref)


def _label(ref: str, obj) -> str:
    return getattr(obj, "name", None) or ref


# -- subcommands ---------------------------------------------------------------

def cmd_catalog(a):
    if a.action == "list":
        rows = []
        for name in catalog.list_names():
            e = catalog.entry(name)
            rows.append([name, e.lattice.dim, e.source])
        return Table(["name", "dim", "source"], rows,
                     {"families": " ".join(catalog.FAMILIES)})
    if a.action == "show":
        if not a.name:
            raise _Usage("catalog show needs a name")
        e = catalog.entry(a.name)
        return fileio.dumps(fileio.lattice_to_dict(e.lattice, source=e.source,
                                                   expected=e.expected))
    names = [a.name] if a.name else None
    report = catalog.verify_all(a.max_nodes, names)
    rows = [[c.name, c.field, c.expected, c.got, c.provenance, c.status] for c in report]
    t = Table(["name", "field", "expected", "got", "provenance", "status"], rows)
    bad = catalog.mismatches(report)
    if any(c.status.startswith("budget") for c in bad):
        t.exit_code = EXIT_BUDGET
    elif bad:
        t.exit_code = EXIT_DOMAIN
    return t


def _lattice_invariants(name, L, a):
    row = [name, L.dim, determinant(L), min_norm(L, a.max_nodes),
           kissing_number(L, a.max_nodes), center_density(L), density(L),
           constructions.fig3_ordinate(L)]
    return Table(["name", "dim", "det", "min_norm", "kissing", "center_density",
                  "density", "fig3_ordinate"], [row])


def cmd_invariants(a):
    obj = resolve(a.target)
    if isinstance(obj, Lattice):
        return _lattice_invariants(_label(a.target, obj), obj, a)
    bound = Fraction(a.bound) if a.bound else min_norm(obj.base, a.max_nodes).to_fraction()
    inv = packing_invariants(obj, bound, a.max_nodes)
    ordinate = constructions.fig3_ordinate(obj, bound, a.max_nodes)
    return Table(["name", "dim", "points_per_cell", "min_dist_sq", "max_kissing",
                  "center_density", "fig3_ordinate"],
                 [[_label(a.target, obj), obj.dim, len(obj.offsets), inv.min_dist_sq,
                   inv.max_kissing, inv.center_density, ordinate]])


def _series_table(series, meta=None):
    return Table(["exponent", "coefficient"], list(series.items()), meta)


def cmd_theta(a):
    L = resolve_lattice(a.target)
    return _series_table(theta_series(L, Fraction(a.cutoff), a.max_nodes),
                         {"cutoff": Fraction(a.cutoff)})


def cmd_coordseq(a):
    L = resolve_lattice(a.target)
    seq = coordination_sequence(L, a.steps, a.max_nodes, a.memory)
    num = coordination_numerator(seq, L.dim)
    return Table(["k", "count", "numerator"], [[k, s, c] for k, (s, c) in
                                               enumerate(zip(seq, num))])


def cmd_shadow(a):
    L = resolve_lattice(a.target)
    sd = shadow.shadow(L, Fraction(a.cutoff), a.max_nodes)
    rep = " ".join(fmt(x) for x in sd.coset_rep)
    return _series_table(sd.series, {"cutoff": Fraction(a.cutoff), "coset_rep": rep})


def cmd_bounds(a):
    rows = [[n, shadow.legacy_bound(n), shadow.extremal_bound(n, "even"),
             shadow.extremal_bound(n, "odd")] for n in range(1, a.max_dim + 1)]
    return Table(["n", "legacy_bound", "even_bound", "odd_bound"], rows)


def cmd_nonexist(a):
    c = shadow.nonexistence_certificate(a.dim, a.min_norm,
                                        Fraction(a.cutoff) if a.cutoff else None)
    coeffs = ";".join(fmt(x) for x in c.expression.coeffs) if c.expression else ""
    e, v = c.offending if c.offending else (None, None)
    return Table(["n", "min_norm", "verdict", "free_parameters", "ring_coefficients",
                  "evidence_kind", "exponent", "coefficient"],
                 [[c.n, c.mu, c.verdict, c.free_parameters, coeffs, c.evidence_kind, e, v]])


def cmd_modular(a):
    L = resolve_lattice(a.target)
    U = isometry.n_modular_check(L, a.N, max_nodes=a.max_nodes)
    t = Table(["name", "N", "modular", "witness"],
              [[_label(a.target, L), a.N, U is not None,
                _matrix_text(U) if U is not None else None]])
    return t


def _write_object(obj, out):
    d = (fileio.packing_to_dict(obj) if isinstance(obj, PeriodicPacking)
         else fileio.lattice_to_dict(obj))
    text = fileio.dumps(d)
    if out:
        Path(out).write_text(text, newline="\n")
        return Table(["written", "name", "dim"], [[out, d["name"], d["dim"]]])
    return text


def _fractions(text: str):
    return [Fraction(x) for x in text.replace(",", " ").split()]


def cmd_construct(a):
    kind = a.kind
    if kind == "a":
        obj = constructions.construction_a(resolve_code(a.code or "best10"))
    elif kind == "bstar":
        obj = constructions.construction_bstar(resolve_code(a.b or "qr18"),
                                               resolve_code(a.c or "dual:qr18"))
    elif kind == "leech-golay":
        obj = constructions.leech_from_golay()
    elif kind == "leech-lorentzian":
        obj = constructions.leech_from_lorentzian()
    elif kind == "d9plus":
        obj = constructions.d9_theta_plus(Fraction(a.theta or 0))
    elif kind == "dplus":
        obj = constructions.d_plus(a.n or 8)
    else:  # stack
        if not a.base or not a.hole or a.target_norm is None:
            raise _Usage("stack needs --base, --hole and --target-norm")
        obj = constructions.stack_layer(
            resolve_lattice(a.base), _fractions(a.hole), Scalar.coerce(a.target_norm),
            coords=a.coords, gram_only=a.gram_only, max_nodes=a.max_nodes)
    return _write_object(obj, a.output)


def _code_table(label, C):
    if isinstance(C, codes.Z4Code):
        return Table(["name", "n", "size", "ring"], [[label, C.n, len(C), "Z4"]])
    d = codes.min_distance(C)
    dist = " ".join(str(x) for x in (codes.weight_distribution(C) if C.linear
                                     else codes.distance_distribution(C)))
    return Table(["name", "n", "size", "linear", "dimension", "min_distance",
                  "distribution"],
                 [[label, C.n, len(C), C.linear, C.dimension if C.linear else None, d, dist]])


def cmd_code(a):
    if a.which == "info":
        if not a.file:
            raise _Usage("code info needs a file")
        return _code_table(a.file, fileio.read_code(a.file))
    C = resolve_code(a.which)
    if a.output:
        fileio.write_code(C, a.output)
    return _code_table(a.which, C)


def cmd_fig3(a):
    rows = []
    for ref in a.names:
        obj = resolve(ref)
        if isinstance(obj, PeriodicPacking):
            bound = min_norm(obj.base, a.max_nodes).to_fraction()
            delta = packing_invariants(obj, bound, a.max_nodes).center_density
            y = constructions.fig3_ordinate(obj, bound, a.max_nodes)
        else:
            delta, y = center_density(obj), constructions.fig3_ordinate(obj)
        rows.append([_label(ref, obj), obj.dim, delta, y])
    return Table(["name", "dim", "center_density", "ordinate"], rows)


# -- parser ---------------------------------------------------------------------

class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _nodes(text: str) -> int:
    return int(float(text))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--max-nodes", type=_nodes, default=DEFAULT_MAX_NODES,
                        help="enumeration node budget (default 1e9)")
    common.add_argument("--memory", type=_nodes, default=DEFAULT_MEMORY_BYTES,
                        help="memory budget in bytes (default 2 GiB)")

    p = _Parser(prog="spherepack", description="Exact lattice packing computations.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("catalog", parents=[common], help="list, show or verify entries")
    s.add_argument("action", choices=["list", "show", "verify"])
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("invariants", parents=[common], help="det, min norm, kissing, density")
    s.add_argument("target")
    s.add_argument("--bound", help="enumeration bound for packings")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("theta", parents=[common], help="theta series below a cutoff")
    s.add_argument("target")
    s.add_argument("--cutoff", required=True)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("coordseq", parents=[common], help="coordination sequence")
    s.add_argument("target")
    s.add_argument("--steps", type=int, required=True)
    s.set_defaults(func=cmd_coordseq)

    s = sub.add_parser("shadow", parents=[common], help="shadow theta series")
    s.add_argument("target")
    s.add_argument("--cutoff", default="8")
    s.set_defaults(func=cmd_shadow)

    s = sub.add_parser("bounds", parents=[common], help="minimal-norm bounds table")
    s.add_argument("--max-dim", type=int, default=48)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("nonexist", parents=[common], help="odd unimodular nonexistence test")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--min-norm", type=int, required=True)
    s.add_argument("--cutoff")
    s.set_defaults(func=cmd_nonexist)

    s = sub.add_parser("modular", parents=[common], help="N-modularity witness")
    s.add_argument("target")
    s.add_argument("--N", type=int, required=True)
    s.set_defaults(func=cmd_modular)

    s = sub.add_parser("construct", parents=[common], help="build a lattice or packing")
    s.add_argument("kind", choices=["a", "bstar", "leech-golay", "leech-lorentzian",
                                    "d9plus", "dplus", "stack"])
    s.add_argument("--code", help="code for construction A (file or best10/golay24/qr18)")
    s.add_argument("--b", help="first code for B* (default qr18)")
    s.add_argument("--c", help="second code for B* (default dual:qr18)")
    s.add_argument("--theta", help="glue parameter for d9plus")
    s.add_argument("--n", type=int, help="dimension for dplus")
    s.add_argument("--base", help="lattice to stack on")
    s.add_argument("--hole", help="hole coordinates, space or comma separated")
    s.add_argument("--target-norm")
    s.add_argument("--coords", choices=["ambient", "lattice"], default="ambient")
    s.add_argument("--gram-only", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("code", parents=[common], help="built-in codes and code files")
    s.add_argument("which", choices=["best10", "golay24", "qr18", "info"])
    s.add_argument("file", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_code)

    s = sub.add_parser("fig3", parents=[common], help="rescaled center densities")
    s.add_argument("--names", nargs="+", required=True)
    s.set_defaults(func=cmd_fig3)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        a = build_parser().parse_args(argv)
        result = a.func(a)
    except _Usage as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ResourceError as exc:
        err.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except (SpherePackError, KeyError, FileNotFoundError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        err.write(f"error: {msg}\n")
        return EXIT_DOMAIN
    if isinstance(result, str):
        out.write(result)
        return EXIT_OK
    out.write(result.render(a.format))
    return getattr(result, "exit_code", EXIT_OK)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
