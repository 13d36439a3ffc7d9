"""Regenerate the catalog data files.

    python3 -m spherepack.catalog.build [outdir]

Each lattice is written to its own JSON file with a ``source`` note and an
``expected`` record.  Expected values carry a provenance tag:

* ``standard``  well-known value for the named lattice;
* ``derived``   recomputed by an independent oracle when the entry was frozen;
* ``trivial``   read off the Gram matrix.

Nothing here is trusted at load time: :func:`spherepack.catalog.verify_all`
recomputes every expected field.
"""
from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from .. import linalg
from ..codes import BinaryCode, dual_code
from ..constructions import d9_theta_plus, leech_from_golay, stack_layer
from ..io import dumps, lattice_to_dict
from ..lattice import Lattice
from ..scalar import Scalar, format_scalar

DATA_DIR = Path(__file__).with_name("data")
HALF = Fraction(1, 2)


# -- Cartan matrices ----------------------------------------------------------

def cartan_a(n: int):
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def cartan_d(n: int):
    """D_n, n >= 3: a chain 0..n-2 with node n-1 attached to node n-3."""
    G = cartan_a(n - 1)
    G = [row + [0] for row in G] + [[0] * n]
    G[n - 1][n - 1] = 2
    G[n - 1][n - 3] = G[n - 3][n - 1] = -1
    return G


def cartan_e(n: int):
    """E6, E7, E8: a chain 0..n-2 with node n-1 attached to node 2."""
    if n not in (6, 7, 8):
        raise ValueError("E_n needs n in 6, 7, 8")
    G = [row + [0] for row in cartan_a(n - 1)] + [[0] * n]
    G[n - 1][n - 1] = 2
    G[n - 1][2] = G[2][n - 1] = -1
    return G


# -- lattices defined by congruences -------------------------------------------

def congruence_lattice(conditions, n: int) -> list:
    """HNF basis of ``{v in Z^n : row . v = 0 mod m}`` for each ``(row, m)``."""
    r = len(conditions)
    M = [list(row) + [-m if k == i else 0 for k in range(r)]
         for i, (row, m) in enumerate(conditions)]
    K = linalg.integer_kernel(M)
    H = linalg.hnf([[int(x) for x in row[:n]] for row in K])
    return [row for row in H if any(row)]


def coxeter_todd():
    """K12 from Eisenstein 6-tuples: x_i congruent mod theta and sum(x) = 0 mod 3.

    Coordinates ``(a_i, b_i)`` stand for ``a_i + b_i w`` with ``w^2 + w + 1 = 0``;
    mod ``theta = w - w^2`` an Eisenstein integer reduces to ``a + b`` mod 3.
    The Hermitian norm gives the metric; the Gram is scaled by 2/3 so that the
    minimal norm is 4.
    """
    n = 12
    conds = []
    for i in range(1, 6):
        row = [0] * n
        row[0] = row[1] = 1
        row[2 * i] = row[2 * i + 1] = -1
        conds.append((row, 3))
    conds.append(([1 if k % 2 == 0 else 0 for k in range(n)], 3))
    conds.append(([1 if k % 2 == 1 else 0 for k in range(n)], 3))
    B = congruence_lattice(conds, n)
    metric = [[Fraction(0)] * n for _ in range(n)]
    for i in range(6):
        a, b = 2 * i, 2 * i + 1
        metric[a][a] = metric[b][b] = Fraction(1)
        metric[a][b] = metric[b][a] = -HALF
    Bf = [[Fraction(x) for x in r] for r in B]
    G = linalg.matmul(linalg.matmul(Bf, metric), linalg.transpose(Bf))
    return [[Fraction(2, 3) * x for x in r] for r in G]


def reed_muller_1_4() -> BinaryCode:
    rows = [[1] * 16] + [[(j >> k) & 1 for j in range(16)] for k in range(4)]
    return BinaryCode.from_generator(rows)


def barnes_wall_16():
    """BW16 as ``{x : x mod 2 in RM(1,4), sum(x) = 0 mod 4}`` with norms halved."""
    H = dual_code(reed_muller_1_4()).generator
    conds = [(list(h), 2) for h in H] + [([1] * 16, 4)]
    B = congruence_lattice(conds, 16)
    Bf = [[Fraction(x) for x in r] for r in B]
    G = linalg.matmul(Bf, linalg.transpose(Bf))
    return [[x / 2 for x in r] for r in G]


def lambda9() -> Lattice:
    """D9^{0+} as a lattice, norms doubled to minimal norm 4."""
    return d9_theta_plus(0).to_lattice().scaled(2)


def lambda10() -> Lattice:
    """One layer over D9^{0+} above the hole ((1/2)^4, 0^4, 1/2), then norms doubled.

    The hole lies at squared distance 5/4 from D9^{0+} (minimal norm 2), so
    the layer height is sqrt(3/4); only the Gram is formed.
    """
    base = d9_theta_plus(0).to_lattice()
    hole = [HALF] * 4 + [Fraction(0)] * 4 + [HALF]
    L = stack_layer(base, hole, 2, gram_only=True)
    return L.scaled(2)


# -- entry table --------------------------------------------------------------

def _exp(value, tag):
    if isinstance(value, (Fraction, int, Scalar)) and not isinstance(value, bool):
        value = format_scalar(Scalar.coerce(value))
    return {"value": value, "provenance": tag}


def _record(det, mu, kissing, even, unimodular, modular=None, tags=None):
    tags = tags or {}
    rec = {
        "det": _exp(det, tags.get("det", "trivial")),
        "min_norm": _exp(mu, tags.get("min_norm", "standard")),
        "kissing": _exp(kissing, tags.get("kissing", "standard")),
        "even": _exp(even, "trivial"),
        "unimodular": _exp(unimodular, "trivial"),
    }
    if modular is not None:
        rec["modular_N"] = _exp(modular, tags.get("modular_N", "derived"))
    return rec


MCC_GRAM = [
    [Scalar(HALF, HALF), Scalar(HALF), Scalar(HALF)],
    [Scalar(HALF), Scalar(HALF, HALF), Scalar(HALF, -HALF)],
    [Scalar(HALF), Scalar(HALF, -HALF), Scalar(HALF, HALF)],
]


def entries():
    """``(name, gram, source, expected)`` for every fixed catalog entry."""
    out = []

    def add(name, gram, source, expected):
        out.append((name, gram, source, expected))

    add("A2", [[2, 1], [1, 2]], "hexagonal lattice, basis of two minimal vectors at 60 degrees",
        _record(3, 2, 6, True, False, 3))
    add("A3", cartan_a(3), "Cartan matrix of A3 (isometric to D3)",
        _record(4, 2, 12, True, False))
    add("D4", cartan_d(4), "Cartan matrix of D4",
        _record(4, 2, 24, True, False, 2))
    add("D5", cartan_d(5), "Cartan matrix of D5",
        _record(4, 2, 40, True, False))
    add("E6", cartan_e(6), "Cartan matrix of E6",
        _record(3, 2, 72, True, False))
    add("E7", cartan_e(7), "Cartan matrix of E7",
        _record(2, 2, 126, True, False))
    add("E8", cartan_e(8), "Cartan matrix of E8",
        _record(1, 2, 240, True, True, 1))
    add("fcc", [[2, 1, 1], [1, 2, 1], [1, 1, 2]],
        "face-centered cubic: basis (1,1,0), (1,0,1), (0,1,1)",
        _record(4, 2, 12, True, False))
    add("bcc", [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]],
        "body-centered cubic: basis (1,1,-1), (1,-1,1), (-1,1,1)",
        _record(16, 3, 8, False, False))
    add("mcc", MCC_GRAM, "mean-centered cuboidal lattice, Gram over Q(sqrt 2)",
        _record(1, Scalar(HALF, HALF), 8, False, False,
                tags={"min_norm": "derived", "kissing": "derived"}))
    add("K12", coxeter_todd(), "Coxeter-Todd lattice from Eisenstein congruences",
        _record(729, 4, 756, True, False, 3, tags={"kissing": "derived"}))
    add("BW16", barnes_wall_16(), "Barnes-Wall lattice from RM(1,4) congruences",
        _record(256, 4, 4320, True, False, 2))
    add("Leech", leech_from_golay().gram, "Leech lattice from the extended Golay code",
        _record(1, 4, 196560, True, True, 1, tags={"kissing": "derived"}))

    lam = {1: [[4]]}
    lam.update({2: cartan_a(2), 3: cartan_a(3), 4: cartan_d(4), 5: cartan_d(5),
                6: cartan_e(6), 7: cartan_e(7), 8: cartan_e(8)})
    kiss = {1: 2, 2: 6, 3: 12, 4: 24, 5: 40, 6: 72, 7: 126, 8: 240}
    for k in range(2, 9):
        lam[k] = [[2 * x for x in r] for r in lam[k]]
    for k in range(1, 9):
        det = linalg.det([[Fraction(x) for x in r] for r in lam[k]])
        add(f"Lambda{k}", lam[k], f"laminated lattice in dimension {k}, minimal norm 4",
            _record(det, 4, kiss[k], True, False))
    add("Lambda9", lambda9().gram, "laminated lattice: D9^{0+} with norms doubled",
        _record(512, 4, 272, True, False))
    add("Lambda10", lambda10().gram, "laminated lattice: one layer over Lambda9",
        _record(768, 4, 336, True, False, tags={"det": "derived"}))
    return out


def build(outdir=DATA_DIR):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, gram, source, expected in entries():
        L = Lattice(gram, name=name)
        d = lattice_to_dict(L, source=source, expected=expected)
        (outdir / f"{name}.json").write_text(dumps(d), newline="\n")
    return outdir


if __name__ == "__main__":
    print(build(sys.argv[1] if len(sys.argv) > 1 else DATA_DIR))
