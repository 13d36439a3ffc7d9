"""Builders turning codes and smaller lattices into packings and lattices."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .codes import BinaryCode, bstar_compatibility_violations, golay24
from .enumeration import DEFAULT_MAX_NODES
from .errors import ConstructionError, PreconditionError, RepresentationError
from .lattice import (
    Lattice,
    PeriodicPacking,
    center_density,
    determinant,
    min_norm,
    packing_invariants,
)
from .scalar import Scalar

HALF = Fraction(1, 2)


def integer_lattice(n: int, scale: int = 1, name=None) -> Lattice:
    """``scale * Z^n`` with its standard basis."""
    return Lattice.from_basis([[scale if i == j else 0 for j in range(n)] for i in range(n)],
                              name=name)


def dn_basis(n: int):
    """Basis of D_n (integer vectors with even sum): ``2e_0`` and ``e_i - e_0``."""
    rows = [[2] + [0] * (n - 1)]
    for i in range(1, n):
        r = [0] * n
        r[0], r[i] = -1, 1
        rows.append(r)
    return rows


def dn_lattice(n: int, scale: int = 1, name=None) -> Lattice:
    return Lattice.from_basis([[scale * x for x in r] for r in dn_basis(n)],
                              name=name or f"D{n}")


def span_lattice(generators, name=None) -> Lattice:
    """Lattice spanned by rational generator vectors (basis from integer HNF)."""
    rows = [[Fraction(x) for x in g] for g in generators]
    den = linalg.common_denominator([x for r in rows for x in r])
    H = linalg.hnf([[int(x * den) for x in r] for r in rows])
    basis = [[Fraction(x, den) for x in r] for r in H]
    if len(basis) != len(rows[0]):
        raise ConstructionError("generators do not span a full-rank lattice")
    return Lattice.from_basis(basis, name=name)


# -- Construction A --------------------------------------------------------

def construction_a(C: BinaryCode, name=None) -> PeriodicPacking:
    """``{x in Z^n : x mod 2 in C}`` as ``2Z^n`` plus the codewords as offsets.

    A code without the zero word is translated by its first word first.
    """
    words = [tuple(w) for w in C.words]
    if tuple([0] * C.n) not in set(words):
        t = words[0]
        words = sorted(tuple(a ^ b for a, b in zip(w, t)) for w in words)
    zero = tuple([0] * C.n)
    words.remove(zero)
    offsets = [zero] + words
    base = integer_lattice(C.n, 2, name=f"2Z{C.n}")
    return PeriodicPacking(base, offsets, name=name or f"P({C.name or 'C'})",
                           is_lattice=C.linear)


# -- Leech lattice -----------------------------------------------------------

def leech_from_golay(code: Optional[BinaryCode] = None) -> Lattice:
    """Leech lattice from the Golay code.

    Span of ``{x in P(golay) : sum(x) = 0 mod 4}`` and ``(-3/2, 1/2, ..., 1/2)``.
    That lattice has minimal norm 8 and determinant 2^24, so the Gram is
    halved to give the even unimodular normalization (norm 4, det 1).
    """
    code = code or golay24()
    n = code.n
    gens = [list(map(Fraction, g)) for g in code.generator]
    # 2 D_24 inside 2Z^24
    for r in dn_basis(n):
        gens.append([Fraction(2 * x) for x in r])
    gens.append([Fraction(-3, 2)] + [HALF] * (n - 1))
    L = span_lattice(gens)
    G = [[x * HALF for x in row] for row in L.gram]
    leech = Lattice(G, name="Leech")
    d = determinant(leech)
    if d != 1:
        raise ConstructionError(f"Leech determinant came out {d}, expected 1")
    return leech


LORENTZ_W = tuple(range(25)) + (70,)


def lorentz_inner(x, y) -> Fraction:
    return sum(Fraction(a) * b for a, b in zip(x[:25], y[:25])) - Fraction(x[25]) * y[25]


def in_ii25_1(x) -> bool:
    """Membership in the even unimodular Lorentzian lattice II_{25,1}."""
    xs = [Fraction(v) for v in x]
    if len(xs) != 26:
        return False
    all_int = all(v.denominator == 1 for v in xs)
    all_half = all((v - HALF).denominator == 1 for v in xs)
    if not (all_int or all_half):
        return False
    s = sum(xs[:25]) - xs[25]
    return s.denominator == 1 and s.numerator % 2 == 0


def ii25_1_basis():
    """A basis of II_{25,1}, which equals D_26^+ in these coordinates."""
    gens = [[Fraction(x) for x in r] for r in dn_basis(26)]
    gens.append([HALF] * 26)
    rows = [[int(2 * x) for x in r] for r in gens]
    H = linalg.hnf(rows)
    return [[Fraction(x, 2) for x in r] for r in H]


def leech_from_lorentzian(w: Sequence[int] = LORENTZ_W) -> Lattice:
    """Leech lattice as ``w-perp / w`` inside II_{25,1}, ``w = (0 1 ... 24 | 70)``."""
    w = [Fraction(v) for v in w]
    if not in_ii25_1(w):
        raise ConstructionError("w is not in II_{25,1}")
    if lorentz_inner(w, w) != 0:
        raise ConstructionError("w is not isotropic")
    B = ii25_1_basis()
    f = [lorentz_inner(b, w) for b in B]
    if any(v.denominator != 1 for v in f):
        raise ConstructionError("pairing with w is not integral")
    K = linalg.integer_kernel([[int(v) for v in f]])
    if len(K) != 25:
        raise ConstructionError("w-perp does not have rank 25")
    # coordinates of w in the basis B, then in the kernel basis K
    Binv = linalg.inverse(B)
    c = [sum(w[i] * Binv[i][j] for i in range(26)) for j in range(26)]
    KB = linalg.matmul([[Fraction(x) for x in r] for r in K], B)  # kernel vectors, ambient
    # solve d K = c over Q using 25 independent columns
    d = _solve_rows(K, c)
    if any(v.denominator != 1 for v in d):
        raise ConstructionError("w is not in the kernel lattice")
    N = linalg.unimodular_with_first_column([int(v) for v in d])
    Nt = linalg.transpose(N)
    new = linalg.matmul([[Fraction(x) for x in r] for r in Nt], KB)
    if [v for v in new[0]] != w:
        raise ConstructionError("complement basis does not start with w")
    rest = new[1:]
    G = [[lorentz_inner(a, b) for b in rest] for a in rest]
    try:
        L = Lattice(G, name="Leech")
    except PreconditionError as exc:
        raise ConstructionError("induced form on w-perp/w is not positive definite") from exc
    return L


def _solve_rows(K, c):
    """Rational ``d`` with ``d K = c`` (K has full row rank)."""
    K = [[Fraction(x) for x in r] for r in K]
    m = len(K)
    Kt = linalg.transpose(K)
    # normal equations are exact and nonsingular for full row rank
    KKt = linalg.matmul(K, Kt)
    rhs = [sum(a * b for a, b in zip(row, c)) for row in K]
    d = linalg.solve(KKt, rhs)
    check = [sum(d[i] * K[i][j] for i in range(m)) for j in range(len(c))]
    if check != list(c):
        raise ConstructionError("vector is not in the row space")
    return d


# -- Construction B* ---------------------------------------------------------

def construction_bstar(B: BinaryCode, C: BinaryCode, name=None) -> PeriodicPacking:
    """``{2b + 4x : sum x even} U {1 + 2c + 4y : sum y odd}``.

    Represented as translates of ``4 D_n``: offsets ``2b`` and
    ``1 + 2c + 4 e_0``.  The compatibility condition ``c.(1 + b) = 0`` is
    checked over every pair first.
    """
    if B.n != C.n:
        raise PreconditionError("codes must have the same length")
    bad = bstar_compatibility_violations(B, C)
    if bad:
        b, c = bad[0]
        raise PreconditionError(
            "compatibility c.(1+b) = 0 fails for b={} c={}".format(
                "".join(map(str, b)), "".join(map(str, c))))
    n = B.n
    zero = tuple([0] * n)
    offsets = [zero]
    for b in B.words:
        if b != zero:
            offsets.append(tuple(2 * x for x in b))
    for c in C.words:
        o = [1 + 2 * x for x in c]
        o[0] += 4
        offsets.append(tuple(o))
    base = dn_lattice(n, 4, name=f"4D{n}")
    return PeriodicPacking(base, offsets, name=name or "P*(B,C)")


def bstar_contains(x, B: BinaryCode, C: BinaryCode) -> bool:
    """Direct membership test for the Construction B* point set."""
    x = [int(v) for v in x]
    if all(v % 2 == 0 for v in x):
        b = [(v // 2) % 2 for v in x]
        if not B.contains(b):
            return False
        return (sum((v - 2 * bi) // 4 for v, bi in zip(x, b))) % 2 == 0
    if all(v % 2 == 1 for v in x):
        c = [((v - 1) // 2) % 2 for v in x]
        if not C.contains(c):
            return False
        return (sum((v - 1 - 2 * ci) // 4 for v, ci in zip(x, c))) % 2 == 1
    return False


# -- D_n^+ and the 9-dimensional fluid family -----------------------------

def _in_dn(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v) and sum(v) % 2 == 0


def d_plus(n: int) -> PeriodicPacking:
    """``D_n U (D_n + (1/2)^n)``; a lattice exactly when n is even."""
    if n < 3:
        raise PreconditionError("d_plus needs n >= 3")
    glue = tuple([HALF] * n)
    return PeriodicPacking(dn_lattice(n), [tuple([Fraction(0)] * n), glue], name=f"D{n}+",
                           is_lattice=_in_dn([2 * g for g in glue]))


def d9_theta_plus(theta) -> PeriodicPacking:
    """``D_9 U (D_9 + ((1/2)^8, theta/2))``."""
    theta = Fraction(theta)
    glue = tuple([HALF] * 8 + [theta / 2])
    return PeriodicPacking(dn_lattice(9), [tuple([Fraction(0)] * 9), glue],
                           name=f"D9^({theta})+", is_lattice=_in_dn([2 * g for g in glue]))


# -- lamination --------------------------------------------------------------

def nearest_point(L: Lattice, target_coords, bound, max_nodes=DEFAULT_MAX_NODES):
    """Exact squared distance from a point (lattice coordinates) to ``L`` and a nearest point.

    Only points within ``bound`` are searched; returns ``(None, None)`` if none.
    """
    c = [Fraction(v) for v in target_coords]
    V, norms = L.enumerator.vectors(Scalar.coerce(bound), center=c, max_nodes=max_nodes)
    if len(V) == 0:
        return None, None
    vals = norms.values()
    i = min(range(len(vals)), key=lambda k: (vals[k], tuple(V[k])))
    return vals[i], [int(v) for v in V[i]]


def stack_layer(L: Lattice, hole, target_norm, *, coords: str = "ambient",
                gram_only: bool = False, max_nodes=DEFAULT_MAX_NODES) -> Lattice:
    """Add one layer to ``L`` above the point ``hole``.

    The hole is moved to its nearest-point-relative position ``h`` (so
    ``|h|^2`` is its squared distance to ``L``), and the new basis row is
    ``(h | s)`` with ``s^2 = target_norm - |h|^2``.  With an explicit basis the
    height ``s`` itself must lie in Q(sqrt 2); ``gram_only=True`` only needs
    ``s^2`` and returns a Gram-only lattice.

    ``hole`` is in ambient coordinates (needs ``L.basis``) or, with
    ``coords="lattice"``, in lattice coordinates.
    """
    target = Scalar.coerce(target_norm)
    n = L.dim
    if coords == "ambient":
        if L.basis is None:
            raise PreconditionError("ambient hole coordinates need a lattice basis")
        Bf = [[x.to_fraction() for x in row] for row in L.basis]
        if len(Bf[0]) != n:
            raise PreconditionError("basis must be square for ambient holes")
        Binv = linalg.inverse(Bf)
        c = [sum(Fraction(hole[i]) * Binv[i][j] for i in range(n)) for j in range(n)]
    elif coords == "lattice":
        c = [Fraction(v) for v in hole]
    else:
        raise ValueError("coords must be 'ambient' or 'lattice'")
    h2, x = nearest_point(L, c, target, max_nodes)
    if h2 is None:
        raise PreconditionError("hole is farther than sqrt(target_norm) from the lattice")
    s2 = target - h2
    if s2.sign() <= 0:
        raise PreconditionError("target_norm must exceed the squared hole distance")
    hc = [a - b for a, b in zip(c, x)]  # relative hole, lattice coordinates
    G = L.field_gram
    g = [sum((G[i][j] * hc[j] for j in range(n)), 0 * G[0][0]) for i in range(n)]
    newG = [list(row) + [g[i]] for i, row in enumerate(L.gram)]
    newG.append(list(g) + [target])
    name = f"{L.name}+layer" if L.name else None
    if gram_only:
        return Lattice(newG, name=name)
    if L.basis is None:
        raise PreconditionError("basis output needs an input basis (or use gram_only)")
    s = s2.sqrt()  # raises RepresentationError outside Q(sqrt 2)
    basis = [list(r) + [Scalar(0)] for r in L.basis]
    h_amb = [sum((hc[i] * basis[i][j] for i in range(n)), Scalar(0)) for j in range(n)]
    basis.append(h_amb + [s])
    out = Lattice.from_basis(basis, name=name)
    if out.gram != [[Scalar.coerce(v) for v in r] for r in newG]:
        raise ConstructionError("stacked basis and Gram disagree")
    return out


def hole_search(L: Lattice, starts: int = 8, seed: int = 0, iters: int = 60,
                max_nodes=DEFAULT_MAX_NODES):
    """Heuristic search for a deep hole (not certified).

    Random starts in the fundamental cell, then a pattern search along the
    coordinate axes that accepts moves increasing the distance to the
    lattice.  Returns ``(lattice_coords, squared_distance)`` as floats.
    """
    rng = np.random.default_rng(seed)
    n = L.dim
    mu = min_norm(L, max_nodes)
    enum = L.enumerator

    def dist2(p):
        return float(enum.min_norms_batch(-p[None, :], 4 * mu, max_nodes)[0])

    best_p, best_d = None, -1.0
    for _ in range(starts):
        p = rng.random(n)
        d = dist2(p)
        step = 0.25
        for _ in range(iters):
            improved = False
            for k in range(n):
                for sgn in (1, -1):
                    q = p.copy()
                    q[k] += sgn * step
                    dq = dist2(q)
                    if dq > d + 1e-12:
                        p, d, improved = q, dq, True
            if not improved:
                step /= 2
                if step < 1e-6:
                    break
        if d > best_d:
            best_p, best_d = p, d
    return best_p, best_d


def fig3_ordinate(obj, bound=None, max_nodes=DEFAULT_MAX_NODES) -> float:
    """``log2(center density) + n(24 - n)/96`` for a lattice or periodic packing."""
    if isinstance(obj, PeriodicPacking):
        if bound is None:
            raise PreconditionError("packings need an enumeration bound")
        n = obj.dim
        delta = packing_invariants(obj, bound, max_nodes).center_density
    else:
        n = obj.dim
        delta = center_density(obj)
    return math.log2(delta) + n * (24 - n) / 96
