"""Lattices, periodic packings and their invariants.

Lattices are Gram-first: every algorithm consumes the Gram matrix, and a
basis is kept only when one was supplied.  Entries live in Q(sqrt 2) (see
:mod:`spherepack.scalar`), which covers every lattice the package builds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .enumeration import DEFAULT_MAX_NODES, Enumerator
from .errors import PreconditionError, RepresentationError, ResourceError
from .qseries import QSeries
from .scalar import Scalar
from .splitting import MAX_GLUE, Splitting, estimate_nodes, split_norm_histogram

DEFAULT_MEMORY_BYTES = 2 * 2**30


def _scalar_matrix(M):
    return tuple(tuple(Scalar.coerce(x) for x in row) for row in M)


class Lattice:
    """A positive definite lattice given by an exact Gram matrix.

    Build with :meth:`from_gram` or :meth:`from_basis`.  Instances are
    immutable; derived data (determinant, reduced form, enumerator) is
    cached on first use.
    """

    def __init__(self, gram, basis=None, name: Optional[str] = None):
        G = _scalar_matrix(gram)
        n = len(G)
        if any(len(row) != n for row in G):
            raise PreconditionError("Gram matrix must be square")
        if not linalg.is_symmetric(G):
            raise PreconditionError("Gram matrix must be symmetric")
        self._gram = G
        self._basis = _scalar_matrix(basis) if basis is not None else None
        self.name = name
        if n and not self._positive_definite():
            raise PreconditionError("Gram matrix is not positive definite")

    @classmethod
    def from_gram(cls, gram, name=None) -> "Lattice":
        return cls(gram, name=name)

    @classmethod
    def from_basis(cls, basis, name=None) -> "Lattice":
        B = _scalar_matrix(basis)
        G = linalg.matmul(B, linalg.transpose(B))
        return cls(G, basis=B, name=name)

    def _positive_definite(self) -> bool:
        # symmetric elimination without pivoting: PD iff every pivot is > 0
        A = [list(r) for r in linalg.to_field_matrix(self._gram)]
        n = self.dim
        for c in range(n):
            piv = A[c][c]
            if not piv > 0:
                return False
            inv = 1 / piv
            for r in range(c + 1, n):
                f = A[r][c]
                if f:
                    f = f * inv
                    for k in range(c + 1, n):
                        if A[c][k]:
                            A[r][k] = A[r][k] - f * A[c][k]
        return True

    @property
    def dim(self) -> int:
        return len(self._gram)

    @property
    def gram(self):
        return [list(row) for row in self._gram]

    @property
    def basis(self):
        return None if self._basis is None else [list(r) for r in self._basis]

    @cached_property
    def is_rational(self) -> bool:
        return all(x.rad == 0 for row in self._gram for x in row)

    @cached_property
    def field_gram(self):
        """Gram with Fraction entries when rational, Scalar entries otherwise."""
        return linalg.to_field_matrix(self._gram)

    @cached_property
    def enumerator(self) -> Enumerator:
        return Enumerator(self.field_gram)

    def scaled(self, factor, name=None) -> "Lattice":
        """Lattice with every norm multiplied by ``factor``."""
        f = Scalar.coerce(factor)
        return Lattice([[f * x for x in row] for row in self._gram], name=name)

    def transformed(self, U, name=None) -> "Lattice":
        """Same lattice in the basis given by the rows of the integer matrix ``U``."""
        return Lattice(linalg.congruence([list(map(int, r)) for r in U], self._gram),
                       name=name or self.name)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self._gram == other._gram

    def __hash__(self):
        return hash(self._gram)

    def __repr__(self):
        return f"Lattice(name={self.name!r}, dim={self.dim})"

    def norm(self, x) -> Scalar:
        """Exact norm ``x G x^T`` of an integer coordinate vector."""
        G = self.field_gram
        n = self.dim
        acc = 0
        for i in range(n):
            if x[i]:
                acc = acc + x[i] * sum((G[i][j] * x[j] for j in range(n) if x[j]), 0)
        return Scalar.coerce(acc)

    def inner(self, x, y) -> Scalar:
        G = self.field_gram
        n = self.dim
        return Scalar.coerce(sum((x[i] * G[i][j] * y[j] for i in range(n) if x[i]
                                  for j in range(n) if y[j]), 0))


def gram(L: Lattice):
    """Exact symmetric Gram matrix (list of lists of Scalar)."""
    return L.gram


def determinant(L: Lattice) -> Scalar:
    return _cached(L, "_det", lambda: Scalar.coerce(linalg.det(L.field_gram)))


def _cached(L, key, fn):
    d = L.__dict__
    if key not in d:
        d[key] = fn()
    return d[key]


def dual(L: Lattice) -> Lattice:
    """Dual lattice at Gram level: Gram ``G^{-1}``."""
    try:
        inv = linalg.inverse(L.field_gram)
    except ZeroDivisionError as exc:
        raise PreconditionError("singular Gram matrix") from exc
    name = f"{L.name}*" if L.name else None
    return Lattice(inv, name=name)


def minimal_vectors(L: Lattice, bound, max_nodes: int = DEFAULT_MAX_NODES) -> np.ndarray:
    """Every nonzero integer ``v`` with ``v G v^T <= bound``, sorted lexicographically.

    Both ``v`` and ``-v`` are listed.  Raises :class:`ResourceError` if the
    enumeration needs more than ``max_nodes`` tree nodes.
    """
    bound = Scalar.coerce(bound)
    if bound.sign() <= 0:
        raise PreconditionError("bound must be positive")
    V, _ = _short_with_norms(L, bound, max_nodes)
    return V


def _short_with_norms(L, bound, max_nodes):
    V, norms = L.enumerator.vectors(bound, max_nodes=max_nodes)
    nonzero = np.any(V != 0, axis=1)
    return V[nonzero], norms.take(nonzero)


def _min_and_count(L: Lattice, max_nodes: int):
    def compute():
        # the shortest basis vector of the reduced form bounds mu from above
        U = L.enumerator._reduced[0]
        candidates = [L.norm(list(map(int, row))) for row in U]
        bound = min(candidates)
        V, norms = _short_with_norms(L, bound, max_nodes)
        mu = norms.min()
        return mu, int(np.count_nonzero(norms.eq(mu)))
    return _cached(L, "_mu_tau", compute)


def min_norm(L: Lattice, max_nodes: int = DEFAULT_MAX_NODES) -> Scalar:
    return _min_and_count(L, max_nodes)[0]


def kissing_number(L: Lattice, max_nodes: int = DEFAULT_MAX_NODES) -> int:
    return _min_and_count(L, max_nodes)[1]


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n, ``pi^(n/2) / Gamma(n/2 + 1)``."""
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def center_density_from(n: int, mu, det) -> float:
    """``rho^n / sqrt(det)`` with ``rho = sqrt(mu)/2``, via logs for stability."""
    mu, det = float(Scalar.coerce(mu)), float(Scalar.coerce(det))
    return math.exp(n * (0.5 * math.log(mu) - math.log(2)) - 0.5 * math.log(det))


def packing_radius(L: Lattice) -> float:
    return math.sqrt(float(min_norm(L))) / 2


def center_density(L: Lattice) -> float:
    return center_density_from(L.dim, min_norm(L), determinant(L))


def density(L: Lattice) -> float:
    return center_density(L) * unit_ball_volume(L.dim)


def theta_series(L: Lattice, max_norm, max_nodes: int = DEFAULT_MAX_NODES) -> QSeries:
    """Theta series ``sum_v q^{v.v}`` exact for all exponents below ``max_norm``."""
    cutoff = Fraction(max_norm)
    if cutoff <= 0:
        raise PreconditionError("max_norm must be positive")
    if not L.is_rational:
        raise RepresentationError("theta series need rational norms (exponents in (1/4)Z)")
    counts = norm_counts(L, cutoff, max_nodes)
    if any(4 % e.denominator for e in counts):
        raise RepresentationError("theta exponents must lie in (1/4)Z")
    return QSeries(counts, cutoff)


SPLIT_MIN_DIM = 12
SPLIT_MIN_NODES = 1e7


def norm_counts(L: Lattice, cutoff, max_nodes=DEFAULT_MAX_NODES) -> dict:
    """``{norm: count}`` for norms below ``cutoff``.

    Large cases go through an orthogonal splitting with glue when the
    node estimate says that is at least twice as cheap as a direct walk.
    """
    enum = L.enumerator
    bound = float(cutoff)
    if L.dim >= SPLIT_MIN_DIM:
        direct = estimate_nodes(enum._reduced[2], bound) / 2
        if direct > SPLIT_MIN_NODES:
            sp = Splitting(enum, L.dim // 2)
            if sp.index <= MAX_GLUE and sp.estimate(bound) < direct / 2:
                return split_norm_histogram(enum, cutoff, max_nodes=max_nodes, splitting=sp)
    return enum.norm_histogram(cutoff, max_nodes=max_nodes)


def coordination_sequence(L: Lattice, k_max: int, max_nodes: int = DEFAULT_MAX_NODES,
                          memory_bytes: int = DEFAULT_MEMORY_BYTES):
    """Numbers of lattice points at each graph distance ``0..k_max`` from 0.

    The graph joins points that differ by a minimal vector.  Visited points are
    kept in a set keyed by integer coordinates.
    """
    if k_max < 0:
        raise PreconditionError("k_max must be nonnegative")
    mu = min_norm(L, max_nodes)
    steps = [tuple(map(int, v)) for v in minimal_vectors(L, mu, max_nodes)
             if L.norm(list(map(int, v))) == mu]
    step_arr = np.array(steps, dtype=np.int64)
    n = L.dim
    # rough per-point cost of a tuple of n small ints inside a set
    per_point = 64 + 8 * n + 28 * n + 16
    origin = tuple([0] * n)
    seen = {origin}
    prev, frontier = set(), {origin}
    counts = [1]
    for _ in range(k_max):
        F = np.array(sorted(frontier), dtype=np.int64)
        nxt = set()
        for s in step_arr:
            for p in map(tuple, (F + s).tolist()):
                if p not in seen:
                    nxt.add(p)
        seen.update(nxt)
        if len(seen) * per_point > memory_bytes:
            raise ResourceError("coordination-sequence memory budget exceeded",
                                budget=memory_bytes, used=len(seen) * per_point)
        # only the two most recent shells can be adjacent to the next one
        seen.difference_update(prev)
        prev, frontier = frontier, nxt
        counts.append(len(nxt))
    return counts


def coordination_numerator(counts, n: int) -> list:
    """Leading coefficients of ``(sum_k S(k) x^k) (1 - x)^n``.

    Only the first ``len(counts)`` coefficients are determined by ``counts``.
    """
    binom = [(-1) ** j * math.comb(n, j) for j in range(n + 1)]
    return [sum(binom[j] * counts[k - j] for j in range(min(k, n) + 1))
            for k in range(len(counts))]


def _rational_gram_or_raise(L: Lattice, what: str):
    if not L.is_rational:
        return None
    return L.field_gram


def is_integral(L: Lattice) -> bool:
    G = _rational_gram_or_raise(L, "integrality")
    if G is None:
        return False
    return all(x.denominator == 1 for row in G for x in row)


def is_even(L: Lattice) -> bool:
    if not is_integral(L):
        return False
    return all(L.field_gram[i][i] % 2 == 0 for i in range(L.dim))


def is_unimodular(L: Lattice) -> bool:
    return is_integral(L) and determinant(L) == 1


# -- periodic (nonlattice) packings ----------------------------------------

@dataclass(frozen=True)
class PackingInvariants:
    min_dist_sq: Fraction
    center_density: float
    max_kissing: int


class PeriodicPacking:
    """Union of translates ``base + offset`` of a full-rank lattice.

    The base carries an explicit square rational basis; offsets are rational
    vectors in the same ambient coordinates, the first one zero.
    """

    def __init__(self, base: Lattice, offsets: Sequence[Sequence], name=None,
                 is_lattice: bool = False):
        if base.basis is None:
            raise PreconditionError("packing base needs an explicit basis")
        m = len(base.basis[0])
        if m != base.dim:
            raise PreconditionError("packing base must have full rank in its ambient space")
        if not base.is_rational or any(x.rad for row in base.basis for x in row):
            raise PreconditionError("packing base must be rational")
        offs = [tuple(Fraction(x) for x in o) for o in offsets]
        if not offs or any(x != 0 for x in offs[0]):
            raise PreconditionError("first offset must be the zero vector")
        if any(len(o) != m for o in offs):
            raise PreconditionError("offset length differs from ambient dimension")
        self.base = base
        self.offsets = offs
        self.name = name
        self.is_lattice = is_lattice
        keys = [self.reduce(o) for o in offs]
        if len(set(keys)) != len(keys):
            raise PreconditionError("offsets are not distinct modulo the base lattice")

    @property
    def dim(self) -> int:
        return self.base.dim

    @cached_property
    def _basis_fr(self):
        return [[x.rat for x in row] for row in self.base.basis]

    @cached_property
    def _basis_inv(self):
        return linalg.inverse(self._basis_fr)

    def coords(self, x) -> list:
        """Lattice coordinates ``c`` with ``x = c B`` (row vectors)."""
        Binv = self._basis_inv
        n = self.dim
        return [sum((Fraction(x[i]) * Binv[i][j] for i in range(n) if x[i]), Fraction(0))
                for j in range(n)]

    def reduce(self, x) -> tuple:
        """Canonical representative key of ``x`` modulo the base lattice."""
        return tuple(c - math.floor(c) for c in self.coords(x))

    def contains(self, x) -> bool:
        k = self.reduce(x)
        return any(k == self.reduce(o) for o in self.offsets)

    @cached_property
    def base_det(self) -> Fraction:
        return determinant(self.base).to_fraction()

    def to_lattice(self) -> Lattice:
        """Lattice spanned by the base and the offsets (requires ``is_lattice``)."""
        if not self.is_lattice:
            raise PreconditionError("packing is not flagged as a lattice")
        rows = [list(r) for r in self._basis_fr] + [list(o) for o in self.offsets[1:]]
        den = linalg.common_denominator([x for r in rows for x in r])
        H = linalg.hnf([[int(x * den) for x in r] for r in rows])
        basis = [[Fraction(x, den) for x in r] for r in H]
        return Lattice.from_basis(basis, name=self.name)


def packing_invariants(P: PeriodicPacking, bound, max_nodes: int = DEFAULT_MAX_NODES
                       ) -> PackingInvariants:
    """Minimum squared distance, center density and largest kissing number.

    Every pair of offsets defines a difference class ``o_j - o_i`` modulo the
    base.  A compiled walk gives each class a float minimum (pruning only);
    the classes that can reach the global minimum are then re-enumerated with
    exact norms, which fixes both the minimum and the contact counts.
    """
    bound = Fraction(bound)
    n = P.dim
    enum = P.base.enumerator
    fr = [P.coords(o) for o in P.offsets]
    D = linalg.common_denominator([x for c in fr for x in c])
    C = np.array([[int(x * D) for x in c] for c in fr], dtype=np.int64)
    k = len(fr)

    class_of: dict = {}
    reps = []
    ids = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        K = np.mod(C - C[i], D)
        for j, row in enumerate(K):
            key = row.tobytes()
            cid = class_of.get(key)
            if cid is None:
                cid = class_of[key] = len(reps)
                reps.append(row)
            ids[i, j] = cid
    R = np.array(reps, dtype=np.int64)
    zero = class_of[np.zeros(n, dtype=np.int64).tobytes()]

    mu_base = min_norm(P.base, max_nodes).to_fraction()
    fmins = enum.min_norms_batch(-R / D, min(bound, mu_base), max_nodes)
    fmins[zero] = float(mu_base)
    m_f = float(fmins.min())
    if m_f > float(bound) * (1 + 2.0**-30):
        raise PreconditionError(f"no pair of points within squared distance {bound}")
    lim = Fraction(m_f * (1 + 2.0**-30))
    exact: dict = {zero: (mu_base, kissing_number(P.base, max_nodes))}
    for cid in np.nonzero(fmins <= float(lim))[0]:
        cid = int(cid)
        if cid == zero:
            continue
        center = [-Fraction(int(v), D) for v in R[cid]]
        V, norms = enum.vectors(lim, center=center, max_nodes=max_nodes)
        vals = [v.to_fraction() for v in norms.values()]
        if vals:
            m = min(vals)
            exact[cid] = (m, vals.count(m))
    best = min(m for m, _ in exact.values())
    contact = np.zeros(len(reps), dtype=np.int64)
    for cid, (m, cnt) in exact.items():
        if m == best:
            contact[cid] = cnt
    max_kiss = int(contact[ids].sum(axis=1).max())
    delta = k * center_density_from(n, best, P.base_det)
    return PackingInvariants(best, delta, max_kiss)
