"""Binary and Z/4 codes used by the packing constructions.

Words are stored explicitly as a sorted tuple of bit tuples; at the sizes
involved here (at most a few thousand words) that is cheaper than being
clever.  Linear codes also keep a generator matrix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import PreconditionError, ResourceError

DEFAULT_SWEEP_BUDGET = 50_000_000

GRAY = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}

# quadratic residues mod 17
QR17_RESIDUES = (1, 2, 4, 8, 9, 13, 15, 16)


def _rref_gf2(rows: np.ndarray) -> np.ndarray:
    """Reduced row echelon form over GF(2); zero rows removed."""
    A = (np.array(rows, dtype=np.uint8) & 1).copy()
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0)
    r = 0
    m, n = A.shape
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        for i in range(m):
            if i != r and A[i, c]:
                A[i] ^= A[r]
        r += 1
        if r == m:
            break
    return A[:r]


def rank_gf2(rows) -> int:
    return len(_rref_gf2(rows))


def nullspace_gf2(rows: np.ndarray, n: int) -> np.ndarray:
    """Basis of ``{x : rows x = 0}`` over GF(2)."""
    R = _rref_gf2(rows) if len(rows) else np.zeros((0, n), dtype=np.uint8)
    pivots = [int(np.nonzero(row)[0][0]) for row in R]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = np.zeros(n, dtype=np.uint8)
        x[f] = 1
        for row, p in zip(R, pivots):
            if row[f]:
                x[p] = 1
        basis.append(x)
    return np.array(basis, dtype=np.uint8).reshape(len(basis), n)


def span_gf2(generator: np.ndarray) -> list:
    G = _rref_gf2(generator)
    k, n = G.shape
    words = []
    for coeffs in itertools.product((0, 1), repeat=k):
        w = np.zeros(n, dtype=np.uint8)
        for c, row in zip(coeffs, G):
            if c:
                w ^= row
        words.append(tuple(int(b) for b in w))
    return sorted(words)


@dataclass(frozen=True)
class BinaryCode:
    """A binary code of length ``n`` given by its full word list."""

    n: int
    words: tuple
    linear: bool = False
    generator: Optional[tuple] = field(default=None, compare=False)
    name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def from_generator(cls, generator, name=None) -> "BinaryCode":
        G = _rref_gf2(generator)
        n = np.array(generator).shape[1]
        words = tuple(span_gf2(G))
        return cls(n, words, True, tuple(tuple(int(b) for b in r) for r in G), name)

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], name=None) -> "BinaryCode":
        ws = sorted({tuple(int(b) & 1 for b in w) for w in words})
        if not ws:
            raise PreconditionError("a code needs at least one word")
        n = len(ws[0])
        if any(len(w) != n for w in ws):
            raise PreconditionError("words have different lengths")
        return cls(n, tuple(ws), False, None, name)

    def __len__(self):
        return len(self.words)

    @property
    def dimension(self) -> int:
        if not self.linear:
            raise PreconditionError("dimension is defined for linear codes only")
        return len(self.generator)

    def array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.uint8).reshape(len(self.words), self.n)

    def contains(self, word) -> bool:
        return tuple(int(b) & 1 for b in word) in self._wordset

    @property
    def _wordset(self):
        s = self.__dict__.get("_ws")
        if s is None:
            s = frozenset(self.words)
            object.__setattr__(self, "_ws", s)
        return s

    def as_linear(self) -> "BinaryCode":
        """The same word set flagged linear, if it is closed under addition."""
        if self.linear:
            return self
        A = self.array()
        G = _rref_gf2(A)
        words = tuple(span_gf2(G))
        if words != self.words:
            raise PreconditionError("word set is not a linear code")
        return BinaryCode(self.n, words, True, tuple(tuple(int(b) for b in r) for r in G),
                          self.name)


def _packed(A: np.ndarray) -> np.ndarray:
    # bit rows -> python-int friendly uint64 chunks for popcount sweeps
    return np.packbits(A, axis=1)


_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def weight_distribution(C: BinaryCode, budget: int = DEFAULT_SWEEP_BUDGET) -> list:
    """``[A_0, ..., A_n]``: number of words of each Hamming weight."""
    if len(C) > budget:
        raise ResourceError("weight sweep budget exceeded", budget=budget, used=len(C))
    w = C.array().sum(axis=1)
    return [int(x) for x in np.bincount(w, minlength=C.n + 1)]


def distance_distribution(C: BinaryCode, budget: int = DEFAULT_SWEEP_BUDGET) -> list:
    """Counts of unordered pairs of distinct words at each Hamming distance."""
    m = len(C)
    if m * (m - 1) // 2 > budget:
        raise ResourceError("pairwise sweep budget exceeded", budget=budget,
                            used=m * (m - 1) // 2)
    P = _packed(C.array())
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for i in range(m - 1):
        d = _POP8[P[i + 1:] ^ P[i]].sum(axis=1)
        counts += np.bincount(d, minlength=C.n + 1)
    return [int(x) for x in counts]


def min_distance(C: BinaryCode, budget: int = DEFAULT_SWEEP_BUDGET) -> int:
    """Minimum Hamming distance; linear codes use the minimum nonzero weight."""
    if len(C) < 2:
        raise PreconditionError("minimum distance needs at least two words")
    dist = weight_distribution(C, budget) if C.linear else distance_distribution(C, budget)
    return next(d for d in range(1, C.n + 1) if dist[d])


def dual_code(C: BinaryCode) -> BinaryCode:
    if not C.linear:
        raise PreconditionError("dual_code needs a linear code")
    H = nullspace_gf2(np.array(C.generator, dtype=np.uint8), C.n)
    name = f"{C.name}-dual" if C.name else None
    return BinaryCode.from_generator(H, name=name)


def cyclic_generator(n: int, poly: Sequence[int]) -> np.ndarray:
    """Generator matrix of the cyclic code of length ``n`` generated by ``poly``.

    ``poly`` lists coefficients from the constant term upward.
    """
    deg = len(poly) - 1
    k = n - deg
    G = np.zeros((k, n), dtype=np.uint8)
    for i in range(k):
        G[i, i:i + deg + 1] = poly
    return G


def extend_by_parity(G: np.ndarray) -> np.ndarray:
    return np.hstack([G, (G.sum(axis=1) % 2)[:, None]]).astype(np.uint8)


# Golay generator polynomial 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11 (a factor of x^23 - 1)
GOLAY23_POLY = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)


def golay24() -> BinaryCode:
    """Extended binary Golay code [24, 12, 8]: cyclic Golay code plus parity."""
    G = extend_by_parity(cyclic_generator(23, GOLAY23_POLY))
    return BinaryCode.from_generator(G, name="golay24")


# GF(256) with modulus x^8 + x^4 + x^3 + x^2 + 1
def _gf256_tables():
    exp = [0] * 512
    log = [0] * 256
    x = 1
    for i in range(255):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & 0x100:
            x ^= 0x11D
    for i in range(255, 512):
        exp[i] = exp[i - 255]
    return exp, log


def _gf_mul(a, b, exp, log):
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


def qr_generator_poly(p: int, residues: Sequence[int]) -> list:
    """Binary generator polynomial ``prod_{r} (x - beta^r)`` with beta a primitive p-th root.

    Only ``p = 17`` (multiplicative order of 2 equal to 8) is supported, so
    the roots live in GF(256).
    """
    if p != 17:
        raise PreconditionError("only p = 17 is supported")
    exp, log = _gf256_tables()
    beta = exp[255 // p]
    poly = [1]  # coefficients in GF(256), constant term first
    for r in residues:
        root = 1
        for _ in range(r):
            root = _gf_mul(root, beta, exp, log)
        new = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] ^= c
            new[i] ^= _gf_mul(c, root, exp, log)
        poly = new
    if any(c not in (0, 1) for c in poly):
        raise AssertionError("QR generator polynomial is not binary")
    return poly


def qr18() -> BinaryCode:
    """Extended quadratic residue code [18, 9, 6].

    Cyclic length-17 code whose generator polynomial has the roots
    ``beta^r`` for the residues in :data:`QR17_RESIDUES`, extended by an
    overall parity bit in the last coordinate.
    """
    g = qr_generator_poly(17, QR17_RESIDUES)
    G = extend_by_parity(cyclic_generator(17, g))
    return BinaryCode.from_generator(G, name="qr18")


def repetition_code(n: int) -> BinaryCode:
    return BinaryCode.from_generator(np.ones((1, n), dtype=np.uint8), name=f"rep{n}")


# -- Z/4 ---------------------------------------------------------------------

@dataclass(frozen=True)
class Z4Code:
    n: int
    words: tuple
    name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def from_words(cls, words, name=None) -> "Z4Code":
        ws = sorted({tuple(int(a) % 4 for a in w) for w in words})
        return cls(len(ws[0]), tuple(ws), name)

    def __len__(self):
        return len(self.words)

    def is_cyclic(self) -> bool:
        s = set(self.words)
        return all(w[-1:] + w[:-1] in s for w in self.words)


def gray_map(word: Sequence[int]) -> tuple:
    """Z/4 word to a bit word of twice the length: 0->00, 1->01, 2->11, 3->10."""
    out = []
    for a in word:
        out.extend(GRAY[int(a) % 4])
    return tuple(out)


def lee_weight(a: int) -> int:
    a %= 4
    return min(a, 4 - a)


def lee_distance(u, v) -> int:
    return sum(lee_weight(a - b) for a, b in zip(u, v))


def best_seed_words() -> list:
    """The eight words ``abcde`` with ``b, c, d = +-1``, ``a = c - d``, ``e = b + c``."""
    seeds = []
    for b, c, d in itertools.product((1, 3), repeat=3):
        seeds.append(((c - d) % 4, b, c, d, (b + c) % 4))
    return seeds


def best_z4_code() -> Z4Code:
    words = []
    for w in best_seed_words():
        for s in range(5):
            words.append(w[s:] + w[:s])
    return Z4Code.from_words(words, name="best-z4")


def best_code_10() -> BinaryCode:
    """The nonlinear (10, 40, 4) code: Gray image of the cyclic Z/4 seed set."""
    return BinaryCode.from_words((gray_map(w) for w in best_z4_code().words), name="best10")


def bstar_compatibility_violations(B: BinaryCode, C: BinaryCode, limit: int = 1):
    """Pairs ``(b, c)`` with ``c . (1 + b) = 1`` (mod 2), up to ``limit`` of them."""
    if B.n != C.n:
        raise PreconditionError("codes have different lengths")
    PB = np.packbits(1 - B.array(), axis=1)  # 1 + b
    PC = np.packbits(C.array(), axis=1)
    bad = []
    for j, pc in enumerate(PC):
        par = _POP8[PB & pc].sum(axis=1) & 1
        for i in np.nonzero(par)[0]:
            bad.append((B.words[int(i)], C.words[j]))
            if len(bad) >= limit:
                return bad
    return bad
