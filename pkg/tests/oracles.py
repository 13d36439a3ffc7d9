"""Independent brute-force oracles.

These deliberately avoid the enumeration code: they scan integer boxes or
sweep code pairs directly and compare norms in exact arithmetic.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from spherepack.scalar import Scalar


def exact_norm(G, v) -> Scalar:
    n = len(G)
    total = Scalar(0)
    for i in range(n):
        if v[i]:
            for j in range(n):
                if v[j]:
                    total = total + Scalar.coerce(G[i][j]) * (v[i] * v[j])
    return total


def float_gram(G) -> np.ndarray:
    return np.array([[float(Scalar.coerce(x)) for x in r] for r in G])


def cube_radius(G, bound) -> int:
    """Box half-width that provably contains every ``v`` with ``v G v^T <= bound``.

    ``|v_i|^2 <= bound * (G^{-1})_{ii}``; one extra unit covers float rounding.
    """
    Ginv = np.linalg.inv(float_gram(G))
    return math.ceil(math.sqrt(float(bound) * max(np.diag(Ginv)))) + 1


def cube_scan(G, bound):
    """Sorted list of nonzero integer vectors with exact norm at most ``bound``."""
    bound = Scalar.coerce(bound)
    n = len(G)
    r = cube_radius(G, bound)
    Gf = float_gram(G)
    out = []
    for v in itertools.product(range(-r, r + 1), repeat=n):
        if not any(v):
            continue
        va = np.array(v, dtype=float)
        if va @ Gf @ va > float(bound) + 1e-6:
            continue
        if exact_norm(G, v) <= bound:
            out.append(v)
    return sorted(out)


def theta_by_scan(G, cutoff) -> dict:
    """``{norm: count}`` for norms below ``cutoff`` by scanning a box."""
    cutoff = Fraction(cutoff)
    counts = {Fraction(0): 1}
    for v in cube_scan(G, cutoff):
        s = exact_norm(G, v).to_fraction()
        if s < cutoff:
            counts[s] = counts.get(s, 0) + 1
    return dict(sorted(counts.items()))


def construction_a_sweep(words):
    """Min squared distance and max kissing of ``{x : x mod 2 in C}`` by pairwise sweep.

    Two points in cosets ``c`` and ``c'`` are at squared distance at least the
    Hamming distance ``d(c, c')``, attained by ``2^d`` neighbours; within one
    coset the minimum is 4 (the vectors ``+-2 e_i``, ``2n`` of them).
    """
    words = [tuple(w) for w in words]
    n = len(words[0])
    best = 4
    for a, b in itertools.combinations(words, 2):
        best = min(best, sum(x != y for x, y in zip(a, b)))
    kiss = 0
    for a in words:
        k = 2 * n if best == 4 else 0
        for b in words:
            if a != b:
                d = sum(x != y for x, y in zip(a, b))
                if d == best:
                    k += 2 ** d
        kiss = max(kiss, k)
    return best, kiss


def weights_by_sweep(generator) -> list:
    """Weight distribution of the span of ``generator`` over all 2^k messages."""
    G = np.array(generator, dtype=np.int64)
    k, n = G.shape
    dist = [0] * (n + 1)
    for m in itertools.product((0, 1), repeat=k):
        w = int((np.array(m) @ G % 2).sum())
        dist[w] += 1
    return dist
