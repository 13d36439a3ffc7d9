import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import construction_a_sweep
from spherepack import catalog, codes
from spherepack.constructions import (LORENTZ_W, bstar_contains, construction_a,
                                      construction_bstar, d9_theta_plus, d_plus, dn_lattice,
                                      fig3_ordinate, hole_search, in_ii25_1, integer_lattice,
                                      leech_from_golay, leech_from_lorentzian, lorentz_inner,
                                      nearest_point, stack_layer)
from spherepack.errors import PreconditionError, RepresentationError
from spherepack.isometry import isometry_equivalent
from spherepack.lattice import (determinant, is_even, is_unimodular, kissing_number,
                                min_norm, minimal_vectors, packing_invariants, theta_series)


# -- Construction A -------------------------------------------------------------

def test_zero_code_gives_scaled_cubic():
    P = construction_a(codes.BinaryCode.from_words([[0, 0, 0]]))
    inv = packing_invariants(P, 4)
    assert inv.min_dist_sq == 4
    assert inv.center_density == pytest.approx(2.0 ** -3, rel=1e-12)


def test_p10c_matches_pairwise_sweep():
    C = codes.best_code_10()
    P = construction_a(C)
    inv = packing_invariants(P, 4)
    d, kiss = construction_a_sweep(C.words)
    assert inv.min_dist_sq == d == 4
    assert inv.max_kissing == kiss
    # 40 points per cell of 2Z^10, radius 1
    assert Fraction(40, 2 ** 10) == Fraction(5, 128)
    assert inv.center_density == pytest.approx(5 / 128, rel=1e-12)


@st.composite
def small_codes(draw):
    n = draw(st.integers(2, 6))
    words = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                          min_size=2, max_size=8, unique_by=tuple))
    return codes.BinaryCode.from_words(words)


@settings(max_examples=25)
@given(small_codes())
def test_construction_a_min_distance(C):
    P = construction_a(C)
    inv = packing_invariants(P, 4)
    d, kiss = construction_a_sweep(C.words)
    assert inv.min_dist_sq == min(4, codes.min_distance(C)) == d
    assert inv.max_kissing == kiss


def test_golay_construction_a_is_a_lattice():
    L = construction_a(codes.golay24()).to_lattice()
    assert determinant(L) == 2 ** 24
    assert min_norm(L) == 4


# -- Leech -------------------------------------------------------------------------

@pytest.fixture(scope="module")
def leech():
    return leech_from_golay()


def test_leech_from_golay(leech):
    assert determinant(leech) == 1
    assert is_even(leech) and is_unimodular(leech)
    assert len(minimal_vectors(leech, 2)) == 0
    assert min_norm(leech) == 4
    assert kissing_number(leech) == 196560


def test_lorentzian_vector():
    assert lorentz_inner(LORENTZ_W, LORENTZ_W) == 0
    assert sum(k * k for k in range(25)) == 70 ** 2
    assert in_ii25_1(LORENTZ_W)
    assert not in_ii25_1([1] + [0] * 25)


def test_leech_from_lorentzian(leech):
    L = leech_from_lorentzian()
    assert L.dim == 24
    assert determinant(L) == 1
    assert is_even(L)
    assert len(minimal_vectors(L, 2)) == 0
    assert theta_series(L, 5).agrees_with(theta_series(leech, 5))
    U = isometry_equivalent(leech, L)
    assert U is not None


# -- Construction B* -------------------------------------------------------------

def test_bstar_small():
    Z = codes.BinaryCode.from_generator([[0, 0, 0, 0]])
    P = construction_bstar(Z, Z)
    inv = packing_invariants(P, 32)
    # 4x (sum even) has norm >= 32; 1 + 4y has norm >= 4 * ... ; oracle by predicate
    best = min(sum(v * v for v in x)
               for x in _box(4, 5) if any(x) and bstar_contains(x, Z, Z))
    assert inv.min_dist_sq <= best


def _box(n, r):
    import itertools
    return itertools.product(range(-r, r + 1), repeat=n)


def test_bstar_offsets_satisfy_predicate():
    Q = codes.qr18()
    D = codes.dual_code(Q)
    P = construction_bstar(Q, D)
    assert len(P.offsets) == 512 + 512
    for o in P.offsets:
        assert bstar_contains([int(v) for v in o], Q, D)


def test_bstar_incompatible_pair_named():
    Q = codes.qr18()
    with pytest.raises(PreconditionError, match="b=.* c="):
        construction_bstar(Q, Q)


def test_bstar_predicate_rejects_mixed_parity():
    Q = codes.qr18()
    assert not bstar_contains([1] + [0] * 17, Q, codes.dual_code(Q))


# -- D9 family ----------------------------------------------------------------------

def test_d_plus_flags():
    assert d_plus(8).is_lattice and not d_plus(9).is_lattice
    E8 = d_plus(8).to_lattice()
    assert determinant(E8) == 1 and kissing_number(E8) == 240


THETAS = [Fraction(k, 10) for k in range(10)]


def test_d9_family_density_constant():
    deltas = set()
    for t in THETAS:
        inv = packing_invariants(d9_theta_plus(t), 2)
        assert inv.min_dist_sq == 2
        deltas.add(inv.center_density)
    assert len(deltas) == 1
    assert deltas.pop() == pytest.approx(2 ** -4.5, rel=1e-12)


def test_d9_zero_is_lambda9():
    L = d9_theta_plus(0).to_lattice()
    assert isometry_equivalent(L.scaled(2), catalog.get("Lambda9")) is not None


# -- stacking --------------------------------------------------------------------

def test_stack_d3_to_d4():
    L = stack_layer(dn_lattice(3), [1, 0, 0], 2)
    assert L.dim == 4
    assert isometry_equivalent(L, catalog.get("D4")) is not None
    # the input lattice is the cross-section spanned by the first rows
    assert [r[:3] for r in L.gram[:3]] == dn_lattice(3).gram
    assert all(row[3] == 0 for row in L.basis[:3])
    assert L.norm([0, 0, 0, 1]) == 2


def test_stack_height_outside_field():
    with pytest.raises(RepresentationError):
        stack_layer(integer_lattice(1), [Fraction(1, 2)], 1)
    L = stack_layer(integer_lattice(1), [Fraction(1, 2)], 1, gram_only=True)
    assert L.gram == [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]


def test_stack_hole_too_far():
    with pytest.raises(PreconditionError):
        stack_layer(integer_lattice(2), [Fraction(1, 2), Fraction(1, 2)], Fraction(1, 4))


def test_lambda10_from_stacking():
    L = catalog.get("Lambda10")
    assert determinant(L) == 768
    assert kissing_number(L) == 336


def test_nearest_point():
    d, x = nearest_point(integer_lattice(2), [Fraction(1, 3), Fraction(2, 3)], 1)
    assert d == Fraction(2, 9) and x == [0, 1]


def test_hole_search_finds_the_cubic_hole():
    c, d = hole_search(integer_lattice(2), starts=4, seed=1)
    assert d == pytest.approx(0.5, abs=1e-6)


# -- figure ordinate -------------------------------------------------------------

def test_fig3():
    assert fig3_ordinate(catalog.get("Leech")) == pytest.approx(0.0, abs=1e-12)
    assert fig3_ordinate(catalog.get("Lambda1")) == pytest.approx(-1 + 23 / 96, abs=1e-12)
    P = construction_a(codes.best_code_10())
    assert fig3_ordinate(P, 4) == pytest.approx(math.log2(5 / 128) + 140 / 96, abs=1e-12)
