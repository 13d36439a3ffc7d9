import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import weights_by_sweep
from spherepack import codes
from spherepack.errors import PreconditionError, ResourceError


@pytest.fixture(scope="module")
def golay():
    return codes.golay24()


def test_golay_parameters(golay):
    assert golay.linear and len(golay) == 4096 and golay.dimension == 12
    assert codes.min_distance(golay) == 8


def test_golay_weights_against_message_sweep(golay):
    dist = codes.weight_distribution(golay)
    assert dist == weights_by_sweep(golay.generator)
    assert dist[0] == 1 and dist[8] == 759 and dist[12] == 2576
    assert all(a == 0 for w, a in enumerate(dist) if w % 4)
    assert dist == dist[::-1]


def test_golay_self_dual(golay):
    G = np.array(golay.generator)
    assert not (G @ G.T % 2).any()
    assert codes.dual_code(golay) == golay


def test_best_code(tmp_path):
    C = codes.best_code_10()
    assert len(C) == 40 and not C.linear
    assert codes.min_distance(C) == 4
    dist = codes.distance_distribution(C)
    assert dist[1] == dist[2] == dist[3] == 0
    assert sum(dist) == 40 * 39 // 2


def test_best_seed_words():
    seeds = codes.best_seed_words()
    assert len(seeds) == 8
    for a, b, c, d, e in seeds:
        assert b in (1, 3) and c in (1, 3) and d in (1, 3)
        assert a == (c - d) % 4 and e == (b + c) % 4
    assert (0, 3, 3, 3, 2) in seeds
    assert codes.best_z4_code().is_cyclic()


def test_gray_map_table():
    assert codes.gray_map((0, 1, 2, 3)) == (0, 0, 0, 1, 1, 1, 1, 0)
    assert codes.gray_map((0,) * 5) == (0,) * 10
    assert codes.gray_map((0, 3, 3, 3, 2)) == (0, 0, 1, 0, 1, 0, 1, 0, 1, 1)


def test_gray_map_is_an_isometry():
    for u, v in itertools.product(itertools.product(range(4), repeat=2), repeat=2):
        gu, gv = codes.gray_map(u), codes.gray_map(v)
        assert sum(a != b for a, b in zip(gu, gv)) == codes.lee_distance(u, v)
    images = {codes.gray_map(w) for w in itertools.product(range(4), repeat=3)}
    assert len(images) == 64


def test_qr18():
    Q = codes.qr18()
    assert Q.n == 18 and Q.dimension == 9
    D = codes.dual_code(Q)
    assert D.dimension == 9
    assert codes.bstar_compatibility_violations(Q, D) == []
    assert codes.min_distance(Q) == 6


def test_compatibility_violation_is_found():
    Q = codes.qr18()
    assert len(codes.bstar_compatibility_violations(Q, Q)) == 1


def test_repetition_code():
    R = codes.repetition_code(2)
    assert codes.min_distance(R) == 2
    assert codes.weight_distribution(R) == [1, 0, 1]


@st.composite
def generators(draw):
    k = draw(st.integers(1, 4))
    n = draw(st.integers(k, 8))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n),
                         min_size=k, max_size=k))
    return rows


@given(generators())
def test_double_dual(rows):
    if not any(any(r) for r in rows):
        return
    C = codes.BinaryCode.from_generator(rows)
    assert codes.dual_code(codes.dual_code(C)).words == C.words
    assert len(C) == 2 ** codes.rank_gf2(rows)


def test_dual_needs_linear():
    with pytest.raises(PreconditionError):
        codes.dual_code(codes.best_code_10())


def test_sweep_budget():
    with pytest.raises(ResourceError):
        codes.distance_distribution(codes.best_code_10(), budget=10)
