import random
from fractions import Fraction

import pytest

from spherepack import catalog
from spherepack.constructions import integer_lattice
from spherepack.errors import PrecisionError, PreconditionError, ThetaSystemError
from spherepack.qseries import QSeries
from spherepack.lattice import theta_series
from spherepack.shadow import (characteristic_vector, even_sublattice, express_theta_unimodular,
                               extremal_bound, is_extremal, is_parity_vector, legacy_bound,
                               nonexistence_certificate, reconstruct, shadow,
                               shadow_theta_from_ring, shadow_transform_check, theta_e8,
                               theta_shadow_z, theta_z)

F = Fraction


def test_reference_series():
    assert list(theta_z(5).items()) == [(0, 1), (1, 2), (4, 2)]
    assert list(theta_shadow_z(7).items()) == [(F(1, 4), 2), (F(9, 4), 2), (F(25, 4), 2)]
    e8 = theta_e8(7)
    assert [e8[k] for k in (0, 2, 4, 6)] == [1, 240, 2160, 6720]


def test_worked_example_dimension_9():
    prefix = QSeries({0: 1}, 2)
    expr = express_theta_unimodular(prefix, 9)
    assert expr.coeffs == (F(-1, 8), F(9, 8))
    th = reconstruct(expr, 4)
    assert list(th.items())[:3] == [(0, 1), (2, 252), (3, 456)]
    sh = shadow_theta_from_ring(expr, 3)
    assert list(sh.items())[:2] == [(F(1, 4), F(9, 4)), (F(9, 4), F(1913, 4))]
    cert = nonexistence_certificate(9, 2)
    assert cert.verdict == "impossible"
    assert cert.evidence_kind == "shadow"
    assert cert.offending == (F(1, 4), F(9, 4))


@pytest.mark.parametrize("n", range(1, 10))
def test_ring_matches_geometry_for_cubic(n):
    L = integer_lattice(n)
    th = theta_series(L, 4)
    expr = express_theta_unimodular(th, n)
    assert reconstruct(expr, 4).agrees_with(th)
    geometric = shadow(L, 4).series
    assert shadow_theta_from_ring(expr, 4).agrees_with(geometric)


def test_ring_matches_geometry_for_e8():
    E8 = catalog.get("E8")
    th = theta_series(E8, 6)
    expr = express_theta_unimodular(th, 8, even=True)
    assert expr.coeffs == (1,)
    assert shadow(E8, 6).series.agrees_with(th)


def test_shadow_of_cubic_by_scan():
    L = integer_lattice(3)
    sh = shadow(L, 6)
    assert sh.parity_vector == (1, 1, 1)
    assert sh.series[F(3, 4)] == 8
    assert sh.series[F(11, 4)] == 24


def test_inconsistent_prefix():
    with pytest.raises(ThetaSystemError):
        express_theta_unimodular(QSeries({0: 1, 1: 5, 2: 1}, 3), 9)


def test_parity_vector_law():
    rng = random.Random(7)
    for name in ("Z5",):
        L = catalog.get(name)
        u = characteristic_vector(L)
        samples = [[rng.randint(-5, 5) for _ in range(L.dim)] for _ in range(20)]
        assert is_parity_vector(L, u, samples)
        wrong = list(u)
        wrong[0] += 1
        assert not is_parity_vector(L, wrong, samples + [[1, 0, 0, 0, 0]])


def test_parity_vector_random_odd_unimodular():
    import numpy as np
    rng = np.random.default_rng(3)
    base = integer_lattice(6)
    for _ in range(5):
        U = np.eye(6, dtype=np.int64)
        for _ in range(10):
            i, j = rng.choice(6, 2, replace=False)
            U[i] += int(rng.integers(-2, 3)) * U[j]
        L = base.transformed(U.tolist())
        u = characteristic_vector(L)
        samples = rng.integers(-4, 5, size=(20, 6)).tolist()
        assert is_parity_vector(L, u, samples)


def test_even_sublattice():
    E = even_sublattice(catalog.get("Z1"))
    assert E.lattice.gram == [[4]]
    E = even_sublattice(catalog.get("Z2"))
    assert sorted(E.lattice.gram[i][i] for i in range(2)) == [2, 2]
    assert E.lattice.gram[0][1] == 0
    assert even_sublattice(catalog.get("E8")).identity


def test_shadow_needs_unimodular():
    with pytest.raises(PreconditionError):
        shadow(catalog.get("D4"))


@pytest.mark.parametrize("name", ["Z1", "Z9", "E8"])
def test_transform_at_i(name):
    dev = shadow_transform_check(catalog.get(name), [1j], cutoff=12)
    assert dev < 1e-9


def test_transform_reports_truncation():
    with pytest.raises(PrecisionError):
        shadow_transform_check(catalog.get("Z9"), [2j], cutoff=12)


def test_bounds():
    for n in range(1, 49):
        assert legacy_bound(n) == n // 8 + 1
        assert extremal_bound(n, "even") == 2 * (n // 24) + 2
        if n != 23:
            assert extremal_bound(n, "odd") == extremal_bound(n, "even")
    assert extremal_bound(23, "odd") == 3
    assert extremal_bound(24, "even") == 4


def test_certificates():
    assert nonexistence_certificate(8, 1).verdict == "inconclusive"
    c = nonexistence_certificate(24, 3)
    assert c.verdict == "inconclusive" and c.free_parameters == 1
    assert nonexistence_certificate(23, 4).verdict == "impossible"


def test_extremal():
    assert is_extremal(catalog.get("Leech"))
    assert is_extremal(catalog.get("E8"))
    assert not is_extremal(catalog.get("Z9"))
