from fractions import Fraction

import pytest

from spherepack.qseries import QSeries


def test_cutoff_and_lookup():
    s = QSeries({0: 1, 1: 2, 4: 2, 9: 2}, 5)
    assert s.exponents() == [0, 1, 4]
    assert s[2] == 0
    with pytest.raises(KeyError):
        s[5]


def test_product_truncates():
    theta_z = QSeries({0: 1, 1: 2, 4: 2}, 5)
    sq = theta_z * theta_z
    # sums of two squares: r2(0..4) = 1, 4, 4, 0, 4
    assert [sq[k] for k in range(5)] == [1, 4, 4, 0, 4]
    assert sq.cutoff == 5


def test_power_matches_repeated_product():
    t = QSeries({0: 1, 1: 2, 4: 2}, 6)
    assert t ** 3 == t * t * t


def test_quarter_exponents():
    s = QSeries({Fraction(1, 4): 2, Fraction(9, 4): 2}, 3)
    assert (s * s)[Fraction(1, 2)] == 4
    with pytest.raises(ValueError):
        QSeries({Fraction(1, 3): 1}, 1)


def test_agrees_with_uses_common_cutoff():
    a = QSeries({0: 1, 2: 240}, 3)
    b = QSeries({0: 1, 2: 240, 4: 2160}, 5)
    assert a.agrees_with(b)
    assert not a.agrees_with(QSeries({0: 1}, 5))


def test_evaluate():
    s = QSeries({0: 1}, 2)
    assert s.evaluate(1j) == 1
