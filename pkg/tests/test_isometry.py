import numpy as np
import pytest

from spherepack import catalog, linalg
from spherepack.constructions import dn_lattice
from spherepack.errors import ResourceError
from spherepack.isometry import isodual_check, isometry_equivalent, n_modular_check
from spherepack.lattice import Lattice, dual


def _verify(U, L1, L2):
    G = linalg.congruence(U.tolist(), L2.field_gram)
    assert G == [list(r) for r in L1.field_gram]
    assert round(abs(np.linalg.det(U.astype(float)))) == 1


def test_self_is_identity():
    L = catalog.get("E8")
    U = isometry_equivalent(L, L)
    assert (U == np.eye(8, dtype=int)).all()


def test_a3_d3():
    A3, D3 = catalog.get("A3"), dn_lattice(3)
    U = isometry_equivalent(A3, D3)
    assert U is not None
    _verify(U, A3, D3)


def test_determinant_mismatch_fails_fast():
    assert isometry_equivalent(catalog.get("Z2"), catalog.get("A2")) is None


def test_same_det_not_isometric():
    # Z^2 scaled by 2 and the checkerboard lattice D2 scaled to det 4 differ
    L1 = Lattice([[2, 0], [0, 2]])
    L2 = Lattice([[1, 0], [0, 4]])
    assert isometry_equivalent(L1, L2) is None


def test_permuted_gram():
    G = catalog.get("D5").gram
    P = [4, 2, 0, 3, 1]
    L2 = Lattice([[G[P[i]][P[j]] for j in range(5)] for i in range(5)])
    U = isometry_equivalent(catalog.get("D5"), L2)
    _verify(U, catalog.get("D5"), L2)


def test_dual_e8_is_e8():
    E8 = catalog.get("E8")
    U = isometry_equivalent(E8, dual(E8))
    _verify(U, E8, dual(E8))


def test_fcc_bcc_duality():
    fcc, bcc = catalog.get("fcc"), catalog.get("bcc")
    # dual(fcc) has det 1/4; scaled by 4 it has det 16 like bcc
    U = isometry_equivalent(bcc, dual(fcc).scaled(4))
    assert U is not None


@pytest.mark.parametrize("name,N", [("Z3", 1), ("A2", 3), ("D4", 2), ("E8", 1), ("K12", 3)])
def test_modular(name, N):
    L = catalog.get(name)
    U = n_modular_check(L, N)
    assert U is not None
    _verify(U, L, dual(L).scaled(N))
    if L.dim % 2 == 0:
        from spherepack.lattice import determinant
        assert determinant(L) == N ** (L.dim // 2)


def test_not_modular():
    assert n_modular_check(catalog.get("E6"), 3) is None


def test_mcc_isodual():
    mcc = catalog.get("mcc")
    U = isodual_check(mcc)
    assert U is not None
    _verify(U, mcc, dual(mcc))


def test_budget():
    with pytest.raises(ResourceError):
        isometry_equivalent(catalog.get("D5"), catalog.get("D5").transformed(
            [[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
             [0, 0, 0, 0, 1]]), budget=1)
