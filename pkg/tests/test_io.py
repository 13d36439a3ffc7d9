import json

import pytest
from hypothesis import given, strategies as st

from spherepack import catalog, codes
from spherepack.constructions import construction_a
from spherepack.errors import PreconditionError
from spherepack.io import (code_from_text, code_to_text, dumps, lattice_from_dict,
                           lattice_to_dict, read_code, read_lattice, read_lattice_or_packing,
                           read_packing, write_code, write_lattice, write_packing)
from spherepack.lattice import PeriodicPacking


@pytest.mark.parametrize("name", ["A2", "E8", "mcc", "K12", "Lambda10"])
def test_lattice_roundtrip(tmp_path, name):
    L = catalog.get(name)
    p = tmp_path / "l.json"
    write_lattice(L, p, source="test")
    M = read_lattice(p)
    assert M.gram == L.gram and M.name == name
    assert json.loads(p.read_text())["field"] == ("Q(sqrt2)" if name == "mcc" else "Q")


def test_dumps_stable():
    d = lattice_to_dict(catalog.get("A2"))
    assert dumps(d) == dumps(json.loads(dumps(d)))
    assert '["2", "1"]' in dumps(d)


def test_rejects_bad_files():
    with pytest.raises(PreconditionError):
        lattice_from_dict({"dim": 2, "gram": [["1", "0"]]})
    with pytest.raises(PreconditionError):
        lattice_from_dict({"dim": 1, "gram": [["x"]]})
    with pytest.raises(PreconditionError):
        lattice_from_dict({"dim": 1, "field": "Q", "gram": [["1+1*sqrt2"]]})
    with pytest.raises(PreconditionError):
        lattice_from_dict({"gram": [["1"]]})


def test_packing_roundtrip(tmp_path):
    P = construction_a(codes.best_code_10(), name="P10c")
    p = tmp_path / "p.json"
    write_packing(P, p)
    Q = read_packing(p)
    assert isinstance(read_lattice_or_packing(p), PeriodicPacking)
    assert Q.name == "P10c" and not Q.is_lattice
    assert sorted(map(tuple, Q.offsets)) == sorted(map(tuple, P.offsets))
    with pytest.raises(PreconditionError):
        read_lattice(p)


@pytest.mark.parametrize("make", [codes.golay24, codes.qr18, codes.best_code_10,
                                  codes.best_z4_code])
def test_code_roundtrip(tmp_path, make):
    C = make()
    p = tmp_path / "c.txt"
    write_code(C, p)
    D = read_code(p)
    assert sorted(map(tuple, D.words)) == sorted(map(tuple, C.words))
    assert type(D) is type(C)


@given(st.lists(st.lists(st.integers(0, 1), min_size=5, max_size=5), min_size=1, max_size=6,
                unique_by=tuple))
def test_nonlinear_code_text(words):
    C = codes.BinaryCode.from_words(words)
    text = code_to_text(C)
    D = code_from_text(text)
    assert sorted(map(tuple, D.words)) == sorted(map(tuple, C.words))


def test_code_text_errors():
    for bad in ["", "3", "3 1\n11", "3 nonlinear\n102", "3 2\n111"]:
        with pytest.raises(PreconditionError):
            code_from_text(bad)
