import json

import numpy as np
import pytest

from char3 import serialize
from char3.composition import split_composition
from char3.jternary import weak_counterexample
from char3.lie import build_kantor, build_LT, lt_delta
from char3.jternary import jordanize
from char3.reference import ReferenceSpec, build_reference
from char3.structurable import smirnov_algebra

from conftest import tensor


def same(a, b):
    assert isinstance(a, type(b))          # tensor products come back as plain structurable algebras
    if hasattr(a, "tensor"):
        assert np.array_equal(a.tensor, b.tensor)
    for attr in ("table", "inv", "parity", "grading", "sl2"):
        x, y = getattr(a, attr, None), getattr(b, attr, None)
        if x is not None or y is not None:
            assert np.array_equal(np.asarray(x), np.asarray(y)), attr
    if hasattr(a, "alg"):
        assert np.array_equal(a.alg.table, b.alg.table)
    if hasattr(a, "L") and hasattr(a.L, "table"):
        assert np.array_equal(a.L.table, b.L.table)


@pytest.mark.parametrize("make", [
    lambda: tensor(8, 1),
    lambda: split_composition(8).alg,
    lambda: smirnov_algebra(split_composition(8)),
    weak_counterexample,
    lambda: build_reference(ReferenceSpec("osp", 3, 2)),
    lambda: build_kantor(tensor(1, 2)).G,
], ids=["structurable", "algebra", "involutive", "triple", "superalgebra", "graded"])
def test_round_trip(make, tmp_path):
    obj = make()
    path = tmp_path / "x.json"
    serialize.save(path, obj)
    back = serialize.load_file(path)
    same(obj, back)
    assert serialize.dumps(back) == serialize.dumps(obj)


def test_derivation_round_trip():
    G = build_LT(jordanize(weak_counterexample()))
    d = serialize.to_dict(G, lt_delta(G))
    inp = serialize.semisimplify_input(json.loads(json.dumps(d)))
    assert np.array_equal(inp.delta, lt_delta(G)) and np.array_equal(inp.L.table, G.L.table)


def test_schema_errors():
    with pytest.raises(serialize.SchemaError):
        serialize.from_dict({"schema": "other"})
    with pytest.raises(serialize.SchemaError):
        serialize.from_dict({"schema": "alg/1", "p": 3})
    with pytest.raises(serialize.SchemaError):
        serialize.from_dict({"schema": "alg/1", "p": 3, "dim": 1, "mul": [[0, 0, 5, 1]]})
    with pytest.raises(serialize.SchemaError):
        serialize.semisimplify_input(serialize.to_dict(weak_counterexample()))


def test_sparse_mul_entries():
    d = serialize.to_dict(split_composition(2).alg)
    assert d["schema"] == "alg/1" and sorted(d["mul"]) == [[0, 0, 0, 1], [1, 1, 1, 1]]
