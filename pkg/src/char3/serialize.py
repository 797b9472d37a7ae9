"""JSON form of the objects built here (schema "alg/1").

Structure constants are stored sparsely: "mul" holds [i, j, k, c] for
e_i e_j = ... + c e_k, "triple" holds [i, j, k, l, c].  Matrices (involution,
derivation) are lists of rows; for the involution, column j is the image of e_j.
"""
from __future__ import annotations

import json

import numpy as np

from . import field as ff
from .algebra import Algebra
from .jternary import TripleSystem
from .lie import GradedLieAlgebra
from .semisimplify import SemisimplifyInput
from .structurable import InvolutiveAlgebra, StructurableAlgebra
from .superalgebra import LieSuperalgebra

SCHEMA = "alg/1"


class SchemaError(ValueError):
    pass


def _sparse(t: np.ndarray) -> list:
    idx = np.argwhere(t)
    return [[*map(int, ix), int(t[tuple(ix)])] for ix in idx]


def _dense(entries, shape, p) -> np.ndarray:
    t = np.zeros(shape, dtype=np.int64)
    for row in entries:
        *ix, c = row
        if len(ix) != len(shape) or any(not 0 <= i < n for i, n in zip(ix, shape)):
            raise SchemaError(f"bad entry {row}")
        t[tuple(ix)] += c
    return np.mod(t, p)


def _matrix(rows) -> list:
    return [list(map(int, r)) for r in np.asarray(rows)]


def to_dict(obj, derivation=None) -> dict:
    """Encode an Algebra, InvolutiveAlgebra, TripleSystem, LieSuperalgebra or GradedLieAlgebra."""
    if isinstance(obj, GradedLieAlgebra):
        out = to_dict(obj.L)
        out["kind"] = "graded"
        if obj.label:
            out["label"] = obj.label
        if obj.grading is not None:
            out["grading"] = [int(g) for g in obj.grading]
        if obj.sl2 is not None:
            out["sl2"] = _matrix(obj.sl2)
    elif isinstance(obj, LieSuperalgebra):
        out = {"schema": SCHEMA, "kind": "superalgebra", "p": obj.p, "dim": obj.dim,
               "basis": list(obj.names), "mul": _sparse(obj.table), "parity": [int(x) for x in obj.parity]}
    elif isinstance(obj, InvolutiveAlgebra):
        out = to_dict(obj.alg)
        out["kind"] = "structurable" if isinstance(obj, StructurableAlgebra) else "involutive"
        out["inv"] = _matrix(obj.inv)
    elif isinstance(obj, Algebra):
        out = {"schema": SCHEMA, "kind": "algebra", "p": obj.p, "dim": obj.dim,
               "basis": list(obj.names), "mul": _sparse(obj.table)}
    elif isinstance(obj, TripleSystem):
        out = {"schema": SCHEMA, "kind": "triple", "p": obj.p, "dim": obj.dim,
               "basis": list(obj.names), "triple": _sparse(obj.tensor)}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    if derivation is not None:
        out["derivation"] = _matrix(derivation)
    return out


def from_dict(d: dict):
    """Decode into the object named by "kind"; see ``semisimplify_input`` for "derivation"."""
    if d.get("schema") != SCHEMA:
        raise SchemaError(f"expected schema {SCHEMA!r}, got {d.get('schema')!r}")
    try:
        p, n = int(d["p"]), int(d["dim"])
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"missing or bad field: {e}") from None
    ff.check_modulus(p)
    names = tuple(d.get("basis") or ())
    kind = d.get("kind") or ("triple" if "triple" in d else "superalgebra" if "parity" in d else "algebra")
    if kind == "triple":
        return TripleSystem(p, _dense(d.get("triple", []), (n,) * 4, p), names)
    table = _dense(d.get("mul", []), (n,) * 3, p)
    if kind == "superalgebra":
        return LieSuperalgebra(p, table, np.asarray(d["parity"], dtype=np.int64), names)
    alg = Algebra(p, table, names)
    if kind in ("involutive", "structurable"):
        cls = StructurableAlgebra if kind == "structurable" else InvolutiveAlgebra
        return cls(alg, np.asarray(d["inv"], dtype=np.int64))
    if kind == "graded":
        return GradedLieAlgebra(alg, d.get("grading"), d.get("sl2"), d.get("label", ""))
    if kind != "algebra":
        raise SchemaError(f"unknown kind {kind!r}")
    return alg


def semisimplify_input(d: dict) -> SemisimplifyInput:
    """An algebra record carrying a "derivation" matrix."""
    if "derivation" not in d:
        raise SchemaError("no derivation in file")
    obj = from_dict(d)
    L = obj.L if isinstance(obj, GradedLieAlgebra) else obj
    if not isinstance(L, Algebra):
        raise SchemaError("a derivation needs an algebra record")
    return SemisimplifyInput(L, np.asarray(d["derivation"], dtype=np.int64))


def dumps(obj, derivation=None) -> str:
    return json.dumps(to_dict(obj, derivation), ensure_ascii=False, separators=(",", ":"))


def loads(text: str):
    return from_dict(json.loads(text))


def save(path, obj, derivation=None) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(obj, derivation))
        f.write("\n")


def load_file(path):
    with open(path, encoding="utf-8") as f:
        return loads(f.read())
