from functools import lru_cache

import numpy as np
import pytest

from char3 import field as ff
from char3.field import Subspace
from char3.jternary import from_structurable, weak_counterexample
from char3.reference import ReferenceSpec, build_reference, first_kind_system, second_kind_system
from char3.semisimplify import direct_from_jternary
from char3.structurable import choose_invertible_skew
from char3.superalgebra import (AxiomError, LieSuperalgebra, center, check_weak, cube_additivity_report,
                                cube_ideal, cube_map, derived, direct_sum, fingerprint, is_lie, odd_odd,
                                quotient)

from conftest import tensor

P = 3


def abelian(even, odd):
    n = even + odd
    return LieSuperalgebra(P, np.zeros((n, n, n), dtype=np.int64), np.array([0] * even + [1] * odd))


@lru_cache(maxsize=None)
def constructed(name):
    if name == "weak":
        return direct_from_jternary(weak_counterexample())
    if name == "weak/cube":
        L = constructed("weak")
        return quotient(L, cube_ideal(L))
    if name.startswith("first"):
        return direct_from_jternary(first_kind_system(*map(int, name[5:].split(",")))[3])
    if name.startswith("second"):
        return direct_from_jternary(second_kind_system(*map(int, name[6:].split(",")))[3])
    if name.startswith("tensor"):
        d1, d2 = map(int, name[6:].split(","))
        A = tensor(d1, d2)
        return direct_from_jternary(from_structurable(A, choose_invertible_skew(A)))
    kind, rest = name.split("(")
    m, n = map(int, rest.rstrip(")").split("|"))
    return build_reference(ReferenceSpec(kind, m, n))


ALL = ["weak", "weak/cube", "first1,2", "first3,2", "first2,4", "second2,1", "second2,2", "second4,1",
       "tensor1,2", "tensor2,2", "tensor1,4", "tensor2,4", "tensor4,4", "tensor8,1", "tensor8,2",
       "gl(1|1)", "sl(2|1)", "psl(1|1)", "psl(2|2)", "psl(4|1)", "osp(1|2)", "osp(2|2)", "osp(3|2)",
       "osp(4|4)"]


@pytest.mark.parametrize("name", ALL)
def test_cube_is_additive(name):
    L = constructed(name)
    assert check_weak(L).passed
    rep = cube_additivity_report(L, pairs=10 ** 4)
    assert rep.passed and rep.checked >= 10 ** 4


@pytest.mark.parametrize("name", [n for n in ALL if n != "weak"])
def test_constructed_are_lie(name):
    assert is_lie(constructed(name))


def test_weak_counterexample_cube():
    L = constructed("weak")
    assert L.superdim == (1, 2)
    M = cube_map(L)
    assert M.tolist() == [[0, 0], [P - 1, 0]]       # x -> -y, y -> 0
    assert not is_lie(L) and cube_ideal(L).dim == 1
    Q = constructed("weak/cube")
    assert Q.superdim == (1, 1) and is_lie(Q)


def test_abelian_fingerprint():
    L = abelian(0, 2)
    fp = fingerprint(L)
    assert fp.center == (0, 2) and fp.derived == (0, 0) and is_lie(L)
    assert quotient(L, Subspace.zero(P, 2)).table.shape == (2, 2, 2)


def test_sl_nn_mod_center_is_psl():
    sl22 = build_reference(ReferenceSpec("sl", 2, 2))
    Z = center(sl22)
    assert sl22.superdim == (7, 8) and Z.dim == 1
    Q = quotient(sl22, Z)
    assert fingerprint(Q).structural() == fingerprint(build_reference(ReferenceSpec("psl", 2, 2))).structural()


def test_quotient_rejects_non_ideal():
    L = build_reference(ReferenceSpec("osp", 1, 2))
    with pytest.raises(AxiomError):
        quotient(L, Subspace.span(ff.identity(L.dim)[:1], P))


def test_direct_sum_and_odd_odd():
    a = build_reference(ReferenceSpec("psl", 1, 1))
    s = direct_sum(a, a)
    assert s.superdim == (0, 4)
    assert odd_odd(s).dim == 0 and derived(s).dim == 0


def test_broken_jacobi_refuses_cube():
    t = np.zeros((3, 3, 3), dtype=np.int64)
    t[1, 1, 0] = 1            # [x, x] = e
    t[0, 1, 2] = 1            # [e, x] = y
    t[1, 0, 2] = -1
    t[0, 2, 1] = 1            # [e, y] = x breaks super-Jacobi
    t[2, 0, 1] = -1
    L = LieSuperalgebra(P, t, np.array([0, 1, 1]))
    assert not check_weak(L).passed
    with pytest.raises(AxiomError):
        cube_map(L)
