import numpy as np
import pytest

from char3 import field as ff
from char3.algebra import Algebra
from char3.jternary import TripleSystem, jordanize, weak_counterexample
from char3.lie import build_LT, lt_delta
from char3.reference import first_kind_system, second_kind_system
from char3.semisimplify import (SemisimplifyInput, compare_recipe, direct_from_jternary, recipe_equivalence,
                                semisimplify, semisimplify_data)
from char3.superalgebra import AxiomError, cube_map, is_lie

P = 3


def sl2():
    return Algebra.from_entries(P, 3, [(0, 1, 2, 1), (1, 0, 2, -1), (2, 0, 0, 2), (0, 2, 0, -2),
                                       (2, 1, 1, -2), (1, 2, 1, 2)], ("e", "f", "h"))


def test_zero_derivation_keeps_everything_even():
    L = sl2()
    S = semisimplify(SemisimplifyInput(L, np.zeros((3, 3), dtype=np.int64)))
    assert S.superdim == (3, 0) and np.array_equal(S.table, L.table)


def test_ad_f_on_sl2_has_one_chain_and_empty_result():
    # sl2 is one chain of length 3 under ad f, so nothing survives
    L = sl2()
    data = semisimplify_data(SemisimplifyInput(L, L.left_mul(L.basis_vector(1))))
    assert data.blocks == {1: 0, 2: 0, 3: 1} and data.Lss.dim == 0


def test_weak_counterexample_through_recipe():
    G = build_LT(jordanize(weak_counterexample()))
    S = semisimplify(SemisimplifyInput(G.L, lt_delta(G)))
    assert S.superdim == (1, 2)
    assert cube_map(S).tolist() == [[0, 0], [P - 1, 0]]


def test_chain_lengths_on_LT():
    T = first_kind_system(2, 2)[3]
    pkg = jordanize(T)
    G = build_LT(pkg)
    data = semisimplify_data(SemisimplifyInput(G.L, lt_delta(G)))
    assert data.blocks == {3: pkg.J.dim, 2: T.dim, 1: T.s_span(1).dim}


@pytest.mark.parametrize("T", [TripleSystem.zero(P, 0), TripleSystem.zero(P, 2), weak_counterexample(),
                               first_kind_system(1, 2)[3], first_kind_system(3, 2)[3],
                               second_kind_system(2, 1)[3], second_kind_system(2, 2)[3]],
                         ids=["empty", "zero2", "weak", "first1,2", "first3,2", "second2,1", "second2,2"])
def test_recipe_equals_direct(T):
    cmp = compare_recipe(T)
    assert cmp.equal, cmp.reason if hasattr(cmp, "reason") else cmp
    assert recipe_equivalence(T)


def test_direct_superdims_for_first_kind():
    # so_n + sp_m even, n m odd
    for n, m in [(1, 2), (3, 2), (2, 4)]:
        L = direct_from_jternary(first_kind_system(n, m)[3])
        assert L.superdim == (n * (n - 1) // 2 + m * (m + 1) // 2, n * m) and is_lie(L)


def test_rejects_non_nilpotent_or_non_derivation():
    L = sl2()
    with pytest.raises(AxiomError):
        semisimplify(SemisimplifyInput(L, ff.identity(3)))
    bad = np.zeros((3, 3), dtype=np.int64)
    bad[0, 1] = 1            # f -> e is nilpotent but not a derivation
    with pytest.raises(AxiomError):
        semisimplify(SemisimplifyInput(L, bad))
