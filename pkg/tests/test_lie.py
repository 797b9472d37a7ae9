import numpy as np
import pytest

from char3 import field as ff
from char3.algebra import Algebra, center, derived_subalgebra
from char3.jternary import TripleSystem, check_hein, jordanize, weak_counterexample
from char3.lie import (bracket_map_report, build_kantor, build_LT, check_lts, five_graded_triple,
                       kantor_dimension_formula, kantor_to_embedding, kt_embedding, kt_triple_system,
                       lt_delta, sl2_utilities, standard_embedding, v2_to_v1)
from char3.reference import first_kind_system, second_kind_system
from char3.structurable import InvolutiveAlgebra, as_structurable, exchange_involution

from conftest import tensor

P = 3


def ground_field():
    return as_structurable(InvolutiveAlgebra(Algebra(P, np.ones((1, 1, 1), dtype=np.int64)), ff.identity(1)))


def test_zero_triple_gives_sl2():
    G = build_LT(jordanize(TripleSystem.zero(P, 0)))
    assert G.dim == 3 and G.piece_dims() == {-2: 1, 0: 1, 2: 1}
    assert not G.sl2_problems()


@pytest.mark.parametrize("make", [weak_counterexample, lambda: first_kind_system(2, 2)[3],
                                  lambda: second_kind_system(2, 1)[3]], ids=["weak", "first", "second"])
def test_LT_is_five_graded_lie(make):
    T = make()
    pkg = jordanize(T)
    G = build_LT(pkg)
    assert all(r.passed for r in G.reports().reports)
    n = pkg.J.dim
    assert G.dim == 3 * n + 2 * T.dim + T.s_span(1).dim
    dec = sl2_utilities(G)
    assert dec.passed, dec.failures()
    # the five-graded triple product recovers T
    assert np.array_equal(five_graded_triple(G).tensor, T.tensor)
    d = lt_delta(G)
    assert not ff.matrix_power(d, 3, P).any()
    jc = ff.nilpotent_jordan_chains(d, P)
    assert jc.multiplicities == {k: v for k, v in {3: n, 2: T.dim, 1: T.s_span(1).dim}.items() if v}


def test_standard_embedding_of_zero_lts_is_abelian():
    emb = standard_embedding(TripleSystem.zero(P, 3))
    assert emb.G.dim == 3 and not emb.G.L.table.any()


def test_kt_of_ground_field_is_sl2():
    A = ground_field()
    T = kt_triple_system(A)
    assert check_lts(T).passed
    emb = kt_embedding(A)
    G = emb.G
    assert G.dim == 3
    # perfect and centerless, as sl2 is in characteristic 3
    assert derived_subalgebra(G.L).dim == 3 and center(G.L).dim == 0


@pytest.mark.parametrize("d1,d2", [(1, 2), (2, 2), (1, 4), (2, 4)])
def test_kantor_small_tensor_cases(d1, d2):
    A = tensor(d1, d2)
    K1 = build_kantor(A, "v1")
    assert K1.G.dim == kantor_dimension_formula(A)
    K2 = build_kantor(A, "v2")
    emb = kt_embedding(A)
    assert bracket_map_report(kantor_to_embedding(K1, emb), K1.G, emb.G, "phi").passed
    assert bracket_map_report(v2_to_v1(K2), K2.G, K1.G, "v2 -> v1").passed
    assert sl2_utilities(K1.G).passed


def test_kantor_of_exchange_algebra():
    E = exchange_involution(2, P)
    A = as_structurable(E)
    K = build_kantor(A, "v1")
    assert K.G.dim == kantor_dimension_formula(A)


def test_bracket_map_report_detects_non_homomorphism():
    A = tensor(1, 2)
    K = build_kantor(A, "v1")
    P2 = np.mod(2 * ff.identity(K.G.dim), P)      # x -> 2x is not a homomorphism (2*2 != 2)
    rep = bracket_map_report(P2, K.G, K.G, "scale")
    assert not rep.passed and "pair" in rep.counterexample


def test_lt_hein_round_trip_for_kantor_five_graded():
    K = build_kantor(tensor(2, 2), "v1")
    T = five_graded_triple(K.G)
    assert check_hein(T).passed
