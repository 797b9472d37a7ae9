import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from char3 import field as ff
from char3.jternary import (TripleSystem, check_allison, check_fk, check_hein, check_jordan, check_special,
                            check_st_suite, from_structurable, hermitian_isotope_prototypical, jordanize,
                            pathological_projection, prototypical, weak_counterexample)
from char3.structurable import (choose_invertible_skew, exchange_involution, hermitian_form_structurable,
                                standard_skew_form, symplectic_involution)

from conftest import tensor

P = 3
SIGNS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def natural_symplectic_system():
    """Mat_2 with the symplectic involution acting on columns, h(x, y) = x y^t J."""
    E = symplectic_involution(2, P)
    J = standard_skew_form(2, P)
    action = np.zeros((4, 2, 2), dtype=np.int64)
    h = np.zeros((2, 2, 4), dtype=np.int64)
    for r in range(2):
        for c in range(2):
            action[2 * r + c, r, c] = 1
    for x in range(2):
        for y in range(2):
            m = np.zeros((2, 2), dtype=np.int64)
            m[x, y] = 1
            h[x, y] = ff.matmul(m, J, P).reshape(-1)
    return E, action, h


def test_zero_product_passes_everything():
    T = TripleSystem.zero(P, 3)
    assert check_hein(T).passed
    for e, d in SIGNS:
        assert check_fk(T, e, d).passed and check_special(T, e, d).passed


def test_projection_breaks_hein1():
    rep = check_hein(pathological_projection())
    assert not rep.passed
    assert [r.name for r in rep.failures()][0] == "hein1"


def test_weak_counterexample_is_jternary():
    T = weak_counterexample()
    assert check_hein(T).passed
    pkg = jordanize(T)
    assert pkg.unit.shape[0] == 1                 # J = F id since K(x, y) = 0 here
    assert check_allison(pkg).passed and check_jordan(pkg).passed


def test_prototypical_with_zero_form_is_zero():
    E, action, _ = natural_symplectic_system()
    T = prototypical(E, action, np.zeros((2, 2, 4), dtype=np.int64))
    assert not T.tensor.any()


def test_prototypical_symplectic_example():
    E, action, h = natural_symplectic_system()
    T = prototypical(E, action, h)
    assert T.tensor.any()
    assert check_fk(T, 1, 1).passed and check_special(T, 1, 1).passed
    pkg = jordanize(T)
    assert check_allison(pkg).passed
    assert check_st_suite(T).passed


def test_prototypical_rejects_hermitian_form():
    E = exchange_involution(1, P)
    with pytest.raises(ValueError):
        prototypical(E, np.ones((2, 1, 1), dtype=np.int64), np.ones((1, 1, 2), dtype=np.int64))


@pytest.mark.parametrize("d1,d2", [(1, 2), (2, 2), (1, 4), (2, 4), (4, 4)])
def test_hermitian_isotope_zero_module(d1, d2):
    A = tensor(d1, d2)
    s = choose_invertible_skew(A)
    direct = from_structurable(A, s).T
    iso = hermitian_isotope_prototypical(A, np.zeros((A.dim, 0, 0), dtype=np.int64),
                                         np.zeros((0, 0, A.dim), dtype=np.int64), s)
    assert np.array_equal(direct.tensor, iso.tensor)


@pytest.mark.parametrize("E", [exchange_involution(1, P), exchange_involution(2, P), symplectic_involution(2, P)],
                         ids=["exchange1", "exchange2", "symplectic2"])
def test_hermitian_isotope_regular_module(E):
    # W = E with left multiplication, h(x, y) = x bar(y)
    action = E.alg.table.transpose(0, 2, 1)
    h = ff.einsum("by,xbk->xyk", E.inv, E.alg.table, p=P)
    A = hermitian_form_structurable(E, action, h)
    s = choose_invertible_skew(A)
    assert s is not None and not s[E.dim:].any()
    direct = from_structurable(A, s).T
    iso = hermitian_isotope_prototypical(E, action, h, s[:E.dim])
    assert np.array_equal(direct.tensor, iso.tensor)
    assert check_hein(iso).passed


def test_from_structurable_companions():
    J = from_structurable(tensor(2, 2), choose_invertible_skew(tensor(2, 2)))
    checks = J.companion_checks()
    assert all(checks.values()), checks


def test_operator_families_agree_with_products():
    T = weak_counterexample()
    x, y, z = ff.identity(2)[[0, 0, 0]]
    assert np.array_equal(ff.matmul(T.l_op(x, y), z, P), T.product(x, y, z))


def test_bad_signs_rejected():
    with pytest.raises(ValueError):
        check_fk(weak_counterexample(), 2, 1)


def sparse_triples(max_dim=2):
    return st.integers(1, max_dim).flatmap(lambda d: st.lists(
        st.tuples(*[st.integers(0, d - 1)] * 4, st.integers(1, P - 1)), max_size=3).map(
        lambda es: TripleSystem.from_entries(P, d, [(*e[:4], e[4]) for e in es])))


@settings(max_examples=80, deadline=None)
@given(sparse_triples())
def test_hein_iff_special_fk(T):
    hein = check_hein(T).passed
    assert hein == (check_fk(T, 1, 1).passed and check_special(T, 1, 1).passed)
