import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from char3 import field as ff
from char3.field import Subspace

P = 3


def mats(rows=(1, 6), cols=(1, 6)):
    return st.tuples(st.integers(*rows), st.integers(*cols)).flatmap(
        lambda s: arrays(np.int64, s, elements=st.integers(0, P - 1)))


def test_rref_examples():
    z, piv = ff.rref(np.zeros((2, 3), dtype=np.int64), P)
    assert not z.any() and piv == []
    i3, piv = ff.rref(np.eye(3, dtype=np.int64), P)
    assert np.array_equal(i3, np.eye(3)) and piv == [0, 1, 2]
    r, piv = ff.rref([[1, 2], [2, 1]], P)
    assert r.tolist() == [[1, 2], [0, 0]] and ff.rank([[1, 2], [2, 1]], P) == 1


def test_kernel_examples():
    assert ff.kernel_basis(np.eye(4, dtype=np.int64), P).dim == 0
    assert ff.kernel_basis(np.zeros((4, 4), dtype=np.int64), P).dim == 4


def test_kernel_against_enumeration():
    # left multiplication by x in the weak counterexample's L_s style: a small singular matrix
    m = np.array([[1, 2, 0], [2, 1, 0], [0, 0, 0]])
    kernel = ff.kernel_basis(m, P)
    brute = [v for v in itertools.product(range(P), repeat=3) if not (m @ np.array(v) % P).any()]
    assert len(brute) == P ** kernel.dim
    assert all(kernel.contains(np.array(v)) for v in brute)


def test_canonical_complement_examples():
    full = Subspace.span(np.eye(3, dtype=np.int64), P)
    e1 = Subspace.span([[1, 0, 0]], P)
    assert ff.canonical_complement(full, full).dim == 0
    assert ff.canonical_complement(Subspace.zero(P, 3), full) == full
    c = ff.canonical_complement(e1, full)
    assert c == Subspace.span([[0, 1, 0], [0, 0, 1]], P)


def test_jordan_chains():
    assert ff.nilpotent_jordan_chains(np.zeros((4, 4), dtype=np.int64), P).multiplicities == {1: 4}
    N = np.diag([1, 1], k=-1)
    jc = ff.nilpotent_jordan_chains(N, P)
    assert jc.multiplicities == {3: 1}
    with pytest.raises(ValueError):
        ff.nilpotent_jordan_chains(np.eye(2, dtype=np.int64), P)


@settings(max_examples=60, deadline=None)
@given(mats())
def test_rank_nullity(m):
    assert ff.rank(m, P) + ff.kernel_basis(m, P).dim == m.shape[1]
    k = ff.kernel_basis(m, P)
    assert not ff.matmul(m, k.basis.T, P).any()


@settings(max_examples=60, deadline=None)
@given(mats((2, 5), (2, 5)))
def test_batch_rank_matches_rank(m):
    stack = np.stack([m, np.mod(2 * m, P), np.zeros_like(m)])
    assert ff.batch_rank(stack, P).tolist() == [ff.rank(m, P), ff.rank(m, P), 0]


@settings(max_examples=60, deadline=None)
@given(arrays(np.int64, (4, 4), elements=st.integers(0, P - 1)), arrays(np.int64, 4, elements=st.integers(0, P - 1)))
def test_solve_and_inverse(m, b):
    x = ff.solve(m, b, P)
    if x is None:
        assert ff.rank(np.column_stack([m, b]), P) > ff.rank(m, P)
    else:
        assert np.array_equal(ff.matmul(m, x, P), b % P)
    if ff.rank(m, P) == 4:
        assert np.array_equal(ff.matmul(m, ff.inverse(m, P), P), ff.identity(4))


@settings(max_examples=40, deadline=None)
@given(mats((1, 4), (4, 4)), mats((1, 4), (4, 4)))
def test_subspace_sum_and_canonical_form(a, b):
    A, B = Subspace.span(a, P), Subspace.span(b, P)
    S = A + B
    assert S.dim == ff.rank(np.vstack([a, b]), P)
    assert Subspace.span(np.mod(2 * a[::-1], P), P) == A
    for v in a:
        assert S.contains(v)
        assert np.array_equal(ff.matmul(A.coordinates(v), A.basis, P)[0], v % P)
    C = ff.canonical_complement(A, S)
    assert C.dim + A.dim == S.dim and (C + A) == S


def test_matmul_batched_and_large_entries():
    rng = np.random.default_rng(1)
    a = rng.integers(0, P, (3, 5, 7))
    b = rng.integers(0, P, (3, 7, 2))
    assert np.array_equal(ff.matmul(a, b, P), np.einsum("bij,bjk->bik", a, b) % P)
    x = rng.integers(0, P, (4, 5))
    assert np.array_equal(ff.einsum("ij,jk->ik", x, x.T, p=P), x @ x.T % P)
