import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from char3 import field as ff
from char3.algebra import (Algebra, assoc_subalgebra_generated, center, derived_subalgebra, ideal_generated,
                           is_derivation, lie_bracket_closure, matrix_algebra, operator_span)
from char3.composition import norm, skew_subspace, split_composition, trace

P = 3


def sl2():
    # e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f
    return Algebra.from_entries(P, 3, [(0, 1, 2, 1), (1, 0, 2, -1), (2, 0, 0, 2), (0, 2, 0, -2),
                                       (2, 1, 1, -2), (1, 2, 1, 2)], ("e", "f", "h"))


def gl2_commutator():
    M = matrix_algebra(2, P)
    t = np.mod(M.table - M.table.transpose(1, 0, 2), P)
    return Algebra(P, t, M.names)


def test_multiply_zero_and_associator():
    M = matrix_algebra(2, P)
    assert not M.multiply(np.zeros(4, dtype=np.int64), M.basis_vector(1)).any()
    assert M.is_associative()
    rng = np.random.default_rng(0)
    x, y, z = rng.integers(0, P, (3, 4))
    assert not M.associator(x, y, z).any()


def test_left_right_multiplication_operators():
    C = split_composition(8)
    rng = np.random.default_rng(2)
    x, y = rng.integers(0, P, (2, 8))
    xy = C.alg.multiply(x, y)
    assert np.array_equal(ff.matmul(C.alg.left_mul(x), y, P), xy)
    assert np.array_equal(ff.matmul(C.alg.right_mul(y), x, P), xy)


def test_operator_span_small():
    assert operator_span(np.zeros((0, 3, 3), dtype=np.int64), P, 3).dim == 0
    assert operator_span(np.eye(3, dtype=np.int64)[None], P).dim == 1


def test_assoc_generated():
    dim, _ = assoc_subalgebra_generated([], P, unital=True, n=3)
    assert dim == 1
    N = np.diag([1, 1], k=1)
    dim, sub = assoc_subalgebra_generated(N[None], P, unital=True)
    assert dim == 3 and sub.contains(ff.matmul(N, N, P).reshape(1, -1))


def test_lie_closure_of_matrix_units():
    e = np.zeros((2, 2, 2), dtype=np.int64)
    e[0, 0, 1] = 1
    e[1, 1, 0] = 1
    assert lie_bracket_closure(e, P).dim == 3      # sl2 inside gl2


def test_derivations():
    L = sl2()
    assert is_derivation(L, np.zeros((3, 3), dtype=np.int64))
    for i in range(3):
        assert is_derivation(L, L.left_mul(L.basis_vector(i)))
    M = matrix_algebra(2, P)
    transpose = np.zeros((4, 4), dtype=np.int64)
    for r in range(2):
        for c in range(2):
            transpose[2 * c + r, 2 * r + c] = 1
    assert not is_derivation(M, transpose)


def test_center_derived_ideal_of_gl2():
    G = gl2_commutator()
    assert center(G).dim == 1
    # char 3: the identity is traceless iff 3 | 2, which fails, so [gl2, gl2] = sl2
    assert derived_subalgebra(G).dim == 3
    assert ideal_generated(G, [G.basis_vector(1)]).dim == 3


def test_composition_small_cases():
    C1 = split_composition(1)
    assert np.array_equal(C1.conj, np.eye(1)) and skew_subspace(C1).dim == 0
    C4 = split_composition(4)
    assert skew_subspace(C4).dim == 3
    assert norm(C4, [0, 1, 0, 0]) == 0 and norm(C4, C4.unit) == 1
    C2 = split_composition(2)
    x = np.array([1, P - 1])
    assert trace(C2, x) == 0 and norm(C2, x) == P - 1
    assert np.array_equal(C2.alg.multiply(x, x), C2.unit)
    for C in (C1, C2, C4):
        assert trace(C, C.unit) == 2 % P and norm(C, C.unit) == 1


def test_octonions_nonassociative_with_multiplicative_norm():
    C = split_composition(8)
    assert skew_subspace(C).dim == 7
    assert not C.alg.is_associative()
    rng = np.random.default_rng(0x5EED)
    xs, ys = rng.integers(0, P, (2, 10 ** 5, 8))
    prods = C.alg.multiply_many(xs, ys)
    assert np.array_equal(C.norm_quadratic(prods), C.norm_quadratic(xs) * C.norm_quadratic(ys) % P)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([1, 2, 4, 8]), st.integers(0, 2 ** 32 - 1))
def test_conjugation_is_an_involutive_antiautomorphism(d, seed):
    C = split_composition(d)
    rng = np.random.default_rng(seed)
    x, y = rng.integers(0, P, (2, d))
    assert np.array_equal(C.bar(C.bar(x)), x)
    assert np.array_equal(C.bar(C.alg.multiply(x, y)), C.alg.multiply(C.bar(y), C.bar(x)))
    assert np.array_equal(C.alg.multiply(x, C.bar(x)), norm(C, x) * C.unit % P)
