"""Split unital composition algebras of dimension 1, 2, 4 and 8."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import field as ff
from .algebra import Algebra
from .field import Subspace


@dataclass(frozen=True, eq=False)
class CompositionAlgebra:
    alg: Algebra
    conj: np.ndarray        # matrix of x -> x bar
    gram: np.ndarray        # polar form n(x, y) = n(x+y) - n(x) - n(y)
    norms: np.ndarray       # n(e_i)
    unit: np.ndarray

    @property
    def p(self) -> int:
        return self.alg.p

    @property
    def dim(self) -> int:
        return self.alg.dim

    def bar(self, x) -> np.ndarray:
        return ff.matmul(self.conj, ff.as_residues(x, self.p), self.p)

    def norm(self, x) -> int:
        x = ff.as_residues(x, self.p)
        prod = self.alg.multiply(x, self.bar(x))
        return _scalar_multiple(prod, self.unit, self.p)

    def trace(self, x) -> int:
        x = ff.as_residues(x, self.p)
        return _scalar_multiple(np.mod(x + self.bar(x), self.p), self.unit, self.p)

    def norm_quadratic(self, xs) -> np.ndarray:
        """n(x) for a stack of vectors via the Gram matrix."""
        xs = ff.as_residues(np.atleast_2d(xs), self.p)
        h = ff.half(self.p)
        return np.mod(np.einsum("bi,ij,bj->b", xs, self.gram, xs) * h, self.p)

    def skew_subspace(self) -> Subspace:
        return ff.kernel_basis(np.mod(self.conj + ff.identity(self.dim), self.p), self.p)


def _scalar_multiple(v, unit, p) -> int:
    i = int(np.argmax(unit != 0))
    c = int(v[i]) * ff.inv(int(unit[i]), p) % p
    if not np.array_equal(np.mod(c * unit, p), np.mod(v, p)):
        raise ValueError("vector is not a scalar multiple of the unit")
    return c


def _polar_gram(alg: Algebra, conj: np.ndarray, unit: np.ndarray) -> np.ndarray:
    # n(x, y) 1 = x ybar + y xbar
    p, d = alg.p, alg.dim
    g = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            s = alg.multiply(alg.basis_vector(i), conj[:, j]) + alg.multiply(alg.basis_vector(j), conj[:, i])
            g[i, j] = _scalar_multiple(np.mod(s, p), unit, p)
    return g


def _zorn_table(p: int) -> np.ndarray:
    # [[a, u], [v, b]] [[a', u'], [v', b']] =
    #   [[aa' + u.v', a u' + b' u - v x v'], [a' v + b v' + u x u', bb' + v.u']]
    # basis order: e1, e2, u1, u2, u3, v1, v2, v3
    t = np.zeros((8, 8, 8), dtype=np.int64)
    E1, E2 = 0, 1
    U = [2, 3, 4]
    V = [5, 6, 7]
    t[E1, E1, E1] = 1
    t[E2, E2, E2] = 1
    for i in range(3):
        t[E1, U[i], U[i]] = 1        # a u'
        t[U[i], E2, U[i]] = 1        # b' u
        t[V[i], E1, V[i]] = 1        # a' v
        t[E2, V[i], V[i]] = 1        # b v'
        t[U[i], V[i], E1] = 1        # u . v'
        t[V[i], U[i], E2] = 1        # v . u'
    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        # cross products: e_i x e_j = e_k
        t[U[i], U[j], V[k]] += 1
        t[U[j], U[i], V[k]] -= 1
        t[V[i], V[j], U[k]] -= 1
        t[V[j], V[i], U[k]] += 1
    return np.mod(t, p)


def split_composition(d: int, p: int = 3) -> CompositionAlgebra:
    p = ff.check_modulus(p)
    if d == 1:
        t = np.ones((1, 1, 1), dtype=np.int64)
        names = ("1",)
        conj = ff.identity(1)
        unit = np.array([1])
    elif d == 2:
        t = np.zeros((2, 2, 2), dtype=np.int64)
        t[0, 0, 0] = t[1, 1, 1] = 1
        names = ("e1", "e2")
        conj = np.array([[0, 1], [1, 0]])
        unit = np.array([1, 1])
    elif d == 4:
        # matrix units e11, e12, e21, e22 (index 2*r + c)
        t = np.zeros((4, 4, 4), dtype=np.int64)
        for r in range(2):
            for c in range(2):
                for c2 in range(2):
                    t[2 * r + c, 2 * c + c2, 2 * r + c2] = 1
        names = ("e11", "e12", "e21", "e22")
        # xbar = tr(x) 1 - x: e11 <-> e22, e12 -> -e12, e21 -> -e21
        conj = np.array([[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])
        unit = np.array([1, 0, 0, 1])
    elif d == 8:
        t = _zorn_table(p)
        names = ("e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3")
        conj = np.zeros((8, 8), dtype=np.int64)
        conj[1, 0] = conj[0, 1] = 1
        for i in range(2, 8):
            conj[i, i] = -1
        unit = np.array([1, 1, 0, 0, 0, 0, 0, 0])
    else:
        raise ValueError("composition algebras exist only in dimensions 1, 2, 4, 8")
    alg = Algebra(p, t, names)
    conj = ff.as_residues(conj, p)
    unit = ff.as_residues(unit, p)
    gram = _polar_gram(alg, conj, unit)
    norms = np.array([_scalar_multiple(alg.multiply(alg.basis_vector(i), conj[:, i]), unit, p)
                      for i in range(d)], dtype=np.int64)
    return CompositionAlgebra(alg, conj, gram, norms, unit)


def skew_subspace(C: CompositionAlgebra) -> Subspace:
    return C.skew_subspace()


def trace(C: CompositionAlgebra, x) -> int:
    return C.trace(x)


def norm(C: CompositionAlgebra, x) -> int:
    return C.norm(x)
