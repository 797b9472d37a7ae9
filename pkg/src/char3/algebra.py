"""Finite-dimensional algebras given by structure constants, and span computations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import field as ff
from .field import Subspace, SpanBuilder


@dataclass(frozen=True, eq=False)
class Algebra:
    """e_i e_j = sum_k table[i, j, k] e_k over GF(p)."""

    p: int
    table: np.ndarray
    names: tuple = ()

    def __post_init__(self):
        t = ff.as_residues(self.table, self.p)
        d = t.shape[0]
        if t.shape != (d, d, d):
            raise ValueError("structure tensor must have shape (d, d, d)")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(d)))
        elif len(self.names) != d:
            raise ValueError("one name per basis vector is required")
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_entries(cls, p, dim, entries, names=()):
        t = np.zeros((dim, dim, dim), dtype=np.int64)
        for i, j, k, c in entries:
            t[i, j, k] += c
        return cls(p, t, names)

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def entries(self):
        """Sparse view: (i, j, k, c) for every nonzero structure constant."""
        idx = np.argwhere(self.table)
        return [(int(i), int(j), int(k), int(self.table[i, j, k])) for i, j, k in idx]

    @cached_property
    def _flat(self) -> np.ndarray:
        # rows indexed by i, columns by (j, k)
        return self.table.reshape(self.dim, self.dim * self.dim)

    def _vec(self, x) -> np.ndarray:
        x = ff.as_residues(x, self.p)
        if x.shape[-1] != self.dim:
            raise ValueError(f"expected vectors of length {self.dim}")
        return x

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def multiply(self, x, y) -> np.ndarray:
        x, y = self._vec(x), self._vec(y)
        lx = ff.matmul(x, self._flat, self.p).reshape(self.dim, self.dim)
        return ff.matmul(y, lx, self.p)

    def multiply_many(self, xs, ys) -> np.ndarray:
        """Row-wise products of two stacks of vectors."""
        xs, ys = np.atleast_2d(self._vec(xs)), np.atleast_2d(self._vec(ys))
        lx = ff.matmul(xs, self._flat, self.p).reshape(-1, self.dim, self.dim)
        return ff.matmul(ys[:, None, :], lx, self.p)[:, 0, :]

    def left_mul(self, x) -> np.ndarray:
        x = self._vec(x)
        return ff.matmul(x, self._flat, self.p).reshape(self.dim, self.dim).T.copy()

    def right_mul(self, y) -> np.ndarray:
        y = self._vec(y)
        t = self.table.transpose(1, 0, 2).reshape(self.dim, self.dim * self.dim)
        return ff.matmul(y, t, self.p).reshape(self.dim, self.dim).T.copy()

    def associator(self, x, y, z) -> np.ndarray:
        return np.mod(self.multiply(self.multiply(x, y), z) - self.multiply(x, self.multiply(y, z)), self.p)

    def commutator(self, x, y) -> np.ndarray:
        return np.mod(self.multiply(x, y) - self.multiply(y, x), self.p)

    def left_mul_all(self) -> np.ndarray:
        """Stack of L_{e_i}, shape (d, d, d)."""
        return self.table.transpose(0, 2, 1).copy()

    def unit(self):
        """The two-sided identity element, or None."""
        d = self.dim
        # e x_i = x_i for all i: sum_a u_a T[a, i, k] = delta_ik, same on the right
        left = self.table.transpose(1, 2, 0).reshape(d * d, d)
        right = self.table.transpose(0, 2, 1).reshape(d * d, d)
        target = ff.identity(d).reshape(d * d)
        u = ff.solve(np.concatenate([left, right]), np.concatenate([target, target]), self.p)
        return u

    def is_associative(self) -> bool:
        # (e_i e_j) e_k == e_i (e_j e_k)
        lhs = ff.einsum("ijm,mkl->ijkl", self.table, self.table, p=self.p)
        rhs = ff.einsum("jkm,iml->ijkl", self.table, self.table, p=self.p)
        return bool(np.array_equal(lhs, rhs))

    def is_anticommutative(self) -> bool:
        return not np.mod(self.table + self.table.transpose(1, 0, 2), self.p).any()

    def restrict(self, sub: Subspace, names=()) -> "Algebra":
        """Subalgebra on the canonical basis of ``sub`` (closure is verified)."""
        b = sub.basis
        prod = ff.einsum("ai,bj,ijk->abk", b, b, self.table, p=self.p)
        coords = sub.coordinates(prod.reshape(-1, self.dim)).reshape(sub.dim, sub.dim, sub.dim)
        return Algebra(self.p, coords, names)


# ---------------------------------------------------------------------------
# operator spaces

def flatten_ops(ops) -> np.ndarray:
    ops = np.asarray(ops, dtype=np.int64)
    if ops.ndim == 2:
        ops = ops[None]
    return ops.reshape(ops.shape[0], -1)


def operator_span(ops, p: int, n: int | None = None) -> Subspace:
    """Canonical span of operators flattened row-major."""
    ops = np.asarray(ops, dtype=np.int64)
    if ops.size == 0:
        if n is None:
            raise ValueError("size of operators unknown for an empty list")
        return Subspace.zero(p, n * n)
    n = ops.shape[-1]
    return Subspace.span(flatten_ops(ops), p, n * n)


def unflatten(sub: Subspace) -> np.ndarray:
    n = int(round(sub.ambient_dim ** 0.5))
    return sub.basis.reshape(-1, n, n)


def _products_by_generators(frontier: np.ndarray, gens: np.ndarray, p: int, side: str, chunk: int):
    """Yield flattened products frontier[i] @ g (or g @ frontier[i]) in bounded chunks."""
    n = gens.shape[-1]
    ft = ff._float_type(n, p) or np.float64
    g = gens.astype(ft)
    for s in range(0, frontier.shape[0], chunk):
        f = frontier[s:s + chunk].astype(ft)
        for gi in g:
            prod = f @ gi if side == "right" else gi @ f
            yield ff.fmod(prod, p).reshape(prod.shape[0], n * n)


def assoc_subalgebra_generated(gens, p: int, unital: bool = True, n: int | None = None):
    """Dimension and canonical span of the associative algebra generated by operators.

    Generators are taken on lazily: one that already lies in the algebra generated
    by the earlier ones is skipped, otherwise the whole current span is multiplied
    by it and the closure resumes.  The result is the same span either way.
    """
    gens = np.asarray(gens, dtype=np.int64)
    if gens.size == 0:
        if n is None:
            raise ValueError("size of operators unknown for an empty generator list")
        gens = np.zeros((0, n, n), dtype=np.int64)
    n = gens.shape[-1]
    gens = ff.as_residues(gens, p)
    sb = SpanBuilder(n * n, p)
    if unital:
        sb.add(ff.identity(n).reshape(1, -1))
    chunk = max(1, (1 << 22) // (n * n))
    working = []

    def close(frontier):
        rounds = 0
        while frontier.shape[0] and sb.dim < n * n:
            rounds += 1
            if rounds > n * n:
                raise RuntimeError("span saturation did not stabilise")
            fresh = []
            for prods in _products_by_generators(frontier.reshape(-1, n, n), np.array(working), p,
                                                 "right", chunk):
                new = sb.add(prods)
                if new.shape[0]:
                    fresh.append(new)
                if sb.dim == n * n:
                    break
            frontier = np.concatenate(fresh) if fresh else np.zeros((0, n * n), dtype=np.int64)

    for g in gens:
        if sb.dim == n * n:
            break
        if sb.contains(g.reshape(1, -1)):
            continue
        current = sb.subspace().basis
        frontier = [sb.add(g.reshape(1, -1))]
        for prods in _products_by_generators(current.reshape(-1, n, n), g[None], p, "right", chunk):
            frontier.append(sb.add(prods))
        working.append(g)
        close(np.concatenate(frontier))
    sub = sb.subspace()
    return sub.dim, sub


def lie_bracket_closure(gens, p: int, n: int | None = None) -> Subspace:
    """Smallest operator space containing ``gens`` and closed under commutators."""
    gens = ff.as_residues(np.asarray(gens, dtype=np.int64), p)
    if gens.size == 0:
        return Subspace.zero(p, (n or 0) ** 2)
    n = gens.shape[-1]
    sb = SpanBuilder(n * n, p)
    frontier = sb.add(flatten_ops(gens))
    basis_ops = [frontier.reshape(-1, n, n)]
    rounds = 0
    while frontier.shape[0]:
        rounds += 1
        if rounds > n * n:
            raise RuntimeError("span saturation did not stabilise")
        allb = np.concatenate(basis_ops)
        fr = frontier.reshape(-1, n, n)
        fresh = []
        for x in fr:
            a = ff.matmul(x[None], allb, p)
            b = ff.matmul(allb, x[None], p)
            new = sb.add(np.mod(a - b, p).reshape(-1, n * n))
            if new.shape[0]:
                fresh.append(new)
                basis_ops.append(new.reshape(-1, n, n))
        frontier = np.concatenate(fresh) if fresh else np.zeros((0, n * n), dtype=np.int64)
    return sb.subspace()


# ---------------------------------------------------------------------------
# structural subspaces of an algebra

def center(L: Algebra) -> Subspace:
    """{x : x e_j = 0 and e_j x = 0 for every basis e_j}."""
    d = L.dim
    left = L.table.transpose(1, 2, 0).reshape(d * d, d)
    right = L.table.transpose(0, 2, 1).reshape(d * d, d)
    return ff.kernel_basis(np.concatenate([left, right]), L.p)


def derived_subalgebra(L: Algebra) -> Subspace:
    return Subspace.span(L.table.reshape(-1, L.dim), L.p, L.dim)


def _products_with_basis(L: Algebra, vecs: np.ndarray) -> np.ndarray:
    d = L.dim
    left = ff.matmul(vecs, L._flat, L.p).reshape(-1, d)           # v e_j
    tt = L.table.transpose(1, 0, 2).reshape(d, d * d)
    right = ff.matmul(vecs, tt, L.p).reshape(-1, d)               # e_j v
    return np.concatenate([left, right])


def ideal_generated(L: Algebra, gens) -> Subspace:
    gens = ff.as_residues(np.atleast_2d(np.asarray(gens, dtype=np.int64)), L.p)
    sb = SpanBuilder(L.dim, L.p)
    frontier = sb.add(gens) if gens.size else np.zeros((0, L.dim), dtype=np.int64)
    rounds = 0
    while frontier.shape[0]:
        rounds += 1
        if rounds > L.dim ** 2:
            raise RuntimeError("span saturation did not stabilise")
        frontier = sb.add(_products_with_basis(L, frontier))
    return sb.subspace()


def subalgebra_generated(L: Algebra, gens) -> Subspace:
    gens = ff.as_residues(np.atleast_2d(np.asarray(gens, dtype=np.int64)), L.p)
    sb = SpanBuilder(L.dim, L.p)
    frontier = sb.add(gens)
    basis = [frontier]
    while frontier.shape[0]:
        allb = np.concatenate(basis)
        prods = []
        for v in frontier:
            lv = L.left_mul(v)
            prods.append(ff.matmul(allb, lv.T, L.p))                 # v b
            prods.append(ff.matmul(allb, L.right_mul(v).T, L.p))     # b v
        frontier = sb.add(np.concatenate(prods))
        if frontier.shape[0]:
            basis.append(frontier)
    return sb.subspace()


def is_derivation(L: Algebra, D) -> bool:
    """D(e_i e_j) == D(e_i) e_j + e_i D(e_j) for all basis pairs."""
    D = ff.as_residues(D, L.p)
    t = L.table
    lhs = ff.einsum("ijm,km->ijk", t, D, p=L.p)
    rhs = ff.einsum("mi,mjk->ijk", D, t, p=L.p) + ff.einsum("mj,imk->ijk", D, t, p=L.p)
    return bool(np.array_equal(lhs, np.mod(rhs, L.p)))


def adjoint(L: Algebra, x) -> np.ndarray:
    return L.left_mul(x)


def matrix_algebra(n: int, p: int) -> Algebra:
    """Mat_n with matrix units E_rc at index n*r + c."""
    t = np.zeros((n * n, n * n, n * n), dtype=np.int64)
    for r in range(n):
        for c in range(n):
            for c2 in range(n):
                t[n * r + c, n * c + c2, n * r + c2] = 1
    names = tuple(f"E{r + 1}{c + 1}" for r in range(n) for c in range(n))
    return Algebra(p, t, names)


def direct_product(A: Algebra, B: Algebra, names=()) -> Algebra:
    d, e = A.dim, B.dim
    t = np.zeros((d + e, d + e, d + e), dtype=np.int64)
    t[:d, :d, :d] = A.table
    t[d:, d:, d:] = B.table
    return Algebra(A.p, t, names or A.names + B.names)


def opposite(A: Algebra, names=()) -> Algebra:
    return Algebra(A.p, A.table.transpose(1, 0, 2), names or A.names)


def homomorphism_defects(P, src: Algebra, dst: Algebra, limit: int = 10) -> list:
    """Basis pairs (i, j) with P(e_i e_j) != P(e_i) P(e_j); column i of P is P(e_i)."""
    p = src.p
    P = ff.as_residues(P, p)
    n, N = src.dim, dst.dim
    if P.shape != (N, n):
        raise ValueError(f"map must have shape ({N}, {n})")
    lhs = ff.matmul(src.table.reshape(n * n, n), P.T, p).reshape(n, n, N)
    # sum_a P[a, i] table[a, b, :], then the same over b
    x = ff.matmul(P.T, dst.table.reshape(N, N * N), p).reshape(n, N, N)
    rhs = ff.matmul(P.T[None], x, p)
    bad = np.argwhere((lhs != rhs).any(axis=2))
    return [(int(i), int(j)) for i, j in bad[:limit]]


def is_isomorphism(P, src: Algebra, dst: Algebra) -> bool:
    P = ff.as_residues(P, src.p)
    if src.dim != dst.dim or ff.rank(P, src.p) != src.dim:
        return False
    return not homomorphism_defects(P, src, dst, limit=1)
