"""From a Lie algebra with a derivation of nilpotency p to a (weak) Lie superalgebra."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import field as ff
from .algebra import Algebra, is_derivation
from .field import Subspace
from .identities import Binding, check_identity, load
from .jternary import JTernaryPackage, TripleSystem, jordanize
from .lie import build_LT, lt_delta
from .structurable import AxiomError
from .superalgebra import LieSuperalgebra, check_weak


@dataclass(frozen=True, eq=False)
class SemisimplifyInput:
    L: Algebra
    delta: np.ndarray

    @property
    def p(self) -> int:
        return self.L.p

    def problems(self, check_lie: bool = True, **kw) -> list:
        p = self.p
        out = []
        d = ff.as_residues(self.delta, p)
        if d.shape != (self.L.dim, self.L.dim):
            return ["delta has the wrong shape"]
        if ff.matrix_power(d, p, p).any():
            out.append("delta^p != 0")
        if not is_derivation(self.L, d):
            out.append("delta is not a derivation")
        if check_lie:
            b = Binding(p, {"B": self.L.table})
            if not check_identity(load("anticommutative"), b, mode="exhaustive"):
                out.append("not anticommutative")
            elif not check_identity(load("jacobi"), b, **kw):
                out.append("Jacobi identity fails")
        return out


@dataclass(frozen=True, eq=False)
class Semisimplification:
    """L^ss together with the vectors of L spanning its even and odd parts."""

    Lss: LieSuperalgebra
    even_vectors: np.ndarray
    odd_vectors: np.ndarray
    blocks: dict


def semisimplify_data(inp: SemisimplifyInput, verify: bool = True, check_lie: bool = True,
                      **kw) -> Semisimplification:
    p, L = inp.p, inp.L
    n = L.dim
    if p < 3:
        raise ValueError("the recipe needs p > 2")
    delta = ff.as_residues(inp.delta, p)
    probs = inp.problems(check_lie=check_lie, **kw)
    if probs:
        raise AxiomError("; ".join(probs))
    chains = ff.nilpotent_jordan_chains(delta, p).chains

    def vectors(length):
        rows = [c for c in chains if len(c) == length]
        return np.concatenate(rows) if rows else np.zeros((0, n), dtype=np.int64)

    L0 = vectors(1)
    Lpm1 = Subspace.span(vectors(p - 1), p, n) if vectors(p - 1).shape[0] else Subspace.zero(p, n)
    dL = ff.matmul(Lpm1.basis, delta.T, p) if Lpm1.dim else np.zeros((0, n), dtype=np.int64)
    dLs = Subspace.span(dL, p, n) if dL.shape[0] else Subspace.zero(p, n)
    L1 = ff.canonical_complement(dLs, Lpm1).basis
    middle = [vectors(k) for k in range(2, p - 1)]
    # L = L_0bar + L_2 + ... + L_{p-2} + L_1bar + delta(L_{p-1}) + L_p
    parts = [L0] + middle + [L1, dLs.basis, vectors(p)]
    B = np.concatenate(parts)
    if B.shape[0] != n or ff.rank(B, p) != n:
        raise AxiomError("chain decomposition does not give a basis")
    Binv = ff.inverse(B, p)
    n0, n1 = L0.shape[0], L1.shape[0]
    o1 = n0 + sum(m.shape[0] for m in middle)

    def coords(v):
        return ff.matmul(v.reshape(-1, n), Binv, p)

    def prod(X, Y):
        if not (X.shape[0] and Y.shape[0]):
            return np.zeros((X.shape[0], Y.shape[0], n), dtype=np.int64)
        lx = ff.matmul(X, L.table.reshape(n, n * n), p).reshape(-1, n, n)
        return ff.matmul(Y[None], lx, p)                  # [a, b] = X_a Y_b

    N = n0 + n1
    t = np.zeros((N, N, N), dtype=np.int64)
    e, o = slice(0, n0), slice(n0, N)
    t[e, e, e] = coords(prod(L0, L0))[:, :n0].reshape(n0, n0, n0)
    t[e, o, o] = coords(prod(L0, L1))[:, o1:o1 + n1].reshape(n0, n1, n1)
    t[o, e, o] = coords(prod(L1, L0))[:, o1:o1 + n1].reshape(n1, n0, n1)
    dp2 = ff.matrix_power(delta, p - 2, p)
    t[o, o, e] = coords(prod(L1, ff.matmul(L1, dp2.T, p)))[:, :n0].reshape(n1, n1, n0)
    names = []
    for r, par in [(r, 0) for r in L0] + [(r, 1) for r in L1]:
        nz = np.nonzero(r)[0]
        names.append(L.names[nz[0]] if nz.size == 1 and r[nz[0]] == 1 else f"{('even', 'odd')[par]}{len(names)}")
    Lss = LieSuperalgebra(p, t, np.array([0] * n0 + [1] * n1), tuple(names))
    if verify:
        rep = check_weak(Lss, **kw)
        if not rep.passed:
            raise AxiomError("recipe output is not a weak Lie superalgebra\n" + rep.summary())
    blocks = {k: int((np.array([len(c) for c in chains]) == k).sum()) for k in range(1, p + 1)}
    return Semisimplification(Lss, L0, L1, blocks)


def semisimplify(inp: SemisimplifyInput, verify: bool = True, **kw) -> LieSuperalgebra:
    """L^ss = L_0bar + L_1bar with the projected brackets."""
    return semisimplify_data(inp, verify=verify, **kw).Lss


def _triple(obj) -> TripleSystem:
    return obj if isinstance(obj, TripleSystem) else obj.T


def direct_from_jternary(obj, verify: bool = True, **kw) -> LieSuperalgebra:
    """Even part S(T,T) (canonical basis), odd part T; [d,x] = d(x), [x,y] = S(x,y)."""
    T = _triple(obj)
    p, d = T.p, T.dim
    S = T.s_span(1) if d else Subspace.zero(p, 0)
    k = S.dim
    ops = S.basis.reshape(k, d, d)
    N = k + d
    t = np.zeros((N, N, N), dtype=np.int64)
    if k:
        a = ff.matmul(ops[:, None], ops[None], p)
        t[:k, :k, :k] = S.coordinates(np.mod(a - a.transpose(1, 0, 2, 3), p).reshape(k * k, d * d)).reshape(k, k, k)
        img = ops.transpose(0, 2, 1)                     # [i, x, y] = coordinate y of d_i(e_x)
        t[:k, k:, k:] = img
        t[k:, :k, k:] = -img.transpose(1, 0, 2)
        t[k:, k:, :k] = S.coordinates(T.s_ops(1).reshape(d * d, d * d)).reshape(d, d, k)
    names = tuple(f"S{i}" for i in range(k)) + tuple(T.names)
    L = LieSuperalgebra(p, t, np.array([0] * k + [1] * d), names)
    if verify:
        rep = check_weak(L, **kw)
        if not rep.passed:
            raise AxiomError(rep.summary())
    return L


@dataclass
class RecipeComparison:
    equal: bool
    identification: np.ndarray
    recipe: LieSuperalgebra
    direct: LieSuperalgebra
    reason: str = ""

    def __bool__(self):
        return self.equal


def compare_recipe(obj, **kw) -> RecipeComparison:
    """Run semisimplify(L(T), ad F(x)1) and match it against direct_from_jternary(T).

    The recipe's basis vectors are read in L(T) coordinates: S(T,T) coordinates
    give the even identification and p(x)T coordinates the odd one.  The two
    superalgebras are equal when this identification is the identity matrix and
    the structure tensors agree entry by entry.
    """
    T = _triple(obj)
    pkg = obj if isinstance(obj, JTernaryPackage) else jordanize(T, verify=False)
    G = build_LT(pkg, verify=False)
    data = semisimplify_data(SemisimplifyInput(G.L, lt_delta(G)), check_lie=False, **kw)
    D = direct_from_jternary(T, verify=False)
    n, d = pkg.J.dim if T.dim else 1, T.dim
    oT, oS = 3 * n, 3 * n + 2 * d
    rows = np.concatenate([data.even_vectors, data.odd_vectors])
    other = np.ones(G.dim, dtype=bool)
    other[oS:] = False
    other[oT:oT + d] = False
    ident = np.concatenate([rows[:, oS:], rows[:, oT:oT + d]], axis=1)
    R = data.Lss
    if rows.shape[0] != D.dim or rows[:, other].any():
        return RecipeComparison(False, ident, R, D, "recipe basis is not inside S(T,T) + p(x)T")
    if not np.array_equal(ident, ff.identity(D.dim)):
        return RecipeComparison(False, ident, R, D, "identification is not the identity")
    if not np.array_equal(R.parity, D.parity):
        return RecipeComparison(False, ident, R, D, "parities differ")
    if not np.array_equal(R.table, D.table):
        return RecipeComparison(False, ident, R, D, "structure constants differ")
    return RecipeComparison(True, ident, R, D)


def recipe_equivalence(obj, **kw) -> bool:
    return compare_recipe(obj, **kw).equal
