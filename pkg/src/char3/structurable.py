"""Algebras with involution, structurable algebras and the Albert-form toolkit."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import field as ff
from .algebra import (Algebra, assoc_subalgebra_generated, direct_product, matrix_algebra,
                      operator_span, opposite)
from .composition import CompositionAlgebra, split_composition
from .field import Subspace
from .identities import Binding, IdentityReport, check_identity, load


class AxiomError(ValueError):
    """A constructed object fails one of its defining identities."""


# ---------------------------------------------------------------------------
# algebras with involution

@dataclass(frozen=True, eq=False)
class InvolutiveAlgebra:
    alg: Algebra
    inv: np.ndarray     # column j is the image of e_j

    def __post_init__(self):
        inv = ff.as_residues(self.inv, self.alg.p)
        if inv.shape != (self.alg.dim, self.alg.dim):
            raise ValueError("involution matrix has the wrong shape")
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)

    @property
    def p(self) -> int:
        return self.alg.p

    @property
    def dim(self) -> int:
        return self.alg.dim

    def bar(self, x) -> np.ndarray:
        x = ff.as_residues(x, self.p)
        return ff.matmul(x, self.inv.T, self.p)

    @cached_property
    def skew(self) -> Subspace:
        return ff.kernel_basis(np.mod(self.inv + ff.identity(self.dim), self.p), self.p)

    @cached_property
    def herm(self) -> Subspace:
        return ff.kernel_basis(np.mod(self.inv - ff.identity(self.dim), self.p), self.p)

    @cached_property
    def unit(self):
        return self.alg.unit()

    def L(self, x) -> np.ndarray:
        return self.alg.left_mul(x)

    def R(self, x) -> np.ndarray:
        return self.alg.right_mul(x)

    def involution_problems(self) -> list:
        """Reasons the involution is not an involutive anti-automorphism (empty if fine)."""
        p, d, t = self.p, self.dim, self.alg.table
        out = []
        if not np.array_equal(ff.matmul(self.inv, self.inv, p), ff.identity(d)):
            out.append("involution does not square to the identity")
        # bar(e_i e_j) == bar(e_j) bar(e_i)
        lhs = ff.einsum("ijm,km->ijk", t, self.inv, p=p)
        rhs = ff.einsum("aj,bi,abk->ijk", self.inv, self.inv, t, p=p)
        if not np.array_equal(lhs, rhs):
            out.append("involution is not an anti-automorphism")
        u = self.unit
        if u is not None and not np.array_equal(self.bar(u), u):
            out.append("involution does not fix the unit")
        return out

    def restrict(self, sub: Subspace, names=()) -> "InvolutiveAlgebra":
        """Restriction to a subalgebra stable under the involution."""
        images = self.bar(sub.basis)
        if not sub.contains(images):
            raise ValueError("subspace is not stable under the involution")
        coords = sub.coordinates(images)
        return InvolutiveAlgebra(self.alg.restrict(sub, names), coords.T)


def _check_budgeted(ident_name: str, binding: Binding, mode: str, seed: int, samples: int):
    return check_identity(load(ident_name), binding, mode=mode, seed=seed, samples=samples)


@dataclass(frozen=True, eq=False)
class StructurableAlgebra(InvolutiveAlgebra):
    """Unital algebra with involution satisfying the two structurable identities."""

    @cached_property
    def v_tensor(self) -> np.ndarray:
        """V[a, b, c, k]: coefficient of e_k in V_{e_a, e_b}(e_c)."""
        p, d, t = self.p, self.dim, self.alg.table
        # P[a, b, m]: e_a times bar(e_b)
        P = ff.matmul(self.inv.T, t.transpose(1, 0, 2).reshape(d, d * d), p)
        P = P.reshape(d, d, d).transpose(1, 0, 2)
        # R[a, b, c, k] = ((e_a bar e_b) e_c)_k
        R = ff.matmul(P.reshape(d * d, d), t.reshape(d, d * d), p).reshape(d, d, d, d)
        V = R + np.einsum("cbak->abck", R) - np.einsum("cabk->abck", R)
        return np.mod(V, p).astype(np.int16 if p < 100 else np.int64)

    def v_operator(self, a, b) -> np.ndarray:
        """Matrix of c -> (a bbar)c + (c bbar)a - (c abar)b."""
        p = self.p
        a, b = ff.as_residues(a, p), ff.as_residues(b, p)
        ab = ff.matmul(a, self.v_tensor.reshape(self.dim, -1).astype(np.int64), p)
        out = ff.matmul(b, ab.reshape(self.dim, -1), p).reshape(self.dim, self.dim)
        return out.T.copy()

    def basis_v_operators(self) -> np.ndarray:
        """Stack of the d^2 operators V_{e_a, e_b}, index a*d + b."""
        d = self.dim
        return self.v_tensor.transpose(0, 1, 3, 2).reshape(d * d, d, d).astype(np.int64)

    def triple(self, a, b, c) -> np.ndarray:
        return ff.matmul(self.v_operator(a, b), ff.as_residues(c, self.p), self.p)

    def t_eps(self, T) -> np.ndarray:
        """T - L_{T(1) + bar T(1)}."""
        p = self.p
        T1 = ff.matmul(T, self.unit, p)
        return np.mod(T - self.L(np.mod(T1 + self.bar(T1), p)), p)

    def t_delta(self, T) -> np.ndarray:
        """x -> T(x) + x bar(T(1))."""
        p = self.p
        T1 = ff.matmul(T, self.unit, p)
        return np.mod(T + self.R(self.bar(T1)), p)

    @cached_property
    def instrl(self) -> Subspace:
        """Span of all V_{a,b}, as flattened operators."""
        return operator_span(self.basis_v_operators(), self.p, self.dim)

    def instrl_operators(self) -> np.ndarray:
        return self.instrl.basis.reshape(-1, self.dim, self.dim)

    def instrl_is_closed(self) -> bool:
        ops = self.instrl_operators()
        p, d = self.p, self.dim
        for x in ops:
            br = np.mod(ff.matmul(x[None], ops, p) - ff.matmul(ops, x[None], p), p)
            if not self.instrl.contains(br.reshape(-1, d * d)):
                return False
        return True

    # -- axioms ------------------------------------------------------------
    def check_str1(self, mode="auto", seed=0x5EED, samples=10 ** 6) -> IdentityReport:
        b = Binding(self.p, {"V": self.v_tensor})
        return _check_budgeted("str1", b, mode, seed, samples)

    def check_str2(self, mode="auto", seed=0x5EED, samples=10 ** 6) -> IdentityReport:
        b = Binding(self.p, {"M": self.alg.table, "B": self.inv.T})
        return _check_budgeted("str2", b, mode, seed, samples)

    def axiom_reports(self, mode="auto", seed=0x5EED, samples=10 ** 6) -> list:
        return [self.check_str1(mode, seed, samples), self.check_str2(mode, seed, samples)]

    def verify(self, mode="auto", seed=0x5EED, samples=10 ** 6) -> "StructurableAlgebra":
        problems = self.involution_problems()
        if self.unit is None:
            problems.append("algebra has no unit")
        if problems:
            raise AxiomError("; ".join(problems))
        for rep in self.axiom_reports(mode, seed, samples):
            if not rep.passed:
                raise AxiomError(rep.summary())
        return self


def as_structurable(A: InvolutiveAlgebra, verify: bool = True, **kw) -> StructurableAlgebra:
    S = StructurableAlgebra(A.alg, A.inv)
    return S.verify(**kw) if verify else S


# ---------------------------------------------------------------------------
# constructors

@dataclass(frozen=True, eq=False)
class TensorStructurable(StructurableAlgebra):
    """C1 (x) C2, remembering its two factors."""

    C1: CompositionAlgebra = None
    C2: CompositionAlgebra = None


def tensor_structurable(C1: CompositionAlgebra, C2: CompositionAlgebra,
                        verify: bool = True, **kw) -> "TensorStructurable":
    """C1 (x) C2 with the product of the canonical involutions; e_i (x) f_j at index i*d2 + j."""
    if C1.p != C2.p:
        raise ValueError("factors must share the characteristic")
    d1, d2 = C1.dim, C2.dim
    t = np.einsum("ijk,abc->iajbkc", C1.alg.table, C2.alg.table).reshape(d1 * d2, d1 * d2, d1 * d2)
    names = tuple(f"{a}*{b}" for a in C1.alg.names for b in C2.alg.names) if d2 > 1 else C1.alg.names
    if d1 == 1 and d2 > 1:
        names = C2.alg.names
    A = TensorStructurable(Algebra(C1.p, t, names), np.kron(C1.conj, C2.conj), C1, C2)
    return A.verify(**kw) if verify else A


def tensor_case(d1: int, d2: int, p: int = 3, verify: bool = True, **kw) -> "TensorStructurable":
    """Split C1 (x) C2 with dim C1 = d1, dim C2 = d2."""
    C1, C2 = split_composition(d1, p), split_composition(d2, p)
    return tensor_structurable(C1, C2, verify=verify, **kw)


def associative_with_involution(alg: Algebra, inv, verify: bool = True, **kw) -> StructurableAlgebra:
    if not alg.is_associative():
        raise ValueError("algebra is not associative")
    A = StructurableAlgebra(alg, inv)
    return A.verify(**kw) if verify else A


def transpose_involution(n: int, p: int) -> InvolutiveAlgebra:
    """Mat_n with the transpose."""
    alg = matrix_algebra(n, p)
    inv = np.zeros((n * n, n * n), dtype=np.int64)
    for r in range(n):
        for c in range(n):
            inv[n * c + r, n * r + c] = 1
    return InvolutiveAlgebra(alg, inv)


def symplectic_involution(m: int, p: int) -> InvolutiveAlgebra:
    """Mat_m (m even) with the adjoint for the standard skew form J = (0, I; -I, 0)."""
    if m % 2:
        raise ValueError("a symplectic involution needs even size")
    alg = matrix_algebra(m, p)
    J = standard_skew_form(m, p)
    Jinv = ff.inverse(J, p)
    inv = np.zeros((m * m, m * m), dtype=np.int64)
    for r in range(m):
        for c in range(m):
            E = np.zeros((m, m), dtype=np.int64)
            E[r, c] = 1
            # adjoint w.r.t. x^T J y: J^{-1} E^T J
            inv[:, m * r + c] = ff.matmul(ff.matmul(Jinv, E.T, p), J, p).reshape(-1)
    return InvolutiveAlgebra(alg, inv)


def exchange_involution(n: int, p: int) -> InvolutiveAlgebra:
    """End(X) + End(X)^op with (a, b) -> (b, a); End(X) first, then the opposite copy."""
    M = matrix_algebra(n, p)
    names = tuple(M.names) + tuple(f"{x}'" for x in M.names)
    alg = direct_product(M, opposite(M), names)
    k = n * n
    inv = np.zeros((2 * k, 2 * k), dtype=np.int64)
    inv[k:, :k] = ff.identity(k)
    inv[:k, k:] = ff.identity(k)
    return InvolutiveAlgebra(alg, inv)


def standard_skew_form(m: int, p: int) -> np.ndarray:
    r = m // 2
    J = np.zeros((m, m), dtype=np.int64)
    J[:r, r:] = ff.identity(r)
    J[r:, :r] = -ff.identity(r)
    return np.mod(J, p)


def hermitian_form_structurable(E: InvolutiveAlgebra, action, h, verify: bool = True,
                                **kw) -> StructurableAlgebra:
    """E + W with (e1 + x1)(e2 + x2) = (e1 e2 + h(x2, x1)) + (bar(e1) o x2 + e2 o x1).

    ``action[i]`` is the matrix of e_i o - on W; ``h[x, y]`` is the vector h(w_x, w_y) in E.
    """
    p, dE = E.p, E.dim
    dW = np.shape(action)[-1]
    action = ff.as_residues(np.asarray(action, dtype=np.int64).reshape(dE, dW, dW), p)
    h = ff.as_residues(np.asarray(h, dtype=np.int64).reshape(dW, dW, dE), p)
    _check_hermitian_data(E, action, h)
    d = dE + dW
    t = np.zeros((d, d, d), dtype=np.int64)
    t[:dE, :dE, :dE] = E.alg.table
    t[dE:, dE:, :dE] = h.transpose(1, 0, 2)                     # w_i w_j = h(w_j, w_i)
    # e_i w_j = bar(e_i) o w_j
    bar_act = np.einsum("ai,akl->ilk", E.inv, action)            # [i, j, k] coefficient of w_k
    t[:dE, dE:, dE:] = bar_act
    # w_j e_i = e_i o w_j
    t[dE:, :dE, dE:] = action.transpose(2, 0, 1)
    inv = np.zeros((d, d), dtype=np.int64)
    inv[:dE, :dE] = E.inv
    inv[dE:, dE:] = ff.identity(dW)
    names = tuple(E.alg.names) + tuple(f"w{i + 1}" for i in range(dW))
    A = StructurableAlgebra(Algebra(p, t, names), inv)
    return A.verify(**kw) if verify else A


def _check_hermitian_data(E: InvolutiveAlgebra, action, h):
    p = E.p
    if not E.alg.is_associative():
        raise ValueError("E is not associative")
    if E.involution_problems():
        raise ValueError("; ".join(E.involution_problems()))
    # (e_i e_j) o x = e_i o (e_j o x) and 1 o x = x
    lhs = ff.einsum("ijk,kab->ijab", E.alg.table, action, p=p)
    rhs = ff.einsum("iac,jcb->ijab", action, action, p=p)
    if not np.array_equal(lhs, rhs):
        raise ValueError("action is not a module action of E")
    u = E.unit
    if u is not None and not np.array_equal(ff.einsum("i,iab->ab", u, action, p=p), ff.identity(action.shape[-1])):
        raise ValueError("the unit of E does not act as the identity")
    # h(y, x) = bar h(x, y)
    if not np.array_equal(h.transpose(1, 0, 2), ff.einsum("xyk,jk->xyj", h, E.inv, p=p)):
        raise ValueError("h is not hermitian: h(y, x) != bar h(x, y)")
    # h(e o x, y) = e h(x, y)
    # e_i o w_x = sum_a action[i, a, x] w_a
    lhs = ff.einsum("iax,ayk->ixyk", action, h, p=p)
    rhs = ff.einsum("ijk,xyj->ixyk", E.alg.table, h, p=p)
    if not np.array_equal(lhs, rhs):
        raise ValueError("h is not E-linear in its first argument")


def smirnov_embedding(C: CompositionAlgebra) -> Subspace:
    """Kernel of x (x) x -> n(x) on the symmetric tensors of C (x) C."""
    p, d = C.p, C.dim
    sym_rows = []
    for i in range(d):
        for j in range(i, d):
            v = np.zeros((d, d), dtype=np.int64)
            v[i, j] += 1
            v[j, i] += 1
            sym_rows.append(v.reshape(-1))
    sym = Subspace.span(np.array(sym_rows), p, d * d)
    # e_i (x) e_j -> n(e_i, e_j) / 2
    f = np.mod(C.gram * ff.half(p), p).reshape(-1)
    return sym.intersect(ff.kernel_basis(f[None, :], p))


def smirnov_algebra(C: CompositionAlgebra) -> InvolutiveAlgebra:
    """The 35-dimensional subalgebra T(C) of C (x) C, product and involution restricted."""
    if C.dim != 8:
        raise ValueError("the construction needs a Cayley algebra")
    p = C.p
    big = tensor_structurable(C, C, verify=False)
    T = smirnov_embedding(C)
    b = T.basis
    prods = ff.einsum("ai,bj,ijk->abk", b, b, big.alg.table, p=p).reshape(-1, big.dim)
    if not T.contains(prods):
        raise AxiomError("kernel of the norm map is not closed under the product")
    return big.restrict(T)


# ---------------------------------------------------------------------------
# invertible skew elements

def invertible_skew_candidates(A: InvolutiveAlgebra, random_bound: int = 1000, seed: int = 0x5EED):
    """Basis vectors of S, then pairwise sums, then seeded random elements of S."""
    S = A.skew.basis
    for v in S:
        yield v
    for i, j in combinations(range(S.shape[0]), 2):
        yield np.mod(S[i] + S[j], A.p)
    if S.shape[0]:
        rng = np.random.default_rng(seed)
        for _ in range(random_bound):
            c = rng.integers(0, A.p, S.shape[0])
            yield ff.matmul(c, S, A.p)


def choose_invertible_skew(A: InvolutiveAlgebra, exhaustive_limit: int = 3 ** 8,
                           random_bound: int = 1000, seed: int = 0x5EED):
    """First skew s with L_s invertible in a fixed search order, or None.

    For tensor products the candidates are the S-basis and pairwise sums, tested
    by Q(s) != 0.  Otherwise basis, pairwise sums and seeded random vectors are
    tried; if none works and the skew space has at most ``exhaustive_limit``
    elements, it is enumerated completely before giving up.
    """
    if A.skew.dim == 0:
        return None
    if isinstance(A, TensorStructurable):
        data = albert_data(A, verify=False)
        n = data.dim
        cands = [np.eye(n, dtype=np.int64)[i] for i in range(n)]
        cands += [np.eye(n, dtype=np.int64)[i] + np.eye(n, dtype=np.int64)[j]
                  for i, j in combinations(range(n), 2)]
        for c in cands:
            if data.Q(c) != 0:
                s = data.to_algebra(c)
                if ff.rank(A.L(s), A.p) != A.dim:
                    raise AxiomError("Q(s) != 0 but L_s is singular")
                return s
        return None
    for s in invertible_skew_candidates(A, random_bound, seed):
        if ff.rank(A.L(s), A.p) == A.dim:
            return s
    if A.p ** A.skew.dim <= exhaustive_limit:
        found = skew_with_invertible_left_mul(A)
        if found.shape[0]:
            return found[0]
    return None


def all_skew_elements(A: InvolutiveAlgebra) -> np.ndarray:
    """Every element of the skew space, in lexicographic coordinate order."""
    S = A.skew.basis
    k = S.shape[0]
    coords = np.array(np.unravel_index(np.arange(A.p ** k), (A.p,) * k)).T
    return ff.matmul(coords, S, A.p) if k else np.zeros((1, A.dim), dtype=np.int64)


def skew_left_mul_ranks(A: InvolutiveAlgebra, chunk: int = 512) -> tuple:
    """(elements, rank of L_s) for every skew s."""
    elems = all_skew_elements(A)
    Ls = np.einsum("si,ijk->skj", elems, A.alg.table) % A.p      # L_s[k, j]
    ranks = np.concatenate([ff.batch_rank(Ls[i:i + chunk], A.p) for i in range(0, len(Ls), chunk)])
    return elems, ranks


def skew_with_invertible_left_mul(A: InvolutiveAlgebra) -> np.ndarray:
    elems, ranks = skew_left_mul_ranks(A)
    return elems[ranks == A.dim]


# ---------------------------------------------------------------------------
# Albert form on the skew part of C1 (x) C2

@dataclass(frozen=True, eq=False)
class AlbertFormData:
    A: TensorStructurable
    basis: np.ndarray       # rows: S1 (x) 1 then 1 (x) S2, as vectors of A
    n1: int                 # dim S1
    gram: np.ndarray        # polar form Q(a, b) on S coordinates
    sharp: np.ndarray       # matrix of (s1 + s2) -> s1 - s2 on S coordinates

    @property
    def p(self) -> int:
        return self.A.p

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def Q(self, c) -> int:
        c = ff.as_residues(c, self.p)
        return int(np.mod(c @ self.gram @ c * ff.half(self.p), self.p))

    def Q_many(self, cs) -> np.ndarray:
        cs = ff.as_residues(np.atleast_2d(cs), self.p)
        return np.mod(np.einsum("bi,ij,bj->b", cs, self.gram, cs) * ff.half(self.p), self.p)

    def polar(self, a, b) -> int:
        return int(np.mod(ff.as_residues(a, self.p) @ self.gram @ ff.as_residues(b, self.p), self.p))

    def to_algebra(self, c) -> np.ndarray:
        return ff.matmul(ff.as_residues(c, self.p), self.basis, self.p)

    def from_algebra(self, x) -> np.ndarray:
        return ff.solve(self.basis.T, ff.as_residues(x, self.p), self.p)

    def sharp_of(self, c) -> np.ndarray:
        return ff.matmul(self.sharp, ff.as_residues(c, self.p), self.p)

    @cached_property
    def _left_stack(self) -> np.ndarray:
        d = self.A.dim
        return np.array([self.A.L(b) for b in self.basis]).reshape(self.dim, d * d)

    def L(self, c) -> np.ndarray:
        d = self.A.dim
        return ff.matmul(ff.as_residues(c, self.p), self._left_stack, self.p).reshape(d, d)

    def L_sharp(self, c) -> np.ndarray:
        return self.L(self.sharp_of(c))

    def m_operator(self, a, b) -> np.ndarray:
        """L_a L_{b#} - L_b L_{a#} for S-coordinates a, b."""
        p = self.p
        return np.mod(ff.matmul(self.L(a), self.L_sharp(b), p) - ff.matmul(self.L(b), self.L_sharp(a), p), p)

    def invertible_inverse(self, s) -> np.ndarray:
        """t = -s# / Q(s), in S coordinates."""
        q = self.Q(s)
        if q == 0:
            raise ValueError("Q(s) = 0")
        return np.mod(-ff.inv(q, self.p) * self.sharp_of(s), self.p)

    def orthogonal_complement(self, t) -> Subspace:
        """{a in S : Q(a, t) = 0}, in S coordinates."""
        row = ff.matmul(self.gram, ff.as_residues(t, self.p), self.p)
        return ff.kernel_basis(row[None, :], self.p)


def albert_data(A: TensorStructurable, verify: bool = True) -> AlbertFormData:
    C1, C2 = A.C1, A.C2
    p = A.p
    S1, S2 = C1.skew_subspace().basis, C2.skew_subspace().basis
    rows = [np.kron(s, C2.unit) for s in S1] + [np.kron(C1.unit, s) for s in S2]
    basis = np.mod(np.array(rows, dtype=np.int64).reshape(-1, A.dim), p)
    k1, k2 = S1.shape[0], S2.shape[0]
    g = np.zeros((k1 + k2, k1 + k2), dtype=np.int64)
    g[:k1, :k1] = S1 @ C1.gram @ S1.T
    g[k1:, k1:] = -(S2 @ C2.gram @ S2.T)
    sharp = np.diag([1] * k1 + [-1] * k2).astype(np.int64)
    data = AlbertFormData(A, basis, k1, np.mod(g, p), np.mod(sharp, p))
    if verify:
        bad = [r for r in albert_reports(data) if not r.passed]
        if bad:
            raise AxiomError("; ".join(r.summary() for r in bad))
    return data


# -- the Albert-form identities ------------------------------------------------

def _quadratic_points(n: int) -> np.ndarray:
    """e_i and e_i + e_j: values of a quadratic map here determine it (p odd)."""
    eye = np.eye(n, dtype=np.int64)
    pts = [eye[i] for i in range(n)] + [eye[i] + eye[j] for i, j in combinations(range(n), 2)]
    return np.array(pts).reshape(-1, n)


@dataclass
class AlbertCheck:
    name: str
    passed: bool
    checked: int
    counterexample: dict | None = None

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        s = f"{self.name}: {'pass' if self.passed else 'FAIL'} ({self.checked} tuples)"
        if self.counterexample is not None:
            s += f" counterexample {self.counterexample}"
        return s


def _albert_identities(data: AlbertFormData, literal_allq3: bool = False):
    """name -> (quadratic variables, linear variables, residual function)."""
    p, A = data.p, data.A
    one = A.unit
    I = ff.identity(A.dim)

    def mm(*ms):
        out = ms[0]
        for m in ms[1:]:
            out = ff.matmul(out, m, p)
        return out

    def allq1(a):
        La, Las = data.L(a), data.L_sharp(a)
        q = data.Q(a)
        return np.concatenate([np.mod(mm(La, Las) + q * I, p).ravel(), np.mod(mm(Las, La) + q * I, p).ravel()])

    def allq2(a, b):
        x, y = data.to_algebra(a), data.to_algebra(data.sharp_of(b))
        lhs = A.alg.multiply(A.alg.multiply(x, y), x)
        return np.mod(lhs - data.Q(a) * data.to_algebra(b) + data.polar(a, b) * x, p)

    def allq3(a, b):
        La, Lb = data.L(a), data.L(b)
        last = Lb if literal_allq3 else La
        return np.mod(mm(La, data.L_sharp(b), La) - data.Q(a) * Lb + data.polar(a, b) * last, p).ravel()

    def allq4(a, b, c):
        La, Lbs, Lcs = data.L(a), data.L_sharp(b), data.L_sharp(c)
        lhs = mm(La, Lbs, La, Lcs)
        rhs = data.Q(a) * mm(data.L(b), Lcs) - data.polar(a, b) * mm(La, Lcs)
        return np.mod(lhs - rhs, p).ravel()

    def allq5(a, b):
        x, y = data.to_algebra(a), data.to_algebra(data.sharp_of(b))
        xy = A.alg.multiply(x, y)
        out = A.alg.multiply(xy, xy) + data.polar(a, b) * xy + data.Q(a) * data.Q(b) * one
        return np.mod(out, p)

    return {
        "AllQ1": (("a",), (), allq1),
        "AllQ2": (("a",), ("b",), allq2),
        "AllQ3": (("a",), ("b",), allq3),
        "AllQ4": (("a",), ("b", "c"), allq4),
        "AllQ5": (("a", "b"), (), allq5),
    }


def albert_reports(data: AlbertFormData, names=None, literal_allq3: bool = False,
                   random_samples: int = 0, seed: int = 0x5EED) -> list:
    """Check the Albert identities.

    Quadratic arguments range over e_i and e_i + e_j, linear ones over e_i; since
    the identities are homogeneous of degree at most 2 in each argument, passing
    on these points proves them on all of S.  ``random_samples`` adds seeded
    random vectors on top.
    """
    n = data.dim
    quad, lin = _quadratic_points(n), np.eye(n, dtype=np.int64)
    rng = np.random.default_rng(seed)
    out = []
    for name, (qv, lv, fn) in _albert_identities(data, literal_allq3).items():
        if names is not None and name not in names:
            continue
        label = name + (" (as printed)" if literal_allq3 and name == "AllQ3" else "")
        pools = [quad] * len(qv) + [lin] * len(lv)
        shape = tuple(len(x) for x in pools)
        total = int(np.prod(shape))
        report = AlbertCheck(label, True, total)
        for flat in range(total):
            idx = np.unravel_index(flat, shape)
            args = [pool[i] for pool, i in zip(pools, idx)]
            if fn(*args).any():
                report = AlbertCheck(label, False, flat + 1,
                                     {v: a.tolist() for v, a in zip(qv + lv, args)})
                break
        if report.passed and random_samples:
            for k in range(random_samples):
                args = [rng.integers(0, data.p, n) for _ in pools]
                if fn(*args).any():
                    report = AlbertCheck(label, False, total + k + 1,
                                         {v: a.tolist() for v, a in zip(qv + lv, args)})
                    break
            else:
                report.checked += random_samples
        out.append(report)
    return out


def sharp_is_isometry(data: AlbertFormData) -> bool:
    p = data.p
    sq = ff.matmul(data.sharp, data.sharp, p)
    g2 = ff.matmul(ff.matmul(data.sharp.T, data.gram, p), data.sharp, p)
    return np.array_equal(sq, ff.identity(data.dim)) and np.array_equal(g2, data.gram)


def albert_form_matches_norms(data: AlbertFormData) -> bool:
    """Q(s1 + s2) = n1(s1) - n2(s2) on every basis vector of S."""
    A, p = data.A, data.p
    for i, row in enumerate(data.basis):
        c = np.eye(data.dim, dtype=np.int64)[i]
        if i < data.n1:
            want = A.C1.norm(A.C1.skew_subspace().basis[i])
        else:
            want = -A.C2.norm(A.C2.skew_subspace().basis[i - data.n1])
        if data.Q(c) != want % p:
            return False
    return True


# ---------------------------------------------------------------------------
# operator spans built from left multiplications

def ls_ls_span(A: StructurableAlgebra) -> Subspace:
    """span{L_a L_b : a, b in S}."""
    p, d = A.p, A.dim
    Ls = np.array([A.L(s) for s in A.skew.basis]).reshape(-1, d, d)
    prods = ff.matmul(Ls[:, None], Ls[None, :], p).reshape(-1, d, d)
    return operator_span(prods, p, d)


def m_span(data: AlbertFormData, sub: Subspace | None = None) -> Subspace:
    """span{M_{a,b}} over basis pairs of ``sub`` (S coordinates; default all of S)."""
    basis = np.eye(data.dim, dtype=np.int64) if sub is None else sub.basis
    d = data.A.dim
    ops = [data.m_operator(basis[i], basis[j]) for i, j in combinations(range(basis.shape[0]), 2)]
    return operator_span(np.array(ops).reshape(-1, d, d), data.p, d)


def m_delta_matches(data: AlbertFormData) -> bool:
    """M^delta_{a,b}(c) = 2(Q(a,c) b - Q(b,c) a) on basis triples."""
    A, p, n = data.A, data.p, data.dim
    eye = np.eye(n, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            Md = A.t_delta(data.m_operator(eye[i], eye[j]))
            for k in range(n):
                lhs = ff.matmul(Md, data.to_algebra(eye[k]), p)
                rhs = 2 * (data.polar(eye[i], eye[k]) * data.to_algebra(eye[j])
                           - data.polar(eye[j], eye[k]) * data.to_algebra(eye[i]))
                if not np.array_equal(lhs, np.mod(rhs, p)):
                    return False
    return True


@dataclass
class CliffordImage:
    s: np.ndarray               # S coordinates
    t: np.ndarray
    complement: Subspace        # S' in S coordinates
    full_dim: int | None
    even_dim: int | None
    anticommutator_ok: bool
    commutator_ok: bool


def clifford_image_dims(data: AlbertFormData, s, full: bool = True, even: bool = True) -> CliffordImage:
    """Generated algebras of Phi(a) = L_a L_s (a in S') and of the products Phi(a)Phi(b).

    ``s`` is given in S coordinates.  Also checks the Clifford relation and
    Phi(a)Phi(b) - Phi(b)Phi(a) = Q(s) M_{a,b} on basis pairs of S'.
    """
    p, d = data.p, data.A.dim
    s = ff.as_residues(s, p)
    t = data.invertible_inverse(s)
    Sp = data.orthogonal_complement(t)
    Ls = data.L(s)
    phis = np.array([ff.matmul(data.L(a), Ls, p) for a in Sp.basis]).reshape(-1, d, d)
    qs = data.Q(s)
    I = ff.identity(d)
    anti_ok = comm_ok = True
    pairs = ff.matmul(phis[:, None], phis[None, :], p)
    for i in range(len(phis)):
        for j in range(len(phis)):
            a, b = Sp.basis[i], Sp.basis[j]
            qt = np.mod(-data.polar(a, b) * qs, p)
            if not np.array_equal(np.mod(pairs[i, j] + pairs[j, i], p), np.mod(qt * I, p)):
                anti_ok = False
            if not np.array_equal(np.mod(pairs[i, j] - pairs[j, i], p), np.mod(qs * data.m_operator(a, b), p)):
                comm_ok = False
    full_dim = assoc_subalgebra_generated(phis, p, True, d)[0] if full else None
    even_dim = None
    if even:
        gens = pairs[np.triu_indices(len(phis), 1)] if len(phis) > 1 else np.zeros((0, d, d), dtype=np.int64)
        even_dim = assoc_subalgebra_generated(gens, p, True, d)[0]
    return CliffordImage(s, t, Sp, full_dim, even_dim, anti_ok, comm_ok)
