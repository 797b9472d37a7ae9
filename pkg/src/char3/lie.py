"""Graded Lie algebras built from triple systems and structurable algebras.

Constructors here fix their basis orders (documented on each function) so that
structure constants can be compared bit for bit across routes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import field as ff
from .algebra import Algebra, homomorphism_defects, operator_span
from .field import Subspace
from .identities import Binding, IdentityReport, check_identity, load
from .jternary import SEED, JTernaryPackage, SuiteReport, TripleSystem, _run
from .structurable import AxiomError, StructurableAlgebra, choose_invertible_skew


# ---------------------------------------------------------------------------
# sl(V) on a symplectic plane

@dataclass(frozen=True)
class ShortSL2Data:
    """V with basis (p, q), (p|q) = 1, and sl(V) with basis E, H, F."""

    form: np.ndarray = field(default_factory=lambda: np.array([[0, 1], [-1, 0]]))
    E: np.ndarray = field(default_factory=lambda: np.array([[0, 1], [0, 0]]))
    H: np.ndarray = field(default_factory=lambda: np.array([[1, 0], [0, -1]]))
    F: np.ndarray = field(default_factory=lambda: np.array([[0, 0], [1, 0]]))

    @property
    def basis(self) -> tuple:
        return (self.E, self.H, self.F)

    def pairing(self, u, v) -> int:
        return int(np.asarray(u) @ self.form @ np.asarray(v))

    def gamma(self, u, v) -> np.ndarray:
        """Matrix of w -> (u|w)v + (v|w)u."""
        u, v = np.asarray(u), np.asarray(v)
        return np.outer(v, u @ self.form) + np.outer(u, v @ self.form)

    @staticmethod
    def coordinates(m) -> np.ndarray:
        """(e, h, f) with m = eE + hH + fF; m must be traceless."""
        m = np.asarray(m)
        if m[0, 0] + m[1, 1] != 0:
            raise ValueError("not traceless")
        return np.array([m[0, 1], m[0, 0], m[1, 0]])


# ---------------------------------------------------------------------------
# graded Lie algebras

@dataclass(frozen=True, eq=False)
class GradedLieAlgebra:
    """A Lie algebra with a homogeneous basis; grading[i] is the degree of e_i."""

    L: Algebra
    grading: np.ndarray | None = None
    sl2: np.ndarray | None = None          # rows E, H, F
    label: str = ""

    def __post_init__(self):
        if self.grading is not None:
            g = np.asarray(self.grading, dtype=np.int64)
            if g.shape != (self.dim,):
                raise ValueError("one degree per basis vector is required")
            object.__setattr__(self, "grading", g)
        if self.sl2 is not None:
            object.__setattr__(self, "sl2", ff.as_residues(self.sl2, self.p).reshape(3, self.dim))

    @property
    def p(self) -> int:
        return self.L.p

    @property
    def dim(self) -> int:
        return self.L.dim

    @property
    def names(self) -> tuple:
        return self.L.names

    def bracket(self, x, y) -> np.ndarray:
        return self.L.multiply(x, y)

    def ad(self, x) -> np.ndarray:
        return self.L.left_mul(x)

    def indices(self, degree: int) -> np.ndarray:
        return np.nonzero(self.grading == degree)[0]

    def piece(self, degree: int) -> Subspace:
        idx = self.indices(degree)
        return Subspace(self.p, self.dim, ff.identity(self.dim)[idx])

    def piece_dims(self) -> dict:
        return {int(k): int((self.grading == k).sum()) for k in np.unique(self.grading)}

    # -- checks ------------------------------------------------------------
    def jacobi_report(self, mode="auto", seed=SEED, samples=10 ** 6) -> IdentityReport:
        return check_identity(load("jacobi"), Binding(self.p, {"B": self.L.table}),
                              mode=mode, seed=seed, samples=samples)

    def anticommutativity_report(self) -> IdentityReport:
        return check_identity(load("anticommutative"), Binding(self.p, {"B": self.L.table}),
                              mode="exhaustive")

    def grading_problems(self) -> list:
        if self.grading is None:
            return []
        out = []
        t, g = self.L.table, self.grading
        target = g[:, None] + g[None, :]
        for i, j, k in np.argwhere(t):
            if g[k] != target[i, j]:
                out.append(f"[{self.names[i]}, {self.names[j]}] has a component outside degree {target[i, j]}")
                break
        return out

    def sl2_problems(self) -> list:
        if self.sl2 is None:
            return []
        p = self.p
        E, H, F = self.sl2
        out = []
        if not np.array_equal(self.bracket(E, F), H):
            out.append("[E,F] != H")
        if not np.array_equal(self.bracket(H, E), np.mod(2 * E, p)):
            out.append("[H,E] != 2E")
        if not np.array_equal(self.bracket(H, F), np.mod(-2 * F, p)):
            out.append("[H,F] != -2F")
        if self.grading is not None:
            # at p = 3 degrees collide mod p, so each homogeneous basis vector is
            # checked against its own degree rather than by eigenspaces
            adH = self.ad(H)
            if not np.array_equal(adH, np.mod(np.diag(self.grading), p)):
                out.append("ad H is not the grading derivation")
            if not (self.grading[self._support(E)] == 2).all() or not (self.grading[self._support(F)] == -2).all():
                out.append("E or F not of degree +-2")
        return out

    def _support(self, v) -> np.ndarray:
        return np.nonzero(v)[0]

    def reports(self, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
        rep = SuiteReport(self.label or "Lie algebra")
        rep.reports.append(self.anticommutativity_report())
        rep.reports.append(self.jacobi_report(mode, seed, samples))
        gp = self.grading_problems()
        rep.reports.append(IdentityReport("grading", not gp, "exhaustive", self.dim ** 2,
                                          {"problem": gp[0]} if gp else None))
        sp = self.sl2_problems()
        rep.reports.append(IdentityReport("sl2 triple", not sp, "exhaustive", 3,
                                          {"problem": sp[0]} if sp else None))
        return rep

    def verify(self, **kw) -> "GradedLieAlgebra":
        rep = self.reports(**kw)
        if not rep.passed:
            raise AxiomError(rep.summary())
        return self


def _coords(sub: Subspace, vecs, what: str) -> np.ndarray:
    try:
        return sub.coordinates(vecs)
    except ValueError:
        raise AxiomError(f"{what} leaves its expected span") from None


def _commutators(ops, p):
    a = ff.matmul(ops[:, None], ops[None, :], p)
    return np.mod(a - a.transpose(1, 0, 2, 3), p)


# ---------------------------------------------------------------------------
# L(T) for a J-ternary algebra

def build_LT(pkg: JTernaryPackage, verify: bool = True, **kw) -> GradedLieAlgebra:
    """(sl(V) (x) J) + (V (x) T) + S(T,T).

    Basis: E(x)J, H(x)J, F(x)J (each in J-basis order), p(x)T, q(x)T, then the
    canonical basis of S(T,T).  The sl2-triple is (E(x)1, H(x)1, F(x)1).
    """
    T = pkg.T
    p, d = T.p, T.dim
    sv = ShortSL2Data()
    if d:
        Jops = pkg.j_operators()
        jp, act, unit = pkg.jp, pkg.act, pkg.unit
        Kc = np.mod(-pkg.pair, p)
    else:
        Jops = np.zeros((1, 0, 0), dtype=np.int64)
        jp = np.ones((1, 1, 1), dtype=np.int64)
        act = np.zeros((1, 0, 0), dtype=np.int64)
        unit = np.ones(1, dtype=np.int64)
        Kc = np.zeros((0, 0, 1), dtype=np.int64)
    n = Jops.shape[0]
    Sspan = T.s_span(1) if d else Subspace.zero(p, 0)
    Sops = Sspan.basis.reshape(-1 if d else 0, d, d)
    k = Sops.shape[0]
    oJ, oT, oS = 0, 3 * n, 3 * n + 2 * d
    N = oS + k
    t = np.zeros((N, N, N), dtype=np.int64)
    half = ff.half(p)
    sl = sv.basis
    uv = np.eye(2, dtype=np.int64)

    def blk(f):
        return slice(oJ + f * n, oJ + (f + 1) * n)

    def vblk(u):
        return slice(oT + u * d, oT + (u + 1) * d)

    sS = slice(oS, N)
    comm_J = _commutators(Jops, p).reshape(n * n, d * d)
    comm_J_S = _coords(Sspan, comm_J, "[a, b] for a, b in J").reshape(n, n, k) if d else np.zeros((n, n, 0), dtype=np.int64)
    for f in range(3):
        for g in range(3):
            fg = sl[f] @ sl[g] - sl[g] @ sl[f]
            c = sv.coordinates(fg)
            for h in range(3):
                if c[h]:
                    t[blk(f), blk(g), blk(h)] += c[h] * jp
            tr = int(np.trace(sl[f] @ sl[g]))
            if tr:
                t[blk(f), blk(g), sS] += half * tr * comm_J_S
    # [f(x)a, u(x)x] = f(u) (x) a(x);  act[a, x, y] = coordinate y of a(e_x)
    for f in range(3):
        for u in range(2):
            fu = sl[f] @ uv[u]
            for v in range(2):
                if fu[v]:
                    t[blk(f), vblk(u), vblk(v)] += fu[v] * act
                    t[vblk(u), blk(f), vblk(v)] -= fu[v] * act.transpose(1, 0, 2)
    # [u(x)x, v(x)y] = gamma_{u,v} (x) K(x,y) + (u|v) S(x,y)
    S_xy = _coords(Sspan, T.s_ops(1).reshape(d * d, d * d), "S(x, y)").reshape(d, d, k) if d else None
    for u in range(2):
        for v in range(2):
            c = sv.coordinates(sv.gamma(uv[u], uv[v]))
            for h in range(3):
                if c[h]:
                    t[vblk(u), vblk(v), blk(h)] += c[h] * Kc
            w = sv.pairing(uv[u], uv[v])
            if w and d:
                t[vblk(u), vblk(v), sS] += w * S_xy
    if k:
        # [phi, f(x)a] = f (x) [phi, a];  [phi, u(x)x] = u (x) phi(x)
        pa = ff.matmul(Sops[:, None], Jops[None], p)
        ap = ff.matmul(Jops[None], Sops[:, None], p)
        pJ = _coords(pkg.J, np.mod(pa - ap, p).reshape(k * n, d * d), "[phi, a]").reshape(k, n, n)
        for f in range(3):
            t[sS, blk(f), blk(f)] += pJ
            t[blk(f), sS, blk(f)] -= pJ.transpose(1, 0, 2)
        img = Sops.transpose(0, 2, 1)              # [i, x, y] = coordinate y of phi_i(e_x)
        for u in range(2):
            t[sS, vblk(u), vblk(u)] += img
            t[vblk(u), sS, vblk(u)] -= img.transpose(1, 0, 2)
        cS = _coords(Sspan, _commutators(Sops, p).reshape(k * k, d * d), "[phi, psi]")
        t[sS, sS, sS] += cS.reshape(k, k, k)
    names = ([f"{f}*j{a}" for f in "EHF" for a in range(n)]
             + [f"{u}*{x}" for u in "pq" for x in (T.names or [])]
             + [f"S{i}" for i in range(k)])
    grading = np.array([2] * n + [0] * n + [-2] * n + [1] * d + [-1] * d + [0] * k)
    sl2 = np.zeros((3, N), dtype=np.int64)
    for f in range(3):
        sl2[f, blk(f)] = unit
    G = GradedLieAlgebra(Algebra(p, t, names), grading, sl2, "L(T)")
    if verify:
        G.verify(**kw)
    return G


def lt_delta(G: GradedLieAlgebra) -> np.ndarray:
    """ad of F(x)1 on L(T): a nilpotent derivation with cube zero."""
    return G.ad(G.sl2[2])


# ---------------------------------------------------------------------------
# Lie triple systems

def check_lts(T: TripleSystem, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
    return _run(["lts1", "lts2", "lts3"], Binding(T.p, {"B": T.tensor}), mode, seed, samples,
                "Lie triple system")


def kt_triple_system(A: StructurableAlgebra, verify: bool = True, **kw) -> TripleSystem:
    """KT(A) on A+ (indices 0..d-1) and A- (indices d..2d-1)."""
    p, d = A.p, A.dim
    V = A.v_tensor.astype(np.int64)
    t = np.zeros((2 * d,) * 4, dtype=np.int64)
    halves = (slice(0, d), slice(d, 2 * d))
    for sd in (0, 1):
        P, M = halves[sd], halves[1 - sd]
        t[P, M, P, P] = V
        t[M, P, P, P] = -V.transpose(1, 0, 2, 3)
        t[P, P, M, P] = V.transpose(0, 2, 1, 3) - V.transpose(2, 0, 1, 3)
    names = tuple(f"{n}+" for n in A.alg.names) + tuple(f"{n}-" for n in A.alg.names)
    T = TripleSystem(p, t, names)
    if verify:
        rep = check_lts(T, **kw)
        if not rep.passed:
            raise AxiomError(rep.summary())
    return T


@dataclass(frozen=True, eq=False)
class StandardEmbedding:
    """L(T,T) + T; ``ops`` is the L(T,T) span, occupying the first ops.dim coordinates."""

    lts: TripleSystem
    ops: Subspace
    G: GradedLieAlgebra

    def operator_coordinates(self, mats) -> np.ndarray:
        n = self.lts.dim
        return _coords(self.ops, np.asarray(mats).reshape(-1, n * n), "operator")


def standard_embedding(lts: TripleSystem, degrees=None, verify: bool = True, **kw) -> StandardEmbedding:
    """[A + x, B + y] = ([A,B] + L(x,y)) + (A(y) - B(x)).

    With ``degrees`` (a Z-grading of the triple system) the operator part is
    spanned degree by degree, lowest first, and the result carries the grading.
    """
    p, n = lts.p, lts.dim
    Lops = lts.l_ops                          # [i, j] = matrix of z -> e_i e_j z
    if degrees is None:
        ops = operator_span(Lops.reshape(-1, n, n), p, n)
        op_deg = None
    else:
        degrees = np.asarray(degrees)
        sums = degrees[:, None] + degrees[None, :]
        rows, op_deg = [], []
        for s in np.unique(sums):
            sp = operator_span(Lops[sums == s], p, n)
            rows.append(sp.basis)
            op_deg += [int(s)] * sp.dim
        ops = Subspace(p, n * n, np.concatenate(rows) if rows else np.zeros((0, n * n), dtype=np.int64))
    m = ops.dim
    O = ops.basis.reshape(m, n, n)
    N = m + n
    t = np.zeros((N, N, N), dtype=np.int64)
    if m:
        t[:m, :m, :m] = _coords(ops, _commutators(O, p).reshape(m * m, n * n), "[A, B]").reshape(m, m, m)
        img = O.transpose(0, 2, 1)                # [a, y, k] = coordinate k of A_a(e_y)
        t[:m, m:, m:] = img
        t[m:, :m, m:] = -img.transpose(1, 0, 2)
        t[m:, m:, :m] = _coords(ops, Lops.reshape(n * n, n * n), "L(x, y)").reshape(n, n, m)
    names = tuple(f"L{i}" for i in range(m)) + tuple(lts.names)
    grading = None if degrees is None else np.concatenate([np.array(op_deg, dtype=np.int64), degrees])
    G = GradedLieAlgebra(Algebra(p, t, names), grading, None, "standard embedding")
    if verify:
        G.verify(**kw)
    return StandardEmbedding(lts, ops, G)


def kt_embedding(A: StructurableAlgebra, verify: bool = True, **kw) -> StandardEmbedding:
    """Standard embedding of KT(A), Z-graded by A+ in degree 1 and A- in degree -1."""
    T = kt_triple_system(A, verify=verify, **kw)
    return standard_embedding(T, [1] * A.dim + [-1] * A.dim, verify=verify, **kw)


# ---------------------------------------------------------------------------
# the Kantor Lie algebra K(A, -)

@dataclass(frozen=True, eq=False)
class KantorAlgebra:
    """K(A,-) with basis (x,0)~, (0,s)~, instrl, (x,0), (0,s).

    Blocks: A-basis, S-basis (A.skew), instrl basis (A.instrl), A-basis, S-basis.
    """

    A: StructurableAlgebra
    variant: str
    G: GradedLieAlgebra
    s: np.ndarray | None = None

    @property
    def offsets(self) -> dict:
        d, k, m = self.A.dim, self.A.skew.dim, self.A.instrl.dim
        return {"x~": 0, "s~": d, "instrl": d + k, "x": d + k + m, "s": 2 * d + k + m}

    def embed(self, part: str, v) -> np.ndarray:
        size = {"x~": self.A.dim, "x": self.A.dim, "s~": self.A.skew.dim,
                "s": self.A.skew.dim, "instrl": self.A.instrl.dim}[part]
        out = np.zeros(self.G.dim, dtype=np.int64)
        o = self.offsets[part]
        out[o:o + size] = v
        return out


def _kantor_table(A: StructurableAlgebra, variant: str) -> tuple:
    if variant not in ("v1", "v2"):
        raise ValueError(f"unknown variant {variant!r}")
    p, d = A.p, A.dim
    I = A.instrl
    X = A.instrl_operators()
    S = A.skew
    Sb = S.basis
    m, k = X.shape[0], Sb.shape[0]
    ox_, os_, oi, ox, os = 0, d, d + k, d + k + m, 2 * d + k + m
    N = 2 * d + 2 * k + m
    t = np.zeros((N, N, N), dtype=np.int64)
    c = 2 if variant == "v2" else 1

    def both(a, b, o, vals):
        t[a, b, o] += vals
        t[b, a, o] -= vals.transpose(1, 0, 2)

    rx_ = slice(ox_, ox_ + d)
    rs_ = slice(os_, os_ + k)
    ri = slice(oi, oi + m)
    rx = slice(ox, ox + d)
    rs = slice(os, os + k)
    t[ri, ri, ri] = _coords(I, _commutators(X, p).reshape(m * m, d * d), "[T1, T2]").reshape(m, m, m)
    # [T, (x,s)] = (Tx, T^delta s);  [T, (x,s)~] = (T^eps x, T^{eps delta} s)~
    Xe = np.array([A.t_eps(x) for x in X]).reshape(m, d, d)
    Xd = np.array([A.t_delta(x) for x in X]).reshape(m, d, d)
    Xed = np.array([A.t_delta(x) for x in Xe]).reshape(m, d, d)
    both(ri, rx, rx, X.transpose(0, 2, 1))
    both(ri, rx_, rx_, Xe.transpose(0, 2, 1))
    if k:
        both(ri, rs, rs, _coords(S, ff.matmul(Sb, Xd.transpose(0, 2, 1), p).reshape(m * k, d),
                                 "T^delta(s)").reshape(m, k, k))
        both(ri, rs_, rs_, _coords(S, ff.matmul(Sb, Xed.transpose(0, 2, 1), p).reshape(m * k, d),
                                   "T^{eps delta}(s)").reshape(m, k, k))
    # [(x,s), (y,t)] = (0, c(x ybar - y xbar)), and the same inside N~
    xyb = ff.einsum("ajk,jb->abk", A.alg.table, A.inv, p=p)      # e_a bar(e_b)
    sk = np.mod(c * (xyb - xyb.transpose(1, 0, 2)), p).reshape(d * d, d)
    skc = _coords(S, sk, "x ybar - y xbar").reshape(d, d, k)
    t[rx, rx, rs] = skc
    t[rx_, rx_, rs_] = skc
    # [(x,s), (y,t)~] = -(tx,0)~ + (c V_{x,y} + L_s L_t) + (sy,0)
    V = A.basis_v_operators()
    both(rx, rx_, ri, _coords(I, np.mod(c * V, p).reshape(d * d, d * d), "V_{x,y}").reshape(d, d, m))
    if k:
        Ls = np.array([A.L(s) for s in Sb]).reshape(k, d, d)
        LL = ff.matmul(Ls[:, None], Ls[None], p).reshape(k * k, d * d)
        both(rs, rs_, ri, _coords(I, LL, "L_s L_t").reshape(k, k, m))
        both(rs, rx_, rx, Ls.transpose(0, 2, 1))                 # [i, y, k] = (s_i e_y)_k
        both(rx, rs_, rx_, np.mod(-Ls.transpose(2, 0, 1), p))    # [x, j, k] = -(t_j e_x)_k
    names = (tuple(f"{n}~" for n in A.alg.names) + tuple(f"s{i}~" for i in range(k))
             + tuple(f"T{i}" for i in range(m)) + tuple(A.alg.names) + tuple(f"s{i}" for i in range(k)))
    grading = np.array([-1] * d + [-2] * k + [0] * m + [1] * d + [2] * k)
    return t, names, grading


def build_kantor(A: StructurableAlgebra, variant: str = "v1", s=None, verify: bool = True,
                 **kw) -> KantorAlgebra:
    """K(A,-) = N~ + instrl + N, N = A + S, in the v1 or v2 normalization.

    v2 doubles the (0, x ybar - y xbar) and V_{x,y} terms.  When a skew s with
    L_s invertible is given (or found), the sl2-triple is E = (0,t), F = (0,s)~,
    H = [E,F], where s t = 1.
    """
    p = A.p
    t, names, grading = _kantor_table(A, variant)
    K = KantorAlgebra(A, variant, GradedLieAlgebra(Algebra(p, t, names), grading, None, f"K(A,-) {variant}"))
    if s is None:
        s = choose_invertible_skew(A)
    sl2 = None
    if s is not None:
        s = ff.as_residues(s, p)
        tt = ff.solve(A.L(s), A.unit, p)
        if tt is None:
            raise ValueError("L_s is singular")
        E = K.embed("s", _coords(A.skew, tt, "t with st = 1")[0])
        F = K.embed("s~", _coords(A.skew, s, "s")[0])
        sl2 = np.array([E, K.G.bracket(E, F), F])
    K = KantorAlgebra(A, variant, GradedLieAlgebra(K.G.L, grading, sl2, K.G.label), s)
    if verify:
        K.G.verify(**kw)
    return K


def kantor_dimension_formula(A: StructurableAlgebra) -> int:
    return A.instrl.dim + 2 * A.dim + 2 * A.skew.dim


def kantor_to_embedding(K: KantorAlgebra, emb: StandardEmbedding) -> np.ndarray:
    """Matrix of phi: K(A,-) v1 -> L(T,T) + T for T = KT(A); column i is phi(e_i).

    (x,0) -> x+, (x,0)~ -> x-, T -> diag(T, T^eps),
    (0,s) -> (0, L_s; 0, 0), (0,s)~ -> (0, 0; L_s, 0).
    """
    A, d = K.A, K.A.dim
    m = emb.ops.dim
    N = K.G.dim
    if emb.G.dim != N:
        raise ValueError("dimensions differ")
    P = np.zeros((N, N), dtype=np.int64)
    o = K.offsets
    Z = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        P[m + i, o["x"] + i] = 1
        P[m + d + i, o["x~"] + i] = 1
    blocks = []
    cols = []
    for j, X in enumerate(A.instrl_operators()):
        blocks.append(np.block([[X, Z], [Z, A.t_eps(X)]]))
        cols.append(o["instrl"] + j)
    for j, s in enumerate(A.skew.basis):
        Ls = A.L(s)
        blocks.append(np.block([[Z, Ls], [Z, Z]]))
        cols.append(o["s"] + j)
        blocks.append(np.block([[Z, Z], [Ls, Z]]))
        cols.append(o["s~"] + j)
    if blocks:
        P[:m, cols] = emb.operator_coordinates(np.array(blocks)).T
    return P


def v2_to_v1(K2: KantorAlgebra) -> np.ndarray:
    """Diagonal map (y,t)~ + T + (x,s) -> (y, t/2)~ + T + (2x, 2s)."""
    p = K2.A.p
    o = K2.offsets
    d, k = K2.A.dim, K2.A.skew.dim
    diag = np.ones(K2.G.dim, dtype=np.int64)
    diag[o["s~"]:o["s~"] + k] = ff.half(p)
    diag[o["x"]:o["x"] + d] = 2
    diag[o["s"]:o["s"] + k] = 2
    return np.diag(diag % p)


def bracket_map_report(P, src: GradedLieAlgebra, dst: GradedLieAlgebra, name: str) -> IdentityReport:
    p = src.p
    bijective = src.dim == dst.dim and ff.rank(P, p) == src.dim
    bad = homomorphism_defects(P, src.L, dst.L, limit=1)
    ce = None
    if not bijective:
        ce = {"problem": "not bijective"}
    elif bad:
        ce = {"pair": [src.names[bad[0][0]], src.names[bad[0][1]]]}
    return IdentityReport(name, bijective and not bad, "exhaustive", src.dim ** 2, ce)


# ---------------------------------------------------------------------------
# sl2 inside a 5-graded Lie algebra

@dataclass
class SL2Decomposition:
    centralizer: Subspace
    F_of_L2: Subspace
    adjoint: Subspace
    natural: Subspace
    trivial: Subspace
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list:
        return [k for k, v in self.checks.items() if not v]


def _span_or_zero(vecs, p, n):
    vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, n)
    return Subspace.span(vecs, p, n) if vecs.shape[0] else Subspace.zero(p, n)


def sl2_utilities(G: GradedLieAlgebra) -> SL2Decomposition:
    """Isotypic pieces for the sl2-triple of a 5-graded algebra, with checks (i)-(v) on them."""
    if G.sl2 is None or G.grading is None:
        raise ValueError("a grading and an sl2-triple are required")
    p, N = G.p, G.dim
    E, H, F = G.sl2
    adE, adF = G.ad(E), G.ad(F)
    ix = {i: G.indices(i) for i in range(-2, 3)}
    if len(np.concatenate(list(ix.values()))) != N:
        raise ValueError("degrees must lie in -2..2")
    checks = {}
    # (i)
    mF = adF[np.ix_(ix[-1], ix[1])]
    mE = adE[np.ix_(ix[1], ix[-1])]
    checks["(i) ad_F: L1 -> L-1 inverted by ad_E"] = (
        len(ix[1]) == len(ix[-1])
        and np.array_equal(ff.matmul(mE, mF, p), ff.identity(len(ix[1])))
        and np.array_equal(ff.matmul(mF, mE, p), ff.identity(len(ix[1]))))
    four = ff.matmul(ff.matmul(adE, adE, p), ff.matmul(adF, adF, p), p)[np.ix_(ix[2], ix[2])]
    checks["(i) ad_E^2 ad_F^2 = 4 on L2"] = np.array_equal(four, np.mod(4 * ff.identity(len(ix[2])), p))
    # (ii)
    I0 = ff.identity(N)[ix[0]]
    kerF = ff.kernel_basis(adF[:, ix[0]], p)
    kerE = ff.kernel_basis(adE[:, ix[0]], p)
    cent = _span_or_zero(ff.matmul(kerF.basis, I0, p), p, N)
    centE = _span_or_zero(ff.matmul(kerE.basis, I0, p), p, N)
    checks["(ii) centralizers of F and E agree on L0"] = cent == centE
    # (iii)
    FL2 = _span_or_zero(adF[:, ix[2]].T, p, N)
    L0 = G.piece(0)
    checks["(iii) L0 = Cent + [F,L2] (direct)"] = (
        cent.dim + FL2.dim == L0.dim and (cent + FL2) == L0)
    # (iv)
    checks["(iv) dim L = 3 dim L2 + 2 dim L1 + dim Cent"] = N == 3 * len(ix[2]) + 2 * len(ix[1]) + cent.dim
    # (v)
    br11 = _span_or_zero(G.L.table[np.ix_(ix[1], ix[1])].reshape(-1, N), p, N)
    br1m1 = _span_or_zero(G.L.table[np.ix_(ix[1], ix[-1])].reshape(-1, N), p, N)
    if br11 == G.piece(2) and br1m1 == L0:
        XFY = _x_f_y(G, adF, ix[1])
        sym = np.mod(XFY + XFY.transpose(1, 0, 2), p).reshape(-1, N)
        alt = np.mod(XFY - XFY.transpose(1, 0, 2), p).reshape(-1, N)
        checks["(v) Cent spanned by [X,[F,Y]] + [Y,[F,X]]"] = _span_or_zero(sym, p, N) == cent
        checks["(v) [F,L2] spanned by [X,[F,Y]] - [Y,[F,X]]"] = _span_or_zero(alt, p, N) == FL2
    checks["sl2 relations"] = not G.sl2_problems()
    adjoint = G.piece(2) + FL2 + G.piece(-2)
    natural = G.piece(1) + G.piece(-1)
    return SL2Decomposition(cent, FL2, adjoint, natural, cent, checks)


def five_graded_triple(G: GradedLieAlgebra, scale=None) -> TripleSystem:
    """<X,Y,Z> = scale [[X,[F,Y]],Z] on the degree-1 basis (default scale 1/2)."""
    p, N = G.p, G.dim
    scale = ff.half(p) if scale is None else scale
    F = G.sl2[2]
    i1 = G.indices(1)
    d = len(i1)
    W = _x_f_y(G, G.ad(F), i1)
    full = ff.matmul(W.reshape(d * d, N), G.L.table[:, i1, :].reshape(N, d * N), p).reshape(d, d, d, N)
    if full[..., np.setdiff1d(np.arange(N), i1)].any():
        raise AxiomError("[[X,[F,Y]],Z] leaves degree 1")
    return TripleSystem(p, np.mod(scale * full[..., i1], p), tuple(G.names[i] for i in i1))


def _x_f_y(G: GradedLieAlgebra, adF, idx) -> np.ndarray:
    """W[a, b] = [X_a, [F, X_b]] over the basis vectors listed in idx."""
    FY = adF[:, idx]                                          # column b = [F, X_b]
    return ff.matmul(FY.T[None], G.L.table[idx], G.p)
