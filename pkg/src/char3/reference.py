"""Matrix Lie superalgebras gl, sl, psl, osp and the explicit isomorphisms for prototypical systems."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import field as ff
from .algebra import homomorphism_defects
from .field import Subspace
from .jternary import TripleSystem, prototypical
from .semisimplify import direct_from_jternary
from .structurable import AxiomError, exchange_involution, standard_skew_form, transpose_involution
from .superalgebra import LieSuperalgebra, center, check_weak, is_lie, quotient


@dataclass(frozen=True)
class ReferenceSpec:
    kind: str           # gl, sl, psl, osp
    m: int
    n: int
    p: int = 3

    def __post_init__(self):
        if self.kind not in ("gl", "sl", "psl", "osp"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.m < 0 or self.n < 0 or self.m + self.n == 0:
            raise ValueError("dimensions must be nonnegative and not both zero")
        if self.kind == "osp" and self.n % 2:
            raise ValueError("osp(m|n) needs n even")

    def expected_superdim(self):
        m, n = self.m, self.n
        if self.kind == "gl":
            return (m * m + n * n, 2 * m * n)
        if self.kind == "osp":
            return (comb(m, 2) + (n // 2) * (n + 1), m * n)
        even = m * m + n * n - 1
        # the identity is supertraceless, hence central in sl, iff p | m - n
        if self.kind == "psl" and (m - n) % self.p == 0:
            even -= 1
        return (even, 2 * m * n)


@dataclass(frozen=True, eq=False)
class MatrixSuperalgebra:
    """A Lie superalgebra with a matrix representative for every basis vector.

    For quotients (psl) the representatives are coset representatives and
    ``kernel`` spans the matrices that were factored out.
    """

    L: LieSuperalgebra
    mats: np.ndarray               # (dim, N, N)
    vparity: np.ndarray            # parity of the natural module's basis
    kernel: np.ndarray | None = None

    def coordinates(self, mats) -> np.ndarray:
        """Coordinates of matrices lying in span(mats) + kernel, modulo kernel."""
        p, k = self.L.p, self.L.dim
        N = self.mats.shape[1]
        basis = self.mats.reshape(k, N * N)
        if self.kernel is not None and len(self.kernel):
            basis = np.concatenate([basis, self.kernel.reshape(-1, N * N)])
        x = ff.solve(basis.T, np.asarray(mats).reshape(-1, N * N).T, p)
        if x is None:
            raise ValueError("matrix outside the superalgebra")
        return x[:k].T


def supercommutator(a, b, pa, pb, p):
    ab = ff.matmul(a, b, p)
    ba = ff.matmul(b, a, p)
    return np.mod(ab - (-1) ** (pa * pb) * ba, p)


def matrix_superalgebra(mats, parity, vparity, p, names=(), verify: bool = True) -> MatrixSuperalgebra:
    """Structure constants of a supercommutator-closed family of linearly independent matrices."""
    mats = ff.as_residues(mats, p)
    k, N = mats.shape[0], mats.shape[1]
    parity = np.asarray(parity, dtype=np.int64)
    flat = mats.reshape(k, N * N)
    if ff.rank(flat, p) != k:
        raise ValueError("matrices are linearly dependent")
    prods = ff.matmul(mats[:, None], mats[None], p)
    sign = (-1) ** (parity[:, None] * parity[None, :])
    br = np.mod(prods - sign[:, :, None, None] * prods.transpose(1, 0, 2, 3), p)
    x = ff.solve(flat.T, br.reshape(k * k, N * N).T, p)
    if x is None:
        raise AxiomError("supercommutators leave the span")
    L = LieSuperalgebra(p, x.T.reshape(k, k, k), parity, names)
    out = MatrixSuperalgebra(L, mats, np.asarray(vparity))
    if verify:
        rep = check_weak(L)
        if not rep.passed:
            raise AxiomError(rep.summary())
    return out


def _unit(N, r, c):
    e = np.zeros((N, N), dtype=np.int64)
    e[r, c] = 1
    return e


def _vparity(m, n):
    return np.array([0] * m + [1] * n)


def supertrace(mat, vparity, p) -> int:
    return int(np.mod(np.sum(np.diag(mat) * (1 - 2 * np.asarray(vparity))), p))


def gl(m: int, n: int, p: int = 3) -> MatrixSuperalgebra:
    """Basis: even matrix units (row-major), then odd ones."""
    N = m + n
    vp = _vparity(m, n)
    even = [(r, c) for r in range(N) for c in range(N) if vp[r] == vp[c]]
    odd = [(r, c) for r in range(N) for c in range(N) if vp[r] != vp[c]]
    mats = [_unit(N, r, c) for r, c in even + odd]
    names = [f"E{r + 1},{c + 1}" for r, c in even + odd]
    return matrix_superalgebra(np.array(mats), [0] * len(even) + [1] * len(odd), vp, p, names)


def sl(m: int, n: int, p: int = 3) -> MatrixSuperalgebra:
    """Supertrace zero: off-diagonal even units, diagonal differences, then odd units."""
    N = m + n
    vp = _vparity(m, n)
    even = [_unit(N, r, c) for r in range(N) for c in range(N) if vp[r] == vp[c] and r != c]
    names = [f"E{r + 1},{c + 1}" for r in range(N) for c in range(N) if vp[r] == vp[c] and r != c]
    for i in range(N - 1):
        h = _unit(N, i, i)
        # E_ii - E_jj inside a block, E_ii + E_jj across the boundary
        h = h + (1 if vp[i] != vp[i + 1] else -1) * _unit(N, i + 1, i + 1)
        even.append(h)
        names.append(f"h{i + 1}")
    odd = [_unit(N, r, c) for r in range(N) for c in range(N) if vp[r] != vp[c]]
    names += [f"E{r + 1},{c + 1}" for r in range(N) for c in range(N) if vp[r] != vp[c]]
    mats = np.array(even + odd)
    for x in even:
        if supertrace(x, vp, p):
            raise AssertionError("even basis element with nonzero supertrace")
    return matrix_superalgebra(mats, [0] * len(even) + [1] * len(odd), vp, p, names)


def psl(m: int, n: int, p: int = 3) -> MatrixSuperalgebra:
    """sl(m|n) modulo its center, computed exactly."""
    S = sl(m, n, p)
    Z = center(S.L)
    if Z.dim == 0:
        return S
    Q = quotient(S.L, Z)
    keep = [S.L.names.index(nm) for nm in Q.names]
    kernel = ff.matmul(Z.basis, S.mats.reshape(S.L.dim, -1), p)
    return MatrixSuperalgebra(Q, S.mats[keep], S.vparity, kernel.reshape(-1, *S.mats.shape[1:]))


def osp_from_gram(gram_even, gram_odd, p: int = 3, verify: bool = True) -> MatrixSuperalgebra:
    """osp for b = gram_even (symmetric) on the even part and gram_odd (skew) on the odd part.

    Spanned by Lambda_{u,v} = u b(v, .) - (-1)^{|u||v|} v b(u, .); canonical bases
    of the even and odd spans.
    """
    ge, go = ff.as_residues(gram_even, p), ff.as_residues(gram_odd, p)
    m, n = ge.shape[0], go.shape[0]
    if not np.array_equal(ge, ge.T) or not np.array_equal(go, np.mod(-go.T, p)):
        raise ValueError("need a symmetric even form and a skew odd form")
    if ff.rank(ge, p) != m or ff.rank(go, p) != n:
        raise ValueError("forms must be nondegenerate")
    N = m + n
    G = np.zeros((N, N), dtype=np.int64)
    G[:m, :m], G[m:, m:] = ge, go
    vp = _vparity(m, n)
    lam = {0: [], 1: []}
    for u in range(N):
        for v in range(N):
            sgn = (-1) ** (vp[u] * vp[v])
            mat = np.outer(np.eye(N, dtype=np.int64)[u], G[v]) - sgn * np.outer(np.eye(N, dtype=np.int64)[v], G[u])
            lam[int(vp[u] ^ vp[v])].append(np.mod(mat, p).reshape(-1))
    rows, par = [], []
    for k in (0, 1):
        if lam[k]:
            sp = Subspace.span(np.array(lam[k]), p, N * N)
            rows.append(sp.basis)
            par += [k] * sp.dim
    mats = np.concatenate(rows).reshape(-1, N, N)
    names = [f"{'eo'[k]}{i}" for i, k in enumerate(par)]
    return matrix_superalgebra(mats, par, vp, p, names, verify)


def osp(m: int, n: int, p: int = 3) -> MatrixSuperalgebra:
    """osp(m|n): identity Gram matrix on the even part, (0, I; -I, 0) on the odd part."""
    return osp_from_gram(ff.identity(m), standard_skew_form(n, p), p)


def build_reference(spec: ReferenceSpec) -> LieSuperalgebra:
    ctor = {"gl": gl, "sl": sl, "psl": psl, "osp": osp}[spec.kind]
    L = ctor(spec.m, spec.n, spec.p).L
    want = spec.expected_superdim()
    if want is not None and L.superdim != want:
        raise AxiomError(f"{spec.kind}({spec.m}|{spec.n}) has superdim {L.superdim}, expected {want}")
    return L


# ---------------------------------------------------------------------------
# explicit isomorphisms

@dataclass
class IsomorphismResult:
    source: LieSuperalgebra
    target: LieSuperalgebra
    matrix: np.ndarray             # column i = image of source basis vector i
    passed: bool
    defects: list

    def __bool__(self):
        return self.passed


def extend_by_odd_action(src: LieSuperalgebra, dst: LieSuperalgebra, odd_images) -> np.ndarray:
    """Complete a map on odd parts to all of src by matching the even actions on the odd part.

    ``odd_images`` has one column per odd basis vector of src, in dst coordinates.
    Each even basis vector of src goes to the unique even element of dst whose
    adjoint action on the odd part matches, transported through the odd map.
    """
    p = src.p
    so, se, do, de = src.odd, src.even, dst.odd, dst.even
    O = ff.as_residues(odd_images, p)[do]                  # dst-odd coords of images
    if O.shape[0] != O.shape[1] or ff.rank(O, p) != O.shape[0]:
        raise AxiomError("odd map is not bijective")
    Oinv = ff.inverse(O, p)
    mats = []
    for g in ff.identity(dst.dim)[de]:
        ad = dst.ad(g)[np.ix_(do, do)]
        mats.append(ff.matmul(ff.matmul(Oinv, ad, p), O, p).reshape(-1))
    M = np.array(mats)                                     # (n_even_dst, n_odd^2)
    P = np.zeros((dst.dim, src.dim), dtype=np.int64)
    P[:, so] = odd_images
    for i in se:
        A = src.ad(ff.identity(src.dim)[i])[np.ix_(so, so)].reshape(-1)
        c = ff.solve(M.T, A, p)
        if c is None:
            raise AxiomError("an even element acts on the odd part unlike any element of the target")
        P[de, i] = c
    return P


def _check_iso(src, dst, P) -> IsomorphismResult:
    ok_dims = src.superdim == dst.superdim and ff.rank(P, src.p) == src.dim
    parity_ok = not (P[dst.parity == 1][:, src.parity == 0].any() or P[dst.parity == 0][:, src.parity == 1].any())
    defects = homomorphism_defects(P, src, dst) if ok_dims else []
    return IsomorphismResult(src, dst, P, ok_dims and parity_ok and not defects, defects)


def first_kind_system(nX: int, nY: int, p: int = 3) -> tuple:
    """T = X (x) Y over End(X) with the transpose; h(x1 y1, x2 y2) = b_Y(y1,y2) x1 b_X(x2, .).

    b_X is the identity Gram matrix, b_Y the standard skew form.  Index of x (x) y
    is x * nY + y.
    """
    A = transpose_involution(nX, p)
    bY = standard_skew_form(nY, p)
    dT = nX * nY
    action = np.array([np.kron(_unit(nX, r, c), ff.identity(nY)) for r in range(nX) for c in range(nX)])
    h = np.zeros((dT, dT, nX * nX), dtype=np.int64)
    for x1 in range(nX):
        for y1 in range(nY):
            for x2 in range(nX):
                for y2 in range(nY):
                    h[x1 * nY + y1, x2 * nY + y2, nX * x1 + x2] = bY[y1, y2]
    names = tuple(f"x{x}y{y}" for x in range(nX) for y in range(nY))
    T = prototypical(A, action, h)
    return A, action, h, TripleSystem(p, T.tensor, names)


def s_operator_formula(nX: int, nY: int, p: int = 3) -> np.ndarray:
    """sigma_{x1,x2} (x) b_Y(y1,y2) id + b_X(x1,x2) id (x) gamma_{y1,y2}, all basis pairs."""
    bY = standard_skew_form(nY, p)
    bX = ff.identity(nX)
    dT = nX * nY
    out = np.zeros((dT, dT, dT, dT), dtype=np.int64)
    for x1 in range(nX):
        for y1 in range(nY):
            for x2 in range(nX):
                for y2 in range(nY):
                    sigma = _unit(nX, x1, x2) @ bX - _unit(nX, x2, x1) @ bX
                    gamma = np.outer(np.eye(nY, dtype=np.int64)[y1], bY[y2]) + np.outer(np.eye(nY, dtype=np.int64)[y2], bY[y1])
                    op = bY[y1, y2] * np.kron(sigma, ff.identity(nY)) + bX[x1, x2] * np.kron(ff.identity(nX), gamma)
                    out[x1 * nY + y1, x2 * nY + y2] = np.mod(op, p)
    return out


def proto_osp_isomorphism(nX: int, nY: int, p: int = 3) -> IsomorphismResult:
    """L^ss(X (x) Y) -> osp(X|Y, b) with b = b_X on X and -b_Y on Y; x (x) y -> Lambda_{x,y}."""
    _, _, _, T = first_kind_system(nX, nY, p)
    src = direct_from_jternary(T)
    bY = standard_skew_form(nY, p)
    ref = osp_from_gram(ff.identity(nX), np.mod(-bY, p), p)
    N = nX + nY
    G = np.zeros((N, N), dtype=np.int64)
    G[:nX, :nX], G[nX:, nX:] = ff.identity(nX), np.mod(-bY, p)
    lams = []
    for x in range(nX):
        for y in range(nY):
            u, v = np.eye(N, dtype=np.int64)[x], np.eye(N, dtype=np.int64)[nX + y]
            lams.append(np.mod(np.outer(u, G[nX + y]) - np.outer(v, G[x]), p))
    odd_images = ref.coordinates(np.array(lams)).T
    P = extend_by_odd_action(src, ref.L, odd_images)
    return _check_iso(src, ref.L, P)


def second_kind_system(nX: int, nY: int, p: int = 3) -> tuple:
    """T = (X (x) Y*) + (Y (x) X*) over End(X) + End(X)^op with the exchange involution.

    h(x (x) w, y (x) f) = w(y) x (x) f in End(X); h vanishes on each summand.
    Indices: x (x) w at x * nY + w, then y (x) f at nX * nY + y * nX + f.
    """
    A = exchange_involution(nX, p)
    k = nX * nX
    dM = nX * nY
    dT = 2 * dM
    action = np.zeros((2 * k, dT, dT), dtype=np.int64)
    for r in range(nX):
        for c in range(nX):
            for w in range(nY):
                action[nX * r + c, r * nY + w, c * nY + w] = 1             # E_rc x_c = x_r
            for y in range(nY):
                action[k + nX * r + c, dM + y * nX + c, dM + y * nX + r] = 1  # f_r E_rc = f_c
    h = np.zeros((dT, dT, 2 * k), dtype=np.int64)
    for x in range(nX):
        for w in range(nY):
            for f in range(nX):
                i, j = x * nY + w, dM + w * nX + f
                h[i, j, nX * x + f] = 1
                h[j, i, k + nX * x + f] = -1
    names = tuple(f"x{x}w{w}" for x in range(nX) for w in range(nY)) + tuple(
        f"y{y}f{f}" for y in range(nY) for f in range(nX))
    T = prototypical(A, action, h)
    return A, action, h, TripleSystem(p, T.tensor, names)


def proto_psl_isomorphism(nX: int, nY: int, p: int = 3) -> IsomorphismResult:
    """L^ss((X (x) Y*) + (Y (x) X*)) -> psl(X|Y); odd parts matched by matrix units."""
    _, _, _, T = second_kind_system(nX, nY, p)
    src = direct_from_jternary(T)
    ref = psl(nX, nY, p)
    N = nX + nY
    mats = []
    for x in range(nX):
        for w in range(nY):
            mats.append(_unit(N, x, nX + w))
    for y in range(nY):
        for f in range(nX):
            mats.append(_unit(N, nX + y, f))
    odd_images = ref.coordinates(np.array(mats)).T
    P = extend_by_odd_action(src, ref.L, odd_images)
    return _check_iso(src, ref.L, P)


def reference_is_lie(M: MatrixSuperalgebra) -> bool:
    return is_lie(M.L)
