"""Lie superalgebras over GF(p): axioms, the characteristic-3 cube map, quotients, fingerprints."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from . import field as ff
from .field import Subspace
from .identities import Binding, IdentityReport, check_identity, load
from .jternary import SEED, SuiteReport
from .structurable import AxiomError


@dataclass(frozen=True, eq=False)
class LieSuperalgebra:
    """[e_i, e_j] = sum_k table[i, j, k] e_k with parity[i] in {0, 1}."""

    p: int
    table: np.ndarray
    parity: np.ndarray
    names: tuple = ()

    def __post_init__(self):
        t = ff.as_residues(self.table, self.p)
        d = t.shape[0]
        if t.shape != (d, d, d):
            raise ValueError("structure tensor must have shape (d, d, d)")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        par = np.asarray(self.parity, dtype=np.int64).reshape(d)
        if ((par != 0) & (par != 1)).any():
            raise ValueError("parities must be 0 or 1")
        par.setflags(write=False)
        object.__setattr__(self, "parity", par)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(d)))
        elif len(self.names) != d:
            raise ValueError("one name per basis vector is required")
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_entries(cls, p, parity, entries, names=()):
        d = len(parity)
        t = np.zeros((d, d, d), dtype=np.int64)
        for i, j, k, c in entries:
            t[i, j, k] += c
        return cls(p, t, parity, names)

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @property
    def superdim(self) -> tuple:
        odd = int(self.parity.sum())
        return (self.dim - odd, odd)

    @property
    def even(self) -> np.ndarray:
        return np.nonzero(self.parity == 0)[0]

    @property
    def odd(self) -> np.ndarray:
        return np.nonzero(self.parity == 1)[0]

    def entries(self):
        idx = np.argwhere(self.table)
        return [(int(i), int(j), int(k), int(self.table[i, j, k])) for i, j, k in idx]

    def bracket(self, x, y) -> np.ndarray:
        x, y = ff.as_residues(x, self.p), ff.as_residues(y, self.p)
        d = self.dim
        xy = ff.matmul(x, self.table.reshape(d, d * d), self.p).reshape(*x.shape[:-1], d, d)
        return ff.matmul(y[..., None, :], xy, self.p)[..., 0, :]

    def ad(self, x) -> np.ndarray:
        """Matrix (columns = [x, e_j])."""
        d = self.dim
        return ff.matmul(ff.as_residues(x, self.p), self.table.reshape(d, d * d), self.p).reshape(d, d).T

    def binding(self) -> Binding:
        return Binding(self.p, {"B": self.table}, parity={"G": self.parity})

    # -- axioms ------------------------------------------------------------
    def parity_problems(self) -> list:
        for i, j, k in np.argwhere(self.table):
            if self.parity[k] != (self.parity[i] ^ self.parity[j]):
                return [f"[{self.names[i]}, {self.names[j]}] has a component of the wrong parity"]
        return []

    @cached_property
    def _weak(self) -> SuiteReport:
        return check_weak(self)


def check_weak(L: LieSuperalgebra, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
    """Parity-homogeneous structure constants, super-anticommutativity and super-Jacobi."""
    rep = SuiteReport("weak Lie superalgebra")
    pp = L.parity_problems()
    rep.reports.append(IdentityReport("parity", not pp, "exhaustive", L.dim ** 2,
                                      {"problem": pp[0]} if pp else None))
    b = L.binding()
    rep.reports.append(check_identity(load("super_anticommutative"), b, mode="exhaustive"))
    rep.reports.append(check_identity(load("super_jacobi"), b, mode=mode, seed=seed, samples=samples))
    return rep


def _require_weak(L: LieSuperalgebra):
    if not L._weak.passed:
        raise AxiomError("super-Jacobi or parity fails; cube operations are refused\n" + L._weak.summary())


def cube(L: LieSuperalgebra, x) -> np.ndarray:
    """[[x, x], x] for (stacks of) vectors x."""
    xx = L.bracket(x, x)
    return L.bracket(xx, x)


def cube_map(L: LieSuperalgebra) -> np.ndarray:
    """Matrix of x -> [[x,x],x] on the odd part, in odd-basis coordinates (p = 3 only).

    Column j is the cube of the j-th odd basis vector.  Linearity rests on the
    super-Jacobi identity, which is checked first.
    """
    if L.p != 3:
        raise ValueError("the cube map is only linear in characteristic 3")
    _require_weak(L)
    odd = L.odd
    if odd.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    cubes = cube(L, ff.identity(L.dim)[odd])
    if cubes[:, L.even].any():
        raise AxiomError("cube of an odd vector has an even component")
    return cubes[:, odd].T.copy()


def cube_additivity_report(L: LieSuperalgebra, pairs: int = 10 ** 4, seed: int = SEED,
                           batch: int = 2048) -> IdentityReport:
    """cube(x + y) == cube(x) + cube(y), and agreement with cube_map, on seeded odd pairs."""
    M = cube_map(L)
    odd = L.odd
    rng = np.random.default_rng(seed)
    done = 0
    while done < pairs:
        n = min(batch, pairs - done)
        xs = np.zeros((n, L.dim), dtype=np.int64)
        ys = np.zeros((n, L.dim), dtype=np.int64)
        xs[:, odd] = rng.integers(0, L.p, (n, odd.size))
        ys[:, odd] = rng.integers(0, L.p, (n, odd.size))
        lhs = cube(L, xs + ys)
        rhs = np.mod(cube(L, xs) + cube(L, ys), L.p)
        lin = np.zeros_like(lhs)
        if odd.size:
            lin[:, odd] = ff.matmul(xs[:, odd], M.T, L.p)
        bad = np.nonzero((lhs != rhs).any(axis=1) | (cube(L, xs) != lin).any(axis=1))[0]
        if bad.size:
            j = bad[0]
            return IdentityReport("cube additivity", False, "vectors", done + j + 1,
                                  {"x": xs[j].tolist(), "y": ys[j].tolist()})
        done += n
    return IdentityReport("cube additivity", True, "vectors", done)


def cube_ideal(L: LieSuperalgebra) -> Subspace:
    """span{[[x,x],x] : x odd}; checked to be an ideal."""
    M = cube_map(L)
    vecs = np.zeros((M.shape[1], L.dim), dtype=np.int64)
    vecs[:, L.odd] = M.T
    sub = Subspace.span(vecs, L.p, L.dim) if vecs.shape[0] else Subspace.zero(L.p, L.dim)
    if not is_ideal(L, sub):
        raise AxiomError("the cube span is not an ideal")
    return sub


def is_lie(L: LieSuperalgebra) -> bool:
    if L.p == 2:
        raise ValueError("characteristic 2 is excluded")
    if not L._weak.passed:
        return False
    if L.p > 3:
        return True
    return cube_ideal(L).dim == 0


# ---------------------------------------------------------------------------
# subspaces, quotients

def is_graded(L: LieSuperalgebra, sub: Subspace) -> bool:
    if sub.dim == 0:
        return True
    ev = sub.basis * (L.parity == 0)
    return sub.contains(ev)


def is_ideal(L: LieSuperalgebra, sub: Subspace) -> bool:
    if sub.dim == 0:
        return True
    d = L.dim
    # [e_i, v] for every basis e_i and ideal basis v
    prods = ff.matmul(sub.basis, L.table.transpose(1, 0, 2).reshape(d, d * d), L.p)
    return sub.contains(prods.reshape(-1, d))


def _graded_part(L: LieSuperalgebra, sub: Subspace, parity: int) -> Subspace:
    mask = (L.parity == parity)
    rows = sub.basis * mask
    return Subspace.span(rows, L.p, L.dim) if rows.shape[0] else Subspace.zero(L.p, L.dim)


def _subspace_superdim(L: LieSuperalgebra, sub: Subspace) -> tuple:
    return (_graded_part(L, sub, 0).dim, _graded_part(L, sub, 1).dim)


def quotient(L: LieSuperalgebra, ideal: Subspace, verify: bool = True) -> LieSuperalgebra:
    """L / ideal on the canonical complement (even part first, then odd)."""
    p, d = L.p, L.dim
    if not is_graded(L, ideal):
        raise AxiomError("subspace is not graded")
    if not is_ideal(L, ideal):
        raise AxiomError("subspace is not an ideal")
    rows, par = [], []
    for parity in (0, 1):
        outer = Subspace(p, d, ff.identity(d)[L.parity == parity])
        comp = ff.canonical_complement(_graded_part(L, ideal, parity), outer)
        rows.append(comp.basis)
        par += [parity] * comp.dim
    C = np.concatenate(rows)
    n = C.shape[0]
    B = np.concatenate([C, ideal.basis])
    Binv = ff.inverse(B, p)
    prods = L.bracket(C[:, None, :], C[None, :, :])
    coords = ff.matmul(prods.reshape(-1, d), Binv, p)[:, :n].reshape(n, n, n)
    names = []
    for r in C:
        nz = np.nonzero(r)[0]
        names.append(L.names[nz[0]] if nz.size == 1 and r[nz[0]] == 1 else f"v{len(names)}")
    Q = LieSuperalgebra(p, coords, np.array(par, dtype=np.int64), tuple(names))
    if verify:
        rep = check_weak(Q)
        if not rep.passed:
            raise AxiomError(rep.summary())
    return Q


def center(L: LieSuperalgebra) -> Subspace:
    d = L.dim
    # x central iff [x, e_j] = 0 for all j; x -> rows of table contracted
    m = L.table.transpose(1, 2, 0).reshape(d * d, d)
    return ff.kernel_basis(m, L.p)


def derived(L: LieSuperalgebra) -> Subspace:
    d = L.dim
    return Subspace.span(L.table.reshape(d * d, d), L.p, d) if d else Subspace.zero(L.p, 0)


def odd_odd(L: LieSuperalgebra) -> Subspace:
    o = L.odd
    if o.size == 0:
        return Subspace.zero(L.p, L.dim)
    return Subspace.span(L.table[np.ix_(o, o)].reshape(-1, L.dim), L.p, L.dim)


def odd_submodule(L: LieSuperalgebra, gens) -> Subspace:
    """Smallest subspace of the odd part containing gens and stable under ad of the even part."""
    p, d = L.p, L.dim
    acts = [L.ad(e) for e in ff.identity(d)[L.even]]
    sb = ff.SpanBuilder(d, p)
    frontier = sb.add(ff.as_residues(np.atleast_2d(gens), p))
    if not acts:
        return sb.subspace()
    stack = np.concatenate(acts, axis=0)                 # (n_even * d, d)
    while frontier.shape[0]:
        imgs = ff.matmul(frontier, stack.T, p).reshape(-1, d)
        frontier = sb.add(imgs)
    return sb.subspace()


def odd_irreducible_heuristic(L: LieSuperalgebra, random_vectors: int = 100, seed: int = SEED) -> bool:
    """Every odd basis vector and 100 seeded random odd vectors generate the whole odd part.

    Evidence only: a proper submodule avoiding all the tried vectors is not excluded.
    """
    o = L.odd
    if o.size == 0:
        return True
    rng = np.random.default_rng(seed)
    gens = list(ff.identity(L.dim)[o])
    for _ in range(random_vectors):
        v = np.zeros(L.dim, dtype=np.int64)
        v[o] = rng.integers(0, L.p, o.size)
        if v.any():
            gens.append(v)
    for g in gens:
        if odd_submodule(L, g).dim != o.size:
            return False
    return True


@dataclass(frozen=True)
class Fingerprint:
    superdim: tuple
    center: tuple
    derived: tuple
    odd_odd: int
    cube_ideal: int | None
    odd_irreducible_heuristic: bool

    def structural(self) -> tuple:
        """The exact invariants compared against reference constructions."""
        return (self.superdim, self.center, self.derived, self.odd_odd)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["superdim"] = list(self.superdim)
        out["center"] = list(self.center)
        out["derived"] = list(self.derived)
        return out

    def summary(self) -> str:
        sd = lambda t: f"({t[0]}|{t[1]})"
        return (f"superdim {sd(self.superdim)}, center {sd(self.center)}, derived {sd(self.derived)}, "
                f"[odd,odd] {self.odd_odd}, cube ideal {self.cube_ideal}, "
                f"odd irreducible (heuristic) {self.odd_irreducible_heuristic}")


def fingerprint(L: LieSuperalgebra, random_vectors: int = 100, seed: int = SEED) -> Fingerprint:
    cid = None
    if L.p == 3 and L._weak.passed:
        cid = cube_ideal(L).dim
    return Fingerprint(L.superdim, _subspace_superdim(L, center(L)), _subspace_superdim(L, derived(L)),
                       odd_odd(L).dim, cid, odd_irreducible_heuristic(L, random_vectors, seed))


def direct_sum(*algs: LieSuperalgebra) -> LieSuperalgebra:
    """Block direct sum; basis is the concatenation of the summands' bases."""
    p = algs[0].p
    n = sum(a.dim for a in algs)
    t = np.zeros((n, n, n), dtype=np.int64)
    par, names, o = [], [], 0
    for k, a in enumerate(algs):
        s = slice(o, o + a.dim)
        t[s, s, s] = a.table
        par += list(a.parity)
        names += [f"{nm}.{k}" for nm in a.names]
        o += a.dim
    return LieSuperalgebra(p, t, np.array(par), tuple(names))
