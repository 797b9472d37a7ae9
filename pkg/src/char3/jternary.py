"""Triple systems, their axiom batteries, and J-ternary algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import field as ff
from .algebra import Algebra, operator_span
from .field import Subspace
from .identities import Binding, IdentityReport, check_identity, load
from .structurable import AxiomError, InvolutiveAlgebra, StructurableAlgebra

SEED = 0x5EED


@dataclass
class SuiteReport:
    name: str
    reports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def __bool__(self):
        return self.passed

    def failures(self) -> list:
        return [r for r in self.reports if not r.passed]

    def summary(self) -> str:
        lines = [f"{self.name}: {'pass' if self.passed else 'FAIL'}"]
        lines += ["  " + r.summary() for r in self.reports]
        return "\n".join(lines)


@dataclass(frozen=True, eq=False)
class TripleSystem:
    """e_i e_j e_k = sum_l tensor[i, j, k, l] e_l."""

    p: int
    tensor: np.ndarray
    names: tuple = ()

    def __post_init__(self):
        t = ff.as_residues(self.tensor, self.p)
        d = t.shape[0]
        if t.shape != (d, d, d, d):
            raise ValueError("triple tensor must have shape (d, d, d, d)")
        t.setflags(write=False)
        object.__setattr__(self, "tensor", t)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i}" for i in range(d)))
        elif len(self.names) != d:
            raise ValueError("one name per basis vector is required")

    @classmethod
    def from_entries(cls, p, dim, entries, names=()):
        t = np.zeros((dim,) * 4, dtype=np.int64)
        for i, j, k, l, c in entries:
            t[i, j, k, l] += c
        return cls(p, t, names)

    @classmethod
    def zero(cls, p, dim):
        return cls(p, np.zeros((dim,) * 4, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.tensor.shape[0]

    def entries(self):
        idx = np.argwhere(self.tensor)
        return [(int(i), int(j), int(k), int(l), int(self.tensor[i, j, k, l])) for i, j, k, l in idx]

    def product(self, x, y, z) -> np.ndarray:
        return ff.matmul(ff.as_residues(z, self.p), self.l_op(x, y).T, self.p)

    # -- operators -----------------------------------------------------------
    @cached_property
    def l_ops(self) -> np.ndarray:
        """L[i, j] = matrix of z -> e_i e_j z."""
        return self.tensor.transpose(0, 1, 3, 2).copy()

    def k_ops(self, delta: int = 1) -> np.ndarray:
        """K[i, j] = matrix of z -> e_i z e_j - delta e_j z e_i."""
        t = self.tensor
        return np.mod(np.einsum("ikjl->ijlk", t) - delta * np.einsum("jkil->ijlk", t), self.p)

    def s_ops(self, eps: int = 1) -> np.ndarray:
        L = self.l_ops
        return np.mod(L + eps * L.transpose(1, 0, 2, 3), self.p)

    def t_ops(self, eps: int = 1) -> np.ndarray:
        L = self.l_ops
        return np.mod(L.transpose(1, 0, 2, 3) - eps * L, self.p)

    def _pair(self, ops, x, y) -> np.ndarray:
        x, y = ff.as_residues(x, self.p), ff.as_residues(y, self.p)
        d = self.dim
        m = ff.matmul(x, ops.reshape(d, -1), self.p).reshape(d, -1)
        return ff.matmul(y, m, self.p).reshape(d, d)

    def l_op(self, x, y) -> np.ndarray:
        return self._pair(self.l_ops, x, y)

    def k_op(self, x, y, delta: int = 1) -> np.ndarray:
        return self._pair(self.k_ops(delta), x, y)

    def s_op(self, x, y, eps: int = 1) -> np.ndarray:
        return self._pair(self.s_ops(eps), x, y)

    def t_op(self, x, y, eps: int = 1) -> np.ndarray:
        return self._pair(self.t_ops(eps), x, y)

    def s_span(self, eps: int = 1) -> Subspace:
        """S(T, T) as a span of flattened operators."""
        d = self.dim
        return operator_span(self.s_ops(eps).reshape(-1, d, d), self.p, d)

    def k_span(self, delta: int = 1) -> Subspace:
        d = self.dim
        return operator_span(self.k_ops(delta).reshape(-1, d, d), self.p, d)

    def binding(self, **params) -> Binding:
        return Binding(self.p, {"T": self.tensor}, params)


def _run(names, binding, mode, seed, samples, label):
    out = SuiteReport(label)
    for n in names:
        out.reports.append(check_identity(load(n), binding, mode=mode, seed=seed, samples=samples))
    return out


# ---------------------------------------------------------------------------
# axiom batteries

def check_hein(T: TripleSystem, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
    return _run(["hein1", "hein2"], T.binding(), mode, seed, samples, "J-ternary (Hein)")


def check_fk(T: TripleSystem, eps: int, delta: int, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
    _signs(eps, delta)
    return _run(["fk1", "fk2"], T.binding(eps=eps, delta=delta), mode, seed, samples,
                f"({eps},{delta}) Freudenthal-Kantor")


def check_special(T: TripleSystem, eps: int, delta: int, mode="auto", seed=SEED,
                  samples=10 ** 6) -> SuiteReport:
    _signs(eps, delta)
    return _run(["special"], T.binding(eps=eps, delta=delta), mode, seed, samples,
                f"({eps},{delta}) special")


def check_st_suite(T: TripleSystem, eps: int = 1, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
    """Derivation properties of S and T and the five bracket identities they imply."""
    names = ["s_derivation", "t_derivation", "bracket_sl", "bracket_tl", "bracket_st",
             "bracket_ts", "bracket_tt"]
    return _run(names, T.binding(eps=eps), mode, seed, samples, f"S/T operator identities (eps={eps})")


def _signs(eps, delta):
    if eps not in (1, -1) or delta not in (1, -1):
        raise ValueError("eps and delta must be +1 or -1")


def weak_counterexample(p: int = 3) -> TripleSystem:
    """Basis {x, y} with xxx = y and every other product zero."""
    return TripleSystem.from_entries(p, 2, [(0, 0, 0, 1, 1)], ("x", "y"))


def pathological_projection(p: int = 3, dim: int = 2) -> TripleSystem:
    """xyz := x, which breaks the first Hein identity."""
    t = np.zeros((dim,) * 4, dtype=np.int64)
    for i in range(dim):
        t[i, :, :, i] = 1
    return TripleSystem(p, t)


# ---------------------------------------------------------------------------
# J = F id + K(T, T)

@dataclass(frozen=True, eq=False)
class JTernaryPackage:
    T: TripleSystem
    J: Subspace                 # flattened operators on T
    jp: np.ndarray              # [a, b, c]: coordinate c of a.b in the J basis
    act: np.ndarray             # [a, x, y]: coordinate y of a . e_x
    pair: np.ndarray            # [x, y, a]: coordinate a of <e_x | e_y>
    unit: np.ndarray            # coordinates of id

    @property
    def p(self) -> int:
        return self.T.p

    def j_operators(self) -> np.ndarray:
        d = self.T.dim
        return self.J.basis.reshape(-1, d, d)

    def binding(self) -> Binding:
        return Binding(self.p, {"jp": self.jp, "act": self.act, "pair": self.pair, "tp": self.T.tensor})


def jordanize(T: TripleSystem, verify: bool = True, **kw) -> JTernaryPackage:
    """J = F id + K(T,T) inside End(T), with a.x = a(x) and <x|y> = -K(x,y)."""
    p, d = T.p, T.dim
    if verify:
        rep = check_hein(T, **kw)
        if not rep.passed:
            raise AxiomError(rep.summary())
    if d == 0:
        # End(0) = 0, so F id collapses; build_LT treats this case as J = F
        z = np.zeros((0, 0, 0), dtype=np.int64)
        return JTernaryPackage(T, Subspace.zero(p, 0), z, z, z, np.zeros(0, dtype=np.int64))
    K = T.k_ops(1)
    J = operator_span(np.concatenate([ff.identity(d)[None], K.reshape(-1, d, d)]), p, d)
    ops = J.basis.reshape(-1, d, d)
    n = ops.shape[0]
    prods = ff.matmul(ops[:, None], ops[None, :], p)
    sym = np.mod((prods + prods.transpose(1, 0, 2, 3)) * ff.half(p), p).reshape(-1, d * d)
    if not J.contains(sym):
        raise AxiomError("F id + K(T,T) is not closed under the symmetrized product")
    jp = J.coordinates(sym).reshape(n, n, n)
    act = ops.transpose(0, 2, 1).copy()
    pair = J.coordinates(np.mod(-K, p).reshape(-1, d * d)).reshape(d, d, n)
    unit = J.coordinates(ff.identity(d).reshape(1, -1))[0]
    pkg = JTernaryPackage(T, J, jp, act, pair, unit)
    if verify:
        rep = _run(["kks", "jordan_linearized"], Binding(p, {"T": T.tensor, "jp": jp}), "auto",
                   kw.get("seed", SEED), kw.get("samples", 10 ** 6), "Jordan closure")
        if not rep.passed:
            raise AxiomError(rep.summary())
    return pkg


def check_allison(pkg: JTernaryPackage, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
    """The six J-ternary axioms, plus the special-module identity and 1.x = x."""
    names = [f"allison{i}" for i in range(1, 7)] + ["jordan_module"]
    rep = _run(names, pkg.binding(), mode, seed, samples, "J-ternary (Allison)")
    unit_acts = ff.einsum("a,axy->xy", pkg.unit, pkg.act, p=pkg.p)
    ok = np.array_equal(unit_acts, ff.identity(pkg.T.dim))
    rep.reports.append(IdentityReport("unit acts as identity", ok, "exhaustive", pkg.T.dim))
    return rep


def check_jordan(pkg: JTernaryPackage, mode="auto", seed=SEED, samples=10 ** 6) -> SuiteReport:
    return _run(["jordan_linearized"], Binding(pkg.p, {"jp": pkg.jp}), mode, seed, samples,
                "linearized Jordan identity")


# ---------------------------------------------------------------------------
# constructions

def prototypical(A: InvolutiveAlgebra, action, h, verify: bool = True, **kw) -> TripleSystem:
    """<x,y,z> = h(x,y)z + h(z,x)y + h(z,y)x for a skew-hermitian h on a left A-module.

    ``action[i]`` is the matrix of e_i on the module, ``h[x, y]`` the vector h(w_x, w_y) in A.
    """
    p, dA = A.p, A.dim
    action = ff.as_residues(np.asarray(action, dtype=np.int64), p)
    dT = action.shape[-1]
    action = action.reshape(dA, dT, dT)
    h = ff.as_residues(np.asarray(h, dtype=np.int64), p).reshape(dT, dT, dA)
    problems = prototypical_problems(A, action, h)
    if problems:
        raise ValueError("; ".join(problems))
    # hz[x, y, z, l] = (h(x, y) z)_l
    hz = ff.einsum("xya,alz->xyzl", h, action, p=p)
    t = hz + np.einsum("zxyl->xyzl", hz) + np.einsum("zyxl->xyzl", hz)
    T = TripleSystem(p, np.mod(t, p))
    if verify:
        rep = check_hein(T, **kw)
        if not rep.passed:
            raise AxiomError(rep.summary())
    return T


def prototypical_problems(A: InvolutiveAlgebra, action, h) -> list:
    p = A.p
    out = []
    if not A.alg.is_associative():
        out.append("algebra is not associative")
    out += A.involution_problems()
    lhs = ff.einsum("ijk,kab->ijab", A.alg.table, action, p=p)
    rhs = ff.einsum("iac,jcb->ijab", action, action, p=p)
    if not np.array_equal(lhs, rhs):
        out.append("action is not a module action")
    u = A.unit
    if u is None or not np.array_equal(ff.einsum("i,iab->ab", u, action, p=p), ff.identity(action.shape[-1])):
        out.append("the unit does not act as the identity")
    hbar = ff.einsum("xyk,jk->xyj", h, A.inv, p=p)
    if not np.array_equal(h.transpose(1, 0, 2), np.mod(-hbar, p)):
        out.append("h is not skew-hermitian: h(y,x) != -bar h(x,y)")
    lhs = ff.einsum("iax,ayk->ixyk", action, h, p=p)
    rhs = ff.einsum("ijk,xyj->ixyk", A.alg.table, h, p=p)
    if not np.array_equal(lhs, rhs):
        out.append("h is not A-linear in its first argument")
    return out


@dataclass(frozen=True, eq=False)
class StructurableJTernary:
    """A J-ternary algebra <x,y,z> = V_{x,sy}(z) with its companion data on S."""

    A: StructurableAlgebra
    s: np.ndarray
    t: np.ndarray
    T: TripleSystem

    @property
    def p(self) -> int:
        return self.A.p

    def jordan_product(self, a, b) -> np.ndarray:
        """a.b = (a(sb) + b(sa)) / 2."""
        m = self.A.alg.multiply
        return np.mod((m(a, m(self.s, b)) + m(b, m(self.s, a))) * ff.half(self.p), self.p)

    def bullet(self, a, x) -> np.ndarray:
        m = self.A.alg.multiply
        return m(a, m(self.s, x))

    def pairing(self, x, y) -> np.ndarray:
        """<x|y> = y xbar - x ybar."""
        A = self.A
        return np.mod(A.alg.multiply(y, A.bar(x)) - A.alg.multiply(x, A.bar(y)), self.p)

    def phi(self, a) -> np.ndarray:
        """a -> L_a L_s."""
        return ff.matmul(self.A.L(a), self.A.L(self.s), self.p)

    def centralizer_from_t(self) -> Subspace:
        """{X in instrl : X^delta(t) = 0}."""
        A, p, d = self.A, self.p, self.A.dim
        ops = A.instrl_operators()
        # X^delta(t) = X(t) + t bar(X(1)); linear in X
        imgs = np.array([ff.matmul(A.t_delta(X), self.t, p) for X in ops]).reshape(-1, d)
        ker = ff.left_kernel(imgs, p)
        if ker.dim == 0:
            return Subspace.zero(p, d * d)
        return Subspace.span(ff.matmul(ker.basis, A.instrl.basis, p), p, d * d)

    def companion_checks(self, pkg: JTernaryPackage | None = None) -> dict:
        """Cross-check the formulas on S against J = F id + K(T,T) through a -> L_a L_s."""
        A, p, d = self.A, self.p, self.A.dim
        pkg = pkg or jordanize(self.T, verify=False)
        S = A.skew.basis
        phis = np.array([self.phi(a) for a in S]).reshape(-1, d, d)
        img = operator_span(phis, p, d)
        res = {"J equals L_S L_s": img == pkg.J, "J dimension": pkg.J.dim, "S dimension": S.shape[0]}
        ok = True
        for i, a in enumerate(S):
            for j, b in enumerate(S):
                lhs = self.phi(self.jordan_product(a, b))
                rhs = np.mod((ff.matmul(phis[i], phis[j], p) + ff.matmul(phis[j], phis[i], p)) * ff.half(p), p)
                ok &= np.array_equal(lhs, rhs)
        res["Jordan product"] = bool(ok)
        ok = True
        for i, a in enumerate(S):
            for x in range(d):
                ex = A.alg.basis_vector(x)
                ok &= np.array_equal(self.bullet(a, ex), ff.matmul(phis[i], ex, p))
        res["action"] = bool(ok)
        ok = True
        K = self.T.k_ops(1)
        for x in range(d):
            for y in range(d):
                pr = self.pairing(A.alg.basis_vector(x), A.alg.basis_vector(y))
                ok &= np.array_equal(self.phi(pr), np.mod(-K[x, y], p))
        res["pairing"] = bool(ok)
        res["S(T,T) equals centralizer of t"] = self.T.s_span(1) == self.centralizer_from_t()
        return res


def from_structurable(A: StructurableAlgebra, s, verify: bool = True, **kw) -> StructurableJTernary:
    """<x,y,z> = V_{x,sy}(z) for skew s with L_s invertible."""
    p = A.p
    s = ff.as_residues(s, p)
    if not A.skew.contains(s):
        raise ValueError("s is not skew")
    Ls = A.L(s)
    if ff.rank(Ls, p) != A.dim:
        raise ValueError("L_s is singular")
    t = ff.solve(Ls, A.unit, p)
    V = A.v_tensor.astype(np.int64)
    d = A.dim
    # tensor[x, y, z, k] = sum_b V[x, b, z, k] (s e_y)_b
    tensor = ff.matmul(Ls.T, V.transpose(1, 0, 2, 3).reshape(d, -1), p).reshape(d, d, d, d)
    T = TripleSystem(p, tensor.transpose(1, 0, 2, 3), A.alg.names)
    if verify:
        rep = check_hein(T, **kw)
        if not rep.passed:
            raise AxiomError(rep.summary())
    return StructurableJTernary(A, s, t, T)


# ---------------------------------------------------------------------------
# hermitian-form algebras are prototypical over the isotope

def hermitian_isotope_prototypical(E: InvolutiveAlgebra, action, h, s, **kw) -> TripleSystem:
    """Prototypical system on E + W over the isotope E^(s) (a*b = asb, tau(a) = -bar a).

    Module action a.e = ase on E and a.x = a o (s o x) on W; the form is
    h~(x, y) = h(x, y) on W, h~(a, b) = -a bar(b) on E, zero across.
    """
    p, dE = E.p, E.dim
    dW = np.shape(action)[-1]
    action = ff.as_residues(np.asarray(action, dtype=np.int64), p).reshape(dE, dW, dW)
    h = ff.as_residues(np.asarray(h, dtype=np.int64), p).reshape(dW, dW, dE)
    s = ff.as_residues(s, p)
    t = E.alg.table
    # isotope product: (e_i s) e_j
    Rs = E.alg.right_mul(s)
    iso = ff.einsum("mi,mjk->ijk", Rs, t, p=p)
    isotope = InvolutiveAlgebra(Algebra(p, iso, E.alg.names), np.mod(-E.inv, p))
    d = dE + dW
    act = np.zeros((dE, d, d), dtype=np.int64)
    # a . e_j = (a s) e_j, coefficient on e_k
    act[:, :dE, :dE] = ff.einsum("ijk->ikj", iso, p=p)
    s_on_W = ff.einsum("a,akl->kl", s, action, p=p)
    act[:, dE:, dE:] = ff.matmul(action, s_on_W[None], p)
    ht = np.zeros((d, d, dE), dtype=np.int64)
    ht[dE:, dE:] = h
    # -a bar(b): -(e_a (bar e_b))
    ht[:dE, :dE] = np.mod(-ff.einsum("bj,abk->ajk", E.inv, t, p=p), p)
    return prototypical(isotope, act, ht, **kw)
