"""Batched evaluation of parsed identities on basis tuples or random vectors."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

import numpy as np

from .. import field as ff
from .syntax import SCALAR, Apply, Const, Identity, Neg, Num, Prod, Sum, Var

DEFAULT_SEED = 0x5EED
BUDGET = 10 ** 8
DEFAULT_SAMPLES = 10 ** 6


class BindingError(ValueError):
    pass


@dataclass
class Binding:
    """Concrete tensors for the operators of an identity.

    ``ops[name]`` has shape (dim of each argument sort ..., dim of result sort),
    with the scalar sort of dimension 1.  ``parity`` maps sort names to 0/1
    arrays, needed only by ``sgn``.
    """

    p: int
    ops: dict
    params: dict = field(default_factory=dict)
    parity: dict = field(default_factory=dict)


@dataclass
class IdentityReport:
    name: str
    passed: bool
    mode: str
    checked: int
    counterexample: dict | None = None

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        s = f"{self.name or 'identity'}: {verdict} ({self.mode}, {self.checked} tuples)"
        if self.counterexample is not None:
            s += f" counterexample {self.counterexample}"
        return s


class _Arg:
    __slots__ = ("idx", "val")

    def __init__(self, idx=None, val=None):
        self.idx = idx
        self.val = val


class _Evaluator:
    def __init__(self, ident: Identity, binding: Binding):
        self.ident = ident
        self.p = p = ff.check_modulus(binding.p)
        dims = {SCALAR: 1}
        for o in ident.ops:
            if o.name not in binding.ops:
                raise BindingError(f"no tensor bound for operator {o.name!r}")
            t = np.asarray(binding.ops[o.name])
            want = o.arity + 1
            if t.ndim != want:
                raise BindingError(f"operator {o.name} expects a tensor of order {want}, got {t.ndim}")
            for s, n in zip(o.arg_sorts + (o.out_sort,), t.shape):
                if dims.setdefault(s, n) != n:
                    raise BindingError(f"sort {s} bound with dimensions {dims[s]} and {n}")
        for v, s in ident.variables:
            if s not in dims:
                raise BindingError(f"dimension of sort {s} is not determined by the binding")
        self.dims = dims
        biggest = max(dims.values())
        self.ft = np.float32 if biggest * (p - 1) ** 2 * 4 < 2 ** 24 else np.float64
        self.tensors = {o.name: np.mod(np.asarray(binding.ops[o.name], dtype=np.int64), p).astype(self.ft)
                        for o in ident.ops}
        self.params = {}
        for name in ident.params:
            if name not in binding.params:
                raise BindingError(f"parameter {name!r} is not bound")
            self.params[name] = int(binding.params[name]) % p
        self.params["inv2"] = ff.half(p)
        self.parity = {s: np.asarray(a, dtype=np.int64) for s, a in binding.parity.items()}
        self.var_sorts = dict(ident.variables)

    # -- evaluation ----------------------------------------------------------
    def run(self, env, batch):
        self.env = env
        self.batch = batch
        self.memo = {}
        lhs = self.eval(self.ident.lhs)
        rhs = self.eval(self.ident.rhs)
        d = self.dims[self.ident.sort]
        lhs = self._full(lhs, d)
        rhs = self._full(rhs, d)
        return ff.fmod(lhs - rhs, self.p)

    def _full(self, v, d):
        if isinstance(v, int):
            out = np.zeros((self.batch, d), dtype=self.ft)
            if v % self.p:
                if d != 1:
                    raise BindingError("nonzero constant added to a vector expression")
                out[:] = v % self.p
            return out
        return v

    def eval(self, node):
        key = node
        if key in self.memo:
            return self.memo[key]
        out = self._eval(node)
        self.memo[key] = out
        return out

    def _eval(self, node):
        p = self.p
        if isinstance(node, Num):
            return node.value % p
        if isinstance(node, Const):
            return self.params[node.name]
        if isinstance(node, Var):
            a = self.env[node.name]
            if a.val is not None:
                return a.val
            d = self.dims[self.var_sorts[node.name]]
            out = np.zeros((self.batch, d), dtype=self.ft)
            out[np.arange(self.batch), a.idx] = 1
            return out
        if isinstance(node, Neg):
            v = self.eval(node.arg)
            if isinstance(v, int):
                return (-v) % p
            return ff.fmod(-v, p)
        if isinstance(node, Sum):
            const = 0
            arr = None
            for t in node.terms:
                v = self.eval(t)
                if isinstance(v, int):
                    const += v
                else:
                    arr = v.copy() if arr is None else arr + v
            if arr is None:
                return const % p
            if const % p:
                if arr.shape[1] != 1:
                    raise BindingError("nonzero constant added to a vector expression")
                arr = arr + const
            return ff.fmod(arr, p)
        if isinstance(node, Prod):
            const = 1
            scal = None
            vec = None
            for f in node.factors:
                v = self.eval(f)
                if isinstance(v, int):
                    const = const * v % p
                elif self._is_scalar(f):
                    scal = v if scal is None else ff.fmod(scal * v, p)
                else:
                    vec = v
            if vec is None and scal is None:
                return const
            out = vec if vec is not None else scal
            if vec is not None and scal is not None:
                out = out * scal
            if const != 1:
                out = out * const
            return out if out is vec else ff.fmod(out, p)
        if isinstance(node, Apply):
            if node.op == "sgn":
                return self._sgn(node)
            return self._apply(node)
        raise TypeError(node)

    def _is_scalar(self, node):
        if isinstance(node, Apply):
            if node.op == "sgn":
                return True
            return self.ident.op(node.op).out_sort == SCALAR
        if isinstance(node, Var):
            return self.var_sorts[node.name] == SCALAR
        if isinstance(node, Neg):
            return self._is_scalar(node.arg)
        if isinstance(node, Sum):
            return all(self._is_scalar(t) or isinstance(t, (Num, Const)) for t in node.terms)
        if isinstance(node, Prod):
            return all(self._is_scalar(t) or isinstance(t, (Num, Const)) for t in node.factors)
        return False

    def _sgn(self, node):
        signs = []
        for a in node.args:
            arg = self.env[a.name]
            if arg.idx is None:
                raise BindingError("sgn needs basis (homogeneous) variables")
            sort = self.var_sorts[a.name]
            if sort not in self.parity:
                raise BindingError(f"no parity bound for sort {sort}")
            signs.append(self.parity[sort][arg.idx])
        odd = (signs[0] * signs[1]) % 2
        return np.where(odd == 1, self.p - 1, 1).astype(self.ft)[:, None]

    def _apply(self, node):
        T = self.tensors[node.op]
        args = []
        for a in node.args:
            if isinstance(a, Var) and self.env[a.name].idx is not None:
                args.append(_Arg(idx=self.env[a.name].idx))
            else:
                v = self.eval(a)
                if isinstance(v, int):
                    v = self._full(v, T.shape[len(args)])
                args.append(_Arg(val=v))
        return contract(T, args, self.p, self.batch)


def _shared(S, xs, p):
    """Contract one tensor S (d1, ..., dm, out) with per-row vectors xs[j] (g, dj)."""
    g = xs[0].shape[0]
    r = xs[0] @ S.reshape(S.shape[0], -1)
    ff.fmod(r, p)
    for x in xs[1:]:
        r = r.reshape(g, x.shape[1], -1)
        r = np.matmul(x[:, None, :], r)[:, 0, :]
        ff.fmod(r, p)
    return r


def _each(G, xs, p):
    """Row-wise contraction of G (g, d1, ..., dm, out) with xs[j] (g, dj)."""
    g = G.shape[0]
    r = G.reshape(g, G.shape[1], -1)
    for k, x in enumerate(xs):
        r = np.matmul(x[:, None, :], r)[:, 0, :]
        ff.fmod(r, p)
        if k + 1 < len(xs):
            r = r.reshape(g, xs[k + 1].shape[1], -1)
    return r


def contract(T, args, p, batch):
    k = len(args)
    leaf = [i for i, a in enumerate(args) if a.idx is not None]
    dense = [i for i, a in enumerate(args) if a.idx is None]
    Tp = T.transpose(leaf + dense + [k])
    dout = T.shape[k]
    if not dense:
        return Tp[tuple(args[i].idx for i in leaf)]
    xs = [args[i].val for i in dense]
    if not leaf:
        return _shared(Tp, xs, p)
    inner = prod(T.shape[i] for i in dense) * dout
    ldims = [T.shape[i] for i in leaf]
    keys = np.ravel_multi_index([args[i].idx for i in leaf], ldims)
    uniq, inv = np.unique(keys, return_inverse=True)
    out = np.empty((batch, dout), dtype=T.dtype)
    if len(uniq) * (3e-5 + inner * 1e-9) < batch * inner * 3e-9:
        order = np.argsort(inv, kind="stable")
        bounds = np.cumsum(np.bincount(inv, minlength=len(uniq)))
        start = 0
        for gi, stop in enumerate(bounds):
            rows = order[start:stop]
            start = stop
            sub = Tp[np.unravel_index(uniq[gi], ldims)]
            out[rows] = _shared(sub, [x[rows] for x in xs], p)
        return out
    step = max(1, (1 << 22) // max(inner, 1))
    idxs = [args[i].idx for i in leaf]
    for s in range(0, batch, step):
        sl = slice(s, s + step)
        G = Tp[tuple(ix[sl] for ix in idxs)]
        out[sl] = _each(G, [x[sl] for x in xs], p)
    return out


# ---------------------------------------------------------------------------
# drivers

def tuple_count(ident: Identity, dims: dict) -> int:
    return prod(dims[s] for _, s in ident.variables)


def budget_mode(ident: Identity, binding: Binding) -> str:
    ev = _Evaluator(ident, binding)
    weight = tuple_count(ident, ev.dims) * ev.dims[ident.sort]
    return "exhaustive" if weight <= BUDGET else "random"


def check_identity(ident: Identity, binding: Binding, mode: str = "auto",
                   seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES,
                   batch: int | None = None) -> IdentityReport:
    """Check ``ident`` under ``binding``.

    mode: "exhaustive" (all basis tuples, lexicographic), "random" (seeded
    basis tuples), "vectors" (seeded random vectors), or "auto" (exhaustive
    when the weighted tuple count is within budget, random otherwise).
    """
    ev = _Evaluator(ident, binding)
    names = [v for v, _ in ident.variables]
    vdims = [ev.dims[s] for _, s in ident.variables]
    total = prod(vdims)
    if mode == "auto":
        mode = "exhaustive" if total * ev.dims[ident.sort] <= BUDGET else "random"
    if batch is None:
        widest = max([ev.dims[s] for s in ev.dims] + [1])
        batch = int(max(256, min(1 << 15, (1 << 24) // (widest * widest))))
    if mode == "exhaustive":
        checked = 0
        for s in range(0, total, batch):
            n = min(batch, total - s)
            idx = np.unravel_index(np.arange(s, s + n), vdims) if names else ()
            env = {v: _Arg(idx=np.asarray(ix)) for v, ix in zip(names, idx)}
            diff = ev.run(env, n)
            bad = np.nonzero(diff.any(axis=1))[0]
            checked += n
            if bad.size:
                j = bad[0]
                ce = {v: int(env[v].idx[j]) for v in names}
                return IdentityReport(ident.name, False, mode, checked, ce)
        return IdentityReport(ident.name, True, mode, total)
    if mode in ("random", "vectors"):
        rng = np.random.default_rng(seed)
        checked = 0
        while checked < samples:
            n = min(batch, samples - checked)
            if mode == "random":
                env = {v: _Arg(idx=rng.integers(0, d, n)) for v, d in zip(names, vdims)}
            else:
                env = {v: _Arg(val=rng.integers(0, ev.p, (n, d)).astype(ev.ft)) for v, d in zip(names, vdims)}
            diff = ev.run(env, n)
            bad = np.nonzero(diff.any(axis=1))[0]
            if bad.size:
                j = bad[0]
                if mode == "random":
                    ce = {v: int(env[v].idx[j]) for v in names}
                else:
                    ce = {v: env[v].val[j].astype(np.int64).tolist() for v in names}
                return IdentityReport(ident.name, False, mode, checked + j + 1, ce)
            checked += n
        return IdentityReport(ident.name, True, mode, checked)
    raise ValueError(f"unknown mode {mode!r}")
