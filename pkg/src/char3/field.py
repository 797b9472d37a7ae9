"""Exact linear algebra over a prime field GF(p).

Vectors and matrices are numpy integer arrays holding residues in [0, p).
Heavy products run through BLAS in floating point, which is exact as long as
every partial sum stays below the mantissa limit; ``matmul`` splits the inner
dimension when it would not.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_F32_EXACT = 2 ** 24
_F64_EXACT = 2 ** 53


def check_modulus(p: int) -> int:
    p = int(p)
    if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    return p


def inv(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(a, -1, p)


def half(p: int) -> int:
    return (p + 1) // 2


def as_residues(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def fmod(x: np.ndarray, p: int) -> np.ndarray:
    """In-place reduction mod p of a float array of exact integers below 2**24 (2**53)."""
    q = np.multiply(x, x.dtype.type(1.0 / p))
    np.floor(q, out=q)
    q *= p
    x -= q
    x[x >= p] -= p
    x[x < 0] += p
    return x


def _float_type(inner: int, p: int):
    bound = max(inner, 1) * (p - 1) ** 2
    if bound < _F32_EXACT:
        return np.float32
    if bound < _F64_EXACT:
        return np.float64
    return None


def matmul(a, b, p: int) -> np.ndarray:
    """(a @ b) mod p, exact.  Works for stacked (batched) operands too."""
    a = np.asarray(a)
    b = np.asarray(b)
    k = a.shape[-1]
    ft = _float_type(k, p)
    if ft is not None:
        r = np.matmul(a.astype(ft), b.astype(ft))
        return fmod(r, p).astype(np.int64)
    # split the inner dimension so that each partial product fits float64
    step = max(1, (_F64_EXACT - 1) // ((p - 1) ** 2))
    out = None
    for s in range(0, k, step):
        part = np.matmul(a[..., s:s + step].astype(np.float64),
                         b[..., s:s + step, :].astype(np.float64))
        part = np.mod(part, p).astype(np.int64)
        out = part if out is None else np.mod(out + part, p)
    return out


def einsum(spec: str, *ops, p: int) -> np.ndarray:
    """einsum followed by reduction mod p, computed in float64.

    Only for contractions whose sums provably stay below 2**53; callers use
    it on small tensors.
    """
    r = np.einsum(spec, *[np.asarray(o, dtype=np.float64) for o in ops], optimize=True)
    return np.mod(r, p).astype(np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matrix_power(m, k: int, p: int) -> np.ndarray:
    m = as_residues(m, p)
    out = identity(m.shape[0])
    for _ in range(k):
        out = matmul(out, m, p)
    return out


# ---------------------------------------------------------------------------
# row reduction

def _rref_block(m: np.ndarray, p: int, inverses: np.ndarray):
    """RREF of a small float block; returns (nonzero rows, pivots)."""
    m = m.copy()
    r, n = m.shape
    pivots = []
    row = 0
    col = 0
    while row < r and col < n:
        colvals = m[row:, col]
        if colvals.any():
            c = col
            i = row + int(np.argmax(colvals != 0))
        else:
            nz = m[row:, col:] != 0
            hit = nz.any(axis=0)
            if not hit.any():
                break
            c = col + int(np.argmax(hit))
            i = row + int(np.argmax(nz[:, c - col]))
        if i != row:
            m[[row, i]] = m[[i, row]]
        lead = int(m[row, c])
        if lead != 1:
            m[row, c:] = fmod(m[row, c:] * inverses[lead], p)
        f = m[:, c].copy()
        f[row] = 0
        others = np.nonzero(f)[0]
        if others.size:
            upd = m[others, c:] - np.outer(f[others], m[row, c:])
            m[others, c:] = fmod(upd, p)
        pivots.append(c)
        row += 1
        col = c + 1
    return m[:row], pivots


class SpanBuilder:
    """Incrementally maintained RREF basis of a growing subspace of GF(p)^n.

    Rows are added in batches: a batch is first reduced against the current
    basis with one matrix product, then the surviving residues are eliminated
    in small blocks and folded back into the basis.
    """

    BLOCK = 64

    def __init__(self, n: int, p: int):
        self.n = int(n)
        self.p = check_modulus(p)
        ft = _float_type(self.n, self.p)
        if ft is None:
            ft = np.float64
            if self.n * (self.p - 1) ** 2 >= _F64_EXACT:
                raise ValueError("modulus too large for the dense span engine")
        self._ft = ft
        self._buf = np.zeros((min(self.n, 16), self.n), dtype=ft)
        self._k = 0
        self._piv = np.zeros(self.n, dtype=np.int64)
        self._inverses = np.zeros(self.p, dtype=ft)
        for a in range(1, self.p):
            self._inverses[a] = pow(a, -1, self.p)

    @property
    def dim(self) -> int:
        return self._k

    @property
    def _rows(self) -> np.ndarray:
        return self._buf[: self._k]

    def _reduce_against(self, v: np.ndarray, rows: np.ndarray, piv: np.ndarray) -> np.ndarray:
        if rows.shape[0] == 0 or v.shape[0] == 0:
            return v
        coef = v[:, piv]
        out = v - coef @ rows
        return fmod(out, self.p)

    def _prep(self, vectors) -> np.ndarray:
        v = np.atleast_2d(np.asarray(vectors))
        if v.dtype != self._ft:
            v = np.mod(v, self.p).astype(self._ft)
        else:
            v = fmod(v.copy(), self.p)
        return v

    def reduce(self, vectors) -> np.ndarray:
        """Residues of ``vectors`` modulo the current span (int64)."""
        v = self._prep(vectors)
        return self._reduce_against(v, self._rows, self._piv[: self._k]).astype(np.int64)

    def contains(self, vectors) -> bool:
        return not self.reduce(vectors).any()

    def _append(self, new: np.ndarray, piv: np.ndarray):
        k, r = self._k, new.shape[0]
        if k + r > self._buf.shape[0]:
            cap = min(self.n, max(2 * self._buf.shape[0], k + r))
            buf = np.zeros((cap, self.n), dtype=self._ft)
            buf[:k] = self._buf[:k]
            self._buf = buf
        if k:
            rows = self._buf[:k]
            coef = rows[:, piv]
            rows -= coef @ new
            fmod(rows, self.p)
        self._buf[k:k + r] = new
        self._piv[k:k + r] = piv
        self._k = k + r

    def add(self, vectors) -> np.ndarray:
        """Add rows; returns the new RREF rows created (int64, possibly empty).

        The returned rows span the new part of the space modulo the old span.
        """
        v = self._prep(vectors)
        if v.shape[0] == 0:
            return np.zeros((0, self.n), dtype=np.int64)
        if v.shape[1] != self.n:
            raise ValueError("vector length does not match the ambient dimension")
        created = []
        step = 4096
        for s in range(0, v.shape[0], step):
            if self._k == self.n:
                break
            chunk = self._reduce_against(v[s:s + step], self._rows, self._piv[: self._k])
            chunk = chunk[chunk.any(axis=1)]
            start = self._k
            for b in range(0, chunk.shape[0], self.BLOCK):
                if self._k == self.n:
                    break
                blk = chunk[b:b + self.BLOCK]
                if self._k > start:
                    blk = self._reduce_against(blk, self._buf[start:self._k], self._piv[start:self._k])
                    blk = blk[blk.any(axis=1)]
                if blk.shape[0] == 0:
                    continue
                new, piv = _rref_block(blk, self.p, self._inverses)
                if not piv:
                    continue
                piv = np.asarray(piv, dtype=np.int64)
                self._append(new, piv)
                created.append(new)
        if not created:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.concatenate(created).astype(np.int64)

    def subspace(self) -> "Subspace":
        order = np.argsort(self._piv[: self._k], kind="stable")
        return Subspace(self.p, self.n, self._rows[order].astype(np.int64))


def rref(m, p: int):
    """Reduced row-echelon form (same shape as ``m``) and pivot columns."""
    p = check_modulus(p)
    m = as_residues(m, p)
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    r, n = m.shape
    if n == 0 or r == 0:
        return m.copy(), []
    sb = SpanBuilder(n, p)
    sb.add(m)
    sub = sb.subspace()
    out = np.zeros_like(m)
    out[: sub.dim] = sub.basis
    return out, list(sub.pivots)


def rank(m, p: int) -> int:
    return len(rref(m, p)[1])


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space in canonical RREF form; equal subspaces have equal bases."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple = field(init=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.int64).reshape(-1 if self.ambient_dim else 0, self.ambient_dim)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)
        piv = tuple(int(np.argmax(row != 0)) for row in b)
        object.__setattr__(self, "pivots", piv)

    @classmethod
    def span(cls, vectors, p: int, n: int | None = None) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if n is None:
            n = v.shape[-1]
        v = v.reshape(-1, n)
        sb = SpanBuilder(n, p)
        sb.add(v)
        return sb.subspace()

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, identity(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p == other.p and self.ambient_dim == other.ambient_dim
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(p={self.p}, dim={self.dim}, ambient={self.ambient_dim})"

    def builder(self) -> SpanBuilder:
        sb = SpanBuilder(self.ambient_dim, self.p)
        sb.add(self.basis)
        return sb

    def reduce(self, vectors) -> np.ndarray:
        v = as_residues(np.atleast_2d(vectors), self.p)
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        return np.mod(v - matmul(v[:, piv], self.basis, self.p), self.p)

    def contains(self, vectors) -> bool:
        return not self.reduce(vectors).any()

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates with respect to ``basis``; raises if outside the span."""
        v = as_residues(np.atleast_2d(vectors), self.p)
        coords = v[:, list(self.pivots)]
        if self.dim and not np.array_equal(matmul(coords, self.basis, self.p), v):
            raise ValueError("vector does not lie in the subspace")
        if self.dim == 0 and v.any():
            raise ValueError("vector does not lie in the subspace")
        return coords

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.p, self.ambient_dim)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return other.contains(self.basis) if self.dim else True

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = a B1 = b B2  <=>  (a, -b) in the left kernel of [B1; B2]
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.p, self.ambient_dim)
        stacked = np.concatenate([self.basis, other.basis])
        k = kernel_basis(stacked.T, self.p)
        if k.dim == 0:
            return Subspace.zero(self.p, self.ambient_dim)
        vecs = matmul(k.basis[:, : self.dim], self.basis, self.p)
        return Subspace.span(vecs, self.p, self.ambient_dim)


def kernel_basis(m, p: int) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    m = as_residues(m, p)
    r, n = m.shape
    if r == 0:
        return Subspace.full(p, n)
    red, piv = rref(m, p)
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return Subspace.zero(p, n)
    vecs = np.zeros((len(free), n), dtype=np.int64)
    red = red[: len(piv)]
    for i, f in enumerate(free):
        vecs[i, f] = 1
        vecs[i, piv] = np.mod(-red[:, f], p)
    return Subspace.span(vecs, p, n)


def left_kernel(m, p: int) -> Subspace:
    return kernel_basis(np.asarray(m).T, p)


def solve(m, b, p: int):
    """One solution x of m x = b, or None when the system is inconsistent."""
    m = as_residues(m, p)
    b = as_residues(b, p)
    r, n = m.shape
    aug = np.concatenate([m, b.reshape(r, -1)], axis=1)
    red, piv = rref(aug, p)
    if any(c >= n for c in piv):
        return None
    cols = b.reshape(r, -1).shape[1]
    x = np.zeros((n, cols), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = red[i, n:]
    return x.reshape(n) if np.ndim(b) == 1 else x


def inverse(m, p: int) -> np.ndarray:
    m = as_residues(m, p)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse expects a square matrix")
    x = solve(m, identity(n), p)
    if x is None or rank(m, p) < n:
        raise ValueError("matrix is singular")
    return x


def canonical_complement(inner: Subspace, outer: Subspace) -> Subspace:
    """Complement of ``inner`` in ``outer`` spanned by greedily chosen outer rows."""
    if not inner.is_subspace_of(outer):
        raise ValueError("inner subspace is not contained in outer subspace")
    sb = inner.builder()
    chosen = []
    for row in outer.basis:
        if sb.add(row).shape[0]:
            chosen.append(row)
    if not chosen:
        return Subspace.zero(outer.p, outer.ambient_dim)
    return Subspace.span(np.array(chosen), outer.p, outer.ambient_dim)


# ---------------------------------------------------------------------------
# nilpotent operators

@dataclass(frozen=True)
class JordanChainDecomposition:
    p: int
    chains: tuple  # each an (length, n) int array: v, δv, δ²v, ...

    @property
    def multiplicities(self) -> dict:
        out: dict = {}
        for c in self.chains:
            out[len(c)] = out.get(len(c), 0) + 1
        return dict(sorted(out.items(), reverse=True))

    def basis(self) -> np.ndarray:
        return np.concatenate(self.chains) if self.chains else np.zeros((0, 0), dtype=np.int64)

    def span_of_length(self, length: int, n: int) -> Subspace:
        rows = [c for c in self.chains if len(c) == length]
        if not rows:
            return Subspace.zero(self.p, n)
        return Subspace.span(np.concatenate(rows), self.p, n)


def nilpotent_jordan_chains(delta, p: int) -> JordanChainDecomposition:
    """Split GF(p)^n into δ-chains, longest first, with greedy pivot tie-breaking."""
    p = check_modulus(p)
    delta = as_residues(delta, p)
    n = delta.shape[0]
    powers = [identity(n)]
    for _ in range(p):
        powers.append(matmul(delta, powers[-1], p))
    if powers[p].any():
        raise ValueError("operator is not nilpotent of order at most p")
    kernels = [Subspace.zero(p, n)] + [kernel_basis(powers[k], p) for k in range(1, p + 1)]
    chains = []
    for k in range(p, 0, -1):
        sb = kernels[k - 1].builder()
        images = [c[len(c) - k] for c in chains]
        if images:
            sb.add(np.array(images))
        for row in kernels[k].basis:
            if sb.add(row).shape[0]:
                chain = [row]
                for _ in range(k - 1):
                    chain.append(matmul(delta, chain[-1], p))
                chains.append(np.array(chain, dtype=np.int64))
    return JordanChainDecomposition(p, tuple(chains))


def batch_rank(ms, p: int) -> np.ndarray:
    """Ranks of a stack of matrices, eliminated side by side."""
    m = as_residues(ms, p).copy()
    B, r, c = m.shape
    inverses = np.array([0] + [inv(a, p) for a in range(1, p)], dtype=np.int64)
    rk = np.zeros(B, dtype=np.int64)
    rows = np.arange(r)
    for col in range(c):
        cand = (m[:, :, col] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = np.argmax(cand[b], axis=1)
        top = rk[b]
        pr = m[b, piv].copy()
        m[b, piv] = m[b, top]
        m[b, top] = np.mod(pr * inverses[pr[:, col]][:, None], p)
        f = m[b, :, col].copy()
        f[rows[None, :] <= top[:, None]] = 0
        m[b] = np.mod(m[b] - f[:, :, None] * m[b, top][:, None, :], p)
        rk[b] += 1
    return rk
