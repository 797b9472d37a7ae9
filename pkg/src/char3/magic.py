"""The 4x4 table of Lie superalgebras attached to tensor products of composition algebras."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import field as ff
from .jternary import from_structurable
from .reference import osp, psl
from .semisimplify import direct_from_jternary
from .structurable import choose_invertible_skew, tensor_case
from .superalgebra import Fingerprint, LieSuperalgebra, direct_sum, fingerprint, odd_submodule

DIMS = (1, 2, 4, 8)

EXPECTED_SUPERDIM = {
    (1, 2): (0, 2), (1, 4): (4, 4), (1, 8): (15, 8),
    (2, 2): (0, 4), (2, 4): (6, 8), (2, 8): (21, 16),
    (4, 4): (16, 16), (4, 8): (39, 32), (8, 8): (78, 64),
}

# cells whose algebra we can build independently from matrices
REFERENCE_CELLS = {
    (1, 2): "psl(1|1)", (1, 4): "osp(2|2)", (1, 8): "psl(4|1)",
    (2, 2): "psl(1|1)+psl(1|1)", (2, 4): "psl(2|2)", (4, 4): "osp(4|4)",
}

# cells with no matrix model here; the names are the ones used in the literature
NAMED_CELLS = {(2, 8): "g(3,3)", (4, 8): "el(5;3)", (8, 8): "g(6,6)"}


def _key(d1, d2):
    return tuple(sorted((d1, d2)))


def reference_algebra(name: str, p: int = 3) -> LieSuperalgebra:
    if name == "psl(1|1)+psl(1|1)":
        a = psl(1, 1, p).L
        return direct_sum(a, a)
    kind, rest = name.split("(")
    m, n = (int(x) for x in rest.rstrip(")").split("|"))
    return {"psl": psl, "osp": osp}[kind](m, n, p).L


@dataclass
class Cell:
    d1: int
    d2: int
    label: str
    kind: str                        # "empty", "reference", "named"
    fingerprint: Fingerprint | None = None
    reference: Fingerprint | None = None
    odd_generated_dims: tuple = ()   # dims of submodules generated by odd basis vectors
    problems: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.problems

    def superdim_text(self) -> str:
        if self.fingerprint is None:
            return "-"
        e, o = self.fingerprint.superdim
        return f"({e}|{o})"

    def as_dict(self) -> dict:
        return {
            "c1": self.d1, "c2": self.d2, "label": self.label, "kind": self.kind,
            "superdim": list(self.fingerprint.superdim) if self.fingerprint else None,
            "fingerprint": self.fingerprint.as_dict() if self.fingerprint else None,
            "reference_fingerprint": self.reference.as_dict() if self.reference else None,
            "odd_generated_dims": list(self.odd_generated_dims),
            "passed": self.passed, "problems": list(self.problems),
            "seconds": round(self.seconds, 2),
        }


def cell_superalgebra(d1: int, d2: int, p: int = 3, tensor=tensor_case, **kw) -> LieSuperalgebra:
    """C1 (x) C2 -> skew s with L_s invertible -> J-ternary algebra -> L^ss.

    ``tensor(d1, d2, p)`` builds C1 (x) C2; pass a cached builder to share work.
    """
    A = tensor(d1, d2, p)
    s = choose_invertible_skew(A)
    return direct_from_jternary(from_structurable(A, s, **kw), **kw)


def _odd_generated_dims(L: LieSuperalgebra) -> tuple:
    return tuple(sorted({odd_submodule(L, v).dim for v in ff.identity(L.dim)[L.odd]}))


def compute_cell(d1: int, d2: int, p: int = 3, tensor=tensor_case, **kw) -> Cell:
    t0 = time.perf_counter()
    key = _key(d1, d2)
    if key == (1, 1):
        return Cell(d1, d2, "∅ (S = 0)", "empty")
    L = cell_superalgebra(d1, d2, p, tensor, **kw)
    fp = fingerprint(L)
    probs = []
    want = EXPECTED_SUPERDIM[key]
    if fp.superdim != want:
        probs.append(f"superdim {fp.superdim}, expected {want}")
    if fp.cube_ideal:
        probs.append(f"cube ideal has dim {fp.cube_ideal}; not a Lie superalgebra")
    if key in REFERENCE_CELLS:
        label = REFERENCE_CELLS[key]
        ref = fingerprint(reference_algebra(label, p))
        if fp.structural() != ref.structural():
            probs.append(f"fingerprint {fp.structural()} differs from {label} {ref.structural()}")
        cell = Cell(d1, d2, label, "reference", fp, ref)
    else:
        label = NAMED_CELLS[key]
        cell = Cell(d1, d2, label, "named", fp)
        if any(fp.center):
            probs.append(f"center {fp.center} is not zero")
        if fp.derived != fp.superdim:
            probs.append(f"derived superdim {fp.derived} is not the whole algebra")
        cell.odd_generated_dims = _odd_generated_dims(L)
        if not fp.odd_irreducible_heuristic:
            probs.append("odd part fails the irreducibility heuristic (" + odd_module_note(cell) + ")")
    cell.problems = probs
    cell.seconds = time.perf_counter() - t0
    return cell


@dataclass
class MagicSquare:
    p: int
    cells: dict                      # (d1, d2) -> Cell

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells.values())

    def failures(self) -> list:
        return [c for c in self.cells.values() if not c.passed]

    def symmetric(self) -> bool:
        for (a, b), c in self.cells.items():
            o = self.cells.get((b, a))
            if o is not None and (c.label, c.superdim_text()) != (o.label, o.superdim_text()):
                return False
        return True

    def as_dict(self) -> dict:
        return {"p": self.p, "rows": "dim C2", "columns": "dim C1", "passed": self.passed,
                "symmetric": self.symmetric(),
                "cells": [self.cells[(d1, d2)].as_dict() for d2 in DIMS for d1 in DIMS if (d1, d2) in self.cells]}

    def table(self) -> str:
        """Aligned text: rows dim C2, columns dim C1; each entry is label and superdim."""
        def entry(c):
            if c.kind == "empty":
                return c.label
            mark = "" if c.passed else " FAIL"
            return f"{c.label} {c.superdim_text()}{mark}"
        rows = [["C2 \\ C1"] + [str(d) for d in DIMS]]
        for d2 in DIMS:
            rows.append([str(d2)] + [entry(self.cells[(d1, d2)]) if (d1, d2) in self.cells else "" for d1 in DIMS])
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows]
        for c in self.failures():
            lines.append(f"cell ({c.d1},{c.d2}) {c.label}: " + "; ".join(c.problems))
        return "\n".join(lines)


def magic_square(p: int = 3, cells=None, progress=None, tensor=tensor_case, **kw) -> MagicSquare:
    if p != 3:
        raise ValueError("the magic square is a characteristic 3 construction")
    wanted = cells or [(d1, d2) for d2 in DIMS for d1 in DIMS]
    out = {}
    for d1, d2 in wanted:
        c = compute_cell(d1, d2, p, tensor, **kw)
        out[(d1, d2)] = c
        if progress:
            progress(c)
    return MagicSquare(p, out)


def odd_module_note(cell: Cell) -> str:
    dims = cell.odd_generated_dims
    if not dims:
        return ""
    odd = cell.fingerprint.superdim[1]
    if max(dims) < odd:
        return f"odd basis vectors generate submodules of dims {list(dims)} inside {odd}"
    return ""


__all__ = ["DIMS", "EXPECTED_SUPERDIM", "REFERENCE_CELLS", "NAMED_CELLS", "Cell", "MagicSquare",
           "cell_superalgebra", "compute_cell", "magic_square", "reference_algebra", "odd_module_note"]
