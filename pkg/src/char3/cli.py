"""Command line: construct, check, semisimplify, fingerprint, magic-square, identity.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 construction failure.
"""
from __future__ import annotations

import os

_threads = os.environ.get("CHAR3_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import argparse  # noqa: E402
import json  # noqa: E402
import re  # noqa: E402
import sys  # noqa: E402
from dataclasses import dataclass  # noqa: E402

import numpy as np  # noqa: E402

from . import serialize  # noqa: E402
from .algebra import Algebra  # noqa: E402
from .identities import (Binding, BindingError, IdentityError, IdentityReport,  # noqa: E402
                         IdentitySyntaxError, check_identity, corpus_names, format_identity, load,
                         parse_identity)
from .jternary import (SEED, SuiteReport, TripleSystem, check_allison, check_fk, check_hein,  # noqa: E402
                       check_jordan, check_special, check_st_suite, from_structurable, jordanize,
                       pathological_projection, weak_counterexample)
from .lie import GradedLieAlgebra, build_kantor, build_LT, check_lts, kt_triple_system, lt_delta  # noqa: E402
from .magic import magic_square  # noqa: E402
from .reference import first_kind_system, gl, osp, psl, second_kind_system, sl  # noqa: E402
from .semisimplify import SemisimplifyInput, direct_from_jternary, semisimplify  # noqa: E402
from .structurable import (AxiomError, InvolutiveAlgebra, StructurableAlgebra,  # noqa: E402
                           TensorStructurable, albert_data, albert_reports, choose_invertible_skew,
                           skew_left_mul_ranks, smirnov_algebra, tensor_case)
from .composition import split_composition  # noqa: E402
from .superalgebra import LieSuperalgebra, check_weak, cube, fingerprint, is_lie  # noqa: E402

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONSTRUCT = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# construction specs

@dataclass
class Built:
    obj: object
    derivation: np.ndarray | None = None
    source: object = None            # the structurable algebra or triple it came from


_BASE = re.compile(r"^([a-z][a-z0-9-]*)(?:\(([^)]*)\))?$")
MODIFIERS = ("jternary", "kt", "lt", "kantor", "kantor-v2", "lss")


def _ints(args: str, sep: str, n: int, what: str) -> list:
    try:
        vals = [int(x) for x in args.split(sep)]
    except ValueError:
        raise UsageError(f"{what} needs {n} integers") from None
    if len(vals) != n:
        raise UsageError(f"{what} needs {n} integers")
    return vals


def _base(token: str, p: int) -> Built:
    m = _BASE.match(token.replace(" ", ""))
    if not m:
        raise UsageError(f"cannot parse {token!r}")
    name, args = m.group(1), m.group(2)
    if name == "tensor":
        d1, d2 = _ints(args or "", ",", 2, "tensor(d1,d2)")
        if d1 not in (1, 2, 4, 8) or d2 not in (1, 2, 4, 8):
            raise UsageError("composition algebra dimensions are 1, 2, 4 or 8")
        return Built(tensor_case(d1, d2, p))
    if name == "smirnov" and args is None:
        return Built(smirnov_algebra(split_composition(8, p)))
    if name == "weak-counterexample" and args is None:
        return Built(weak_counterexample(p))
    if name == "pathological":
        (n,) = _ints(args or "2", ",", 1, "pathological(n)")
        return Built(pathological_projection(p, n))
    if name in ("proto-osp", "proto-psl"):
        nx, ny = _ints(args or "", ",", 2, f"{name}(nX,nY)")
        make = first_kind_system if name == "proto-osp" else second_kind_system
        return Built(make(nx, ny, p)[3])
    if name in ("gl", "sl", "psl", "osp"):
        mm, nn = _ints(args or "", "|", 2, f"{name}(m|n)")
        try:
            return Built({"gl": gl, "sl": sl, "psl": psl, "osp": osp}[name](mm, nn, p).L)
        except ValueError as e:
            if isinstance(e, AxiomError):
                raise
            raise UsageError(str(e)) from None
    raise UsageError(f"unknown construction {token!r}")


def _as_triple(b: Built) -> Built:
    if isinstance(b.obj, TripleSystem):
        return b
    if isinstance(b.obj, StructurableAlgebra):
        s = choose_invertible_skew(b.obj)
        if s is None:
            raise AxiomError("no skew element with invertible left multiplication")
        return Built(from_structurable(b.obj, s).T, source=b.obj)
    raise UsageError(f"a triple system is needed, got {type(b.obj).__name__}")


def _apply(mod: str, b: Built) -> Built:
    if mod == "jternary":
        return _as_triple(b)
    if mod in ("kt", "kantor", "kantor-v2"):
        if not isinstance(b.obj, StructurableAlgebra):
            raise UsageError(f"{mod} needs a structurable algebra")
        if mod == "kt":
            return Built(kt_triple_system(b.obj), source=b.obj)
        return Built(build_kantor(b.obj, "v1" if mod == "kantor" else "v2").G, source=b.obj)
    if mod == "lt":
        t = _as_triple(b)
        G = build_LT(jordanize(t.obj))
        return Built(G, lt_delta(G), t.obj)
    if mod == "lss":
        t = _as_triple(b)
        return Built(direct_from_jternary(t.obj), source=t.obj)
    raise UsageError(f"unknown modifier {mod!r}")


def build_spec(spec: str, p: int = 3) -> Built:
    """"[modifier ...] base", modifiers applied right to left.

    Bases: tensor(d1,d2), smirnov, weak-counterexample, pathological(n),
    proto-osp(nX,nY), proto-psl(nX,nY), gl|sl|psl|osp(m|n).
    Modifiers: jternary, kt, lt, kantor, kantor-v2, lss.
    """
    words = spec.split()
    if not words:
        raise UsageError("empty construction")
    *mods, base = words
    for m in mods:
        if m not in MODIFIERS:
            raise UsageError(f"unknown modifier {m!r}; choose from {', '.join(MODIFIERS)}")
    b = _base(base, p)
    for m in reversed(mods):
        b = _apply(m, b)
    return b


def _load_target(target: str, p: int) -> Built:
    if os.path.isfile(target):
        try:
            with open(target, encoding="utf-8") as f:
                d = json.load(f)
            obj = serialize.from_dict(d)
        except (OSError, json.JSONDecodeError, serialize.SchemaError, KeyError, ValueError) as e:
            raise UsageError(f"cannot read {target}: {e}") from None
        der = np.asarray(d["derivation"], dtype=np.int64) if "derivation" in d else None
        return Built(obj, der)
    return build_spec(target, p)


# ---------------------------------------------------------------------------
# checks

def _vec_text(v, names, p) -> str:
    terms = []
    for i in np.nonzero(v)[0]:
        c = int(v[i]) % p
        coef = "" if c == 1 else "-" if c == p - 1 else f"{c}*"
        terms.append(f"{coef}{names[i]}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _cube_witness(L: LieSuperalgebra) -> IdentityReport:
    """First odd basis vector x with [[x,x],x] != 0."""
    if not L._weak.passed:
        return IdentityReport("cube [[x,x],x] = 0", False, "exhaustive", 0, {"reason": "super-Jacobi fails"})
    if L.p != 3:
        return IdentityReport("cube [[x,x],x] = 0", True, "exhaustive", 0)
    eye = np.eye(L.dim, dtype=np.int64)
    for n, i in enumerate(L.odd):
        c = cube(L, eye[i])
        if c.any():
            return IdentityReport("cube [[x,x],x] = 0", False, "exhaustive", n + 1,
                                  {"x": L.names[i], "[[x,x],x]": _vec_text(c, L.names, L.p)})
    return IdentityReport("cube [[x,x],x] = 0", is_lie(L), "exhaustive", L.odd.size)


def _as_graded_algebra(obj) -> Algebra:
    if isinstance(obj, GradedLieAlgebra):
        return obj.L
    if isinstance(obj, Algebra):
        return obj
    raise UsageError("jacobi needs a Lie algebra")


def _triple_of(obj) -> TripleSystem:
    if isinstance(obj, TripleSystem):
        return obj
    raise UsageError("this suite needs a triple system (try the jternary modifier)")


SUITES = ("hein", "fk", "special", "st", "allison", "jordan", "lts", "structurable", "albert",
          "jacobi", "super", "super-cube", "skew")


def run_suite(suite: str, b: Built, mode: str, seed: int, samples: int, eps: int, delta: int) -> list:
    """A list of reports (IdentityReport, SuiteReport or anything with passed/summary)."""
    obj = b.obj
    kw = dict(mode=mode, seed=seed, samples=samples)
    if suite == "hein":
        return [check_hein(_triple_of(obj), **kw)]
    if suite == "fk":
        return [check_fk(_triple_of(obj), eps, delta, **kw)]
    if suite == "special":
        return [check_special(_triple_of(obj), eps, delta, **kw)]
    if suite == "st":
        return [check_st_suite(_triple_of(obj), eps, **kw)]
    if suite in ("allison", "jordan"):
        pkg = jordanize(_triple_of(obj), verify=False)
        return [(check_allison if suite == "allison" else check_jordan)(pkg, **kw)]
    if suite == "lts":
        return [check_lts(_triple_of(obj), **kw)]
    if suite == "structurable":
        if not isinstance(obj, InvolutiveAlgebra):
            raise UsageError("structurable needs an algebra with involution")
        A = obj if isinstance(obj, StructurableAlgebra) else StructurableAlgebra(obj.alg, obj.inv)
        probs = A.involution_problems()
        inv = IdentityReport("involution", not probs, "exhaustive", A.dim, {"problem": probs[0]} if probs else None)
        return [inv] + A.axiom_reports(**kw)
    if suite == "albert":
        if not isinstance(obj, TensorStructurable):
            raise UsageError("albert needs tensor(d1,d2)")
        return albert_reports(albert_data(obj, verify=False))
    if suite == "jacobi":
        L = _as_graded_algebra(obj)
        G = obj if isinstance(obj, GradedLieAlgebra) else GradedLieAlgebra(L)
        return [G.anticommutativity_report(), G.jacobi_report(**kw)]
    if suite in ("super", "super-cube"):
        if not isinstance(obj, LieSuperalgebra):
            raise UsageError(f"{suite} needs a superalgebra (try the lss modifier)")
        out = [check_weak(obj, **kw)]
        if suite == "super-cube":
            out.append(_cube_witness(obj))
        return out
    if suite == "skew":
        if not isinstance(obj, InvolutiveAlgebra):
            raise UsageError("skew needs an algebra with involution")
        elems, ranks = skew_left_mul_ranks(obj)
        ok = bool((ranks == obj.dim).any())
        return [IdentityReport("skew s with L_s invertible exists", ok, "exhaustive", len(elems),
                               None if ok else {"max rank": int(ranks.max()), "dim": obj.dim})]
    raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def default_suite(obj) -> str:
    if isinstance(obj, LieSuperalgebra):
        return "super"
    if isinstance(obj, TripleSystem):
        return "hein"
    if isinstance(obj, StructurableAlgebra):
        return "structurable"
    if isinstance(obj, InvolutiveAlgebra):
        return "skew"
    return "jacobi"


def _flatten(reports) -> list:
    out = []
    for r in reports:
        if isinstance(r, SuiteReport):
            out += _flatten(r.reports)
        else:
            out.append(r)
    return out


def print_reports(reports, out=None) -> bool:
    out = out or sys.stdout
    rows = _flatten(reports)
    width = max([len(r.name) for r in rows] + [4])
    for r in rows:
        mode = getattr(r, "mode", "exhaustive")
        line = f"{r.name.ljust(width)}  {'pass' if r.passed else 'FAIL'}  {mode:<10}  {r.checked} tuples"
        print(line, file=out)
    bad = [r for r in rows if not r.passed]
    if bad:
        print(f"first failure: {bad[0].name}: {bad[0].counterexample}", file=out)
    return not bad


# ---------------------------------------------------------------------------
# commands

def _write(obj, derivation, path):
    text = serialize.dumps(obj, derivation)
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def cmd_construct(a) -> int:
    b = build_spec(a.spec, a.p)
    _write(b.obj, b.derivation, a.out)
    if a.out and a.out != "-":
        print(f"wrote {type(b.obj).__name__} of dim {b.obj.dim} to {a.out}", file=sys.stderr)
    return EXIT_OK


def cmd_check(a) -> int:
    b = _load_target(a.target, a.p)
    suite = a.suite or default_suite(b.obj)
    reports = run_suite(suite, b, a.mode, a.seed, a.samples, a.eps, a.delta)
    return EXIT_OK if print_reports(reports) else EXIT_FAIL


def _semisimplify_input(b: Built) -> SemisimplifyInput:
    if b.derivation is None:
        raise UsageError("semisimplify needs an algebra with a derivation (e.g. an lt construction)")
    L = b.obj.L if isinstance(b.obj, GradedLieAlgebra) else b.obj
    if not isinstance(L, Algebra):
        raise UsageError("semisimplify needs a Lie algebra")
    return SemisimplifyInput(L, b.derivation)


def cmd_semisimplify(a) -> int:
    b = _load_target(a.target, a.p)
    if b.derivation is None and isinstance(b.obj, (TripleSystem, StructurableAlgebra)):
        b = _apply("lt", b)
    Lss = semisimplify(_semisimplify_input(b))
    fp = fingerprint(Lss)
    if a.out:
        _write(Lss, None, a.out)
    print(fp.summary())
    return EXIT_OK


def cmd_fingerprint(a) -> int:
    b = _load_target(a.target, a.p)
    L = b.obj
    if isinstance(L, (TripleSystem, StructurableAlgebra)):
        L = _apply("lss", b).obj
    if not isinstance(L, LieSuperalgebra):
        raise UsageError("fingerprint needs a superalgebra")
    fp = fingerprint(L)
    print(json.dumps(fp.as_dict()) if a.format == "json" else fp.summary())
    return EXIT_OK


def _parse_cell(text: str) -> tuple:
    d1, d2 = _ints(text, ",", 2, "--cell d1,d2")
    if d1 not in (1, 2, 4, 8) or d2 not in (1, 2, 4, 8):
        raise UsageError("cells are pairs from 1, 2, 4, 8")
    return d1, d2


def cmd_magic_square(a) -> int:
    if a.p != 3:
        raise UsageError("the magic square is only defined for p = 3")
    cells = [_parse_cell(c) for c in a.cell] if a.cell else None

    def progress(c):
        if a.verbose:
            print(f"cell ({c.d1},{c.d2}) {c.label} {c.superdim_text()} {c.seconds:.1f}s", file=sys.stderr)
    ms = magic_square(a.p, cells, progress)
    print(json.dumps(ms.as_dict(), ensure_ascii=False, indent=1) if a.format == "json" else ms.table())
    return EXIT_OK if ms.passed else EXIT_FAIL


def _binding_for(obj, ident) -> Binding:
    """Bind declared operators by name: T (triple), B (bracket), M (product), V, and bar as B."""
    p = obj.p
    ops, parity = {}, {}
    if isinstance(obj, TripleSystem):
        ops = {"T": obj.tensor, "B": obj.tensor}
    elif isinstance(obj, LieSuperalgebra):
        ops = {"B": obj.table}
        for sorts in _decl_sorts(ident).values():
            for s in sorts:
                parity[s] = obj.parity
    elif isinstance(obj, InvolutiveAlgebra):
        ops = {"M": obj.alg.table, "B": obj.inv.T}
        if isinstance(obj, StructurableAlgebra):
            ops["V"] = obj.v_tensor
    elif isinstance(obj, (Algebra, GradedLieAlgebra)):
        L = obj.L if isinstance(obj, GradedLieAlgebra) else obj
        ops = {"B": L.table, "M": L.table}
    declared = set(_decl_sorts(ident))
    missing = declared - set(ops)
    if missing:
        raise UsageError(f"no binding for operator(s) {', '.join(sorted(missing))} on {type(obj).__name__}")
    return Binding(p, {k: v for k, v in ops.items() if k in declared}, parity=parity)


def _decl_sorts(ident) -> dict:
    return {op.name: tuple(op.arg_sorts) + (op.out_sort,) for op in ident.ops}


def cmd_identity(a) -> int:
    if a.list:
        for n in corpus_names():
            print(n)
        return EXIT_OK
    if not a.name and not a.identity:
        raise UsageError("give a corpus identity name or --identity FILE")
    if a.identity:
        try:
            with open(a.identity, encoding="utf-8") as f:
                ident = parse_identity(f.read(), os.path.basename(a.identity))
        except OSError as e:
            raise UsageError(str(e)) from None
    else:
        try:
            ident = load(a.name)
        except KeyError as e:
            raise UsageError(str(e)) from None
    if a.print or not a.target:
        print(format_identity(ident))
        if not a.target:
            return EXIT_OK
    b = _load_target(a.target, a.p)
    params = dict(kv.split("=", 1) for kv in a.param)
    binding = _binding_for(b.obj, ident)
    binding.params.update({k: int(v) for k, v in params.items()})
    rep = check_identity(ident, binding, mode=a.mode, seed=a.seed, samples=a.samples)
    return EXIT_OK if print_reports([rep]) else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="char3", description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3, help="field characteristic (default 3)")
    sub = ap.add_subparsers(dest="command", required=True)

    def checking(sp):
        sp.add_argument("--mode", default="auto", choices=("auto", "exhaustive", "random", "vectors"))
        sp.add_argument("--seed", type=lambda s: int(s, 0), default=SEED)
        sp.add_argument("--samples", type=int, default=10 ** 6)

    c = sub.add_parser("construct", help="build a named object and write it as JSON")
    c.add_argument("spec", nargs="+", help="e.g. tensor(8,4), 'kantor tensor(8,8)', 'lt weak-counterexample'")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("check", help="run an axiom suite")
    c.add_argument("target", nargs="+", help="JSON file or construction")
    c.add_argument("--suite", choices=SUITES)
    c.add_argument("--eps", type=int, default=1)
    c.add_argument("--delta", type=int, default=1)
    checking(c)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("semisimplify", help="L^ss of an algebra with a nilpotent derivation")
    c.add_argument("target", nargs="+")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_semisimplify)

    c = sub.add_parser("fingerprint", help="structural invariants of a superalgebra")
    c.add_argument("target", nargs="+")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_fingerprint)

    c = sub.add_parser("magic-square", help="the 4x4 table of superalgebras")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--cell", action="append", help="only these cells, e.g. --cell 4,4")
    c.add_argument("--verbose", "-v", action="store_true")
    c.set_defaults(func=cmd_magic_square)

    c = sub.add_parser("identity", help="check a corpus or custom identity")
    c.add_argument("name", nargs="?", help="corpus identity name")
    c.add_argument("target", nargs="*", help="JSON file or construction")
    c.add_argument("--identity", help="identity source file")
    c.add_argument("--param", action="append", default=[], help="NAME=VALUE for identity parameters")
    c.add_argument("--list", action="store_true")
    c.add_argument("--print", action="store_true")
    checking(c)
    c.set_defaults(func=cmd_identity)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    for attr in ("spec", "target"):
        if isinstance(getattr(a, attr, None), list):
            setattr(a, attr, " ".join(getattr(a, attr)))
    if a.command == "identity" and a.identity and a.name:
        a.target = " ".join(filter(None, [a.name, a.target]))
        a.name = None
    try:
        return a.func(a)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (AxiomError, BindingError, IdentityError, IdentitySyntaxError) as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_CONSTRUCT
    except ValueError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_CONSTRUCT


if __name__ == "__main__":
    sys.exit(main())
