"""Parser and printer for multilinear identities.

A source holds optional declarations followed by exactly one relation::

    # comments run to the end of the line
    op T : V, V, V -> V          # operator with argument and result sorts
    var x, y : V                  # variable sorts (otherwise inferred)
    param eps                     # scalar bound at check time
    let K(a, b, c) = T(a, c, b) - T(b, c, a)     # macro, expanded on parse
    T(x, y, z) - T(z, y, x) = T(z, x, y) - T(x, z, y)

The sort ``F`` is the ground field; operators into ``F`` are scalar valued
and may multiply a vector term.  ``inv2`` is the inverse of 2 and
``sgn(x, y)`` is the super sign (-1)^{|x||y|} of two basis variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

SCALAR = "F"
KEYWORDS = {"op", "var", "param", "let"}
BUILTINS = {"inv2", "sgn"}


class IdentitySyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Apply:
    op: str
    args: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class OpDecl:
    name: str
    arg_sorts: tuple
    out_sort: str

    @property
    def arity(self) -> int:
        return len(self.arg_sorts)

    @property
    def codomain(self) -> str:
        return "scalar" if self.out_sort == SCALAR else "vector"


@dataclass(frozen=True)
class Identity:
    ops: tuple          # OpDecl, in declaration order
    variables: tuple    # (name, sort) in enumeration order
    params: tuple
    lhs: object
    rhs: object
    sort: str           # sort of both sides
    name: str = field(default="", compare=False)

    def op(self, name: str) -> OpDecl:
        for o in self.ops:
            if o.name == name:
                return o
        raise KeyError(name)


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<arrow>->)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<sym>[()+\-*=,:])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(src: str):
    toks = []
    line, col, pos = 1, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise IdentitySyntaxError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, text, line, col))
        if kind == "nl":
            line += 1
            col = 1
        else:
            col += len(text)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0
        self.skip_newlines = False

    def peek(self) -> _Tok:
        if self.skip_newlines:
            while self.toks[self.i].kind == "nl":
                self.i += 1
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        if tok.kind == "eof":
            msg = f"{msg}: unexpected end of input"
        else:
            msg = f"{msg}: unexpected {tok.text!r}"
        raise IdentitySyntaxError(msg, tok.line, tok.col)

    def expect(self, text, what=None):
        t = self.peek()
        if t.text != text or t.kind == "eof":
            self.error(f"expected {what or repr(text)}")
        return self.next()

    def ident(self, what="identifier"):
        t = self.peek()
        if t.kind != "ident":
            self.error(f"expected {what}")
        return self.next()

    # expressions -----------------------------------------------------------
    def expr(self):
        terms = []
        t = self.peek()
        if t.text in "+-" and t.kind == "sym":
            self.next()
            first = self.term()
            terms.append(Neg(first) if t.text == "-" else first)
        else:
            terms.append(self.term())
        while True:
            t = self.peek()
            if t.kind == "sym" and t.text in "+-":
                self.next()
                nxt = self.term()
                terms.append(Neg(nxt) if t.text == "-" else nxt)
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek().kind == "sym" and self.peek().text == "*":
            self.next()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self):
        t = self.peek()
        if t.kind == "int":
            self.next()
            return Num(int(t.text))
        if t.kind == "sym" and t.text == "-":
            self.next()
            return Neg(self.factor())
        if t.kind == "sym" and t.text == "(":
            self.next()
            e = self.expr()
            self.expect(")", "')'")
            return e
        if t.kind == "ident":
            if t.text in KEYWORDS:
                self.error("keyword in expression")
            self.next()
            if self.peek().kind == "sym" and self.peek().text == "(":
                self.next()
                args = [self.expr()]
                while self.peek().text == "," and self.peek().kind == "sym":
                    self.next()
                    args.append(self.expr())
                self.expect(")", "')'")
                return Apply(t.text, tuple(args))
            return Var(t.text)
        self.error("expected a term")


def _substitute(node, env):
    if isinstance(node, Var):
        return env.get(node.name, node)
    if isinstance(node, Apply):
        return Apply(node.op, tuple(_substitute(a, env) for a in node.args))
    if isinstance(node, Neg):
        return Neg(_substitute(node.arg, env))
    if isinstance(node, Sum):
        return Sum(tuple(_substitute(a, env) for a in node.terms))
    if isinstance(node, Prod):
        return Prod(tuple(_substitute(a, env) for a in node.factors))
    return node


def _expand(node, macros, depth=0):
    if depth > 50:
        raise ValueError("macro expansion too deep")
    if isinstance(node, Apply):
        args = tuple(_expand(a, macros, depth) for a in node.args)
        if node.op in macros:
            params, body = macros[node.op]
            if len(params) != len(args):
                raise ValueError(f"macro {node.op} expects {len(params)} arguments, got {len(args)}")
            return _expand(_substitute(body, dict(zip(params, args))), macros, depth + 1)
        return Apply(node.op, args)
    if isinstance(node, Neg):
        return Neg(_expand(node.arg, macros, depth))
    if isinstance(node, Sum):
        return Sum(tuple(_expand(a, macros, depth) for a in node.terms))
    if isinstance(node, Prod):
        return Prod(tuple(_expand(a, macros, depth) for a in node.factors))
    return node


def _walk(node):
    yield node
    for child in getattr(node, "args", ()) or ():
        yield from _walk(child)
    if isinstance(node, Neg):
        yield from _walk(node.arg)
    for attr in ("terms", "factors"):
        for child in getattr(node, attr, ()):
            yield from _walk(child)


def parse_identity(src: str, name: str = "") -> Identity:
    ps = _Parser(src)
    ops: dict = {}
    var_sorts: dict = {}
    var_order: list = []
    params: list = []
    macros: dict = {}
    while True:
        t = ps.peek()
        if t.kind == "nl":
            ps.next()
            continue
        if t.kind == "ident" and t.text in KEYWORDS:
            kw = ps.next().text
            if kw == "op":
                nm = ps.ident("operator name").text
                ps.expect(":", "':'")
                sorts = [ps.ident("sort").text]
                while ps.peek().text == ",":
                    ps.next()
                    sorts.append(ps.ident("sort").text)
                ps.expect("->", "'->'")
                out = ps.ident("sort").text
                if nm in ops:
                    ps.error(f"operator {nm} declared twice", t)
                ops[nm] = OpDecl(nm, tuple(sorts), out)
            elif kw == "var":
                names = [ps.ident("variable").text]
                while ps.peek().text == ",":
                    ps.next()
                    names.append(ps.ident("variable").text)
                ps.expect(":", "':'")
                sort = ps.ident("sort").text
                for n in names:
                    var_sorts[n] = sort
                    if n not in var_order:
                        var_order.append(n)
            elif kw == "param":
                params.append(ps.ident("parameter").text)
                while ps.peek().text == ",":
                    ps.next()
                    params.append(ps.ident("parameter").text)
            else:  # let
                nm = ps.ident("macro name").text
                ps.expect("(", "'('")
                formals = [ps.ident("macro parameter").text]
                while ps.peek().text == ",":
                    ps.next()
                    formals.append(ps.ident("macro parameter").text)
                ps.expect(")", "')'")
                ps.expect("=", "'='")
                body = ps.expr()
                macros[nm] = (tuple(formals), _expand(body, macros))
            if ps.peek().kind not in ("nl", "eof"):
                ps.error("expected end of line")
            continue
        break
    ps.skip_newlines = True
    if ps.peek().kind == "eof":
        ps.error("expected a relation")
    lhs = ps.expr()
    ps.expect("=", "'='")
    rhs = ps.expr()
    if ps.peek().kind != "eof":
        ps.error("expected end of input")
    lhs = _expand(lhs, macros)
    rhs = _expand(rhs, macros)
    try:
        return _finish(ops, var_sorts, var_order, params, lhs, rhs, name)
    except ValueError as exc:
        if isinstance(exc, IdentitySyntaxError):
            raise
        raise IdentityError(str(exc)) from None


class IdentityError(ValueError):
    """Well-formed source that is not a valid identity (unknown operator, arity, sorts)."""


def _finish(ops, var_sorts, var_order, params, lhs, rhs, name):
    params = tuple(params)
    implicit = not ops
    ops = dict(ops)
    nodes = list(_walk(lhs)) + list(_walk(rhs))
    for n in nodes:
        if isinstance(n, Var) and n.name in params + ("inv2",):
            continue
        if isinstance(n, Apply):
            if n.op == "sgn":
                if len(n.args) != 2 or not all(isinstance(a, Var) for a in n.args):
                    raise ValueError("sgn takes two variables")
                continue
            if n.op not in ops:
                if not implicit:
                    raise ValueError(f"unknown operator {n.op!r}")
                ops[n.op] = OpDecl(n.op, ("V",) * len(n.args), "V")
            if ops[n.op].arity != len(n.args):
                raise ValueError(f"operator {n.op} expects {ops[n.op].arity} arguments, got {len(n.args)}")
    # constants are parsed as variables; rewrite them
    lhs = _consts(lhs, params)
    rhs = _consts(rhs, params)
    order = list(var_order)
    for n in list(_walk(lhs)) + list(_walk(rhs)):
        if isinstance(n, Var) and n.name not in order:
            order.append(n.name)
    sorts = dict(var_sorts)
    side_sort = _infer(lhs, rhs, ops, sorts)
    missing = [v for v in order if v not in sorts]
    if missing:
        raise ValueError(f"cannot infer the sort of variable(s) {', '.join(missing)}")
    return Identity(tuple(ops.values()), tuple((v, sorts[v]) for v in order), params,
                    lhs, rhs, side_sort, name)


def _consts(node, params):
    if isinstance(node, Var) and (node.name in params or node.name == "inv2"):
        return Const(node.name)
    if isinstance(node, Apply):
        return Apply(node.op, tuple(_consts(a, params) for a in node.args))
    if isinstance(node, Neg):
        return Neg(_consts(node.arg, params))
    if isinstance(node, Sum):
        return Sum(tuple(_consts(a, params) for a in node.terms))
    if isinstance(node, Prod):
        return Prod(tuple(_consts(a, params) for a in node.factors))
    return node


_CONST = "const"


def _infer(lhs, rhs, ops, sorts):
    """Assign sorts to variables; returns the common sort of both sides."""

    def sort_of(node, want):
        # returns sort or _CONST; ``want`` is the expected sort or None
        if isinstance(node, (Num, Const)):
            return _CONST
        if isinstance(node, Var):
            if node.name not in sorts and want not in (None, _CONST):
                sorts[node.name] = want
            s = sorts.get(node.name)
            if s is not None and want not in (None, _CONST) and s != want:
                raise ValueError(f"variable {node.name} used with sorts {s} and {want}")
            return s
        if isinstance(node, Apply):
            if node.op == "sgn":
                return SCALAR
            d = ops[node.op]
            for a, s in zip(node.args, d.arg_sorts):
                got = sort_of(a, s)
                if got not in (None, s):
                    raise ValueError(f"argument of sort {got} passed to {node.op} where {s} is expected")
            return d.out_sort
        if isinstance(node, Neg):
            return sort_of(node.arg, want)
        if isinstance(node, Sum):
            found = None
            for t in node.terms:
                s = sort_of(t, want if found is None else found)
                if s not in (None, _CONST):
                    if found not in (None, s):
                        raise ValueError(f"sum mixes sorts {found} and {s}")
                    found = s
            if found is not None:
                for t in node.terms:
                    sort_of(t, found)
            return found if found is not None else _CONST
        if isinstance(node, Prod):
            vec = None
            for f in node.factors:
                s = sort_of(f, None)
                if s not in (None, _CONST, SCALAR):
                    if vec is not None:
                        raise ValueError("a product may contain at most one non-scalar factor")
                    vec = s
            if vec is None and want not in (None, _CONST, SCALAR):
                unknown = [f for f in node.factors if sort_of(f, None) is None]
                if len(unknown) == 1:
                    sort_of(unknown[0], want)
                    return want
            if vec is None:
                if any(sort_of(f, None) == SCALAR for f in node.factors):
                    return SCALAR
                return None if any(sort_of(f, None) is None for f in node.factors) else _CONST
            return vec
        raise TypeError(node)

    for _ in range(4):
        a = sort_of(lhs, None)
        b = sort_of(rhs, None if a in (None, _CONST) else a)
        if a in (None, _CONST) and b not in (None, _CONST):
            a = sort_of(lhs, b)
    if a not in (None, _CONST) and b not in (None, _CONST) and a != b:
        raise ValueError(f"the two sides have different sorts {a} and {b}")
    side = a if a not in (None, _CONST) else b
    if side in (None, _CONST):
        side = SCALAR
    sort_of(lhs, side)
    sort_of(rhs, side)
    return side


# ---------------------------------------------------------------------------
# printing

def _fmt(node, prec=0) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, (Const, Var)):
        return node.name
    if isinstance(node, Apply):
        return f"{node.op}({', '.join(_fmt(a) for a in node.args)})"
    if isinstance(node, Neg):
        s = "-" + _fmt(node.arg, 3)
        return f"({s})" if prec >= 2 else s
    if isinstance(node, Sum):
        parts = [_fmt(node.terms[0], 1)]
        for t in node.terms[1:]:
            if isinstance(t, Neg):
                parts.append("- " + _fmt(t.arg, 2))
            else:
                parts.append("+ " + _fmt(t, 1))
        s = " ".join(parts)
        return f"({s})" if prec >= 1 else s
    if isinstance(node, Prod):
        s = " * ".join(_fmt(f, 2) for f in node.factors)
        return f"({s})" if prec >= 3 else s
    raise TypeError(node)


def format_identity(ident: Identity) -> str:
    lines = []
    for o in ident.ops:
        lines.append(f"op {o.name} : {', '.join(o.arg_sorts)} -> {o.out_sort}")
    for v, s in ident.variables:
        lines.append(f"var {v} : {s}")
    if ident.params:
        lines.append(f"param {', '.join(ident.params)}")
    lines.append(f"{_fmt(ident.lhs)} = {_fmt(ident.rhs)}")
    return "\n".join(lines) + "\n"
