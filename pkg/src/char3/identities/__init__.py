"""Multilinear identities as data: parsing, printing, checking, and the built-in corpus."""
from __future__ import annotations

from importlib import resources

from .engine import (BUDGET, DEFAULT_SAMPLES, DEFAULT_SEED, Binding, BindingError,
                     IdentityReport, budget_mode, check_identity)
from .syntax import (Identity, IdentityError, IdentitySyntaxError, format_identity,
                     parse_identity)

__all__ = [
    "BUDGET", "DEFAULT_SAMPLES", "DEFAULT_SEED", "Binding", "BindingError", "Identity",
    "IdentityError", "IdentityReport", "IdentitySyntaxError", "budget_mode", "check_identity",
    "corpus_names", "corpus_source", "format_identity", "load", "parse_identity",
]

_cache: dict = {}


def corpus_names() -> list:
    root = resources.files("char3") / "corpus"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".idt"))


def corpus_source(name: str) -> str:
    path = resources.files("char3") / "corpus" / f"{name}.idt"
    if not path.is_file():
        raise KeyError(f"no corpus identity named {name!r}")
    return path.read_text(encoding="utf-8")


def load(name: str) -> Identity:
    """Parsed corpus identity (cached)."""
    if name not in _cache:
        _cache[name] = parse_identity(corpus_source(name), name)
    return _cache[name]
