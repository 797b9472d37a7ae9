import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from char3.identities import (Binding, BindingError, IdentityError, IdentitySyntaxError, budget_mode,
                              check_identity, corpus_names, corpus_source, format_identity, load,
                              parse_identity)
from char3.jternary import TripleSystem, pathological_projection, weak_counterexample
from char3.reference import ReferenceSpec, build_reference, first_kind_system

P = 3
HEIN1 = "T(x,y,T(u,v,z)) - T(T(x,y,u),v,z) - T(u,T(y,x,v),z) - T(u,v,T(x,y,z)) = 0"


def test_trivial_relation_passes_everywhere():
    ident = parse_identity("T(x,y,z) - T(x,y,z) = 0")
    assert [o.name for o in ident.ops] == ["T"] and ident.ops[0].arity == 3
    rng = np.random.default_rng(0)
    rep = check_identity(ident, Binding(P, {"T": rng.integers(0, P, (3,) * 4)}))
    assert rep.passed and rep.mode == "exhaustive" and rep.checked == 27


def test_hein1_source_matches_corpus_entry():
    T = pathological_projection()
    written = check_identity(parse_identity(HEIN1), T.binding())
    corpus = check_identity(load("hein1"), T.binding())
    assert not written.passed and not corpus.passed
    assert written.counterexample == corpus.counterexample


def test_pathological_fails_on_first_tuple():
    rep = check_identity(load("hein1"), pathological_projection().binding(), mode="exhaustive")
    assert not rep.passed
    assert set(rep.counterexample.values()) == {0}


def test_syntax_errors_are_positioned():
    with pytest.raises(IdentitySyntaxError) as e:
        parse_identity("T(x,y,z")
    assert (e.value.line, e.value.col) == (1, 8)
    with pytest.raises(IdentitySyntaxError) as e:
        parse_identity("op T : V, V, V -> V\nT(x, y, z) = x +* y")
    assert e.value.line == 2


def test_unknown_operator_and_arity():
    with pytest.raises(IdentityError, match="unknown operator"):
        parse_identity("op T : V, V, V -> V\nT(x, y, z) = Q(x)")
    with pytest.raises(IdentityError, match="expects 3"):
        parse_identity("T(x, y, z) = T(x, y)")


def test_binding_mismatch():
    ident = parse_identity("T(x,y,z) = 0")
    with pytest.raises(BindingError):
        check_identity(ident, Binding(P, {"T": np.zeros((2, 2, 2), dtype=np.int64)}))
    with pytest.raises(BindingError):
        check_identity(ident, Binding(P, {}))


def test_hein2_on_prototypical_system():
    T = first_kind_system(3, 2)[3]
    rep = check_identity(load("hein2"), T.binding(), mode="exhaustive")
    assert rep.passed and rep.mode == "exhaustive"


def test_super_jacobi_on_osp32():
    L = build_reference(ReferenceSpec("osp", 3, 2))
    rep = check_identity(load("super_jacobi"), L.binding(), mode="exhaustive")
    assert rep.passed and rep.checked == L.dim ** 3


def test_inv2_and_scalar_coefficients():
    ident = parse_identity("op T : V, V, V -> V\n2 * T(x, y, z) * 2 = inv2 * T(x, y, z) + 2 * T(x, y, z)")
    # 4 = 1/2 + 2 holds mod 3 (both sides are 1)
    rng = np.random.default_rng(1)
    assert check_identity(ident, Binding(P, {"T": rng.integers(0, P, (2,) * 4)})).passed


def test_budget_rule():
    ident = load("hein1")
    small = weak_counterexample().binding()
    assert budget_mode(ident, small) == "exhaustive"
    big = TripleSystem(P, np.zeros((30,) * 4, dtype=np.int64)).binding()
    assert budget_mode(ident, big) == "random"   # 30^6 * 30 > 10^8


def test_random_mode_is_seeded():
    T = pathological_projection(dim=3)
    a = check_identity(load("hein1"), T.binding(), mode="random", seed=5, samples=1000)
    b = check_identity(load("hein1"), T.binding(), mode="random", seed=5, samples=1000)
    assert a == b and not a.passed


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_round_trip(name):
    ident = load(name)
    again = parse_identity(format_identity(ident), name)
    assert again == ident
    assert corpus_source(name).strip()


# random multilinear sources for the round trip and the exhaustive => everywhere meta-test

VARS = ("x", "y", "z")


@st.composite
def relations(draw, balanced=False):
    n = draw(st.integers(1, 4))
    coefs = [draw(st.integers(-5, 5).filter(bool)) for _ in range(n)]
    if balanced:
        # coefficients summing to 0 mod p: true for every fully symmetric T
        coefs.append(-sum(coefs) % P or P)
    parts = []
    for c in coefs:
        a = draw(st.permutations(VARS))
        parts.append(f"{'-' if c < 0 else '+'} {abs(c)} * T({a[0]}, {a[1]}, {a[2]})")
    lhs = " ".join(parts).lstrip("+ ")
    return f"op T : V, V, V -> V\n{lhs} = 0"


@settings(max_examples=60, deadline=None)
@given(relations())
def test_round_trip_random_sources(src):
    ident = parse_identity(src)
    assert parse_identity(format_identity(ident)) == ident


@settings(max_examples=30, deadline=None)
@given(st.booleans().flatmap(lambda b: relations(balanced=b)), st.integers(0, 2 ** 32 - 1))
def test_exhaustive_pass_implies_random_vectors_pass(src, seed):
    ident = parse_identity(src)
    rng = np.random.default_rng(seed)
    t = rng.integers(0, P, (3,) * 4)
    t = sum(np.transpose(t, (*perm, 3)) for perm in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0),
                                                       (2, 0, 1), (2, 1, 0)]) % P
    b = Binding(P, {"T": t})
    ex = check_identity(ident, b, mode="exhaustive")
    vec = check_identity(ident, b, mode="vectors", seed=seed, samples=10 ** 4)
    if ex.passed:
        assert vec.passed and vec.checked == 10 ** 4
