import numpy as np
import pytest

from char3.reference import (ReferenceSpec, build_reference, first_kind_system, gl, osp, proto_osp_isomorphism,
                             proto_psl_isomorphism, psl, reference_is_lie, s_operator_formula, sl, supertrace)
from char3.superalgebra import center, fingerprint, is_lie

SUPERDIMS = [("gl", 1, 1, (2, 2)), ("sl", 2, 1, (4, 4)), ("psl", 1, 1, (0, 2)), ("psl", 2, 2, (6, 8)),
             ("psl", 4, 1, (15, 8)), ("osp", 1, 2, (3, 2)), ("osp", 2, 2, (4, 4)), ("osp", 3, 2, (6, 6)),
             ("osp", 4, 4, (16, 16))]


@pytest.mark.parametrize("kind,m,n,want", SUPERDIMS, ids=[f"{k}({m}|{n})" for k, m, n, _ in SUPERDIMS])
def test_reference_superdims(kind, m, n, want):
    spec = ReferenceSpec(kind, m, n)
    L = build_reference(spec)
    assert L.superdim == want == spec.expected_superdim()
    assert is_lie(L)


def test_matrix_models_are_lie():
    for M in (gl(1, 1), sl(2, 1), psl(2, 2), osp(3, 2)):
        assert reference_is_lie(M)


def test_sl21_has_trivial_center():
    # 2 - 1 is invertible mod 3, so the identity is not supertraceless
    assert center(sl(2, 1).L).dim == 0
    assert center(sl(2, 2).L).dim == 1


def test_supertrace_of_identity():
    assert supertrace(np.eye(3, dtype=np.int64), np.array([0, 0, 1]), 3) == 1


def test_unknown_kind():
    with pytest.raises(ValueError):
        ReferenceSpec("spo", 2, 2)


@pytest.mark.parametrize("nx,ny", [(1, 2), (3, 2), (2, 4)])
def test_proto_osp(nx, ny):
    r = proto_osp_isomorphism(nx, ny)
    assert r.passed, r.defects


@pytest.mark.parametrize("nx,ny", [(2, 1), (2, 2), (4, 1)])
def test_proto_psl(nx, ny):
    r = proto_psl_isomorphism(nx, ny)
    assert r.passed, r.defects


def test_s_operator_closed_form():
    for nx, ny in [(1, 2), (3, 2), (2, 4)]:
        T = first_kind_system(nx, ny)[3]
        assert np.array_equal(s_operator_formula(nx, ny), T.s_ops(1))


def test_psl41_matches_octonion_cell():
    from char3.magic import cell_superalgebra
    from conftest import tensor
    L = cell_superalgebra(1, 8, tensor=tensor)
    assert fingerprint(L).structural() == fingerprint(psl(4, 1).L).structural()
