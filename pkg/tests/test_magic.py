import pytest

from char3.magic import (EXPECTED_SUPERDIM, REFERENCE_CELLS, cell_superalgebra, compute_cell, magic_square,
                         odd_module_note)
from char3.superalgebra import cube_additivity_report

from conftest import tensor


def cell(d1, d2):
    return compute_cell(d1, d2, tensor=lambda a, b, p: tensor(a, b, p))


def test_empty_corner():
    c = cell(1, 1)
    assert c.kind == "empty" and c.label.startswith("∅") and c.passed


@pytest.mark.parametrize("d1,d2", [(1, 2), (2, 1), (2, 2), (1, 4), (4, 1), (2, 4), (4, 4), (1, 8)])
def test_reference_cells(d1, d2):
    c = cell(d1, d2)
    key = tuple(sorted((d1, d2)))
    assert c.kind == "reference" and c.label == REFERENCE_CELLS[key]
    assert c.fingerprint.superdim == EXPECTED_SUPERDIM[key]
    assert c.fingerprint.structural() == c.reference.structural()
    assert c.passed, c.problems


def test_small_square_is_symmetric():
    ms = magic_square(cells=[(1, 2), (2, 1), (1, 4), (4, 1), (2, 4), (4, 2)],
                      tensor=lambda a, b, p: tensor(a, b, p))
    assert ms.symmetric() and ms.passed
    assert "psl(2|2) (6|8)" in ms.table()


def test_g33_odd_part_splits():
    # the 16-dim odd part of the (2,8) cell is a sum of two 8-dim submodules
    c = cell(2, 8)
    fp = c.fingerprint
    assert fp.superdim == (21, 16) and fp.cube_ideal == 0
    assert not any(fp.center) and fp.derived == fp.superdim
    assert c.odd_generated_dims == (8,)
    assert not fp.odd_irreducible_heuristic and not c.passed
    assert "8" in odd_module_note(c)


def test_cell_superalgebras_have_additive_cubes():
    for d1, d2 in [(1, 2), (2, 2), (2, 4), (1, 8)]:
        L = cell_superalgebra(d1, d2, tensor=lambda a, b, p: tensor(a, b, p))
        assert cube_additivity_report(L, pairs=10 ** 4).passed


def test_bad_characteristic():
    with pytest.raises(ValueError):
        magic_square(p=5)
