from functools import lru_cache

import pytest

from char3.lie import build_kantor
from char3.structurable import choose_invertible_skew, tensor_case
from char3.jternary import from_structurable

ACCEPTANCE_LINES = []


@lru_cache(maxsize=None)
def tensor(d1, d2, p=3):
    """C1 (x) C2, built (and its axioms checked) once per session."""
    return tensor_case(d1, d2, p)


@lru_cache(maxsize=None)
def kantor(d2, variant="v1"):
    return build_kantor(tensor(8, d2), variant, verify=False)


@lru_cache(maxsize=None)
def structurable_triple(d1, d2):
    A = tensor(d1, d2)
    return from_structurable(A, choose_invertible_skew(A))


@pytest.fixture
def record():
    """record(n, passed, detail): one line per acceptance criterion, printed at the end."""
    def _record(n, passed, detail):
        line = f"criterion {n:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
