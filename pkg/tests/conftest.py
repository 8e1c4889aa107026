import numpy as np
import pytest

from spectral_lab import families as F
from spectral_lab.graph import build_graph

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_record():
    """Record one line per acceptance criterion; printed in the terminal summary."""

    def record(criterion: str, ok: bool, detail: str = ""):
        _ACCEPTANCE.append((criterion, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}")


def numpy_spectrum(g):
    """LAPACK eigenvalues, descending; a third opinion next to our two solvers."""
    return np.linalg.eigvalsh(g.to_dense())[::-1]


def suite_graphs_small():
    """Mixed connected graphs used by several property tests."""
    out = [F.path(n) for n in (2, 3, 4, 7, 12)]
    out += [F.star(n) for n in (3, 4, 9)]
    out += [F.cycle_plus_chord(n) for n in (5, 8, 13)]
    out += [F.section4_family(k) for k in (2, 3, 4, 7)]
    out += [F.random_connected(n, e, s) for n, e, s in ((10, 4, 1), (25, 15, 2), (40, 30, 3), (60, 5, 4))]
    out += [build_graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])]
    return out
