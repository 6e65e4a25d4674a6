from __future__ import annotations

import functools

import pytest

from bicoeff.enumerator import generate_all_bicyclic
from bicoeff.graph import Graph, complete_bipartite

# criterion number -> (title, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@functools.lru_cache(maxsize=None)
def bicyclic(n: int) -> tuple[Graph, ...]:
    return tuple(generate_all_bicyclic(n))


def bowtie() -> Graph:
    return Graph(5, ((0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)))


def triangle() -> Graph:
    return Graph(3, ((0, 1), (1, 2), (0, 2)))


def k4_minus_e() -> Graph:
    return Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2)))


def k23() -> Graph:
    return complete_bipartite(2, 3)


def theta_123() -> Graph:
    # x=0, y=1; paths of lengths 1, 2 (via 2) and 3 (via 3, 4)
    return Graph(5, ((0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)))


@pytest.fixture
def tri() -> Graph:
    return triangle()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}")
