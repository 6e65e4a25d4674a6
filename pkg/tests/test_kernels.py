"""The numba kernels and their numpy twins must agree exactly (integers) or
to rounding (eigenvalues)."""

from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from bicoeff import _backend
from bicoeff.enumerator import generate_all_bicyclic, generate_connected
from bicoeff.errors import ConvergenceFailure
from bicoeff.graph import complete_graph
from bicoeff.kernels import connected_subsets, jacobi_eigenvalues, subset_scan
from bicoeff.poly import graph_matrix
from test_graph import graphs

needs_numba = pytest.mark.skipif(not _backend.HAVE_NUMBA, reason="numba not importable")


def arrays(g):
    return (
        np.array([u for u, _ in g.edges], dtype=np.int64),
        np.array([v for _, v in g.edges], dtype=np.int64),
    )


@needs_numba
@settings(max_examples=150, deadline=None)
@given(graphs(8))
def test_subset_scan_backends_agree(g):
    a = subset_scan(g.n, *arrays(g), backend="numba")
    b = subset_scan(g.n, *arrays(g), backend="numpy")
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_subset_scan_k5():
    phi, c = subset_scan(5, *arrays(complete_graph(5)), backend="numpy")
    # K5: Q spectrum {8,3,3,3,3}; L spectrum {5,5,5,5,0}
    assert phi.tolist() == [1, 20, 150, 540, 945, 648]
    assert c.tolist() == [1, 20, 150, 500, 625, 0]


@needs_numba
@pytest.mark.parametrize("n,k", [(5, 6), (6, 7), (6, 8), (7, 8)])
def test_connected_subsets_backends_agree(n, k):
    edges = list(combinations(range(n), 2))
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    a = connected_subsets(n, eu, ev, k, backend="numba")
    b = connected_subsets(n, eu, ev, k, backend="numpy")
    assert sorted(a.tolist()) == sorted(b.tolist())


@needs_numba
def test_generation_independent_of_backend():
    for n in (5, 6, 7):
        a = generate_all_bicyclic(n, backend="numba")
        b = generate_all_bicyclic(n, backend="numpy")
        assert a == b
    assert generate_connected(5, 5, backend="numba") == generate_connected(5, 5, backend="numpy")


@settings(max_examples=100, deadline=None)
@given(graphs(9))
def test_jacobi_matches_lapack(g):
    m = np.array(graph_matrix(g), dtype=np.float64)
    vals, _, off = jacobi_eigenvalues(m, 1e-12, 100, backend="numpy")
    assert np.allclose(np.sort(vals), np.linalg.eigvalsh(m), atol=1e-9)
    assert off <= 1e-12


@needs_numba
@settings(max_examples=100, deadline=None)
@given(graphs(9))
def test_jacobi_backends_agree(g):
    m = np.array(graph_matrix(g), dtype=np.float64)
    a, _, _ = jacobi_eigenvalues(m, 1e-12, 100, backend="numba")
    b, _, _ = jacobi_eigenvalues(m, 1e-12, 100, backend="numpy")
    assert np.allclose(np.sort(a), np.sort(b), atol=1e-12)


def test_jacobi_convergence_failure():
    m = np.array(graph_matrix(complete_graph(6)), dtype=np.float64)
    with pytest.raises(ConvergenceFailure):
        jacobi_eigenvalues(m, 1e-300, 1, backend="numpy")


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv(_backend.ENV_FLAG, "1")
    assert _backend.resolve(None) == "numpy"
    monkeypatch.setenv(_backend.ENV_FLAG, "0")
    assert _backend.resolve(None) == ("numba" if _backend.HAVE_NUMBA else "numpy")


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.resolve("cuda")
