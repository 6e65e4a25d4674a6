from __future__ import annotations

import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings

from bicoeff.errors import OutOfRange
from bicoeff.families import build_base, extremal_cubics, extremal_graph
from bicoeff.graph import Graph, ParityClass, PathJoined
from bicoeff.poly import Kind, graph_matrix, signless_coeffs
from bicoeff.spectral import (
    closed_form_ie,
    cubic_root_bounds_check,
    cubic_root_bounds_detail,
    cubic_roots,
    ie_compare,
    ie_dominance_spot_check,
    ie_threshold_scan,
    incidence_energy,
    q_spectrum,
)
from bicoeff.transforms import final_graph, reduce_to_extremal
from conftest import bicyclic, k23, triangle
from test_graph import graphs


class TestSpectrum:
    def test_k23(self):
        s = q_spectrum(k23())
        assert np.allclose(s.eigenvalues, [5, 3, 2, 2, 0], atol=1e-9)
        assert s.zero_count == 1

    def test_triangle(self):
        assert np.allclose(q_spectrum(triangle()).eigenvalues, [4, 1, 1], atol=1e-9)

    def test_edgeless(self):
        assert q_spectrum(Graph(2)).eigenvalues == (0.0, 0.0)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            q_spectrum(triangle(), tol=0)

    def test_laplacian_kind(self):
        assert np.allclose(q_spectrum(triangle(), kind=Kind.LAPLACIAN).eigenvalues, [3, 3, 0], atol=1e-9)

    @settings(max_examples=100, deadline=None)
    @given(graphs(8))
    def test_invariants(self, g):
        s = q_spectrum(g)
        assert list(s.eigenvalues) == sorted(s.eigenvalues, reverse=True)
        assert abs(sum(s.eigenvalues) - sum(g.degrees)) <= g.n * s.tolerance + 1e-9
        assert all(v >= -s.tolerance for v in s.eigenvalues)
        exact = signless_coeffs(g)
        for e, phi in zip(s.elementary_symmetric(), exact):
            assert abs(e - phi) <= 1e-6 * phi + 1e-6

    @settings(max_examples=100, deadline=None)
    @given(graphs(9))
    def test_matches_lapack(self, g):
        ref = np.linalg.eigvalsh(np.array(graph_matrix(g), dtype=float))[::-1]
        assert np.allclose(q_spectrum(g).eigenvalues, ref, atol=1e-9)


class TestEnergy:
    def test_k23(self):
        assert incidence_energy(k23()) == pytest.approx(math.sqrt(5) + math.sqrt(3) + 2 * math.sqrt(2), abs=1e-9)

    def test_triangle(self):
        assert incidence_energy(triangle()) == pytest.approx(4.0, abs=1e-8)

    def test_single_vertex(self):
        assert incidence_energy(Graph(1)) == 0.0

    @settings(max_examples=60, deadline=None)
    @given(graphs(8))
    def test_isolated_vertex_adds_nothing(self, g):
        assert abs(incidence_energy(g.add_vertices(1)) - incidence_energy(g)) <= 1e-9


class TestSpotCheck:
    def test_minimiser_vs_path_joined(self):
        g = build_base(PathJoined(3, 1, 3)).add_vertices(1).with_edges(add=[(1, 6)])
        assert ie_dominance_spot_check(extremal_graph(7, ParityClass.ODD), g)
        assert ie_compare(g, extremal_graph(7, ParityClass.ODD)).relation == "Dominates"

    def test_self(self):
        assert ie_dominance_spot_check(k23(), k23())

    def test_incomparable(self):
        r = ie_compare(extremal_graph(5, ParityClass.ODD), k23())
        assert r.relation == "Incomparable" and r.conforms

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            ie_compare(triangle(), k23())

    @pytest.mark.parametrize("n", [6, 7])
    def test_reduction_pairs(self, n):
        for g in bicyclic(n):
            for r in reduce_to_extremal(g):
                assert ie_dominance_spot_check(r.output, r.input)


class TestCubics:
    @pytest.mark.parametrize("n", [5, 10, 31, 60, 200])
    def test_roots(self, n):
        for p in extremal_cubics(n):
            r = cubic_roots(p)
            assert r.roots[0] >= r.roots[1] >= r.roots[2]
            ref = np.sort(np.roots([float(c) for c in reversed(p.coeffs)]).real)[::-1]
            assert np.allclose(r.roots, ref, rtol=1e-12, atol=1e-12)
            dp = [k * p.coeffs[k] for k in range(1, 4)]
            for x, res in zip(r.roots, r.residuals()):
                assert res <= 1e-8 * (1 + abs(sum(c * x**i for i, c in enumerate(dp))))

    def test_not_cubic(self):
        with pytest.raises(ValueError):
            cubic_roots(extremal_cubics(5)[0] * extremal_cubics(5)[0])


class TestScan:
    def test_n10_paths_agree(self):
        ie1, ie2 = closed_form_ie(10)
        assert ie1 == pytest.approx(incidence_energy(extremal_graph(10, "odd")), abs=1e-6)
        assert ie2 == pytest.approx(incidence_energy(extremal_graph(10, "even")), abs=1e-6)

    def test_crossover(self):
        rep = ie_threshold_scan(5, 60)
        assert rep.paths_agree and rep.max_path_gap < 1e-9
        assert rep.crossovers == [31]
        assert all(r.winner == "B2" for r in rep.rows if r.n <= 30)
        assert all(r.winner == "B1" for r in rep.rows if r.n >= 31)
        assert rep.min_abs_diff > 1e-7  # the IE margin is adequate

    def test_n31(self):
        (row,) = ie_threshold_scan(31, 31).rows
        assert row.ie1 < row.ie2

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(ie_threshold_scan(29, 32).to_csv())))
        assert rows[0] == ["n", "IE1", "IE2", "diff", "winner"]
        assert [r[4] for r in rows[1:]] == ["B2", "B2", "B1", "B1"]

    def test_range(self):
        with pytest.raises(OutOfRange):
            ie_threshold_scan(4, 10)


class TestRootBounds:
    def test_range(self):
        with pytest.raises(OutOfRange):
            cubic_root_bounds_check(5)

    def test_seven_intervals(self):
        assert [b.name for b in cubic_root_bounds_detail(40)] == [
            "alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3", "sqrt_gap",
        ]

    def test_n100(self):
        assert cubic_root_bounds_check(100)

    def test_alpha2_below_bound_near_31(self):
        # frozen finding: alpha2 climbs towards 4 and only passes 3.93 at n=34
        failing = {n: [b.name for b in cubic_root_bounds_detail(n) if not b.ok] for n in range(31, 201)}
        assert {n: f for n, f in failing.items() if f} == {31: ["alpha2"], 32: ["alpha2"], 33: ["alpha2"]}
        alpha2 = {n: cubic_root_bounds_detail(n)[1].value for n in (31, 32, 33)}
        assert alpha2[31] == pytest.approx(3.92471, abs=1e-5)
        assert alpha2[33] == pytest.approx(3.92997, abs=1e-5)
