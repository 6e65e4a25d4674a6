from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicoeff.errors import DuplicateEdge, IndexOutOfRange, LoopEdge, NotBicyclic
from bicoeff.graph import (
    ComponentKind,
    Graph,
    ParityClass,
    PathJoined,
    Theta,
    VertexShared,
    classify_bicyclic,
    complete_bipartite,
    cycle_edges,
    format_edgelist,
    graph_from_edge_list,
    is_bipartite,
    minimal_cycle_pair,
    parse_edgelist,
    path_graph,
    pendant_core,
    read_edgelist,
    simple_cycles,
    structural_profile,
    write_edgelist,
)
from conftest import bicyclic, bowtie, k23, k4_minus_e, theta_123, triangle


def graphs(max_n: int = 7):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
            max_size=n * (n - 1) // 2,
        ).map(lambda es: Graph(n, tuple({(min(u, v), max(u, v)) for u, v in es})))
    )


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestConstruction:
    def test_k2(self):
        g = graph_from_edge_list(2, [(0, 1)])
        assert g.n == 2 and g.edges == ((0, 1),)

    def test_k4_minus_edge(self):
        g = graph_from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        assert g.m == 5 and sorted(g.degrees) == [2, 2, 3, 3]

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdge):
            graph_from_edge_list(3, [(0, 1), (0, 1)])

    def test_reversed_duplicate(self):
        with pytest.raises(DuplicateEdge):
            graph_from_edge_list(3, [(0, 1), (1, 0)])

    def test_loop(self):
        with pytest.raises(LoopEdge):
            graph_from_edge_list(3, [(1, 1)])

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            graph_from_edge_list(3, [(0, 3)])

    def test_isolated_vertices_allowed(self):
        g = graph_from_edge_list(4, [(0, 1)])
        assert g.degrees == (1, 1, 0, 0)

    def test_edges_sorted(self):
        g = graph_from_edge_list(4, [(3, 2), (1, 0), (2, 0)])
        assert g.edges == ((0, 1), (0, 2), (2, 3))


class TestEdgeList:
    def test_round_trip_text(self):
        g = bowtie()
        text = format_edgelist(g)
        assert text.splitlines()[0] == "p 5 6"
        assert format_edgelist(parse_edgelist(text)) == text

    def test_comments_ignored(self):
        g = parse_edgelist("# K2\np 2 1\n# edge\n0 1\n")
        assert g == Graph(2, ((0, 1),))

    def test_edge_count_mismatch(self):
        with pytest.raises(ValueError):
            parse_edgelist("p 3 2\n0 1\n")

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "g.edgelist"
        write_edgelist(path, k23())
        assert read_edgelist(path) == k23()

    @given(graphs())
    def test_round_trip_property(self, g):
        assert parse_edgelist(format_edgelist(g)) == g


class TestProfile:
    def test_triangle(self):
        p = structural_profile(triangle())
        assert p.connected and not p.bipartite and p.cyclomatic == 1
        assert p.components == (ComponentKind.ODD_UNICYCLIC,)

    def test_k23(self):
        p = structural_profile(k23())
        assert p.connected and p.bipartite and p.cyclomatic == 2
        assert p.components == (ComponentKind.OTHER,)

    def test_triangle_plus_k2(self):
        g = triangle().disjoint_union(Graph(2, ((0, 1),)))
        p = structural_profile(g)
        assert not p.connected
        assert p.components == (ComponentKind.ODD_UNICYCLIC, ComponentKind.TREE)

    @settings(max_examples=150)
    @given(graphs())
    def test_matches_networkx(self, g):
        h = to_nx(g)
        p = structural_profile(g)
        assert p.connected == (g.n == 0 or nx.is_connected(h))
        assert p.bipartite == nx.is_bipartite(h)
        assert p.cyclomatic == g.m - g.n + nx.number_connected_components(h)


class TestClassify:
    def test_bowtie(self):
        c = classify_bicyclic(bowtie())
        assert c.kind == VertexShared(3, 3)
        assert (c.g1, c.g2, c.parity_class) == (3, 3, ParityClass.ODD)

    def test_k23(self):
        c = classify_bicyclic(k23())
        assert c.kind == Theta(2, 2, 2)
        assert (c.g1, c.g2, c.parity_class) == (4, 4, ParityClass.EVEN)

    def test_k4_minus_e_with_pendant(self):
        g = k4_minus_e().add_vertices(1).with_edges(add=[(0, 4)])
        c = classify_bicyclic(g)
        assert c.kind == Theta(2, 2, 1)
        assert (c.g1, c.g2, c.parity_class) == (3, 3, ParityClass.ODD)
        assert c.core_vertices == (0, 1, 2, 3)

    def test_path_joined(self):
        g = Graph(6, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)))
        assert classify_bicyclic(g).kind == PathJoined(3, 1, 3)

    def test_not_bicyclic(self):
        with pytest.raises(NotBicyclic):
            classify_bicyclic(triangle())
        with pytest.raises(NotBicyclic):
            classify_bicyclic(bowtie().disjoint_union(Graph(1)))

    @pytest.mark.parametrize("n", range(4, 9))
    def test_base_is_two_core(self, n):
        for g in bicyclic(n):
            core = nx.k_core(to_nx(g), 2)
            assert classify_bicyclic(g).core_vertices == tuple(sorted(core.nodes))
            assert tuple(sorted(core.nodes)) == pendant_core(g)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_bipartite_iff_every_cycle_even(self, n):
        for g in bicyclic(n):
            basis = nx.cycle_basis(to_nx(g))
            all_even = all(len(c) % 2 == 0 for c in simple_cycles(g))
            assert is_bipartite(g) == all_even == all(len(c) % 2 == 0 for c in basis)
            # both shortest cycles even already forces the third theta cycle even
            assert is_bipartite(g) == (classify_bicyclic(g).parity_class is ParityClass.EVEN)


class TestCycles:
    def test_simple_cycles_match_networkx(self):
        for n in range(4, 8):
            for g in bicyclic(n):
                ours = {frozenset(cycle_edges(c)) for c in simple_cycles(g)}
                theirs = {
                    frozenset(tuple(sorted(e)) for e in zip(c, c[1:] + c[:1]))
                    for c in nx.simple_cycles(to_nx(g))
                    if len(c) >= 3
                }
                assert ours == theirs

    def test_theta_123_pair(self):
        pair = minimal_cycle_pair(theta_123())
        assert sorted((len(pair.c1), len(pair.c2))) == [3, 4]
        assert pair.shared_edges == frozenset({(0, 1)})
        assert pair.shared_vertices == 2

    def test_bowtie_pair(self):
        pair = minimal_cycle_pair(bowtie())
        assert (len(pair.c1), len(pair.c2)) == (3, 3)
        assert pair.shared_edges == frozenset() and pair.shared_vertices == 1

    def test_disjoint_triangles(self):
        g = Graph(6, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)))
        pair = minimal_cycle_pair(g)
        assert (len(pair.c1), len(pair.c2)) == (3, 3)
        assert pair.shared_edges == frozenset() and pair.shared_vertices == 0

    @pytest.mark.parametrize("kml", [(2, 2, 1), (3, 2, 1), (3, 3, 2), (4, 2, 2)])
    def test_theta_shared_path(self, kml):
        from bicoeff.families import build_base

        k, l, m = kml
        pair = minimal_cycle_pair(build_base(Theta(k, l, m)))
        assert sorted((len(pair.c1), len(pair.c2))) == sorted((k + m, l + m))
        assert len(pair.shared_edges) == m
        assert pair.shared_vertices == m + 1


def test_path_graph_degrees():
    assert path_graph(4).degrees == (1, 2, 2, 1)


def test_relabel_preserves_structure():
    g = bowtie()
    for perm in itertools.islice(itertools.permutations(range(5)), 20):
        h = g.relabel(perm)
        assert sorted(h.degrees) == sorted(g.degrees)
        assert classify_bicyclic(h).kind == VertexShared(3, 3)


def test_complete_bipartite_is_bipartite():
    assert is_bipartite(complete_bipartite(3, 3))
