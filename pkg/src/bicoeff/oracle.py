"""Coefficients by direct combinatorial enumeration.

Signless coefficients count TU-subgraphs (spanning subgraphs whose components
are trees or odd-unicyclic graphs) weighted by ``4^c * prod(tree orders)``;
Laplacian coefficients count spanning forests weighted by the product of
component orders.  Both come out of one pass over edge subsets
(:func:`bicoeff.kernels.subset_scan`).  A slow pure-Python generator of the
subgraphs themselves is kept as a third, independent route.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterator, Optional

from .errors import Disconnected, TooManyEdges
from .graph import (
    Edge,
    Graph,
    classify_bicyclic,
    components,
    cycle_edges,
    is_bipartite,
    is_connected,
    minimal_cycle_pair,
)
from .kernels import subset_scan
from .poly import CoeffVector, Kind, bareiss_det, graph_matrix

MAX_ORACLE_EDGES = 24


@dataclass(frozen=True)
class TUSubgraph:
    edge_subset: frozenset[Edge]
    tree_orders: tuple[int, ...]
    odd_unicyclic_count: int


@dataclass(frozen=True)
class SpanningForest:
    edge_subset: frozenset[Edge]
    component_orders: tuple[int, ...]

    @property
    def weight(self) -> int:
        return prod(self.component_orders)


def tu_weight(h: TUSubgraph) -> int:
    return 4**h.odd_unicyclic_count * prod(h.tree_orders)


def _component_shapes(n: int, edges: tuple[Edge, ...]):
    """(order, edge count, bipartite) for each component of the spanning subgraph."""
    sub = Graph(n, edges)
    out = []
    for comp in components(sub):
        cs = set(comp)
        m = sum(1 for u, v in edges if u in cs)
        out.append((len(comp), m, is_bipartite(sub.induced(comp))))
    return out


def as_tu_subgraph(g: Graph, edges) -> Optional[TUSubgraph]:
    """Classify a spanning edge subset; None unless every component is a tree
    or an odd-unicyclic graph."""
    edges = tuple(sorted(edges))
    trees, odd = [], 0
    for order, m, bip in _component_shapes(g.n, edges):
        if m == order - 1:
            trees.append(order)
        elif m == order and not bip:
            odd += 1
        else:
            return None
    return TUSubgraph(frozenset(edges), tuple(sorted(trees)), odd)


def tu_subgraphs(g: Graph, size: Optional[int] = None) -> Iterator[TUSubgraph]:
    """Every TU-subgraph of g (optionally only those with ``size`` edges)."""
    sizes = range(min(g.n, g.m) + 1) if size is None else [size]
    for k in sizes:
        for es in combinations(g.edges, k):
            h = as_tu_subgraph(g, es)
            if h is not None:
                yield h


def spanning_forests(g: Graph, size: Optional[int] = None) -> Iterator[SpanningForest]:
    sizes = range(min(g.n - 1, g.m) + 1) if size is None else [size]
    for k in sizes:
        for es in combinations(g.edges, k):
            shapes = _component_shapes(g.n, es)
            if all(m == order - 1 for order, m, _ in shapes):
                yield SpanningForest(frozenset(es), tuple(sorted(o for o, _, _ in shapes)))


def _check_size(g: Graph) -> None:
    if g.m > MAX_ORACLE_EDGES:
        raise TooManyEdges(f"{g.m} edges exceeds the enumeration limit of {MAX_ORACLE_EDGES}")


def _scan(g: Graph, backend: Optional[str]):
    _check_size(g)
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    phi, c = subset_scan(g.n, eu, ev, backend=backend)
    assert phi[0] == 1 and c[0] == 1
    return phi, c


def signless_coeffs_oracle(g: Graph, backend: Optional[str] = None) -> CoeffVector:
    phi, _ = _scan(g, backend)
    return CoeffVector(tuple(int(v) for v in phi), Kind.SIGNLESS)


def laplacian_coeffs_oracle(g: Graph, backend: Optional[str] = None) -> CoeffVector:
    _, c = _scan(g, backend)
    return CoeffVector(tuple(int(v) for v in c), Kind.LAPLACIAN)


def both_coeffs_oracle(g: Graph, backend: Optional[str] = None) -> tuple[CoeffVector, CoeffVector]:
    phi, c = _scan(g, backend)
    return (
        CoeffVector(tuple(int(v) for v in phi), Kind.SIGNLESS),
        CoeffVector(tuple(int(v) for v in c), Kind.LAPLACIAN),
    )


def signless_coeffs_enumerated(g: Graph) -> CoeffVector:
    """Same as :func:`signless_coeffs_oracle`, via explicit TU-subgraph objects."""
    _check_size(g)
    vals = [0] * (g.n + 1)
    for h in tu_subgraphs(g):
        vals[len(h.edge_subset)] += tu_weight(h)
    return CoeffVector(tuple(vals), Kind.SIGNLESS)


def laplacian_coeffs_enumerated(g: Graph) -> CoeffVector:
    _check_size(g)
    vals = [0] * (g.n + 1)
    for f in spanning_forests(g):
        vals[len(f.edge_subset)] += f.weight
    return CoeffVector(tuple(vals), Kind.LAPLACIAN)


def spanning_tree_count(g: Graph) -> int:
    """Kirchhoff count: determinant of L with one row and column removed."""
    if not is_connected(g):
        raise Disconnected("spanning trees need a connected graph")
    if g.n <= 1:
        return 1
    lap = graph_matrix(g, Kind.LAPLACIAN)
    return bareiss_det([row[1:] for row in lap[1:]])


# ---------------------------------------------------------------------------
# extreme coefficients of bicyclic graphs

@dataclass(frozen=True)
class PhiExtremes:
    """Structural values of phi_1, phi_n, phi_{n-1} next to the prose shortcuts.

    ``prose_*`` evaluate the displayed shortcut formulas literally (counts of
    deletions); ``*_weighted`` multiply each counted subgraph by its TU weight
    (4 for an odd-unicyclic graph, n for a spanning tree).
    """

    n: int
    phi1: int
    phi_n: int
    phi_n_minus_1_if_bipartite: Optional[int]
    prose_phi_n: int
    prose_phi_n_weighted: int
    prose_phi_n_minus_1: Optional[int]
    prose_phi_n_minus_1_weighted: Optional[int]

    def to_json(self) -> dict:
        return dict(self.__dict__)


def structural_phi_n(g: Graph) -> int:
    """phi_n of a bicyclic graph from single-edge deletions.

    An n-edge TU-subgraph of a bicyclic graph misses exactly one edge and
    every component is odd-unicyclic.  Deleting a cycle edge leaves one
    unicyclic graph (weight 4 when its cycle is odd); deleting a bridge
    between the two cycles leaves two unicyclic pieces (weight 16 when both
    cycles are odd).
    """
    classify_bicyclic(g)  # validates
    total = 0
    for e in g.edges:
        h = as_tu_subgraph(g, [f for f in g.edges if f != e])
        if h is not None and not h.tree_orders:
            total += tu_weight(h)
    return total


def _prose_phi_n(g: Graph) -> int:
    if is_bipartite(g):
        return 0
    pair = minimal_cycle_pair(g)
    c1, c2 = pair.c1, pair.c2
    if len(c1) % 2 == 0:
        c1, c2 = c2, c1
    shared = pair.shared_edges
    only2 = len(cycle_edges(c2) - shared)
    if len(c2) % 2 == 0:
        return only2
    return len(cycle_edges(c1) - shared) + only2


def _prose_phi_n_minus_1(g: Graph) -> int:
    pair = minimal_cycle_pair(g)
    a, b = len(pair.c1), len(pair.c2)
    s = len(pair.shared_edges)
    if s >= 1:
        return a * b - s * (s - 1)
    return a * b


def phi_extremes_bicyclic(g: Graph) -> PhiExtremes:
    classify_bicyclic(g)
    n = g.n
    bip = is_bipartite(g)
    phi_n = structural_phi_n(g)
    prose_n = _prose_phi_n(g)
    if bip:
        tau = spanning_tree_count(g)
        prose_n1 = _prose_phi_n_minus_1(g)
        return PhiExtremes(n, 2 * g.m, phi_n, n * tau, prose_n, 4 * prose_n, prose_n1, n * prose_n1)
    return PhiExtremes(n, 2 * g.m, phi_n, None, prose_n, 4 * prose_n, None, None)

