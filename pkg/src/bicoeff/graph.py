"""Immutable simple graphs, structural predicates and bicyclic classification.

Vertices are the integers ``0..n-1``.  Edges are stored as sorted ``(u, v)``
pairs with ``u < v``, so iteration order is deterministic.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DuplicateEdge,
    GraphError,
    IndexOutOfRange,
    LoopEdge,
    NotBicyclic,
    TooLarge,
)

Edge = tuple[int, int]

MAX_CYCLOMATIC = 20


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {self.n!r}")
        n = int(self.n)
        seen: set[Edge] = set()
        for pair in self.edges:
            u, v = (int(t) for t in pair)
            if u == v:
                raise LoopEdge(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdge(f"edge {e} listed twice")
            seen.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"vertex {v} not in 0..{self.n - 1}")

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> Graph:
        es = set(self.edges)
        for u, v in remove:
            es.discard((u, v) if u < v else (v, u))
        return Graph(self.n, tuple(es) + tuple(add))

    def add_vertices(self, k: int) -> Graph:
        return Graph(self.n + k, self.edges)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``i`` renamed ``perm[i]``."""
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled ``vertices[i] -> i``."""
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(vertices), tuple(es))

    def disjoint_union(self, other: Graph) -> Graph:
        k = self.n
        return Graph(k + other.n, self.edges + tuple((u + k, v + k) for u, v in other.edges))

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def graph_from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    return Graph(n, tuple(tuple(p) for p in pairs))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


# ---------------------------------------------------------------------------
# edge-list text format

def format_edgelist(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    header: tuple[int, int] | None = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "p":
                raise GraphError(f"line {lineno}: expected header 'p <n> <m>'")
            header = (int(parts[1]), int(parts[2]))
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected '<u> <v>'")
        pairs.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise GraphError("missing 'p <n> <m>' header")
    n, m = header
    if len(pairs) != m:
        raise GraphError(f"header declares {m} edges, found {len(pairs)}")
    return graph_from_edge_list(n, pairs)


def read_edgelist(path: Union[str, Path]) -> Graph:
    return parse_edgelist(Path(path).read_text(encoding="utf-8"))


def write_edgelist(path: Union[str, Path], g: Graph) -> None:
    Path(path).write_text(format_edgelist(g), encoding="utf-8")


# ---------------------------------------------------------------------------
# structure

def components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components as sorted vertex tuples, ordered by least vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def two_coloring(g: Graph) -> list[int] | None:
    """BFS 2-colouring, or None when an odd cycle exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if color[y] == -1:
                    color[y] = color[x] ^ 1
                    q.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def cyclomatic_number(g: Graph) -> int:
    return g.m - g.n + len(components(g))


def is_bicyclic(g: Graph) -> bool:
    return g.n > 0 and g.m == g.n + 1 and is_connected(g)


class ComponentKind(str, enum.Enum):
    TREE = "Tree"
    ODD_UNICYCLIC = "OddUnicyclic"
    EVEN_UNICYCLIC = "EvenUnicyclic"
    OTHER = "Other"


@dataclass(frozen=True)
class StructuralProfile:
    connected: bool
    bipartite: bool
    cyclomatic: int
    components: tuple[ComponentKind, ...]


def classify_component(g: Graph, vertices: Sequence[int]) -> ComponentKind:
    h = g.induced(vertices)
    if h.m == h.n - 1:
        return ComponentKind.TREE
    if h.m == h.n:
        return ComponentKind.EVEN_UNICYCLIC if is_bipartite(h) else ComponentKind.ODD_UNICYCLIC
    return ComponentKind.OTHER


def structural_profile(g: Graph) -> StructuralProfile:
    comps = components(g)
    return StructuralProfile(
        connected=len(comps) <= 1,
        bipartite=is_bipartite(g),
        cyclomatic=g.m - g.n + len(comps),
        components=tuple(classify_component(g, c) for c in comps),
    )


def pendant_core(g: Graph) -> tuple[int, ...]:
    """Vertices left after repeatedly deleting vertices of degree <= 1."""
    deg = list(g.degrees)
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return tuple(v for v in range(g.n) if alive[v])


def is_pendant_vertex(g: Graph, v: int) -> bool:
    return g.degree(v) == 1


def is_bridge(g: Graph, u: int, v: int) -> bool:
    """True when (u, v) is an edge lying on no cycle."""
    if not g.has_edge(u, v):
        return False
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if (x == u and y == v) or (x == v and y == u):
                continue
            if y == v:
                return False
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return True


# ---------------------------------------------------------------------------
# cycles

def normalize_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the least vertex; orient so the second entry is smaller."""
    k = len(seq)
    i = min(range(k), key=seq.__getitem__)
    fwd = tuple(seq[(i + j) % k] for j in range(k))
    bwd = tuple(seq[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def cycle_edges(seq: Sequence[int]) -> frozenset[Edge]:
    k = len(seq)
    return frozenset(
        (a, b) if a < b else (b, a) for a, b in ((seq[i], seq[(i + 1) % k]) for i in range(k))
    )


def _edge_set_as_cycle(edges: Sequence[Edge]) -> tuple[int, ...] | None:
    nbrs: dict[int, list[int]] = {}
    for u, v in edges:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if any(len(x) != 2 for x in nbrs.values()):
        return None
    start = min(nbrs)
    seq = [start]
    prev, cur = start, nbrs[start][0]
    while cur != start:
        seq.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(seq) != len(nbrs):
        return None
    return normalize_cycle(seq)


def simple_cycles(g: Graph) -> list[tuple[int, ...]]:
    """All simple cycles, via the cycle space; sorted by (length, sequence).

    Every simple cycle is a nonzero element of the cycle space, so scanning
    the ``2^r - 1`` combinations of fundamental cycles finds them all.
    """
    r = cyclomatic_number(g)
    if r > MAX_CYCLOMATIC:
        raise TooLarge(f"cyclomatic number {r} exceeds {MAX_CYCLOMATIC}")
    index = {e: i for i, e in enumerate(g.edges)}
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    tree: set[Edge] = set()
    for s in range(g.n):
        if s in parent:
            continue
        parent[s] = -1
        depth[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if y not in parent:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    tree.add((x, y) if x < y else (y, x))
                    q.append(y)
    fundamental = []
    for e in g.edges:
        if e in tree:
            continue
        a, b = e
        mask = 1 << index[e]
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            p = parent[a]
            mask ^= 1 << index[(a, p) if a < p else (p, a)]
            a = p
        fundamental.append(mask)
    out = []
    for sel in range(1, 1 << len(fundamental)):
        mask = 0
        for i, f in enumerate(fundamental):
            if sel >> i & 1:
                mask ^= f
        es = [g.edges[i] for i in range(g.m) if mask >> i & 1]
        cyc = _edge_set_as_cycle(es)
        if cyc is not None:
            out.append(cyc)
    out.sort(key=lambda c: (len(c), c))
    return out


# ---------------------------------------------------------------------------
# bicyclic bases

@dataclass(frozen=True)
class VertexShared:
    """Two cycles C_p, C_q glued at one vertex (p <= q)."""

    p: int
    q: int


@dataclass(frozen=True)
class PathJoined:
    """Cycles C_p, C_q joined by a path of length l (p <= q)."""

    p: int
    l: int
    q: int


@dataclass(frozen=True)
class Theta:
    """Three internally disjoint paths of lengths k >= l >= m between two vertices."""

    k: int
    l: int
    m: int

    def cycle_lengths(self) -> tuple[int, int, int]:
        return tuple(sorted((self.l + self.m, self.k + self.m, self.k + self.l)))


BaseKind = Union[VertexShared, PathJoined, Theta]


class ParityClass(str, enum.Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class BicyclicClass:
    base: Graph
    core_vertices: tuple[int, ...]
    kind: BaseKind
    g1: int
    g2: int
    parity_class: ParityClass


@dataclass(frozen=True)
class CyclePair:
    c1: tuple[int, ...]
    c2: tuple[int, ...]
    shared_edges: frozenset[Edge]
    shared_vertices: int


def _require_bicyclic(g: Graph) -> None:
    if not is_bicyclic(g):
        raise NotBicyclic(f"expected connected graph with |E| = |V| + 1, got n={g.n}, m={g.m}")


def _branches(base: Graph, x: int) -> list[tuple[int, int]]:
    """Walk each branch from branch vertex x through degree-2 vertices.

    Returns (endpoint, length) per incident edge.
    """
    out = []
    for first in base.adj[x]:
        prev, cur, length = x, first, 1
        while base.degree(cur) == 2:
            a, b = base.adj[cur]
            prev, cur = cur, (b if a == prev else a)
            length += 1
        out.append((cur, length))
    return out


def base_kind(base: Graph) -> BaseKind:
    """Shape of a bicyclic graph with minimum degree >= 2."""
    big = [v for v in range(base.n) if base.degree(v) > 2]
    if len(big) == 1 and base.degree(big[0]) == 4:
        # each loop is walked twice, once per direction
        loops = sorted(length for _, length in _branches(base, big[0]))
        return VertexShared(loops[0], loops[2])
    if len(big) == 2 and all(base.degree(v) == 3 for v in big):
        x, y = big
        br = _branches(base, x)
        if all(end == y for end, _ in br):
            k, l, m = sorted((length for _, length in br), reverse=True)
            return Theta(k, l, m)
        loop = [length for end, length in br if end == x]
        bridge = [length for end, length in br if end == y]
        other = [length for end, length in _branches(base, y) if end == y]
        p, q = sorted((loop[0], other[0]))
        return PathJoined(p, bridge[0], q)
    raise NotBicyclic("graph is not a bicyclic base")


def _two_shortest(kind: BaseKind) -> tuple[int, int]:
    if isinstance(kind, Theta):
        a, b, _ = kind.cycle_lengths()
        return a, b
    return kind.p, kind.q


def classify_bicyclic(g: Graph) -> BicyclicClass:
    _require_bicyclic(g)
    core = pendant_core(g)
    base = g.induced(core)
    kind = base_kind(base)
    g1, g2 = _two_shortest(kind)
    parity = ParityClass.ODD if (g1 % 2 or g2 % 2) else ParityClass.EVEN
    return BicyclicClass(base, core, kind, g1, g2, parity)


def minimal_cycle_pair(g: Graph) -> CyclePair:
    """The two shortest cycles; ties broken by lexicographic vertex sequence."""
    _require_bicyclic(g)
    cycles = simple_cycles(g)
    c1, c2 = cycles[0], cycles[1]
    return CyclePair(
        c1=c1,
        c2=c2,
        shared_edges=cycle_edges(c1) & cycle_edges(c2),
        shared_vertices=len(set(c1) & set(c2)),
    )
