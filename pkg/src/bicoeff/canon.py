"""Canonical codes for small graphs.

The code is the lexicographically least adjacency bit-string over all vertex
orders that respect an isomorphism-invariant colour partition (degree
partition refined to a stable colouring).  Two search prunings keep it fast
on the graphs we care about:

* partial codes are compared against the best code so far;
* vertices with identical neighbourhoods (twins, e.g. pendants on one hub)
  are interchangeable, so only one representative per twin class is tried
  at each branch point.

Neither pruning can change the minimum, so equal codes still mean
isomorphic graphs.
"""

from __future__ import annotations

from .errors import TooLarge
from .graph import Graph

MAX_CANON_N = 12

CanonicalCode = bytes


def refine_colors(g: Graph) -> list[int]:
    """Stable colouring by iterated neighbour-colour multisets."""
    colors = list(g.degrees)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def twin_classes(g: Graph) -> list[int]:
    """Representative (least member) of each vertex's twin class."""
    rep = list(range(g.n))
    nbrs = [set(a) for a in g.adj]
    for a in range(g.n):
        if rep[a] != a:
            continue
        for b in range(a + 1, g.n):
            if rep[b] == b and nbrs[a] - {b} == nbrs[b] - {a}:
                rep[b] = a
    return rep


def canonical_form(g: Graph) -> CanonicalCode:
    n = g.n
    if n > MAX_CANON_N:
        raise TooLarge(f"canonical_form supports n <= {MAX_CANON_N}, got {n}")
    if n == 0:
        return bytes([0])

    colors = refine_colors(g)
    order = sorted(range(n), key=lambda v: colors[v])
    cell_of_pos = [colors[v] for v in order]
    twin = twin_classes(g)
    adj = [set(a) for a in g.adj]

    best: list[int] | None = None
    perm: list[int] = []
    rows: list[int] = []
    placed = [False] * n

    def search(pos: int) -> None:
        nonlocal best
        if pos == n:
            if best is None or rows < best:
                best = rows.copy()
            return
        tried: set[int] = set()
        for v in range(n):
            if placed[v] or colors[v] != cell_of_pos[pos] or twin[v] in tried:
                continue
            tried.add(twin[v])
            row = 0
            for u in perm:
                row = (row << 1) | (u in adj[v])
            rows.append(row)
            if best is not None and rows > best[: pos + 1]:
                rows.pop()
                continue
            placed[v] = True
            perm.append(v)
            search(pos + 1)
            rows.pop()
            perm.pop()
            placed[v] = False

    search(0)
    assert best is not None
    bits = 0
    for pos, row in enumerate(best):
        bits = (bits << pos) | row
    width = (n * (n - 1) // 2 + 7) // 8
    return bytes([n]) + bits.to_bytes(width, "big")


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


def iter_isomorphisms(g: Graph, h: Graph):
    """Yield every map ``phi`` with ``g.relabel(phi) == h``.

    Plain backtracking over colour-compatible vertices; meant for bases and
    other small graphs.
    """
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return
    cg, ch = refine_colors(g), refine_colors(h)
    if sorted(cg) != sorted(ch):
        return
    gadj = [set(a) for a in g.adj]
    hadj = [set(a) for a in h.adj]
    phi = [-1] * g.n
    used = [False] * h.n

    def extend(v: int):
        if v == g.n:
            yield list(phi)
            return
        for t in range(h.n):
            if used[t] or ch[t] != cg[v]:
                continue
            if any((phi[w] in hadj[t]) != (w in gadj[v]) for w in range(v)):
                continue
            phi[v], used[t] = t, True
            yield from extend(v + 1)
            used[t] = False
        phi[v] = -1

    yield from extend(0)


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A map ``phi`` with ``g.relabel(phi) == h``, or None."""
    return next(iter_isomorphisms(g, h), None)


def graph_from_code(code: CanonicalCode) -> Graph:
    """Inverse of :func:`canonical_form`: the graph in canonical vertex order."""
    n = code[0]
    total = n * (n - 1) // 2
    bits = int.from_bytes(code[1:], "big") if total else 0
    edges = []
    shift = total
    for pos in range(1, n):
        shift -= pos
        row = (bits >> shift) & ((1 << pos) - 1)
        for j in range(pos):
            if (row >> (pos - 1 - j)) & 1:
                edges.append((j, pos))
    return Graph(n, tuple(edges))
