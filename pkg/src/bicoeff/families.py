"""Named bicyclic graphs: the three base shapes, eight pendant families
B1..B8, their closed-form signless polynomials and the two minimisers.

Base labelling (``build_base``):

* ``VertexShared(p, q)``: shared vertex 0; C_p is 0-1-...-(p-1)-0 and C_q is
  0-p-(p+1)-...-(p+q-2)-0.
* ``PathJoined(p, l, q)``: C_p on 0..p-1; the path leaves 0 through
  p..p+l-2 and ends at v = p+l-1; C_q is v-(v+1)-...-(v+q-1)-v.
* ``Theta(k, l, m)``: ends x=0, y=1, then the inner vertices of the
  k-path, the l-path and the m-path in that order.

Family labelling (``build_family``): base vertices are numbered in the
order of ``FAMILY_VERTICES[f]``; pendants are appended vertex by vertex in
that same order, so ``pendants[i]`` new leaves hang off base vertex ``i``.
Vertex 0 is the hub at which the closed forms put all pendants.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .errors import InvalidSpec, OutOfRange, TooSmall
from .graph import Graph, ParityClass, PathJoined, Theta, VertexShared
from .poly import X, IntPoly, compare_dominance, signless_coeffs

BaseSpec = Union[VertexShared, PathJoined, Theta]


def _cycle(vs: list[int]) -> list[tuple[int, int]]:
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def _path(vs: list[int]) -> list[tuple[int, int]]:
    return [(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


def build_base(spec: BaseSpec) -> Graph:
    if isinstance(spec, VertexShared):
        p, q = spec.p, spec.q
        if p < 3 or q < 3:
            raise InvalidSpec(f"cycle lengths must be >= 3: {spec}")
        n = p + q - 1
        edges = _cycle(list(range(p))) + _cycle([0] + list(range(p, n)))
        return Graph(n, tuple(edges))
    if isinstance(spec, PathJoined):
        p, l, q = spec.p, spec.l, spec.q
        if p < 3 or q < 3 or l < 1:
            raise InvalidSpec(f"need p,q >= 3 and l >= 1: {spec}")
        v = p + l - 1
        n = v + q
        edges = _cycle(list(range(p))) + _path([0] + list(range(p, v + 1))) + _cycle(list(range(v, n)))
        return Graph(n, tuple(edges))
    if isinstance(spec, Theta):
        k, l, m = spec.k, spec.l, spec.m
        if not (k >= l >= m >= 1):
            raise InvalidSpec(f"theta path lengths must satisfy k >= l >= m >= 1: {spec}")
        if l == 1:
            raise InvalidSpec(f"at most one theta path may have length 1: {spec}")
        edges: list[tuple[int, int]] = []
        nxt = 2
        for length in (k, l, m):
            inner = list(range(nxt, nxt + length - 1))
            nxt += length - 1
            edges += _path([0] + inner + [1])
        return Graph(nxt, tuple(edges))
    raise InvalidSpec(f"unknown base spec {spec!r}")


# ---------------------------------------------------------------------------
# the eight families

FAMILY_VERTICES: dict[str, tuple[str, ...]] = {
    "B1": ("x", "u", "v", "w", "z"),
    "B2": ("u1", "u2", "u3", "u4", "u5", "u6"),
    "B3": ("u", "v", "w", "z"),
    "B4": ("u", "v", "w", "z", "x"),
    "B5": ("u", "v", "u1", "v1", "w1", "w2"),
    "B6": ("u1", "u2", "u3", "u4", "w3", "w4"),
    "B7": ("u", "v", "u1", "w1", "v1"),
    "B8": ("u1", "u2", "u3", "u4", "v2", "v3", "v4"),
}

FAMILY_EDGES: dict[str, tuple[tuple[str, str], ...]] = {
    "B1": (("x", "z"), ("x", "w"), ("x", "u"), ("x", "v"), ("v", "u"), ("w", "z")),
    "B2": (("u6", "u5"), ("u1", "u4"), ("u6", "u1"), ("u1", "u2"), ("u4", "u5"), ("u3", "u1"), ("u3", "u2")),
    "B3": (("v", "z"), ("v", "w"), ("w", "u"), ("v", "u"), ("u", "z")),
    "B4": (("x", "u"), ("x", "v"), ("v", "z"), ("u", "w"), ("v", "u"), ("w", "z")),
    "B5": (("v", "w2"), ("v", "v1"), ("u1", "v"), ("w2", "w1"), ("u", "w1"), ("v1", "u"), ("u", "u1")),
    "B6": (("w3", "w4"), ("u1", "u2"), ("w3", "u1"), ("u2", "w4"), ("u3", "u1"), ("u3", "u4"), ("u2", "u4")),
    "B7": (("v", "w1"), ("v", "v1"), ("u1", "v"), ("w1", "u"), ("v1", "u"), ("u1", "u")),
    "B8": (("u1", "v4"), ("u1", "u4"), ("u2", "u1"), ("u1", "v2"), ("v4", "v3"), ("v2", "v3"), ("u2", "u3"), ("u3", "u4")),
}

FAMILY_SHAPES: dict[str, BaseSpec] = {
    "B1": VertexShared(3, 3),
    "B2": VertexShared(3, 4),
    "B3": Theta(2, 2, 1),
    "B4": Theta(3, 2, 1),
    "B5": Theta(3, 2, 2),
    "B6": Theta(3, 3, 1),
    "B7": Theta(2, 2, 2),
    "B8": VertexShared(4, 4),
}

FAMILIES = tuple(FAMILY_VERTICES)

# smallest n for which every (x-1)^k factor of the closed form has k >= 0
CLOSED_FORM_MIN_N = {"B1": 5, "B2": 6, "B3": 4, "B4": 6, "B5": 7, "B6": 6, "B7": 6, "B8": 8}


def family_base(family: str) -> Graph:
    if family not in FAMILY_VERTICES:
        raise InvalidSpec(f"unknown family {family!r}")
    index = {name: i for i, name in enumerate(FAMILY_VERTICES[family])}
    return Graph(len(index), tuple((index[a], index[b]) for a, b in FAMILY_EDGES[family]))


def vertex_index(family: str, name: str) -> int:
    return FAMILY_VERTICES[family].index(name)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    pendants: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILY_VERTICES:
            raise InvalidSpec(f"unknown family {self.family!r}")
        counts = tuple(int(c) for c in self.pendants)
        object.__setattr__(self, "pendants", counts)
        want = len(FAMILY_VERTICES[self.family])
        if len(counts) != want:
            raise InvalidSpec(f"{self.family} takes {want} pendant counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise InvalidSpec(f"pendant counts must be >= 0: {counts}")

    @property
    def n(self) -> int:
        return len(self.pendants) + sum(self.pendants)

    def to_json(self) -> str:
        return json.dumps({"family": self.family, "pendants": list(self.pendants)})

    @classmethod
    def from_json(cls, text: Union[str, dict]) -> FamilySpec:
        data = json.loads(text) if isinstance(text, str) else text
        try:
            return cls(data["family"], tuple(data["pendants"]))
        except (KeyError, TypeError) as exc:
            raise InvalidSpec(f"malformed family spec: {data!r}") from exc


def build_family(spec: FamilySpec) -> Graph:
    base = family_base(spec.family)
    edges = list(base.edges)
    nxt = base.n
    for v, count in enumerate(spec.pendants):
        for _ in range(count):
            edges.append((v, nxt))
            nxt += 1
    return Graph(nxt, tuple(edges))


def hub_spec(family: str, n: int) -> FamilySpec:
    """All n - |base| pendants on vertex 0, the configuration the closed forms describe."""
    size = len(FAMILY_VERTICES.get(family, ()))
    if family not in FAMILY_VERTICES:
        raise InvalidSpec(f"unknown family {family!r}")
    if n < size:
        raise OutOfRange(f"{family} needs n >= {size}, got {n}")
    return FamilySpec(family, (n - size,) + (0,) * (size - 1))


def extremal_graph(n: int, cls: Union[ParityClass, str]) -> Graph:
    """K4-e with n-4 pendants at a degree-3 vertex (odd class) or K2,3 with
    n-5 pendants at a degree-3 vertex (even class)."""
    cls = ParityClass(cls)
    if cls is ParityClass.ODD:
        if n < 4:
            raise TooSmall(f"odd-class minimiser needs n >= 4, got {n}")
        return build_family(hub_spec("B3", n))
    if n < 5:
        raise TooSmall(f"even-class minimiser needs n >= 5, got {n}")
    return build_family(hub_spec("B7", n))


# ---------------------------------------------------------------------------
# closed forms

def _p(*coeffs_high_first: int) -> IntPoly:
    return IntPoly(tuple(reversed(coeffs_high_first)))


def _xm1(k: int) -> IntPoly:
    return (X - 1) ** k


def _closed_form(family: str, n: int) -> IntPoly:
    if family == "B1":
        return _xm1(n - 4) * (X - 3) * _p(1, -(n + 3), 3 * n, -8)
    if family == "B2":
        return _xm1(n - 6) * (X - 2) * _p(1, -(n + 6), 7 * (n + 1), -2 * (7 * n - 1), 2 * (3 * n + 8), -8)
    if family == "B3":
        return _xm1(n - 4) * (X - 2) * _p(1, -(n + 4), 4 * n, -8)
    if family == "B4":
        return _xm1(n - 6) * _p(1, -(n + 8), 9 * (n + 2), -(27 * n + 10), 31 * n + 10, -(11 * n + 32), 16)
    if family == "B5":
        return _xm1(n - 7) * (X - 2) * _p(1, -(n + 7), 9 * n + 8, -(26 * n - 22), 27 * n - 30, -(8 * n + 8), 8)
    if family == "B6":
        return X * _xm1(n - 6) * (X - 3) * _p(1, -(n + 5), 7 * n - 1, -(13 * n - 17), 5 * n)
    if family == "B7":
        return X * _xm1(n - 6) * (X - 2) ** 2 * _p(1, -(n + 4), 5 * n - 2, -3 * n)
    if family == "B8":
        return X * _xm1(n - 8) * (X - 2) ** 2 * _p(1, -4, 2) * _p(1, -(n + 2), 2 * (2 * n - 3), -2 * n)
    raise InvalidSpec(f"unknown family {family!r}")


def closed_form_poly(family: str, n: int) -> IntPoly:
    """Signless characteristic polynomial of the hub graph of ``family`` on n vertices."""
    if family not in CLOSED_FORM_MIN_N:
        raise InvalidSpec(f"unknown family {family!r}")
    if n < CLOSED_FORM_MIN_N[family]:
        raise OutOfRange(f"closed form for {family} is stated for n >= {CLOSED_FORM_MIN_N[family]}, got {n}")
    p = _closed_form(family, n)
    assert p.degree == n and p.leading == 1
    return p


@dataclass(frozen=True)
class IdentityResult:
    eq: int
    n: int
    lhs: IntPoly
    rhs: IntPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


# eq -> (minuend family, subtrahend family)
DIFFERENCE_PAIRS = {1: ("B1", "B3"), 2: ("B2", "B4"), 3: ("B4", "B3"), 4: ("B5", "B3"), 5: ("B8", "B6"), 6: ("B6", "B7")}


def _difference_rhs(eq: int, n: int) -> IntPoly:
    if eq == 1:
        return _xm1(n - 4) * _p(1, -n, 8)
    if eq == 2:
        return X * _xm1(n - 6) * _p(1, -(n + 2), 3 * n + 2, -(n + 8))
    if eq == 3:
        return X * _xm1(n - 6) * _p(n - 3, -(6 * n - 20), 9 * n - 30, -(3 * n - 8))
    if eq == 4:
        return X * (X - 2) * _xm1(n - 7) * _p(2 * n - 7, -(11 * n - 43), 14 * n - 58, -(4 * n - 16))
    if eq == 5:
        return X * _xm1(n - 8) * _p(1, -(n + 4), 6 * n + 1, -(11 * n - 6), 3 * (2 * n + 1), -n)
    if eq == 6:
        return X * _xm1(n - 6) * _p(n - 4, -(7 * n - 28), 12 * n - 43, -3 * n)
    raise InvalidSpec(f"difference identities are numbered 1..6, got {eq}")


def difference_identity(eq: int, n: int) -> IdentityResult:
    if eq not in DIFFERENCE_PAIRS:
        raise InvalidSpec(f"difference identities are numbered 1..6, got {eq}")
    a, b = DIFFERENCE_PAIRS[eq]
    lo = max(CLOSED_FORM_MIN_N[a], CLOSED_FORM_MIN_N[b])
    if n < lo:
        raise OutOfRange(f"identity {eq} needs n >= {lo}, got {n}")
    return IdentityResult(eq, n, closed_form_poly(a, n) - closed_form_poly(b, n), _difference_rhs(eq, n))


def extremal_cubics(n: int) -> tuple[IntPoly, IntPoly]:
    """Cubic factors of the odd- and even-class minimiser polynomials."""
    if n < 5:
        raise OutOfRange(f"need n >= 5, got {n}")
    return _p(1, -(n + 4), 4 * n, -8), _p(1, -(n + 4), 5 * n - 2, -3 * n)


def hub_group_minimum(n: int, group: tuple[str, ...], expected: str) -> dict:
    """Whether the ``expected`` hub graph is coefficientwise below every other
    hub graph of ``group`` at size n."""
    ref = signless_coeffs(build_family(hub_spec(expected, n)))
    out = {}
    for fam in group:
        if fam == expected:
            continue
        dom = compare_dominance(signless_coeffs(build_family(hub_spec(fam, n))), ref)
        out[fam] = dom
    return out
