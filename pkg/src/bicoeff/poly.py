"""Exact integer characteristic polynomials of L = D - A and Q = D + A.

Determinants of ``tI - M`` are taken at the integer points t = 0..n with
fraction-free elimination, then the values are interpolated back to
coefficients over the rationals.  The interpolant must come out integral;
anything else is a bug and raises.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import IndexOutOfRange, LengthMismatch, NegativeCoefficient, NotMonic, PolyError
from .graph import Graph

Scalar = int


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        cs = [int(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls.const(1)
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _lift(self, other: Union[IntPoly, int]) -> IntPoly:
        return other if isinstance(other, IntPoly) else IntPoly.const(other)

    def __add__(self, other: Union[IntPoly, int]) -> IntPoly:
        o = self._lift(other).coeffs
        k = max(len(self.coeffs), len(o))
        return IntPoly(tuple(self.coeff(i) + (o[i] if i < len(o) else 0) for i in range(k)))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union[IntPoly, int]) -> IntPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> IntPoly:
        return self._lift(other) - self

    def __mul__(self, other: Union[IntPoly, int]) -> IntPoly:
        o = self._lift(other).coeffs
        if not self.coeffs or not o:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(o) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result, base = IntPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Union[str, Sequence]) -> IntPoly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(int(c) for c in data))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


X = IntPoly.x()


# ---------------------------------------------------------------------------
# determinants and characteristic polynomials

def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [[int(v) for v in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i, aik = a[i], a[i][k]
            row_k = a[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _interpolate(values: Sequence[int]) -> IntPoly:
    """Integer polynomial through (t, values[t]) for t = 0..len-1."""
    # Newton form on nodes 0,1,2,...: a_k = (k-th forward difference at 0) / k!
    diffs = [Fraction(v) for v in values]
    newton = []
    for k in range(len(values)):
        newton.append(diffs[0])
        diffs = [(diffs[i + 1] - diffs[i]) / (k + 1) for i in range(len(diffs) - 1)]
    coeffs: list[Fraction] = [Fraction(0)]
    for k in range(len(newton) - 1, -1, -1):
        # coeffs <- coeffs * (t - k) + newton[k]
        shifted = [Fraction(0)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= k * c
        shifted[0] += newton[k]
        coeffs = shifted
    if any(c.denominator != 1 for c in coeffs):
        raise PolyError(f"interpolated characteristic polynomial is not integral: {coeffs}")
    return IntPoly(tuple(int(c) for c in coeffs))


def charpoly(matrix: Sequence[Sequence[int]]) -> IntPoly:
    """det(xI - M) for an integer matrix M."""
    m = [[int(v) for v in row] for row in matrix]
    n = len(m)
    values = []
    for t in range(n + 1):
        shifted = [[(t if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
        values.append(bareiss_det(shifted))
    p = _interpolate(values)
    if p.degree != n or p.leading != 1:
        raise PolyError("characteristic polynomial is not monic of full degree")
    return p


class Kind(str, enum.Enum):
    SIGNLESS = "signless"
    LAPLACIAN = "laplacian"


def graph_matrix(g: Graph, kind: Kind = Kind.SIGNLESS) -> list[list[int]]:
    sign = 1 if Kind(kind) is Kind.SIGNLESS else -1
    m = [[0] * g.n for _ in range(g.n)]
    for v in range(g.n):
        m[v][v] = g.degree(v)
    for u, v in g.edges:
        m[u][v] = m[v][u] = sign
    return m


def signless_charpoly(g: Graph) -> IntPoly:
    return charpoly(graph_matrix(g, Kind.SIGNLESS))


def laplacian_charpoly(g: Graph) -> IntPoly:
    return charpoly(graph_matrix(g, Kind.LAPLACIAN))


def graph_charpoly(g: Graph, kind: Kind = Kind.SIGNLESS) -> IntPoly:
    return charpoly(graph_matrix(g, kind))


def vertex_deleted_charpoly(g: Graph, v: int, kind: Kind = Kind.SIGNLESS) -> IntPoly:
    """Characteristic polynomial of the matrix with row and column ``v`` removed.

    The diagonal keeps the degrees of the full graph.
    """
    if not 0 <= v < g.n:
        raise IndexOutOfRange(f"vertex {v} out of range for n={g.n}")
    m = graph_matrix(g, kind)
    sub = [[m[i][j] for j in range(g.n) if j != v] for i in range(g.n) if i != v]
    return charpoly(sub)


# ---------------------------------------------------------------------------
# coefficient vectors

@dataclass(frozen=True)
class CoeffVector:
    """Sign-stripped coefficients: det(xI - M) = sum_i (-1)^i values[i] x^(n-i)."""

    values: tuple[int, ...]
    kind: Kind = Kind.SIGNLESS

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", Kind(self.kind))
        if not vals or vals[0] != 1:
            raise NotMonic(f"leading coefficient must be 1, got {vals[:1]}")
        bad = [i for i, v in enumerate(vals) if v < 0]
        if bad:
            raise NegativeCoefficient(f"negative coefficient at index {bad[0]}: {vals}")

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def to_poly(self) -> IntPoly:
        n = self.n
        return IntPoly(tuple((-1) ** (n - k) * self.values[n - k] for k in range(n + 1)))

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "values": [str(v) for v in self.values]}


def coeff_vector(p: IntPoly, kind: Kind = Kind.SIGNLESS) -> CoeffVector:
    if p.leading != 1:
        raise NotMonic(f"polynomial is not monic: {p}")
    n = p.degree
    vals = tuple((-1) ** i * p.coeff(n - i) for i in range(n + 1))
    bad = [i for i, v in enumerate(vals) if v < 0]
    if bad:
        raise NegativeCoefficient(
            f"sign-stripped coefficient {bad[0]} is negative ({vals[bad[0]]}); "
            "the characteristic polynomial is wrong"
        )
    return CoeffVector(vals, kind)


def signless_coeffs(g: Graph) -> CoeffVector:
    return coeff_vector(signless_charpoly(g), Kind.SIGNLESS)


def laplacian_coeffs(g: Graph) -> CoeffVector:
    return coeff_vector(laplacian_charpoly(g), Kind.LAPLACIAN)


# ---------------------------------------------------------------------------
# dominance

class Relation(str, enum.Enum):
    EQUAL = "Equal"
    DOMINATES = "Dominates"
    DOMINATED_BY = "DominatedBy"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class Dominance:
    relation: Relation
    equal_indices: frozenset[int] = field(default_factory=frozenset)
    greater_indices: frozenset[int] = field(default_factory=frozenset)
    less_indices: frozenset[int] = field(default_factory=frozenset)

    def to_json(self) -> dict:
        return {
            "relation": self.relation.value,
            "equal_indices": sorted(self.equal_indices),
        }


def compare_dominance(a: Union[CoeffVector, Sequence[int]], b: Union[CoeffVector, Sequence[int]]) -> Dominance:
    """Entrywise comparison; ``Dominates`` means a >= b everywhere, > somewhere."""
    if isinstance(a, CoeffVector) and isinstance(b, CoeffVector) and a.kind != b.kind:
        raise PolyError(f"cannot compare {a.kind.value} with {b.kind.value} coefficients")
    av, bv = tuple(a), tuple(b)
    if len(av) != len(bv):
        raise LengthMismatch(f"lengths differ: {len(av)} vs {len(bv)}")
    eq = frozenset(i for i in range(len(av)) if av[i] == bv[i])
    gt = frozenset(i for i in range(len(av)) if av[i] > bv[i])
    lt = frozenset(i for i in range(len(av)) if av[i] < bv[i])
    if not gt and not lt:
        rel = Relation.EQUAL
    elif not lt:
        rel = Relation.DOMINATES
    elif not gt:
        rel = Relation.DOMINATED_BY
    else:
        rel = Relation.INCOMPARABLE
    return Dominance(rel, eq, gt, lt)


# ---------------------------------------------------------------------------
# composition identities

def join_graphs(g1: Graph, u: int, g2: Graph, v: int) -> Graph:
    """Disjoint union of g1 and g2 plus the edge u -- (n1 + v)."""
    g1.check_vertex(u)
    g2.check_vertex(v)
    return g1.disjoint_union(g2).with_edges(add=[(u, g1.n + v)])


def attach_pendants(h: Graph, v: int, k: int) -> Graph:
    h.check_vertex(v)
    g = h.add_vertices(k)
    return g.with_edges(add=[(v, h.n + i) for i in range(k)])


def identity_check_join(g1: Graph, u: int, g2: Graph, v: int) -> bool:
    """Check P_G = P1*P2 - P1*P2|v - P2*P1|u for both Q and L, where G joins u and v."""
    g = join_graphs(g1, u, g2, v)
    for kind in Kind:
        p1, p2 = graph_charpoly(g1, kind), graph_charpoly(g2, kind)
        p1u = vertex_deleted_charpoly(g1, u, kind)
        p2v = vertex_deleted_charpoly(g2, v, kind)
        if graph_charpoly(g, kind) != p1 * p2 - p1 * p2v - p2 * p1u:
            return False
    return True


def identity_check_pendants(h: Graph, v: int, k: int) -> bool:
    """Check P_G = (x-1)^k P_H - k x (x-1)^(k-1) P_H|v for k pendants at v."""
    if h.n < 2:
        raise ValueError("host graph needs at least two vertices")
    if k < 1:
        raise ValueError("need at least one pendant")
    g = attach_pendants(h, v, k)
    xm1 = X - 1
    for kind in Kind:
        rhs = xm1**k * graph_charpoly(h, kind) - k * X * xm1 ** (k - 1) * vertex_deleted_charpoly(h, v, kind)
        if graph_charpoly(g, kind) != rhs:
            return False
    return True
