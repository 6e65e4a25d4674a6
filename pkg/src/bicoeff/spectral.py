"""Signless Laplacian spectra, incidence energy and the minimiser crossover.

Eigenvalues come from the in-repo cyclic Jacobi kernel.  The number of zero
eigenvalues of Q is known exactly (one per bipartite component), so those are
pinned to 0 before square roots are taken; otherwise a rounding error of
1e-16 on a zero eigenvalue would cost 1e-8 in the energy.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import OutOfRange
from .families import extremal_graph, extremal_cubics
from .graph import Graph, ParityClass, components, is_bipartite
from .kernels import jacobi_eigenvalues
from .poly import IntPoly, Kind, compare_dominance, graph_matrix, signless_coeffs, Relation

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 100
IE_MARGIN = 1e-7


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, each within ``tolerance`` of exact."""

    eigenvalues: tuple[float, ...]
    tolerance: float
    zero_count: int = 0
    sweeps: int = 0

    def elementary_symmetric(self) -> list[float]:
        """e_0..e_n of the eigenvalues (these equal the signless coefficients)."""
        e = [1.0] + [0.0] * len(self.eigenvalues)
        for lam in self.eigenvalues:
            for k in range(len(e) - 1, 0, -1):
                e[k] += lam * e[k - 1]
        return e


def bipartite_component_count(g: Graph) -> int:
    return sum(1 for comp in components(g) if is_bipartite(g.induced(comp)))


def q_spectrum(g: Graph, tol: float = DEFAULT_TOL, backend: Optional[str] = None, kind: Kind = Kind.SIGNLESS) -> Spectrum:
    """Spectrum of Q = D + A (or L with ``kind=Kind.LAPLACIAN``).

    Jacobi sweeps run until the off-diagonal Frobenius norm is at most
    min(tol / n, 1e-12 * ||M||); by Weyl's inequality each diagonal entry is
    then within tol of an eigenvalue.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if g.n == 0:
        return Spectrum((), tol)
    m = np.array(graph_matrix(g, kind), dtype=np.float64)
    scale = float(np.linalg.norm(m))
    threshold = min(tol / g.n, 1e-12 * scale) if scale > 0 else tol / g.n
    vals, sweeps, _ = jacobi_eigenvalues(m, threshold, MAX_SWEEPS, backend=backend)
    vals = sorted((float(v) for v in vals), reverse=True)
    zeros = bipartite_component_count(g) if Kind(kind) is Kind.SIGNLESS else len(components(g))
    for i in range(g.n - zeros, g.n):
        vals[i] = 0.0
    return Spectrum(tuple(vals), tol, zeros, sweeps)


def incidence_energy(g: Graph, tol: float = DEFAULT_TOL, backend: Optional[str] = None) -> float:
    """Sum of square roots of the signless Laplacian eigenvalues."""
    spec = q_spectrum(g, tol, backend=backend)
    return math.fsum(math.sqrt(max(v, 0.0)) for v in spec.eigenvalues)


@dataclass(frozen=True)
class IEComparison:
    relation: str
    ie_first: float
    ie_second: float
    conforms: bool


def ie_compare(g: Graph, h: Graph, margin: float = IE_MARGIN, backend: Optional[str] = None) -> IEComparison:
    if g.n != h.n:
        raise ValueError("graphs must have the same order")
    dom = compare_dominance(signless_coeffs(g), signless_coeffs(h))
    a, b = incidence_energy(g, backend=backend), incidence_energy(h, backend=backend)
    if dom.relation is Relation.DOMINATED_BY:
        ok = a < b + margin
    elif dom.relation is Relation.DOMINATES:
        ok = b < a + margin
    elif dom.relation is Relation.EQUAL:
        ok = abs(a - b) <= margin
    else:
        ok = True
    return IEComparison(dom.relation.value, a, b, ok)


def ie_dominance_spot_check(g: Graph, h: Graph, margin: float = IE_MARGIN, backend: Optional[str] = None) -> bool:
    """Coefficientwise smaller graph must not have larger incidence energy."""
    return ie_compare(g, h, margin, backend).conforms


# ---------------------------------------------------------------------------
# cubic roots

@dataclass(frozen=True)
class CubicRoots:
    roots: tuple[float, float, float]  # descending
    poly: IntPoly

    def residuals(self) -> list[float]:
        return [abs(_eval(self.poly, r)) for r in self.roots]


def _eval(p: IntPoly, x: float) -> float:
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _deriv(p: IntPoly) -> IntPoly:
    return IntPoly(tuple(k * p.coeffs[k] for k in range(1, len(p.coeffs))))


def _bisect(p: IntPoly, lo: float, hi: float) -> float:
    flo = _eval(p, lo)
    if flo == 0.0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = _eval(p, mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _polish(p: IntPoly, dp: IntPoly, x: float, lo: float, hi: float) -> float:
    for _ in range(3):
        d = _eval(dp, x)
        if d == 0.0:
            break
        nx = x - _eval(p, x) / d
        if not (lo <= nx <= hi) or nx == x:
            break
        x = nx
    return x


def cubic_roots(p: IntPoly) -> CubicRoots:
    """Three real roots of a monic cubic with distinct real roots.

    The critical points of p split the line into three brackets, each
    holding one root; bisection to full precision, then Newton polish.
    """
    if p.degree != 3 or p.leading != 1:
        raise ValueError("expected a monic cubic")
    _, c, b, _ = p.coeffs
    dp = _deriv(p)
    disc = 4 * b * b - 12 * c  # discriminant of 3x^2 + 2bx + c
    if disc <= 0:
        raise ValueError(f"{p} does not have three distinct real roots")
    s = math.sqrt(disc)
    k1, k2 = (-2 * b - s) / 6.0, (-2 * b + s) / 6.0
    bound = 1.0 + max(abs(x) for x in p.coeffs[:3])  # Cauchy bound
    brackets = [(-bound, k1), (k1, k2), (k2, bound)]
    roots = []
    for lo, hi in brackets:
        if (_eval(p, lo) < 0) == (_eval(p, hi) < 0):
            raise ValueError(f"{p} does not have three distinct real roots")
        r = _bisect(p, lo, hi)
        roots.append(_polish(p, dp, r, lo, hi))
    roots.sort(reverse=True)
    return CubicRoots((roots[0], roots[1], roots[2]), p)


# ---------------------------------------------------------------------------
# closed-form energies and the crossover scan

def closed_form_ie(n: int) -> tuple[float, float]:
    """(IE of the odd-class minimiser, IE of the even-class minimiser) from the cubic roots."""
    pa, pb = extremal_cubics(n)
    a = cubic_roots(pa).roots
    b = cubic_roots(pb).roots
    ie1 = (n - 4) + math.sqrt(2) + math.fsum(math.sqrt(max(r, 0.0)) for r in a)
    ie2 = (n - 6) + 2 * math.sqrt(2) + math.fsum(math.sqrt(max(r, 0.0)) for r in b)
    return ie1, ie2


@dataclass
class ScanRow:
    n: int
    ie1: float
    ie2: float
    ie1_spectrum: float
    ie2_spectrum: float

    @property
    def diff(self) -> float:
        return self.ie2 - self.ie1

    @property
    def winner(self) -> str:
        """Which minimiser has the smaller incidence energy."""
        return "B2" if self.diff < 0 else "B1"

    @property
    def path_gap(self) -> float:
        return max(abs(self.ie1 - self.ie1_spectrum), abs(self.ie2 - self.ie2_spectrum))


@dataclass
class ScanReport:
    n_min: int
    n_max: int
    rows: list[ScanRow] = field(default_factory=list)
    path_tolerance: float = 1e-6

    @property
    def crossovers(self) -> list[int]:
        """Every n whose winner differs from that of n-1."""
        return [b.n for a, b in zip(self.rows, self.rows[1:]) if a.winner != b.winner]

    @property
    def max_path_gap(self) -> float:
        return max((r.path_gap for r in self.rows), default=0.0)

    @property
    def min_abs_diff(self) -> float:
        return min((abs(r.diff) for r in self.rows), default=math.inf)

    @property
    def paths_agree(self) -> bool:
        return self.max_path_gap <= self.path_tolerance

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "IE1", "IE2", "diff", "winner"])
        for r in self.rows:
            w.writerow([r.n, f"{r.ie1:.12f}", f"{r.ie2:.12f}", f"{r.diff:.12f}", r.winner])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "crossovers": self.crossovers,
            "max_path_gap": self.max_path_gap,
            "min_abs_diff": self.min_abs_diff,
            "paths_agree": self.paths_agree,
            "rows": [
                {
                    "n": r.n,
                    "IE1": r.ie1,
                    "IE2": r.ie2,
                    "IE1_spectrum": r.ie1_spectrum,
                    "IE2_spectrum": r.ie2_spectrum,
                    "diff": r.diff,
                    "winner": r.winner,
                }
                for r in self.rows
            ],
        }


def ie_threshold_scan(n_min: int, n_max: int, backend: Optional[str] = None) -> ScanReport:
    if not 5 <= n_min <= n_max:
        raise OutOfRange(f"need 5 <= n_min <= n_max, got {n_min}..{n_max}")
    report = ScanReport(n_min, n_max)
    for n in range(n_min, n_max + 1):
        ie1, ie2 = closed_form_ie(n)
        s1 = incidence_energy(extremal_graph(n, ParityClass.ODD), backend=backend)
        s2 = incidence_energy(extremal_graph(n, ParityClass.EVEN), backend=backend)
        report.rows.append(ScanRow(n, ie1, ie2, s1, s2))
    return report


@dataclass(frozen=True)
class BoundCheck:
    name: str
    value: float
    lo: float
    hi: float

    @property
    def ok(self) -> bool:
        return self.lo <= self.value <= self.hi


def cubic_root_bounds_detail(n: int) -> list[BoundCheck]:
    """The seven interval claims on the minimiser cubic roots (six roots plus the
    square-root gap), evaluated at n."""
    if n < 31:
        raise OutOfRange(f"root bounds are claimed for n >= 31, got {n}")
    pa, pb = extremal_cubics(n)
    a1, a2, a3 = cubic_roots(pa).roots
    b1, b2, b3 = cubic_roots(pb).roots
    gap = math.fsum(math.sqrt(b) - math.sqrt(a) for a, b in zip((a1, a2, a3), (b1, b2, b3)))
    return [
        BoundCheck("alpha1", a1, n, n + 0.01),
        BoundCheck("alpha2", a2, 3.93, 4.0),
        BoundCheck("alpha3", a3, 0.0, 0.066),
        BoundCheck("beta1", b1, n - 1, n - 0.995),
        BoundCheck("beta2", b2, 4.27, 4.31),
        BoundCheck("beta3", b3, 0.697, 0.726),
        BoundCheck("sqrt_gap", gap, 0.5899, 1.0),
    ]


def cubic_root_bounds_check(n: int) -> bool:
    return all(b.ok for b in cubic_root_bounds_detail(n))
