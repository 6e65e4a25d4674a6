"""Exhaustive generation of small connected graphs and the extremality check.

Bicyclic graphs on n vertices come from scanning the (n+1)-edge subsets of
K_n (numba kernel, degree-sorted labellings only), then deduplicating by
canonical code.  A constructive generator (bases plus pendant growth) is
kept for cross-checking.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np

from .canon import CanonicalCode, canonical_form, graph_from_code
from .errors import TooLarge, TooSmall
from .families import build_base, extremal_graph
from .graph import (
    Graph,
    ParityClass,
    PathJoined,
    Theta,
    VertexShared,
    classify_bicyclic,
)
from .kernels import connected_subsets
from .poly import CoeffVector, compare_dominance, signless_coeffs

MAX_DEFAULT_N = 8
MAX_FLAGGED_N = 9


def _scan_edges(n: int, seed: Optional[int]) -> list[tuple[int, int]]:
    edges = list(combinations(range(n), 2))
    if seed is not None:
        order = np.random.default_rng(seed).permutation(len(edges))
        edges = [edges[i] for i in order]
    return edges


def _dedup_masks(n: int, edges: list[tuple[int, int]], masks) -> list[Graph]:
    codes: set[CanonicalCode] = set()
    for mask in masks:
        mask = int(mask)
        es = tuple(edges[i] for i in range(len(edges)) if mask >> i & 1)
        codes.add(canonical_form(Graph(n, es)))
    return [graph_from_code(c) for c in sorted(codes)]


def generate_connected(
    n: int, m: int, seed: Optional[int] = None, backend: Optional[str] = None
) -> list[Graph]:
    """One canonical representative per isomorphism class of connected graphs
    with n vertices and m edges, sorted by canonical code."""
    if n > MAX_FLAGGED_N:
        raise TooLarge(f"exhaustive generation is limited to n <= {MAX_FLAGGED_N}")
    if n == 1:
        return [Graph(1, ())] if m == 0 else []
    if n < 1 or m < n - 1 or m > n * (n - 1) // 2:
        return []
    edges = _scan_edges(n, seed)
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    masks = connected_subsets(n, eu, ev, m, backend=backend)
    return _dedup_masks(n, edges, masks)


def generate_all_connected(n: int, backend: Optional[str] = None) -> list[Graph]:
    out = []
    for m in range(max(n - 1, 0), n * (n - 1) // 2 + 1):
        out.extend(generate_connected(n, m, backend=backend))
    return out


def generate_all_bicyclic(
    n: int, allow_large: bool = False, seed: Optional[int] = None, backend: Optional[str] = None
) -> list[Graph]:
    """All connected graphs with n vertices and n+1 edges, up to isomorphism.

    ``seed`` shuffles the scan order of the edges of K_n; the output is the
    same set of canonical representatives for every seed.
    """
    if n < 4:
        raise TooSmall(f"no simple bicyclic graph has fewer than 4 vertices (n={n})")
    limit = MAX_FLAGGED_N if allow_large else MAX_DEFAULT_N
    if n > limit:
        raise TooLarge(
            f"n={n} exceeds the generation limit {limit}"
            + ("" if allow_large else " (pass allow_large=True for n=9)")
        )
    return generate_connected(n, n + 1, seed=seed, backend=backend)


# ---------------------------------------------------------------------------
# constructive cross-check

def all_bases(size: int) -> list[Graph]:
    """Every bicyclic base (minimum degree 2) with exactly ``size`` vertices."""
    out = []
    for p in range(3, size + 2):
        q = size + 1 - p
        if q >= p:
            out.append(build_base(VertexShared(p, q)))
    for p in range(3, size):
        for q in range(p, size):
            l = size + 1 - p - q
            if l >= 1:
                out.append(build_base(PathJoined(p, l, q)))
    for m in range(1, size):
        for l in range(max(m, 2), size):
            k = size + 1 - l - m
            if k >= l:
                out.append(build_base(Theta(k, l, m)))
    return out


def generate_bicyclic_constructive(n: int) -> list[Graph]:
    """Same classes as :func:`generate_all_bicyclic`, grown from bases by
    attaching one leaf at a time."""
    if n < 4:
        raise TooSmall(f"no simple bicyclic graph has fewer than 4 vertices (n={n})")
    if n > MAX_DEFAULT_N:
        raise TooLarge(f"constructive generation is limited to n <= {MAX_DEFAULT_N}")
    level: set[CanonicalCode] = set()
    for size in range(4, n + 1):
        grown = set()
        for code in level:
            g = graph_from_code(code)
            for v in range(g.n):
                h = g.add_vertices(1).with_edges(add=[(v, g.n)])
                grown.add(canonical_form(h))
        grown.update(canonical_form(b) for b in all_bases(size))
        level = grown
    return [graph_from_code(c) for c in sorted(level)]


# ---------------------------------------------------------------------------
# parity classes and minima

def partition_by_parity(gs: Sequence[Graph]) -> tuple[list[Graph], list[Graph]]:
    odd, even = [], []
    for g in gs:
        (odd if classify_bicyclic(g).parity_class is ParityClass.ODD else even).append(g)
    return odd, even


def minimal_elements(gs: Sequence[Graph], vectors: Optional[Sequence[CoeffVector]] = None) -> list[Graph]:
    """Graphs whose signless vector has nothing strictly below it in the input."""
    if not gs:
        return []
    vecs = [tuple(v) for v in (vectors if vectors is not None else [signless_coeffs(g) for g in gs])]
    if len({len(v) for v in vecs}) != 1:
        raise ValueError("all graphs must have the same order")
    if max(max(v) for v in vecs) < 2**62:
        arr = np.array(vecs, dtype=np.int64)
        le = np.all(arr[:, None, :] <= arr[None, :, :], axis=2)  # le[a, b]: a <= b
        ne = np.any(arr[:, None, :] != arr[None, :, :], axis=2)
        below = le & ne
        return [gs[b] for b in range(len(gs)) if not below[:, b].any()]
    out = []
    for b, vb in enumerate(vecs):
        if not any(va != vb and all(x <= y for x, y in zip(va, vb)) for va in vecs):
            out.append(gs[b])
    return out


# ---------------------------------------------------------------------------
# extremality verification

@dataclass
class InstanceResult:
    code: str
    parity_class: str
    base: str
    coeffs: tuple[int, ...]
    relation: str
    equal_indices: tuple[int, ...]
    expected_equal_indices: tuple[int, ...]
    equality_matches: bool
    is_minimizer: bool


@dataclass
class VerificationReport:
    theorem: str
    n: int
    parity_class: str
    instance_count: int
    minimizer_codes: list[str]
    expected_minimizer_code: str
    violations: list[dict]
    equality_mismatches: list[dict]
    instances: list[InstanceResult] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.violations

    @property
    def unique_minimizer(self) -> bool:
        return self.minimizer_codes == [self.expected_minimizer_code]

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "class": self.parity_class,
            "instance_count": self.instance_count,
            "verified": self.verified,
            "unique_minimizer": self.unique_minimizer,
            "minimizer_codes": self.minimizer_codes,
            "expected_minimizer_code": self.expected_minimizer_code,
            "violations": self.violations,
            "equality_mismatches": self.equality_mismatches,
            "instances": [
                {
                    "code": r.code,
                    "class": r.parity_class,
                    "base": r.base,
                    "coeffs": [str(c) for c in r.coeffs],
                    "relation": r.relation,
                    "equal_indices": list(r.equal_indices),
                    "expected_equal_indices": list(r.expected_equal_indices),
                    "equality_matches": r.equality_matches,
                    "is_minimizer": r.is_minimizer,
                }
                for r in self.instances
            ],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["code", "class", "base", "coeffs", "relation_vs_extremal", "equal_indices", "equality_matches"])
        for r in self.instances:
            w.writerow([
                r.code,
                r.parity_class,
                r.base,
                " ".join(str(c) for c in r.coeffs),
                r.relation,
                " ".join(str(i) for i in r.equal_indices),
                r.equality_matches,
            ])
        return buf.getvalue()


# base of the minimiser whose graphs share the extra equalities at n-1 and n
_SPECIAL_BASE = {ParityClass.ODD: Theta(2, 2, 1), ParityClass.EVEN: Theta(2, 2, 2)}
THEOREM_IDS = {ParityClass.ODD: "odd-class-minimum", ParityClass.EVEN: "even-class-minimum"}


def expected_equal_indices(n: int, cls: ParityClass, base) -> tuple[int, ...]:
    """Indices where the stated theorem promises equality with the minimiser."""
    if base == _SPECIAL_BASE[cls]:
        return (0, 1, n - 1, n)
    return (0, 1)


def verify_extremal(
    n: int,
    cls: Union[ParityClass, str],
    graphs: Optional[Sequence[Graph]] = None,
    allow_large: bool = False,
    backend: Optional[str] = None,
) -> VerificationReport:
    """Check phi_i(G) >= phi_i(minimiser) for every G of the class and every i."""
    t0 = time.perf_counter()
    cls = ParityClass(cls)
    if graphs is None:
        graphs = generate_all_bicyclic(n, allow_large=allow_large, backend=backend)
    members = [g for g in graphs if classify_bicyclic(g).parity_class is cls]
    ext = extremal_graph(n, cls)
    ext_code = canonical_form(ext)
    ext_vec = signless_coeffs(ext)
    vecs = [signless_coeffs(g) for g in members]
    codes = [canonical_form(g) for g in members]

    violations: list[dict] = []
    mismatches: list[dict] = []
    instances: list[InstanceResult] = []
    for g, vec, code in zip(members, vecs, codes):
        info = classify_bicyclic(g)
        dom = compare_dominance(vec, ext_vec)
        is_min = code == ext_code
        eq = tuple(sorted(dom.equal_indices))
        expected = tuple(range(n + 1)) if is_min else expected_equal_indices(n, cls, info.kind)
        matches = eq == expected
        for i in sorted(dom.less_indices):
            violations.append({"code": code.hex(), "index": i, "value": vec[i], "minimizer_value": ext_vec[i]})
        if not is_min and not dom.less_indices and not dom.greater_indices:
            violations.append({"code": code.hex(), "index": None, "reason": "same vector as the minimiser"})
        if not matches:
            mismatches.append({"code": code.hex(), "base": repr(info.kind), "equal": list(eq), "expected": list(expected)})
        instances.append(
            InstanceResult(code.hex(), cls.value, repr(info.kind), tuple(vec), dom.relation.value, eq, expected, matches, is_min)
        )
    minima = minimal_elements(members, vecs)
    report = VerificationReport(
        theorem=THEOREM_IDS[cls],
        n=n,
        parity_class=cls.value,
        instance_count=len(members),
        minimizer_codes=sorted(canonical_form(g).hex() for g in minima),
        expected_minimizer_code=ext_code.hex(),
        violations=violations,
        equality_mismatches=mismatches,
        instances=instances,
    )
    if ext_code not in codes:
        report.violations.append({"code": ext_code.hex(), "index": None, "reason": "minimiser missing from the class"})
    report.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return report


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), indent=2)
