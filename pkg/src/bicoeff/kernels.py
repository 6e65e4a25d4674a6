"""Hot inner loops, each with a numba kernel and a pure-numpy twin.

* ``subset_scan``     -- weighted edge-subset enumeration behind both
                         coefficient oracles (TU-subgraphs and spanning forests)
* ``connected_subsets`` -- (n+1)-edge subsets of K_n that are connected and
                         carry a degree-sorted labelling (bicyclic generation)
* ``jacobi_eigenvalues`` -- cyclic Jacobi rotations for symmetric matrices

The dispatchers pick the backend via :mod:`bicoeff._backend`.
"""

from __future__ import annotations

from itertools import combinations, islice
from math import sqrt

import numpy as np

from . import _backend
from ._backend import njit
from .errors import ConvergenceFailure

CHUNK = 1 << 15


# ---------------------------------------------------------------------------
# subset scan

@njit
def _weigh_mask(mask, n, eu, ev, parent, parity, size, ecnt, odd):
    """Weight of one edge subset: (tu_weight, is_forest); weight -1 if not TU."""
    for i in range(n):
        parent[i] = i
        parity[i] = 0
        size[i] = 1
        ecnt[i] = 0
        odd[i] = False
    forest = True
    for e in range(eu.shape[0]):
        if not (mask >> e) & 1:
            continue
        a = eu[e]
        pa = 0
        while parent[a] != a:
            pa ^= parity[a]
            a = parent[a]
        b = ev[e]
        pb = 0
        while parent[b] != b:
            pb ^= parity[b]
            b = parent[b]
        if a == b:
            forest = False
            ecnt[a] += 1
            if pa == pb:
                odd[a] = True
        else:
            if size[a] < size[b]:
                a, b = b, a
                pa, pb = pb, pa
            parent[b] = a
            parity[b] = pa ^ pb ^ 1
            size[a] += size[b]
            ecnt[a] += ecnt[b] + 1
            odd[a] = odd[a] or odd[b]
        if ecnt[a] > size[a]:
            return -1, False
    w = 1
    for i in range(n):
        if parent[i] != i:
            continue
        if ecnt[i] == size[i] - 1:
            w *= size[i]
        elif odd[i]:
            w *= 4
        else:
            return -1, False
    return w, forest


@njit
def _subset_scan_nb(n, eu, ev):
    m = eu.shape[0]
    phi = np.zeros(n + 1, np.int64)
    lap = np.zeros(n + 1, np.int64)
    parent = np.empty(n, np.int64)
    parity = np.empty(n, np.int64)
    size = np.empty(n, np.int64)
    ecnt = np.empty(n, np.int64)
    odd = np.empty(n, np.bool_)
    limit = np.int64(1) << m
    for k in range(min(n, m) + 1):
        # Gosper's hack walks the k-subsets in increasing order
        mask = (np.int64(1) << k) - 1
        while mask < limit:
            w, forest = _weigh_mask(mask, n, eu, ev, parent, parity, size, ecnt, odd)
            if w >= 0:
                phi[k] += w
                if forest:
                    lap[k] += w
            if k == 0:
                break
            c = mask & -mask
            r = mask + c
            mask = (((r ^ mask) >> 2) // c) | r
    return phi, lap


def _label_components(bits: np.ndarray, eu: np.ndarray, ev: np.ndarray, nn: int) -> np.ndarray:
    """Per-row component labels (a member vertex) by min-label propagation."""
    batch = bits.shape[0]
    rows = np.arange(batch)
    lab = np.tile(np.arange(nn), (batch, 1))
    while True:
        changed = False
        for e in range(eu.shape[0]):
            r = rows[bits[:, e]]
            if r.size == 0:
                continue
            a = lab[r, eu[e]]
            b = lab[r, ev[e]]
            lo = np.minimum(a, b)
            if not changed and (np.any(a != lo) or np.any(b != lo)):
                changed = True
            lab[r, eu[e]] = lo
            lab[r, ev[e]] = lo
        jumped = np.take_along_axis(lab, lab, axis=1)
        if np.any(jumped != lab):
            lab = jumped
            changed = True
        if not changed:
            return lab


def _masks_upto(m: int, kmax: int):
    """Chunks of (bit-matrix, popcount) for every edge subset of size <= kmax."""
    for k in range(kmax + 1):
        it = combinations(range(m), k)
        while True:
            chunk = list(islice(it, CHUNK))
            if not chunk:
                break
            bits = np.zeros((len(chunk), m), dtype=bool)
            if k:
                idx = np.asarray(chunk, dtype=np.int64)
                bits[np.arange(len(chunk))[:, None], idx] = True
            yield bits, k


def _subset_scan_np(n: int, eu: np.ndarray, ev: np.ndarray):
    m = eu.shape[0]
    phi = np.zeros(n + 1, np.int64)
    lap = np.zeros(n + 1, np.int64)
    eu2 = np.concatenate([eu, eu + n])
    ev2 = np.concatenate([ev + n, ev])
    for bits, k in _masks_upto(m, min(n, m)):
        batch = bits.shape[0]
        rows = np.arange(batch)
        lab = _label_components(bits, eu, ev, n)
        # a component is non-bipartite iff its signed double cover is connected
        dlab = _label_components(np.concatenate([bits, bits], axis=1), eu2, ev2, 2 * n)
        odd_v = dlab[:, :n] == dlab[:, n:]
        size = np.zeros((batch, n), np.int64)
        ecnt = np.zeros((batch, n), np.int64)
        oddc = np.zeros((batch, n), bool)
        for v in range(n):
            size[rows, lab[:, v]] += 1
            oddc[rows, lab[:, v]] |= odd_v[:, v]
        for e in range(m):
            r = rows[bits[:, e]]
            ecnt[r, lab[r, eu[e]]] += 1
        is_root = size > 0
        tree = is_root & (ecnt == size - 1)
        uni = is_root & (ecnt == size) & oddc
        valid = np.all(~is_root | tree | uni, axis=1)
        forest = np.all(~is_root | tree, axis=1)
        w = np.prod(np.where(tree, size, 1), axis=1) * np.prod(np.where(uni, 4, 1), axis=1)
        phi[k] += int(w[valid].sum())
        lap[k] += int(w[forest].sum())
    return phi, lap


def subset_scan(n: int, eu, ev, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Sum TU weights and forest weights over all edge subsets, by size.

    Returns ``(phi, c)`` with ``phi[i]`` the total TU-subgraph weight over
    spanning subgraphs with ``i`` edges and ``c[i]`` the same restricted to
    forests (where the weight is the product of tree orders).
    """
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    if _backend.resolve(backend) == "numba":
        return _subset_scan_nb(n, eu, ev)
    return _subset_scan_np(n, eu, ev)


# ---------------------------------------------------------------------------
# bicyclic candidate generation

@njit
def _accept_nb(mask, n, eu, ev, deg, nbr, parent):
    m = eu.shape[0]
    for i in range(n):
        deg[i] = 0
        nbr[i] = 0
    for e in range(m):
        if (mask >> e) & 1:
            deg[eu[e]] += 1
            deg[ev[e]] += 1
    if deg[n - 1] == 0:
        return False
    for i in range(n - 1):
        if deg[i] < deg[i + 1]:
            return False
    for e in range(m):
        if (mask >> e) & 1:
            nbr[eu[e]] += deg[ev[e]]
            nbr[ev[e]] += deg[eu[e]]
    for i in range(n - 1):
        if deg[i] == deg[i + 1] and nbr[i] < nbr[i + 1]:
            return False
    for i in range(n):
        parent[i] = i
    comps = n
    for e in range(m):
        if (mask >> e) & 1:
            a = eu[e]
            while parent[a] != a:
                a = parent[a]
            b = ev[e]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                parent[a] = b
                comps -= 1
    return comps == 1


@njit
def _connected_subsets_nb(n, eu, ev, k):
    m = eu.shape[0]
    deg = np.empty(n, np.int64)
    nbr = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    out = np.empty(1024, np.int64)
    count = 0
    limit = np.int64(1) << m
    mask = (np.int64(1) << k) - 1
    while mask < limit:
        if _accept_nb(mask, n, eu, ev, deg, nbr, parent):
            if count == out.shape[0]:
                grown = np.empty(2 * count, np.int64)
                grown[:count] = out
                out = grown
            out[count] = mask
            count += 1
        c = mask & -mask
        r = mask + c
        mask = (((r ^ mask) >> 2) // c) | r
    return out[:count]


def _connected_subsets_np(n: int, eu: np.ndarray, ev: np.ndarray, k: int) -> np.ndarray:
    m = eu.shape[0]
    found = []
    it = combinations(range(m), k)
    weights = np.int64(1) << np.arange(m, dtype=np.int64)
    while True:
        chunk = list(islice(it, CHUNK))
        if not chunk:
            break
        idx = np.asarray(chunk, dtype=np.int64)
        batch = idx.shape[0]
        bits = np.zeros((batch, m), dtype=bool)
        bits[np.arange(batch)[:, None], idx] = True
        inc = np.zeros((m, n), np.int64)
        inc[np.arange(m), eu] = 1
        inc[np.arange(m), ev] = 1
        deg = bits.astype(np.int64) @ inc
        ok = (deg[:, -1] > 0) & np.all(deg[:, :-1] >= deg[:, 1:], axis=1)
        # neighbour-degree sums: for each edge add the other end's degree
        nbr = np.zeros((batch, n), np.int64)
        for e in range(m):
            sel = bits[:, e]
            nbr[sel, eu[e]] += deg[sel, ev[e]]
            nbr[sel, ev[e]] += deg[sel, eu[e]]
        tie = deg[:, :-1] == deg[:, 1:]
        ok &= ~np.any(tie & (nbr[:, :-1] < nbr[:, 1:]), axis=1)
        if not ok.any():
            continue
        bits = bits[ok]
        lab = _label_components(bits, eu, ev, n)
        conn = np.all(lab == lab[:, :1], axis=1)
        found.append((bits[conn].astype(np.int64) * weights).sum(axis=1))
    if not found:
        return np.empty(0, np.int64)
    return np.sort(np.concatenate(found))


def connected_subsets(n: int, eu, ev, k: int, backend: str | None = None) -> np.ndarray:
    """Masks of k-edge subsets that span a connected graph on n vertices whose
    labelling has non-increasing (degree, neighbour-degree-sum) keys.

    Every isomorphism class has at least one such labelling, so deduplicating
    the result up to isomorphism yields every connected graph with k edges.
    """
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    if _backend.resolve(backend) == "numba":
        return _connected_subsets_nb(n, eu, ev, k)
    return _connected_subsets_np(n, eu, ev, k)


# ---------------------------------------------------------------------------
# Jacobi eigenvalues

@njit
def _jacobi_nb(a, threshold, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = sqrt(off)
        if off <= threshold or sweep == max_sweeps:
            return np.diag(a).copy(), sweep, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.diag(a).copy(), max_sweeps, off


def _jacobi_np(a: np.ndarray, threshold: float, max_sweeps: int):
    n = a.shape[0]
    iu = np.triu_indices(n, 1)
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = float(np.sqrt(2.0 * np.sum(a[iu] ** 2)))
        if off <= threshold or sweep == max_sweeps:
            return np.diag(a).copy(), sweep, off
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.diag(a).copy(), max_sweeps, off


def jacobi_eigenvalues(
    matrix, threshold: float, max_sweeps: int = 60, backend: str | None = None
) -> tuple[np.ndarray, int, float]:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm is at most ``threshold``.
    Returns ``(eigenvalues_unsorted, sweeps, off_norm)``.
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if a.shape[0] == 0:
        return np.empty(0), 0, 0.0
    if _backend.resolve(backend) == "numba":
        vals, sweeps, off = _jacobi_nb(a, float(threshold), int(max_sweeps))
    else:
        vals, sweeps, off = _jacobi_np(a, float(threshold), int(max_sweeps))
    if off > threshold:
        raise ConvergenceFailure(
            f"Jacobi did not reach off-diagonal norm {threshold:g} in {max_sweeps} sweeps "
            f"(stuck at {off:g})"
        )
    return vals, int(sweeps), float(off)
