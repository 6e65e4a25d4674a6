"""Kernel backend selection.

Hot loops ship twice: a numba ``@njit`` version and a pure-numpy twin.  The
numba path is used when numba imports cleanly and ``BICOEFF_NO_NUMBA`` is
unset (or falsy).  Every dispatcher also accepts ``backend="numba"|"numpy"``
so tests and the benchmark can pin a path explicitly.
"""

from __future__ import annotations

import os

ENV_FLAG = "BICOEFF_NO_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _flag_set() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() not in ("", "0", "false", "no", "off")


def default_backend() -> str:
    return "numba" if HAVE_NUMBA and not _flag_set() else "numpy"


def resolve(backend: str | None) -> str:
    if backend is None:
        return default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def njit(fn):
    """``numba.njit(cache=True)`` when numba exists, else the plain function."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn
