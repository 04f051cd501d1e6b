"""Kernel backend selection.

The hot inner loops (monotone-chain hull, dual line envelope, envelope walk)
live in the compiled extension ``logconvex._fastcore`` when it was built, and
in the pure-Python twin ``logconvex._purecore`` otherwise.  Setting the
environment variable ``LOGCONVEX_PURE=1`` before import forces the fallback,
which is what the benchmark uses to compare the two.
"""

from __future__ import annotations

import os

import numpy as np

from . import _purecore

_impl = _purecore
if not os.environ.get("LOGCONVEX_PURE"):
    try:
        from . import _fastcore as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = "compiled" if _impl is not _purecore else "pure"


def available_backends() -> dict[str, object]:
    """Importable kernel modules, keyed by backend name."""
    backends: dict[str, object] = {"pure": _purecore}
    try:
        from . import _fastcore

        backends["compiled"] = _fastcore
    except ImportError:
        pass
    return backends


def _as_c(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def lower_hull_indices(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vertex indices of the lower convex hull of ``(x, y)``; ``x`` strictly
    increasing, collinear interior points dropped."""
    return np.asarray(_impl.lower_hull_indices(_as_c(x), _as_c(y)))


def conjugate_table(x: np.ndarray, y: np.ndarray):
    """Piecewise-linear structure of ``a -> max_i (a*x[i] - y[i])``:
    ``(survivor indices, breakpoint slopes, values at the breakpoints)``."""
    surv, bps, vals = _impl.conjugate_table(_as_c(x), _as_c(y))
    return np.asarray(surv), np.asarray(bps), np.asarray(vals)


def conjugate_at(x: np.ndarray, y: np.ndarray, slopes: np.ndarray) -> np.ndarray:
    """``max_i (a*x[i] - y[i])`` for each ``a`` in ascending ``slopes``."""
    return np.asarray(_impl.conjugate_at(_as_c(x), _as_c(y), _as_c(slopes)))
