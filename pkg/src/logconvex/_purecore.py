"""Pure-Python kernels: lower convex hull and discrete conjugate transform.

Mirror of the compiled extension in ``_fastcore.pyx``; selected at import by
:mod:`logconvex.kernels` when the extension is unavailable or disabled.

Both kernels are stack algorithms over abscissa-sorted data:

* ``lower_hull_indices`` runs a monotone chain over the sample points and
  keeps the vertices of their lower convex hull (interior points of a
  collinear run are dropped).
* ``conjugate_table`` builds the upper envelope of the dual lines
  ``a -> a*x[i] - y[i]``; the surviving lines and the breakpoints between
  them describe the convex conjugate ``max_i (a*x[i] - y[i])`` exactly as a
  piecewise-linear function of the slope ``a``.
* ``conjugate_at`` answers ascending slope queries by walking that envelope.
"""

from __future__ import annotations

import numpy as np


def lower_hull_indices(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Indices of the lower-convex-hull vertices of ``(x[i], y[i])``.

    ``x`` must be strictly increasing.  First and last index are always
    kept; a point collinear with its hull neighbours is dropped.
    """
    n = x.shape[0]
    stack = np.empty(n, dtype=np.int64)
    stack[0] = 0
    top = 0
    for i in range(1, n):
        while top >= 1:
            j = stack[top]
            k = stack[top - 1]
            cross = (x[j] - x[k]) * (y[i] - y[k]) - (x[i] - x[k]) * (y[j] - y[k])
            if cross <= 0.0:
                top -= 1
            else:
                break
        top += 1
        stack[top] = i
    return stack[: top + 1].copy()


def conjugate_table(
    x: np.ndarray, y: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Upper envelope of the lines ``a -> a*x[i] - y[i]``.

    Returns ``(survivors, breakpoints, values)``: indices of the lines that
    appear on the envelope (in increasing slope order), the ``len - 1``
    slope abscissae where the envelope switches lines, and the conjugate's
    value at each breakpoint (computed on the left line).
    """
    n = x.shape[0]
    surv = np.empty(n, dtype=np.int64)
    bps = np.empty(n, dtype=np.float64)
    surv[0] = 0
    top = 0
    for i in range(1, n):
        while top >= 0:
            j = surv[top]
            b_new = (y[i] - y[j]) / (x[i] - x[j])
            if top >= 1 and b_new <= bps[top - 1]:
                top -= 1
            else:
                bps[top] = b_new
                break
        top += 1
        surv[top] = i
    survivors = surv[: top + 1].copy()
    breakpoints = bps[:top].copy()
    left = survivors[:-1]
    values = breakpoints * x[left] - y[left]
    return survivors, breakpoints, values


def conjugate_at(x: np.ndarray, y: np.ndarray, slopes: np.ndarray) -> np.ndarray:
    """``max_i (a*x[i] - y[i])`` for each ``a`` in ascending ``slopes``."""
    survivors, breakpoints, _ = conjugate_table(x, y)
    m = slopes.shape[0]
    nb = breakpoints.shape[0]
    out = np.empty(m, dtype=np.float64)
    k = 0
    for q in range(m):
        a = slopes[q]
        while k < nb and a > breakpoints[k]:
            k += 1
        i = survivors[k]
        out[q] = a * x[i] - y[i]
    return out
