"""Greatest convex minorants of sampled functions.

The envelope of a sampled function is the lower convex hull of its knots,
computed by a monotone chain.  An independent route to the same object is the
double discrete Legendre transform (``biconjugate_via_legendre``): the first
transform is evaluated exactly as a piecewise-linear function of the slope,
and conjugating its breakpoint samples back onto the original grid
reproduces the hull.  The two routes share no code and are required to agree
to 1e-9 relative; that agreement is the package's principal self-check.

Everything outside the sampled window is treated as +infinity: no support
constraint reaches beyond the window, so the discrete envelope can exceed
the ideal one near the window edges.  Callers that care evaluate interior
points only, at least a decade inside each edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EvaluationError, GridError
from .funcspace import Grid, SampledFunction

__all__ = [
    "SupportLine",
    "ConvexSampledFunction",
    "convex_envelope",
    "legendre_transform",
    "biconjugate_via_legendre",
    "support_line_at",
    "is_discretely_convex",
    "ENVELOPE_ABS_TOL",
    "ENVELOPE_REL_TOL",
]

# Absolute tolerance for envelope correctness checks (values up to 1e6) and
# relative tolerance when comparing two independently computed envelopes.
ENVELOPE_ABS_TOL = 1e-12
ENVELOPE_REL_TOL = 1e-9


@dataclass(frozen=True)
class SupportLine:
    """Affine minorant ``a*x + b`` of the function it was derived from."""

    slope: float
    intercept: float

    def value(self, x):
        return self.slope * np.asarray(x, dtype=float) + self.intercept


def _slope_noise_floor(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-triple lower bound on resolvable chord-slope differences.

    Interpolated collinear runs carry last-bit noise of order
    ``eps * |y| / dx`` in their chord slopes; differences below that floor
    are indistinguishable from exact convexity.
    """
    eps = np.finfo(float).eps
    ay = np.abs(y)
    local = np.maximum(np.maximum(ay[:-2], ay[1:-1]), ay[2:])
    dx = np.diff(x)
    dmin = np.minimum(dx[:-1], dx[1:])
    return 16.0 * eps * local / dmin


def is_discretely_convex(f: SampledFunction, atol: float = 0.0) -> bool:
    """Whether consecutive chord slopes are non-decreasing.

    ``atol`` loosens the comparison by an absolute slope amount; on top of it
    a floating-point noise floor is always allowed, so exactly-convex data
    that went through interpolation still passes.
    """
    x, y = f.x, f.values
    if len(x) < 3:
        return True
    slopes = np.diff(y) / np.diff(x)
    return bool(np.all(np.diff(slopes) >= -(atol + _slope_noise_floor(x, y))))


@dataclass(frozen=True, eq=False)
class ConvexSampledFunction:
    """Sampled function together with its hull structure.

    ``vertex_indices`` lists the knots where the function equals the data it
    minorizes; between vertices the values lie on the connecting chords.
    Chord slopes over the vertex subsequence are non-decreasing by
    construction, which is checked exactly on construction.
    """

    function: SampledFunction
    vertex_indices: np.ndarray

    def __post_init__(self) -> None:
        idx = np.array(self.vertex_indices, dtype=np.int64)
        n = len(self.function.grid)
        if idx.ndim != 1 or idx.size < 2 or idx[0] != 0 or idx[-1] != n - 1:
            raise GridError("vertex indices must span the grid endpoints")
        if not np.all(np.diff(idx) > 0):
            raise GridError("vertex indices must be strictly increasing")
        xv = self.function.x[idx]
        yv = self.function.values[idx]
        if idx.size >= 3:
            cross = (xv[1:-1] - xv[:-2]) * (yv[2:] - yv[:-2]) - (
                xv[2:] - xv[:-2]
            ) * (yv[1:-1] - yv[:-2])
            if np.any(cross < 0.0):
                raise EvaluationError("vertex sequence is not convex")
        idx.setflags(write=False)
        object.__setattr__(self, "vertex_indices", idx)

    @property
    def grid(self) -> Grid:
        return self.function.grid

    @property
    def x(self) -> np.ndarray:
        return self.function.x

    @property
    def values(self) -> np.ndarray:
        return self.function.values

    @property
    def vertex_x(self) -> np.ndarray:
        return self.function.x[self.vertex_indices]

    @property
    def vertex_values(self) -> np.ndarray:
        return self.function.values[self.vertex_indices]

    def edge_slopes(self) -> np.ndarray:
        """Slope of each hull edge, non-decreasing along the grid."""
        xv, yv = self.vertex_x, self.vertex_values
        return np.diff(yv) / np.diff(xv)

    def edge_intercepts(self) -> np.ndarray:
        """Intercept of each hull edge line, anchored at its left vertex."""
        xv, yv = self.vertex_x, self.vertex_values
        return yv[:-1] - self.edge_slopes() * xv[:-1]

    def edge_of(self, x: float) -> int:
        """Index of the hull edge whose span contains ``x``."""
        xv = self.vertex_x
        if x < xv[0] or x > xv[-1]:
            raise EvaluationError(f"x={x!r} outside the sampled range")
        j = int(np.searchsorted(xv, x, side="right")) - 1
        return min(max(j, 0), xv.size - 2)


def convex_envelope(
    f: SampledFunction | ConvexSampledFunction,
) -> ConvexSampledFunction:
    """Greatest convex minorant of ``f`` on its own grid.

    The result equals ``f`` at hull vertices, never exceeds ``f`` at any
    knot, and is maximal among convex minorants of the knot set.  The
    envelope is a projection: feeding its output back in returns the same
    object unchanged.
    """
    if isinstance(f, ConvexSampledFunction):
        return f
    x, y = f.x, f.values
    idx = kernels.lower_hull_indices(x, y)
    g = np.interp(x, x[idx], y[idx])
    g[idx] = y[idx]
    # interpolation may land a hair above f on collinear runs; the minorant
    # property is exact, not toleranced
    np.minimum(g, y, out=g)
    return ConvexSampledFunction(SampledFunction(f.grid, g), idx)


def legendre_transform(
    f: SampledFunction, slopes
) -> list[tuple[float, float]]:
    """Discrete convex conjugate ``a -> max_i (a*x_i - f_i)`` at the given
    slopes, which must be finite and ascending; O(n + m)."""
    a = np.asarray(slopes, dtype=float).ravel()
    if a.size and not np.all(np.isfinite(a)):
        raise EvaluationError("conjugate slopes must be finite")
    if a.size > 1 and np.any(np.diff(a) < 0.0):
        raise EvaluationError("conjugate slopes must be ascending")
    vals = kernels.conjugate_at(f.x, f.values, a)
    return [(float(s), float(v)) for s, v in zip(a, vals)]


def biconjugate_via_legendre(f: SampledFunction) -> ConvexSampledFunction:
    """Greatest convex minorant through two conjugate transforms.

    The first transform is sampled exactly where it bends (its breakpoint
    slopes); conjugating those samples at the original abscissae gives the
    envelope back.  Independent of :func:`convex_envelope` at code level;
    the two agree to ``ENVELOPE_REL_TOL``.
    """
    x, y = f.x, f.values
    surv, bps, fvals = kernels.conjugate_table(x, y)
    g = kernels.conjugate_at(bps, fvals, x)
    # the surviving dual lines are exactly the hull vertices
    return ConvexSampledFunction(SampledFunction(f.grid, g), surv)


def support_line_at(g: ConvexSampledFunction, x: float) -> SupportLine:
    """Affine support of the envelope touching it at (or bracketing) ``x``.

    The returned slope is the slope of the hull edge containing ``x`` and
    therefore lies between the adjacent chord slopes.
    """
    e = g.edge_of(float(x))
    slope = float(g.edge_slopes()[e])
    intercept = float(g.edge_intercepts()[e])
    return SupportLine(slope, intercept)
