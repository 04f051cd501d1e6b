"""Representations of real functions on the positive half-line.

Two function representations are used throughout the package: finite sampled
grids (``SampledFunction``) and a fixed catalog of closed-form expressions
(``AnalyticFunction``).  Grids are typically geometric so that resolution is
uniform in log-scale, which covers both the behaviour near zero and the
behaviour at infinity with the same knot budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import EvaluationError, GridError

__all__ = [
    "Grid",
    "SampledFunction",
    "AnalyticFunction",
    "CATALOG_KINDS",
    "CATALOG_DEFAULTS",
    "make_log_grid",
    "grid_union",
    "sample",
    "eval_piecewise_linear",
    "catalog_function",
    "register_custom",
    "enriched_grid",
]

# Points closer than this (relatively) are merged when grids are unioned;
# tighter spacing would make chord slopes numerically meaningless.
_MERGE_RTOL = 1e-13


@dataclass(frozen=True, eq=False)
class Grid:
    """Strictly increasing, finite, positive abscissae; at least two points."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise GridError("grid needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise GridError("grid points must be finite")
        if pts[0] <= 0.0:
            raise GridError("grid points must be positive")
        if not np.all(np.diff(pts) > 0.0):
            raise GridError("grid points must be strictly increasing")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return self.points.shape == other.points.shape and bool(
            np.all(self.points == other.points)
        )

    @property
    def x_min(self) -> float:
        return float(self.points[0])

    @property
    def x_max(self) -> float:
        return float(self.points[-1])


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Finite real values on a :class:`Grid`; the discrete stand-in for a
    function on the positive half-line."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float)
        if vals.shape != self.grid.points.shape:
            raise GridError("values length must match grid length")
        if not np.all(np.isfinite(vals)):
            raise EvaluationError("sampled values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def x(self) -> np.ndarray:
        return self.grid.points

    def with_values(self, values: np.ndarray) -> "SampledFunction":
        return SampledFunction(self.grid, values)

    def shifted(self, constant: float) -> "SampledFunction":
        return SampledFunction(self.grid, self.values + constant)


def require_same_grid(a: SampledFunction, b: SampledFunction) -> None:
    if a.grid != b.grid:
        raise GridError("operands must share an identical grid")


def make_log_grid(x_min: float, x_max: float, n: int) -> Grid:
    """Geometrically spaced grid with exact endpoints.

    Rejects non-positive bounds, ``x_min >= x_max`` and ``n < 2``.
    """
    if not (math.isfinite(x_min) and math.isfinite(x_max)):
        raise GridError("grid bounds must be finite")
    if x_min <= 0.0 or x_max <= 0.0:
        raise GridError("grid bounds must be positive")
    if x_min >= x_max:
        raise GridError("x_min must be strictly below x_max")
    if n < 2:
        raise GridError("need at least two grid points")
    pts = np.geomspace(x_min, x_max, int(n))
    pts[0] = x_min
    pts[-1] = x_max
    return Grid(pts)


def grid_union(grid: Grid, extra_points) -> Grid:
    """Union of a grid with extra abscissae, deduplicated.

    Points within relative distance 1e-13 of an existing knot are dropped
    rather than creating a near-degenerate chord.
    """
    extra = np.asarray(extra_points, dtype=float).ravel()
    if extra.size == 0:
        return grid
    if not np.all(np.isfinite(extra)) or np.any(extra <= 0.0):
        raise GridError("extra points must be finite and positive")
    merged = np.sort(np.concatenate([grid.points, extra]))
    gaps = np.diff(merged)
    keep = np.concatenate([[True], gaps > _MERGE_RTOL * merged[1:]])
    return Grid(merged[keep])


# ---------------------------------------------------------------------------
# Analytic catalog
# ---------------------------------------------------------------------------

_TWO_PI = 2.0 * math.pi


def _ex33_psi(x: np.ndarray) -> np.ndarray:
    return np.where(
        x <= 1.0,
        3.0 * x - 1.0,
        np.where(x <= 2.0, 5.0 - 3.0 * x, x * x + x - 7.0),
    )


def _recip_osc(x: np.ndarray) -> np.ndarray:
    u = 1.0 / x
    return u * u + u * np.sin(u)


def _quad_osc(x: np.ndarray) -> np.ndarray:
    return x * x + x * np.sin(x)


_EVALUATORS: dict[str, Callable[[np.ndarray, tuple], np.ndarray]] = {
    "square": lambda x, p: x * x,
    "x_minus_sqrtx": lambda x, p: x - np.sqrt(x),
    "reciprocal": lambda x, p: 1.0 / x,
    "ex31_phi": lambda x, p: np.minimum(x, 1.0) + 1.0,
    "ex31_psi": lambda x, p: x / (x + 1.0),
    "prop41_phi": lambda x, p: _recip_osc(x) + 2.0 / x,
    "prop41_psi": lambda x, p: _recip_osc(x),
    "prop42_phi": lambda x, p: _quad_osc(x) + 2.0 * x,
    "prop42_psi": lambda x, p: _quad_osc(x),
    "ex33_phi": lambda x, p: x * x + x,
    "ex33_psi": lambda x, p: _ex33_psi(x),
    "affine": lambda x, p: p[0] * x + p[1],
}

_CUSTOM: dict[str, Callable[[np.ndarray], np.ndarray]] = {}

CATALOG_KINDS: tuple[str, ...] = tuple(_EVALUATORS) + ("custom",)

# Canonical parameterless instances used by batch suites.  The affine member
# has a negative slope so that sup-norm computations over the catalog also
# exercise the infinite-norm verdict.
CATALOG_DEFAULTS: dict[str, tuple[float, ...]] = {kind: () for kind in _EVALUATORS}
CATALOG_DEFAULTS["affine"] = (-1.0, 2.0)


def register_custom(tag: str, fn: Callable[[np.ndarray], np.ndarray]) -> None:
    """Hook for user-supplied expressions, addressed as kind ``custom``."""
    _CUSTOM[tag] = fn


@dataclass(frozen=True)
class AnalyticFunction:
    """Closed-form function from the fixed catalog.

    ``kind`` selects the formula; ``params`` carries coefficients where the
    formula has any (``affine`` takes ``(a, b)``; ``custom`` takes none and
    is resolved through :func:`register_custom` by ``tag``).
    """

    kind: str
    params: tuple[float, ...] = ()
    tag: str = ""

    def __post_init__(self) -> None:
        if self.kind == "custom":
            if self.tag not in _CUSTOM:
                raise EvaluationError(f"unknown custom function tag {self.tag!r}")
            return
        if self.kind not in _EVALUATORS:
            raise EvaluationError(f"unknown catalog kind {self.kind!r}")
        if self.kind == "affine" and len(self.params) != 2:
            raise EvaluationError("affine needs parameters (a, b)")

    def __call__(self, x) -> np.ndarray:
        return self.evaluate(x)

    def evaluate(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        if self.kind == "custom":
            return np.asarray(_CUSTOM[self.tag](arr), dtype=float)
        return _EVALUATORS[self.kind](arr, self.params)

    def critical_points(self, lo: float, hi: float) -> np.ndarray:
        """Abscissae that a grid must contain to resolve kinks and the
        touch/midpoint structure of the oscillatory members."""
        if self.kind in ("prop41_phi", "prop41_psi"):
            # extrema of sin(1/x): 1/x = pi/2 + k*pi
            u_lo = max(1.0 / hi, math.pi / 2.0)
            u_hi = 1.0 / lo
            ks = np.arange(
                math.ceil((u_lo - math.pi / 2.0) / math.pi),
                math.floor((u_hi - math.pi / 2.0) / math.pi) + 1,
            )
            pts = 1.0 / (math.pi / 2.0 + ks * math.pi)
        elif self.kind in ("prop42_phi", "prop42_psi"):
            lo_eff = max(lo, math.pi / 2.0)
            ks = np.arange(
                math.ceil((lo_eff - math.pi / 2.0) / math.pi),
                math.floor((hi - math.pi / 2.0) / math.pi) + 1,
            )
            pts = math.pi / 2.0 + ks * math.pi
        elif self.kind == "ex31_phi":
            pts = np.array([1.0])
        elif self.kind == "ex33_psi":
            pts = np.array([1.0, 2.0])
        else:
            pts = np.empty(0)
        return pts[(pts >= lo) & (pts <= hi)]

    def oscillation_points(
        self, lo: float, hi: float, per_period: int = 32, cap: int = 200_000
    ) -> np.ndarray:
        """Uniform fill of each oscillation period; empty for smooth kinds.

        The fill is capped; for the reciprocal-oscillation members the cap is
        spent on the largest abscissae, where periods are resolvable at all.
        """
        if self.kind in ("prop41_phi", "prop41_psi"):
            step = _TWO_PI / per_period
            u_hi = 1.0 / lo
            u_lo = 1.0 / hi
            count = (u_hi - u_lo) / step
            if count > cap:
                u_hi = u_lo + cap * step
            return 1.0 / np.arange(u_lo, u_hi, step)[1:]
        if self.kind in ("prop42_phi", "prop42_psi"):
            step = _TWO_PI / per_period
            count = (hi - lo) / step
            if count > cap:
                lo = hi - cap * step
            return np.arange(lo, hi, step)[1:]
        return np.empty(0)


def catalog_function(name: str, *params: float) -> AnalyticFunction:
    """Catalog factory by snake_case kind name."""
    if name == "affine" and not params:
        params = CATALOG_DEFAULTS["affine"]
    return AnalyticFunction(name, tuple(float(p) for p in params))


def sample(f: AnalyticFunction, grid: Grid) -> SampledFunction:
    """Evaluate ``f`` at every knot; non-finite results raise and name the
    offending abscissa."""
    vals = f.evaluate(grid.points)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        x_bad = grid.points[bad][0]
        raise EvaluationError(f"evaluation of {f.kind!r} overflows at x={x_bad!r}")
    return SampledFunction(grid, vals)


def enriched_grid(
    f: AnalyticFunction,
    x_min: float,
    x_max: float,
    n: int,
    per_period: int = 32,
) -> Grid:
    """Log grid unioned with the catalog function's critical points and an
    oscillation-resolving fill.  Plain log grids alias the oscillatory
    members, so their touch points must be present explicitly."""
    base = make_log_grid(x_min, x_max, n)
    extra = np.concatenate(
        [
            f.critical_points(x_min, x_max),
            f.oscillation_points(x_min, x_max, per_period=per_period),
        ]
    )
    return grid_union(base, extra)


def eval_piecewise_linear(f: SampledFunction, x) -> float | np.ndarray:
    """Piecewise-linear interpolation, exact at knots.  Out-of-range queries
    are an error: extrapolation would fabricate boundary behaviour."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < f.x[0]) or np.any(arr > f.x[-1]):
        raise EvaluationError(
            f"query outside the sampled range [{f.x[0]!r}, {f.x[-1]!r}]"
        )
    out = np.interp(arr, f.x, f.values)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out
