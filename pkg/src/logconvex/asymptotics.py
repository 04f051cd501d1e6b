"""Estimated asymptotic behaviour of sampled functions.

True limits at 0+ and +infinity are undecidable from finite data, so every
quantity here is an *estimate relative to declared windows*: a head/tail
fraction of the grid (in log scale) split into sub-windows.  A limit of
+infinity is certified when the sub-window minima either clear a divergence
threshold or grow monotonically with non-shrinking increments; the mirrored
test certifies -infinity.  Each verdict records the windows it used.

Growth classes partition the functions that admit an affine minorant:
super-linear growth, linear growth with unbounded-below linear residual, and
linear growth with bounded residual.  For discretely convex data the linear
growth rate equals the last chord slope and the residual dichotomy is read
off the non-increasing support-intercept sequence (``psi_hat``), both of
which converge much faster than windowed ratio minima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .envelope import ConvexSampledFunction, convex_envelope, is_discretely_convex
from .errors import EvaluationError, GridError, WindowError
from .funcspace import SampledFunction

__all__ = [
    "PhiClass",
    "AsymptoticConfig",
    "WindowInfo",
    "AsymptoticProfile",
    "OneSidedDerivatives",
    "ClassInvarianceReport",
    "BoundaryInvarianceReport",
    "TailConsistencyReport",
    "estimate_a_hat",
    "estimate_residual",
    "estimate_head_liminf",
    "classify",
    "one_sided_derivatives",
    "psi_hat",
    "check_class_invariance",
    "lemma41_check",
    "psi_hat_tail_consistency",
]


class PhiClass(Enum):
    """Growth class of a function admitting an affine minorant."""

    PHI1 = "Phi1"
    PHI2 = "Phi2"
    PHI3 = "Phi3"
    NOT_PHI = "NotPhi"


@dataclass(frozen=True)
class AsymptoticConfig:
    """Window geometry and thresholds for asymptotic estimates."""

    tail_fraction: float = 0.25
    head_fraction: float = 0.25
    subwindows: int = 3
    min_window_knots: int = 8
    divergence_threshold: float = 1e6

    def __post_init__(self) -> None:
        if not 0.0 < self.tail_fraction < 1.0:
            raise WindowError("tail_fraction must be in (0, 1)")
        if not 0.0 < self.head_fraction < 1.0:
            raise WindowError("head_fraction must be in (0, 1)")
        if self.subwindows < 3:
            raise WindowError("need at least three sub-windows")
        if self.divergence_threshold <= 0.0:
            raise WindowError("divergence threshold must be positive")


@dataclass(frozen=True)
class WindowInfo:
    """Windows a verdict was computed on."""

    head_lo: float
    head_hi: float
    head_knots: int
    tail_lo: float
    tail_hi: float
    tail_knots: int
    subwindows: int


@dataclass(frozen=True)
class AsymptoticProfile:
    """Estimated growth profile; all values are window-relative estimates."""

    a_hat: float
    residual_liminf: float | None
    limit_at_zero: float
    phi_member: bool
    phi_class: PhiClass
    convex: bool
    windows: WindowInfo

    def __post_init__(self) -> None:
        if (self.phi_class is PhiClass.PHI1) != math.isinf(self.a_hat):
            raise EvaluationError("super-linear class must carry an infinite rate")
        if self.phi_class is PhiClass.PHI2 and self.residual_liminf != -math.inf:
            raise EvaluationError("unbounded-residual class requires -inf residual")
        if self.phi_class is PhiClass.PHI3 and (
            self.residual_liminf is None or not math.isfinite(self.residual_liminf)
        ):
            raise EvaluationError("bounded-residual class requires a finite residual")
        if self.phi_class is PhiClass.NOT_PHI and self.phi_member:
            raise EvaluationError("non-members cannot be flagged as members")


@dataclass(frozen=True)
class OneSidedDerivatives:
    """Chord slopes on either side of a knot of a convex sampled function."""

    left: float
    right: float
    at: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.left) and math.isfinite(self.right)):
            raise EvaluationError("one-sided slopes must be finite")
        if self.left > self.right:
            raise EvaluationError("left slope may not exceed right slope")


# ---------------------------------------------------------------------------
# window machinery
# ---------------------------------------------------------------------------


def _log_span(x: np.ndarray) -> tuple[float, float, float]:
    lo, hi = math.log(x[0]), math.log(x[-1])
    return lo, hi, hi - lo


def _tail_slice(x: np.ndarray, fraction: float) -> np.ndarray:
    lo, hi, span = _log_span(x)
    cut = math.exp(hi - fraction * span)
    return np.nonzero(x >= cut)[0]


def _head_slice(x: np.ndarray, fraction: float) -> np.ndarray:
    lo, hi, span = _log_span(x)
    cut = math.exp(lo + fraction * span)
    return np.nonzero(x <= cut)[0]


def _subwindow_minima(
    x: np.ndarray, vals: np.ndarray, k: int, toward_zero: bool
) -> np.ndarray:
    """Minimum of ``vals`` over ``k`` equal log-width pieces of ``x``'s span,
    ordered so the piece nearest the limit end comes last."""
    edges = np.geomspace(x[0], x[-1], k + 1)
    pos = np.searchsorted(x, edges)
    pos[0], pos[-1] = 0, x.size
    minima = []
    for j in range(k):
        seg = vals[pos[j] : max(pos[j + 1], pos[j] + 1)]
        if seg.size == 0:
            raise WindowError("sub-window contains no knots")
        minima.append(float(np.min(seg)))
    out = np.asarray(minima)
    return out[::-1] if toward_zero else out


def _certifies_growth(minima: np.ndarray) -> bool:
    """Monotone growth with non-shrinking increments and a non-trivial total
    rise; the finite-sample proxy for divergence to +infinity."""
    if minima.size < 3:
        return False
    d = np.diff(minima)
    if not np.all(d > 0.0):
        return False
    if not np.all(d[1:] >= d[:-1] * (1.0 - 1e-9) - 1e-12):
        return False
    return bool(minima[-1] - minima[0] > 1e-6 * (1.0 + abs(minima[-1])))


def _certifies_fall(minima: np.ndarray) -> bool:
    return _certifies_growth(-np.asarray(minima))


def _last_chord_slope(f: SampledFunction) -> float:
    x, y = f.x, f.values
    return float((y[-1] - y[-2]) / (x[-1] - x[-2]))


def _tail_ratio_data(
    f: SampledFunction, fraction: float, cfg: AsymptoticConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    idx = _tail_slice(f.x, fraction)
    if idx.size < cfg.min_window_knots:
        raise WindowError(
            f"tail window holds {idx.size} knots, need {cfg.min_window_knots}"
        )
    xs = f.x[idx]
    ratios = f.values[idx] / xs
    minima = _subwindow_minima(xs, ratios, cfg.subwindows, toward_zero=False)
    return xs, ratios, minima


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def estimate_a_hat(
    f: SampledFunction,
    tail_fraction: float = 0.25,
    config: AsymptoticConfig | None = None,
) -> float:
    """Estimated limit inferior of ``f(x)/x`` at the tail end.

    Returns ``math.inf`` when the windowed ratio minima clear the divergence
    threshold or grow with non-shrinking increments.  For discretely convex
    data the estimate is the last chord slope, the supremum of minorant
    slopes; otherwise it is the windowed ratio minimum.
    """
    cfg = config or AsymptoticConfig()
    _, ratios, minima = _tail_ratio_data(f, tail_fraction, cfg)
    if float(np.min(ratios)) > cfg.divergence_threshold or _certifies_growth(minima):
        return math.inf
    if is_discretely_convex(f):
        return _last_chord_slope(f)
    return float(np.min(ratios))


def estimate_residual(
    f: SampledFunction,
    a: float,
    tail_fraction: float = 0.25,
    config: AsymptoticConfig | None = None,
) -> float:
    """Estimated limit inferior of ``f(x) - a*x`` at the tail end; ``-inf``
    when the windowed minima fall without bound."""
    if not math.isfinite(a):
        raise EvaluationError("residual slope must be finite")
    cfg = config or AsymptoticConfig()
    idx = _tail_slice(f.x, tail_fraction)
    if idx.size < cfg.min_window_knots:
        raise WindowError(
            f"tail window holds {idx.size} knots, need {cfg.min_window_knots}"
        )
    xs = f.x[idx]
    resid = f.values[idx] - a * xs
    minima = _subwindow_minima(xs, resid, cfg.subwindows, toward_zero=False)
    if float(np.min(resid)) < -cfg.divergence_threshold or _certifies_fall(minima):
        return -math.inf
    return float(np.min(resid))


def estimate_head_liminf(
    f: SampledFunction,
    head_fraction: float = 0.25,
    config: AsymptoticConfig | None = None,
) -> float:
    """Estimated limit inferior at the 0+ end; ``math.inf`` when certified
    divergent there."""
    cfg = config or AsymptoticConfig()
    idx = _head_slice(f.x, head_fraction)
    if idx.size < cfg.min_window_knots:
        raise WindowError(
            f"head window holds {idx.size} knots, need {cfg.min_window_knots}"
        )
    xs = f.x[idx]
    vals = f.values[idx]
    minima = _subwindow_minima(xs, vals, cfg.subwindows, toward_zero=True)
    if float(np.min(vals)) > cfg.divergence_threshold or _certifies_growth(minima):
        return math.inf
    return float(np.min(vals))


def _left_chord_intercepts(f: SampledFunction) -> np.ndarray:
    """``f(x) - s(x) x`` with ``s`` the left chord slope (right chord at the
    first knot).  For convex data this cancels the linear trend exactly, so
    its tail boundedness decides the residual dichotomy without needing a
    rate estimate."""
    x, y = f.x, f.values
    s = np.diff(y) / np.diff(x)
    slopes = np.concatenate([s[:1], s])
    return y - slopes * x


def _intercept_tail_bounded(f: SampledFunction, cfg: AsymptoticConfig) -> bool:
    vals = _left_chord_intercepts(f)
    idx = _tail_slice(f.x, cfg.tail_fraction)
    if idx.size < cfg.min_window_knots:
        idx = np.arange(max(f.x.size - cfg.min_window_knots, 0), f.x.size)
    minima = _subwindow_minima(
        f.x[idx], vals[idx], cfg.subwindows, toward_zero=False
    )
    if float(np.min(vals[idx])) < -cfg.divergence_threshold:
        return False
    return not _certifies_fall(minima)


def classify(
    f: SampledFunction, config: AsymptoticConfig | None = None
) -> AsymptoticProfile:
    """Estimated growth class with the windows that produced it.

    Membership (existence of an affine minorant) fails only when the tail
    ratio minima are certified unbounded below at super-linear rate; finite
    windows cannot refute membership otherwise.
    """
    cfg = config or AsymptoticConfig()
    xs, ratios, minima = _tail_ratio_data(f, cfg.tail_fraction, cfg)
    head_idx = _head_slice(f.x, cfg.head_fraction)
    windows = WindowInfo(
        head_lo=float(f.x[head_idx[0]]) if head_idx.size else float(f.x[0]),
        head_hi=float(f.x[head_idx[-1]]) if head_idx.size else float(f.x[0]),
        head_knots=int(head_idx.size),
        tail_lo=float(xs[0]),
        tail_hi=float(xs[-1]),
        tail_knots=int(xs.size),
        subwindows=cfg.subwindows,
    )
    limit_at_zero = estimate_head_liminf(f, cfg.head_fraction, cfg)

    not_phi = float(np.min(ratios)) < -cfg.divergence_threshold or _certifies_fall(
        minima
    )
    if not_phi:
        return AsymptoticProfile(
            a_hat=float(np.min(ratios)),
            residual_liminf=None,
            limit_at_zero=limit_at_zero,
            phi_member=False,
            phi_class=PhiClass.NOT_PHI,
            convex=False,
            windows=windows,
        )

    divergent = float(np.min(ratios)) > cfg.divergence_threshold or _certifies_growth(
        minima
    )
    if divergent:
        return AsymptoticProfile(
            a_hat=math.inf,
            residual_liminf=None,
            limit_at_zero=limit_at_zero,
            phi_member=True,
            phi_class=PhiClass.PHI1,
            convex=is_discretely_convex(f),
            windows=windows,
        )

    convex = is_discretely_convex(f)
    if convex:
        a_hat = _last_chord_slope(f)
        basis = f
    else:
        a_hat = float(np.min(ratios))
        # the residual dichotomy transfers to the envelope, whose linear
        # trend is cancelled exactly by the chord intercepts
        basis = convex_envelope(f).function
    if _intercept_tail_bounded(basis, cfg):
        phi_class = PhiClass.PHI3
        tail = _tail_slice(f.x, cfg.tail_fraction)
        residual = float(np.min(f.values[tail] - a_hat * f.x[tail]))
    else:
        phi_class = PhiClass.PHI2
        residual = -math.inf
    return AsymptoticProfile(
        a_hat=a_hat,
        residual_liminf=residual,
        limit_at_zero=limit_at_zero,
        phi_member=True,
        phi_class=phi_class,
        convex=convex,
        windows=windows,
    )


def one_sided_derivatives(g: ConvexSampledFunction, i: int) -> OneSidedDerivatives:
    """Left and right chord slopes at an interior knot of a convex function.

    Both slopes are read from the hull edge structure, so knots interior to
    an edge report identical sides and vertices report the adjacent edge
    slopes.
    """
    n = g.x.size
    if not 0 < i < n - 1:
        raise EvaluationError("one-sided derivatives need an interior knot")
    slopes = g.edge_slopes()
    vidx = g.vertex_indices
    p = int(np.searchsorted(vidx, i, side="left"))
    left_edge = p - 1
    right_edge = p if vidx[p] == i else p - 1
    return OneSidedDerivatives(
        left=float(slopes[left_edge]), right=float(slopes[right_edge]), at=i
    )


def psi_hat(g: ConvexSampledFunction) -> SampledFunction:
    """Support intercepts ``g(x) - g'(x-) x`` along the grid, non-increasing.

    Each knot reports the intercept of the hull edge its left chord lies on,
    computed once per edge, so knots sharing an edge share the value exactly.
    The first knot has no left chord and uses its right edge instead.
    """
    if g.x.size < 3:
        raise GridError("support intercepts need at least three knots")
    intercepts = g.edge_intercepts()
    knots = np.arange(g.x.size)
    pos = np.searchsorted(g.vertex_indices, knots, side="left")
    edge = np.maximum(pos - 1, 0)
    return SampledFunction(g.grid, intercepts[edge])


@dataclass(frozen=True)
class ClassInvarianceReport:
    """Growth classes of a function and of its convex envelope."""

    profile_raw: AsymptoticProfile
    profile_envelope: AsymptoticProfile

    @property
    def agree(self) -> bool:
        return self.profile_raw.phi_class is self.profile_envelope.phi_class


def check_class_invariance(
    f: SampledFunction, config: AsymptoticConfig | None = None
) -> ClassInvarianceReport:
    """Classify ``f`` and its convex envelope with identical windows; the
    classes must coincide for the estimates to be trustworthy."""
    cfg = config or AsymptoticConfig()
    return ClassInvarianceReport(
        profile_raw=classify(f, cfg),
        profile_envelope=classify(convex_envelope(f).function, cfg),
    )


def _rel_delta(a: float, b: float) -> float:
    if math.isinf(a) and math.isinf(b) and (a > 0) == (b > 0):
        return 0.0
    if math.isinf(a) or math.isinf(b):
        return math.inf
    return abs(a - b) / (1.0 + max(abs(a), abs(b)))


@dataclass(frozen=True)
class BoundaryInvarianceReport:
    """Agreement of boundary estimates between a function and its envelope:
    the head liminf and the tail growth rate survive taking the envelope."""

    head_raw: float
    head_envelope: float
    head_delta: float
    a_hat_raw: float
    a_hat_envelope: float
    a_hat_delta: float
    tol: float

    @property
    def head_agrees(self) -> bool:
        return self.head_delta <= self.tol

    @property
    def a_hat_agrees(self) -> bool:
        return self.a_hat_delta <= self.tol

    @property
    def agree(self) -> bool:
        return self.head_agrees and self.a_hat_agrees


def lemma41_check(
    f: SampledFunction,
    config: AsymptoticConfig | None = None,
    tol: float = 1e-3,
) -> BoundaryInvarianceReport:
    """Compare head liminf and tail rate estimates of ``f`` against those of
    its envelope; deltas are relative to ``1 + magnitude``."""
    cfg = config or AsymptoticConfig()
    env = convex_envelope(f).function
    head_raw = estimate_head_liminf(f, cfg.head_fraction, cfg)
    head_env = estimate_head_liminf(env, cfg.head_fraction, cfg)
    a_raw = estimate_a_hat(f, cfg.tail_fraction, cfg)
    a_env = estimate_a_hat(env, cfg.tail_fraction, cfg)
    return BoundaryInvarianceReport(
        head_raw=head_raw,
        head_envelope=head_env,
        head_delta=_rel_delta(head_raw, head_env),
        a_hat_raw=a_raw,
        a_hat_envelope=a_env,
        a_hat_delta=_rel_delta(a_raw, a_env),
        tol=tol,
    )


@dataclass(frozen=True)
class TailConsistencyReport:
    """Cross-check between the residual dichotomy and the boundedness of the
    support-intercept tail of the envelope."""

    phi_class: PhiClass
    psi_hat_bounded: bool

    @property
    def consistent(self) -> bool:
        if self.phi_class is PhiClass.PHI2:
            return not self.psi_hat_bounded
        if self.phi_class is PhiClass.PHI3:
            return True
        return True


def psi_hat_tail_consistency(
    f: SampledFunction, config: AsymptoticConfig | None = None
) -> TailConsistencyReport:
    """For the envelope of ``f``: a bounded support-intercept tail forbids
    the unbounded-residual class, and that class forces the tail to fall."""
    cfg = config or AsymptoticConfig()
    g = convex_envelope(f)
    profile = classify(g.function, cfg)
    ph = psi_hat(g)
    idx = _tail_slice(ph.x, cfg.tail_fraction)
    if idx.size < cfg.min_window_knots:
        idx = np.arange(max(ph.x.size - cfg.min_window_knots, 0), ph.x.size)
    minima = _subwindow_minima(
        ph.x[idx], ph.values[idx], cfg.subwindows, toward_zero=False
    )
    bounded = float(np.min(ph.values[idx])) >= -cfg.divergence_threshold and (
        not _certifies_fall(minima)
    )
    return TailConsistencyReport(phi_class=profile.phi_class, psi_hat_bounded=bounded)
