"""Power-law fits by least squares in log10-log10 space."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateAbscissaError, InsufficientDataError, InvalidParameterError

DEFAULT_FIT_MIN_N = 10


@dataclass(frozen=True)
class PowerLawFit:
    """Result of fitting ``y = 10**log_amplitude * n**exponent``."""

    exponent: float
    log_amplitude: float
    exponent_se: float
    r_squared: float
    n_points: int
    dropped_points: int
    fit_window_min_n: int = 1

    def to_dict(self) -> dict:
        return asdict(self)

    def predict(self, n):
        return 10.0 ** self.log_amplitude * np.asarray(n, dtype=float) ** self.exponent


def fit_power_law(points: Iterable[Sequence[float]], min_n: int = 1,
                  weights: Sequence[float] | None = None) -> PowerLawFit:
    """Fit ``log10 y = a + b log10 n`` to ``(n, y)`` pairs.

    Points with ``n < min_n`` are outside the window and ignored. Points with
    ``y == 0`` have no logarithm; they are skipped and counted in
    ``dropped_points``. The slope standard error is the textbook
    ``sqrt(SSR / (m - 2) / Sxx)``, taken as 0 when only two points remain.

    ``weights``, if given, are per-point inverse variances of ``log10 y`` and
    turn the fit into weighted least squares.
    """
    pts = [tuple(p) for p in points]
    if weights is not None:
        weights = list(weights)
        if len(weights) != len(pts):
            raise InvalidParameterError("need exactly one weight per point")
    else:
        weights = [1.0] * len(pts)

    xs, ys, ws = [], [], []
    dropped = 0
    for (n, y), w in zip(pts, weights):
        if n <= 0:
            raise InvalidParameterError(f"abscissa must be positive, got {n}")
        if y < 0 or not math.isfinite(y):
            raise InvalidParameterError(f"ordinate must be finite and >= 0, got {y}")
        if n < min_n:
            continue
        if y == 0:
            dropped += 1
            continue
        if not (w > 0 and math.isfinite(w)):
            raise InvalidParameterError(f"weights must be positive and finite, got {w}")
        xs.append(math.log10(n))
        ys.append(math.log10(y))
        ws.append(w)

    m = len(xs)
    if m < 2:
        raise InsufficientDataError(f"need at least 2 points with y > 0, have {m}")
    x = np.array(xs)
    y = np.array(ys)
    w = np.array(ws)

    wsum = w.sum()
    xbar = (w * x).sum() / wsum
    ybar = (w * y).sum() / wsum
    dx = x - xbar
    dy = y - ybar
    sxx = (w * dx * dx).sum()
    # spread below rounding noise of the logs means every n was the same
    if sxx <= 1e-24 * max(1.0, (w * x * x).sum()):
        raise DegenerateAbscissaError("all abscissae are equal")
    slope = (w * dx * dy).sum() / sxx
    intercept = ybar - slope * xbar

    resid = dy - slope * dx
    ssr = float((w * resid * resid).sum())
    sst = float((w * dy * dy).sum())
    se = math.sqrt(ssr / (m - 2) / sxx) if m > 2 else 0.0
    if sst > 1e-24 * max(1.0, float((w * y * y).sum())):
        r2 = min(1.0, max(0.0, 1.0 - ssr / sst))
    else:
        r2 = 1.0  # constant y up to rounding, matched exactly by a flat line

    return PowerLawFit(
        exponent=float(slope),
        log_amplitude=float(intercept),
        exponent_se=se,
        r_squared=r2,
        n_points=m,
        dropped_points=dropped,
        fit_window_min_n=int(min_n),
    )


def beta_from_alpha(alpha_fit: PowerLawFit) -> float:
    """Exponent of R/N given the exponent of R: one less."""
    return alpha_fit.exponent - 1.0
