"""Geometry of the Poincare half-space model.

Points are pairs (x, y) with x in R^{n-1} and height y > 0, carrying the
metric ds^2 = (|dx|^2 + dy^2) / y^2 of constant curvature -1.  The origin is
O_n = (0, ..., 0, 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import DimensionMismatchError

__all__ = [
    "HalfSpacePoint",
    "RadiusTime",
    "check_dimension",
    "hyperbolic_distance",
    "origin",
    "radial_drift",
    "surface_area_coeff",
]

# Below this radius the coth drift switches to its Laurent expansion
# 1/eta + eta/3; the truncation error there is < 1e-12.
_DRIFT_SERIES_CUTOFF = 1e-4

# Slack for clamping acosh arguments that land just below 1 through roundoff.
_ACOSH_CLAMP = 1e-12


def check_dimension(n) -> int:
    """Validate an ambient dimension (integer, n >= 2) and return it."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValueError(f"dimension must be an integer, got {n!r}")
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    return int(n)


@dataclass(frozen=True)
class HalfSpacePoint:
    """A point of the half-space model: horizontal part x, height y > 0."""

    x: tuple[float, ...]
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "y", float(self.y))
        if not self.y > 0.0 or not math.isfinite(self.y):
            raise ValueError(f"height coordinate must be positive, got {self.y}")
        if not all(math.isfinite(v) for v in self.x):
            raise ValueError("horizontal coordinates must be finite")

    @property
    def n(self) -> int:
        """Ambient dimension implied by the coordinate layout."""
        return len(self.x) + 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.x + (self.y,), dtype=float)


def origin(n) -> HalfSpacePoint:
    """The base point O_n = (0, ..., 0, 1)."""
    n = check_dimension(n)
    return HalfSpacePoint(x=(0.0,) * (n - 1), y=1.0)


@dataclass(frozen=True)
class RadiusTime:
    """A (radius, time) evaluation point with eta >= 0 and t > 0."""

    eta: float
    t: float

    def __post_init__(self):
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "t", float(self.t))
        if not self.eta >= 0.0:
            raise ValueError(f"radius must be >= 0, got {self.eta}")
        if not self.t > 0.0:
            raise ValueError(f"time must be > 0, got {self.t}")


def _stable_acosh(v: float) -> float:
    """acosh(1 + v) computed from the excess v = u - 1 without cancellation."""
    if v < 0.0:
        if v < -_ACOSH_CLAMP:
            raise ValueError(f"acosh argument below 1 by {-v:.3e}")
        return 0.0
    return math.log1p(v + math.sqrt(v * (v + 2.0)))


def hyperbolic_distance(z: HalfSpacePoint, zp: HalfSpacePoint, n=None) -> float:
    """Hyperbolic distance between two half-space points.

    Uses cosh d = (|x - x'|^2 + y^2 + y'^2) / (2 y y'), rewritten through the
    excess cosh d - 1 = (|x - x'|^2 + (y - y')^2) / (2 y y') so that nearby
    points do not lose precision to cancellation.
    """
    if n is not None:
        n = check_dimension(n)
        if z.n != n or zp.n != n:
            raise DimensionMismatchError(
                f"points have dimensions {z.n} and {zp.n}, expected {n}"
            )
    elif z.n != zp.n:
        raise DimensionMismatchError(
            f"points have dimensions {z.n} and {zp.n}"
        )
    dx2 = sum((a - b) ** 2 for a, b in zip(z.x, zp.x))
    v = (dx2 + (z.y - zp.y) ** 2) / (2.0 * z.y * zp.y)
    return _stable_acosh(v)


def surface_area_coeff(n) -> float:
    """Surface area 2 pi^{n/2} / Gamma(n/2) of the unit sphere S^{n-1}.

    Evaluated through log-gamma so that large n stays stable.
    """
    n = check_dimension(n)
    return math.exp(math.log(2.0) + 0.5 * n * math.log(math.pi) - gammaln(0.5 * n))


def radial_drift(eta: float, n) -> float:
    """Radial drift ((n-1)/2) coth(eta) of the unit-diffusion radial process.

    This is the drift paired with unit quadratic variation <dD^2> = dt.  The
    kernel-normalized process used by the samplers runs at twice this clock;
    see ``hyperbm.sampling``.  For eta below 1e-4 the expansion
    coth(eta) = 1/eta + eta/3 + O(eta^3) avoids amplifying roundoff.
    """
    n = check_dimension(n)
    eta = float(eta)
    if not eta > 0.0:
        raise ValueError(f"radius must be > 0, got {eta}")
    half = 0.5 * (n - 1)
    if eta < _DRIFT_SERIES_CUTOFF:
        return half * (1.0 / eta + eta / 3.0)
    return half / math.tanh(eta)
