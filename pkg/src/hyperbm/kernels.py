"""Heat kernels on the half-space, their global bounds, and radial densities.

The kernels are normalized so that the radial law of the process started at
the origin has density

    p_n(eta, t) = (2 pi^{n/2} / Gamma(n/2)) k_n(eta, t) sinh^{n-1}(eta)

with respect to d(eta) on (0, inf).  On this clock the radial Gaussian factor
is exp(-(eta - (n-1)t)^2 / (4t)): speed n-1, quadratic variation 2t.

Exact evaluation exists for n = 3 (closed form) and n = 2 (one quadrature);
for every n the pair (h_n, g_n) provides two-sided envelopes with dimension
dependent constants, estimated empirically by ``sandwich_scan``.

Everything is computed in log space and exponentiated once, so radii up to
several hundred and times in [1e-2, 1e2] neither underflow nor overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad

from .errors import QuadratureError, UnsupportedExactModeError
from .geometry import check_dimension, surface_area_coeff

__all__ = [
    "KernelQuery",
    "QuadratureConfig",
    "SandwichReport",
    "density_envelope",
    "g_bound",
    "h_bound",
    "heat_kernel",
    "k2",
    "k2_with_error",
    "k3",
    "log_g_bound",
    "log_h_bound",
    "log_k2",
    "log_k3",
    "log_radial_density",
    "log_sinh",
    "normalization_integral",
    "radial_cdf_interpolator",
    "radial_density",
    "sandwich_scan",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation policy for the kernel quadratures."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    upper_truncation_sigma: float = 12.0

    def __post_init__(self):
        if not (0.0 < self.abs_tol < 1.0 and 0.0 < self.rel_tol < 1.0):
            raise ValueError("abs_tol and rel_tol must lie in (0, 1)")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be >= 8")
        if not self.upper_truncation_sigma > 0.0:
            raise ValueError("upper_truncation_sigma must be > 0")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class KernelQuery:
    """A (dimension, radius, time) evaluation triple."""

    n: int
    eta: float
    t: float

    def __post_init__(self):
        check_dimension(self.n)
        if not self.eta >= 0.0:
            raise ValueError(f"radius must be >= 0, got {self.eta}")
        if not self.t > 0.0:
            raise ValueError(f"time must be > 0, got {self.t}")


def log_sinh(x: float) -> float:
    """log(sinh x) without overflow for large x; -inf at x = 0."""
    if x == 0.0:
        return -math.inf
    return x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))


def _validate(eta, t):
    if not eta >= 0.0:
        raise ValueError(f"radius must be >= 0, got {eta}")
    if not t > 0.0:
        raise ValueError(f"time must be > 0, got {t}")


# ---------------------------------------------------------------------------
# exact kernels
# ---------------------------------------------------------------------------

def log_k3(eta: float, t: float) -> float:
    """log of the closed-form n=3 kernel e^{-t} eta e^{-eta^2/4t} / (8 (pi t)^{3/2} sinh eta).

    At eta = 0 the removable singularity eta/sinh(eta) -> 1 is taken.
    """
    _validate(eta, t)
    base = -t - 1.5 * math.log(math.pi * t) - 3.0 * math.log(2.0)
    if eta == 0.0:
        return base
    return base + math.log(eta) - eta * eta / (4.0 * t) - log_sinh(eta)


def k3(eta: float, t: float) -> float:
    return math.exp(log_k3(eta, t))


def _k2_substituted_integral(eta: float, t: float, cfg: QuadratureConfig):
    """Integral over s of the phi = eta + s^2 substituted k2 integrand.

    The scaled integrand has the Gaussian peak and the factor e^{-eta/2}
    removed, so its value is O(1):

        2 s (eta + s^2) exp(-s^2 (2 eta + s^2) / 4t)
            / sqrt((expm1(s^2) + e^{-2 eta} expm1(-s^2)) / 2)

    The Jacobian 2s cancels the inverse-square-root vanishing of the
    denominator at s = 0, which is what lets plain adaptive quadrature
    converge.
    """
    em2e = math.exp(-2.0 * eta)
    phi_max = max(eta, t) + cfg.upper_truncation_sigma * math.sqrt(2.0 * t)
    s_max = math.sqrt(phi_max - eta)

    def integrand(s):
        s2 = s * s
        expo = -s2 * (2.0 * eta + s2) / (4.0 * t)
        d = math.expm1(s2) + em2e * math.expm1(-s2)
        if d <= 0.0:
            return 0.0
        return 2.0 * s * (eta + s2) * math.exp(expo) / math.sqrt(0.5 * d)

    res = quad(integrand, 0.0, s_max, limit=cfg.max_subdivisions,
               epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, full_output=1)
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > max(cfg.abs_tol, cfg.rel_tol * abs(value)):
        raise QuadratureError(
            f"k2 quadrature did not converge at eta={eta}, t={t}: {res[3]}",
            partial_estimate=value, error_estimate=abserr)
    return value, abserr


def log_k2(eta: float, t: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """log k_2(eta, t) by adaptive quadrature after the phi = eta + s^2 substitution."""
    _validate(eta, t)
    value, _ = _k2_substituted_integral(eta, t, cfg)
    return (-t / 4.0 - 2.5 * math.log(2.0) - 1.5 * math.log(math.pi * t)
            - eta * eta / (4.0 * t) - 0.5 * eta + math.log(value))


def k2_with_error(eta: float, t: float,
                  cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> tuple[float, float]:
    """k_2 value together with the propagated quadrature error estimate."""
    _validate(eta, t)
    value, abserr = _k2_substituted_integral(eta, t, cfg)
    scale = math.exp(-t / 4.0 - 2.5 * math.log(2.0) - 1.5 * math.log(math.pi * t)
                     - eta * eta / (4.0 * t) - 0.5 * eta)
    return scale * value, scale * abserr


def k2(eta: float, t: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return k2_with_error(eta, t, cfg)[0]


def heat_kernel(n, eta: float, t: float,
                cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Exact kernel k_n for n in {2, 3}."""
    n = check_dimension(n)
    if n == 2:
        return k2(eta, t, cfg)
    if n == 3:
        return k3(eta, t)
    raise UnsupportedExactModeError(
        f"no exact kernel for n={n}; use density_envelope for certified bounds")


def _log_heat_kernel(n, eta, t, cfg):
    if n == 2:
        return log_k2(eta, t, cfg)
    if n == 3:
        return log_k3(eta, t)
    raise UnsupportedExactModeError(
        f"no exact kernel for n={n}; use density_envelope for certified bounds")


# ---------------------------------------------------------------------------
# global bounds
# ---------------------------------------------------------------------------

def log_h_bound(n, eta: float, t: float) -> float:
    """log of t^{-n/2} e^{-(n-1)^2 t/4 - (n-1) eta/2 - eta^2/4t} (1+eta+t)^{(n-3)/2} (1+eta)."""
    n = check_dimension(n)
    _validate(eta, t)
    return (-0.5 * n * math.log(t)
            - (n - 1) ** 2 * t / 4.0
            - (n - 1) * eta / 2.0
            - eta * eta / (4.0 * t)
            + 0.5 * (n - 3) * math.log1p(eta + t)
            + math.log1p(eta))


def h_bound(n, eta: float, t: float) -> float:
    return math.exp(log_h_bound(n, eta, t))


def log_g_bound(n, eta: float, t: float) -> float:
    """log of the centered-Gaussian envelope for sinh^{n-1} eta * k_n; -inf at eta = 0."""
    n = check_dimension(n)
    _validate(eta, t)
    if eta == 0.0:
        return -math.inf
    return (-0.5 * n * math.log(t)
            + (n - 1) * (math.log(eta) - math.log1p(eta))
            - (eta - (n - 1) * t) ** 2 / (4.0 * t)
            + 0.5 * (n - 3) * math.log1p(eta + t)
            + math.log1p(eta))


def g_bound(n, eta: float, t: float) -> float:
    lg = log_g_bound(n, eta, t)
    return 0.0 if lg == -math.inf else math.exp(lg)


# ---------------------------------------------------------------------------
# radial density
# ---------------------------------------------------------------------------

def log_radial_density(n, eta: float, t: float,
                       cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """log p_n(eta, t) for n in {2, 3}; -inf at eta = 0."""
    n = check_dimension(n)
    _validate(eta, t)
    if eta == 0.0:
        return -math.inf
    return (math.log(surface_area_coeff(n))
            + _log_heat_kernel(n, eta, t, cfg)
            + (n - 1) * log_sinh(eta))


def radial_density(n, eta: float, t: float,
                   cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    lp = log_radial_density(n, eta, t, cfg)
    return 0.0 if lp == -math.inf else math.exp(lp)


def density_envelope(n, eta: float, t: float, d_hat: float) -> tuple[float, float]:
    """Certified (lower, upper) envelope for p_n from the g_n bound.

    ``d_hat`` must already account for the sandwich constant of the density,
    i.e. d_hat >= max(c_up, 1/c_lo) where c_lo g_n <= p_n <= c_up g_n.
    """
    if not d_hat >= 1.0:
        raise ValueError(f"d_hat must be >= 1, got {d_hat}")
    base = surface_area_coeff(n) * g_bound(n, eta, t)
    return base / d_hat, base * d_hat


# ---------------------------------------------------------------------------
# sandwich scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SandwichReport:
    """Empirical extremes of sinh^{n-1}(eta) k_n / g_n over a grid."""

    ratio_min: float
    ratio_max: float
    grid: tuple[tuple[float, float], ...]
    ratios: np.ndarray  # shape (len(eta_grid), len(t_grid))

    def __post_init__(self):
        if not (0.0 < self.ratio_min <= self.ratio_max < math.inf):
            raise ValueError("ratio extremes must satisfy 0 < min <= max < inf")

    def kernel_constant(self) -> float:
        """Single constant d with d^{-1} g <= sinh^{n-1} k <= d g on the grid.

        The same constant certifies the density envelope of
        ``density_envelope`` (the surface factor multiplies both sides).
        """
        return max(self.ratio_max, 1.0 / self.ratio_min)

    def mgf_d_hat(self, n) -> float:
        """Upper constant for p_n <= d_hat g_n, clamped to >= 1."""
        return max(1.0, surface_area_coeff(n) * self.ratio_max)


def sandwich_scan(n, eta_grid, t_grid,
                  cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> SandwichReport:
    """Scan the two-sided envelope ratio over a positive (eta, t) grid."""
    n = check_dimension(n)
    if n not in (2, 3):
        raise UnsupportedExactModeError("sandwich_scan needs the exact kernel: n in {2, 3}")
    eta_grid = [float(e) for e in eta_grid]
    t_grid = [float(t) for t in t_grid]
    if not eta_grid or not t_grid:
        raise ValueError("grids must be nonempty")
    if min(eta_grid) <= 0.0 or min(t_grid) <= 0.0:
        raise ValueError("grid values must be positive")
    ratios = np.empty((len(eta_grid), len(t_grid)))
    for i, eta in enumerate(eta_grid):
        for j, t in enumerate(t_grid):
            lr = ((n - 1) * log_sinh(eta) + _log_heat_kernel(n, eta, t, cfg)
                  - log_g_bound(n, eta, t))
            ratios[i, j] = math.exp(lr)
    grid = tuple((e, t) for e in eta_grid for t in t_grid)
    return SandwichReport(ratio_min=float(ratios.min()),
                          ratio_max=float(ratios.max()),
                          grid=grid, ratios=ratios)


# ---------------------------------------------------------------------------
# normalization and CDF helpers
# ---------------------------------------------------------------------------

def _support_cutoff(n, t, cfg):
    return (n - 1) * t + cfg.upper_truncation_sigma * math.sqrt(2.0 * t) + 10.0


def normalization_integral(n, t: float,
                           cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Integral of p_n(., t) over (0, inf); equals 1 for a conservative kernel."""
    n = check_dimension(n)
    hi = _support_cutoff(n, t, cfg)
    # outer tolerances looser than cfg for n=2, where each evaluation is
    # itself a quadrature
    eps = 1e-10 if n == 3 else 1e-7
    res = quad(lambda e: radial_density(n, e, t, cfg), 0.0, hi,
               limit=cfg.max_subdivisions, epsabs=eps, epsrel=eps, full_output=1)
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > 1e-4:
        raise QuadratureError(
            f"normalization quadrature did not converge for n={n}, t={t}",
            partial_estimate=value, error_estimate=abserr)
    return value


def radial_cdf_interpolator(n, t: float,
                            cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                            points: int = 8001):
    """Callable CDF of p_n(., t) built from a dense cumulative quadrature grid.

    The grid spans [0, (n-1)t + sigma sqrt(2t) + 10]; beyond it the CDF is
    clamped to its terminal value (within truncation error of 1).
    """
    n = check_dimension(n)
    hi = _support_cutoff(n, t, cfg)
    if n == 2:
        points = min(points, 1501)
    xs = np.linspace(0.0, hi, points)
    dens = np.array([radial_density(n, x, t, cfg) for x in xs])
    cdf = np.concatenate([[0.0], cumulative_trapezoid(dens, xs)])
    cdf = np.clip(cdf, 0.0, 1.0)

    def F(d):
        return np.interp(np.asarray(d, dtype=float), xs, cdf, left=0.0, right=cdf[-1])

    return F
