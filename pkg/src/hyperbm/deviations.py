"""Rate functions, cumulant objects, and tail-decay estimation.

The radial process on the kernel clock escapes at speed n-1.  Its ratio
D(t)/t obeys a quadratic rate (x - (n-1))^2 / 4 at speed t; the centred,
t^{beta-1}-scaled fluctuations obey x^2/4 at speed t^{1-2 beta}; the
Euclidean counterpart has rate x^2/2.  The corresponding cumulant is
kappa(lambda) = lambda (lambda + n - 1), whose Legendre transform returns the
quadratic rate on x >= n-1.

Tail probabilities are computed from the exact radial densities by shifted
log-space quadrature, and scaled logs are extrapolated in (log t)/v_t, the
leading finite-time correction produced by the polynomial envelope factors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import erf

from .geometry import check_dimension
from .kernels import DEFAULT_QUADRATURE, QuadratureConfig, log_radial_density

__all__ = [
    "EmpiricalRate",
    "ExtrapolatedLimit",
    "RateEstimate",
    "empirical_rate_from_mc",
    "extrapolate_scaled_log",
    "gaussian_abs_moment",
    "corrected_cumulant_limit",
    "corrected_cumulant_conjugate",
    "kappa",
    "ldp_tail_quadrature",
    "legendre_transform",
    "log_mgf_quadrature",
    "log_mgf_upper_bound",
    "log_tail_probability",
    "mdp_rate_estimate",
    "mgf_upper_bound",
    "rate",
]

_Z_95 = 1.959963984540054


# ---------------------------------------------------------------------------
# rate functions
# ---------------------------------------------------------------------------

def rate(kind: str, x: float, n=None, k: float = 0.0, m: float | None = None) -> float:
    """Evaluate a rate function; returns math.inf outside the effective domain.

    kinds: "I1" (needs n), "I2", "J1", "HiraoStar" (needs k >= 0, m > 0).
    """
    if kind == "I1":
        n = check_dimension(n)
        if x < 0.0:
            return math.inf
        return (x - (n - 1)) ** 2 / 4.0
    if kind == "I2":
        return x * x / 4.0
    if kind == "J1":
        if x < 0.0:
            return math.inf
        return x * x / 2.0
    if kind == "HiraoStar":
        if k < 0.0 or m is None or not m > 0.0:
            raise ValueError("HiraoStar needs k >= 0 and m > 0")
        if x < 0.0:
            return math.inf
        return 0.5 * (x - (2.0 * k + m) / 2.0) ** 2
    raise ValueError(f"unknown rate function kind {kind!r}")


def kappa(lam: float, n) -> float:
    """Cumulant limit lambda (lambda + n - 1); roots at 0 and -(n-1)."""
    n = check_dimension(n)
    return lam * (lam + n - 1)


def corrected_cumulant_limit(lam: float, k: float, m: float) -> float:
    """Nondecreasing cumulant limit for the (k, m)-parameterized family.

    Equals lambda (lambda + 2k + m) / 2 for lambda >= -(2k+m)/2 and stays at
    its minimum -((2k+m)/2)^2 / 2 to the left, which is what a nonnegative
    random family forces.
    """
    if k < 0.0 or not m > 0.0:
        raise ValueError("need k >= 0 and m > 0")
    knee = -(2.0 * k + m) / 2.0
    if lam >= knee:
        return 0.5 * lam * (lam + 2.0 * k + m)
    return -0.5 * ((2.0 * k + m) / 2.0) ** 2


def corrected_cumulant_conjugate(x: float, k: float, m: float) -> float:
    """Closed-form conjugate of ``corrected_cumulant_limit``."""
    return rate("HiraoStar", x, k=k, m=m)


# ---------------------------------------------------------------------------
# Gaussian absolute moments and the moment-generating-function bound
# ---------------------------------------------------------------------------

def gaussian_abs_moment(mu: float, sigma2: float, j: int) -> float:
    """E|W|^j for W ~ Normal(mu, sigma2).

    Closed forms for j <= 2, adaptive quadrature for j >= 3.
    """
    if not sigma2 > 0.0:
        raise ValueError("variance must be positive")
    if j < 0 or j != int(j):
        raise ValueError("moment order must be a nonnegative integer")
    j = int(j)
    sigma = math.sqrt(sigma2)
    if j == 0:
        return 1.0
    if j == 1:
        return (mu * erf(mu / (sigma * math.sqrt(2.0)))
                + sigma * math.sqrt(2.0 / math.pi) * math.exp(-mu * mu / (2.0 * sigma2)))
    if j == 2:
        return mu * mu + sigma2
    lo = min(mu, 0.0) - (12.0 + j) * sigma
    hi = max(mu, 0.0) + (12.0 + j) * sigma

    def f(w):
        return abs(w) ** j * math.exp(-(w - mu) ** 2 / (2.0 * sigma2))

    val, _ = quad(f, lo, hi, points=[0.0, mu], limit=200, epsabs=0.0, epsrel=1e-12)
    return val / (sigma * math.sqrt(2.0 * math.pi))


def log_mgf_upper_bound(lam: float, t: float, n, d_hat: float = 1.0) -> float:
    """log of the envelope-based bound on E[exp(lambda D_n(t))].

    The bound is 2 sqrt(2 pi / (2t)) d_hat t^{1 - n/2} e^{kappa(lambda) t}
    times sum_{j<=m_n} C(m_n, j) (1+nt)^{m_n - j} (2t)^j E|W_t|^j with
    m_n = ceil((n-1)/2) and W_t ~ Normal(lambda, 1/(2t)).  d_hat is the upper
    sandwich constant of the density against g_n, clamped to >= 1.
    """
    n = check_dimension(n)
    if not t > 0.0:
        raise ValueError("time must be positive")
    if not d_hat >= 1.0:
        raise ValueError(f"d_hat must be >= 1, got {d_hat}")
    m_n = (n - 1 + 1) // 2  # ceil((n-1)/2)
    sigma2 = 1.0 / (2.0 * t)
    total = 0.0
    for j in range(m_n + 1):
        total += (math.comb(m_n, j) * (1.0 + n * t) ** (m_n - j)
                  * (2.0 * t) ** j * gaussian_abs_moment(lam, sigma2, j))
    return (math.log(2.0) + 0.5 * math.log(2.0 * math.pi * sigma2)
            + math.log(d_hat) + (1.0 - 0.5 * n) * math.log(t)
            + kappa(lam, n) * t + math.log(total))


def mgf_upper_bound(lam: float, t: float, n, d_hat: float = 1.0) -> float:
    """Linear-space variant of the bound; math.inf when it overflows a double."""
    lv = log_mgf_upper_bound(lam, t, n, d_hat)
    return math.exp(lv) if lv < 709.0 else math.inf


def log_mgf_quadrature(n, lam: float, t: float,
                       cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """log E[exp(lambda D_n(t))] by peak-shifted quadrature of the exact density."""
    n = check_dimension(n)
    sigma = math.sqrt(2.0 * t)
    peak = max(sigma, (n - 1 + 2.0 * lam) * t)
    hi = peak + (cfg.upper_truncation_sigma + 8.0) * sigma + 10.0
    probe = np.linspace(1e-9, hi, 512)
    log_vals = np.array([lam * e + log_radial_density(n, e, t, cfg) for e in probe])
    shift = float(np.max(log_vals))

    def f(e):
        return math.exp(lam * e + log_radial_density(n, e, t, cfg) - shift)

    eps = 1e-11 if n == 3 else 1e-7
    val, _ = quad(f, 0.0, hi, limit=cfg.max_subdivisions, epsabs=eps, epsrel=eps,
                  points=[min(peak, hi)])
    return shift + math.log(val)


# ---------------------------------------------------------------------------
# numerical Legendre transform
# ---------------------------------------------------------------------------

def legendre_transform(f: Callable[[float], float], x: float,
                       lam_grid: Sequence[float], tol: float = 1e-10) -> float:
    """sup over lambda of lambda * x - f(lambda), grid scan + golden refinement.

    A supremum attained on the grid edge is reported as math.inf (diverging
    along that direction); interior maxima are refined by golden-section
    search to ``tol`` in lambda.
    """
    grid = [float(v) for v in lam_grid]
    if len(grid) < 64:
        raise ValueError("lambda grid needs at least 64 points")
    if sorted(grid) != grid:
        raise ValueError("lambda grid must be sorted")
    vals = []
    for lam in grid:
        fv = f(lam)
        if not math.isfinite(fv):
            raise ValueError(f"f must be finite on the grid; f({lam}) = {fv}")
        vals.append(lam * x - fv)
    i = max(range(len(grid)), key=vals.__getitem__)
    scale = max(1.0, abs(vals[i]))
    if i == 0 or i == len(grid) - 1:
        # growing strictly toward the edge means the sup diverges in that
        # direction; a flat plateau (e.g. a constant branch of f) does not
        inner = vals[1] if i == 0 else vals[-2]
        if vals[i] > inner + 1e-12 * scale:
            return math.inf
        return vals[i]
    lo, hi = grid[i - 1], grid[i + 1]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = c * x - f(c)
    fd = d * x - f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = c * x - f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = d * x - f(d)
    lam_star = 0.5 * (a + b)
    return max(lam_star * x - f(lam_star), vals[i])


# ---------------------------------------------------------------------------
# tail probabilities and rate estimation
# ---------------------------------------------------------------------------

def log_tail_probability(n, t: float, threshold: float, side: str = "above",
                         cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """log P(D_n(t) >= threshold) (or <=), by shifted quadrature of p_n."""
    n = check_dimension(n)
    if side not in ("above", "below"):
        raise ValueError("side must be 'above' or 'below'")
    if threshold <= 0.0:
        if side == "above":
            return 0.0
        raise ValueError("below-threshold must be positive")
    sigma = math.sqrt(2.0 * t)
    mode = (n - 1) * t
    if side == "above":
        lo = threshold
        hi = max(threshold, mode) + (cfg.upper_truncation_sigma + 8.0) * sigma + 10.0
    else:
        lo = 0.0
        hi = threshold
    probe = np.linspace(lo + 1e-12, hi, 256)
    log_vals = np.array([log_radial_density(n, e, t, cfg) for e in probe])
    shift = float(np.max(log_vals))
    if shift == -math.inf:
        raise ValueError("density vanished on the whole integration window")

    def f(e):
        return math.exp(log_radial_density(n, e, t, cfg) - shift)

    eps = 1e-11 if n == 3 else 1e-7
    interior = [p for p in (mode,) if lo < p < hi]
    val, _ = quad(f, lo, hi, limit=cfg.max_subdivisions, epsabs=eps, epsrel=eps,
                  points=interior or None)
    return shift + math.log(val)


def ldp_tail_quadrature(n, t: float, x: float, side: str = "above",
                        cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """P(D_n(t)/t >= x) or P(D_n(t)/t <= x) for n in {2, 3}, by quadrature."""
    if not x > 0.0:
        if side == "above":
            return 1.0
        raise ValueError("threshold ratio must be positive")
    return math.exp(log_tail_probability(n, t, x * t, side, cfg))


@dataclass(frozen=True)
class ExtrapolatedLimit:
    """Fit value = limit + slope (log t)/v_t + offset / v_t over the grid."""

    limit: float
    slope: float
    offset: float
    points: tuple[tuple[float, float], ...]


def extrapolate_scaled_log(ts: Sequence[float], scaled: Sequence[float],
                           speeds: Sequence[float]) -> ExtrapolatedLimit:
    """Extrapolate scaled log-probabilities to their limiting rate.

    A tail P(t) ~ C t^{-gamma} e^{-I v_t} has
    (1/v_t) log P = -I - gamma (log t)/v_t + (log C)/v_t, so the fit basis is
    {(log t)/v_t, 1/v_t, 1}; with only two grid points the constant term is
    dropped.
    """
    ts = [float(t) for t in ts]
    if len(ts) < 2:
        raise ValueError("need at least two grid points to extrapolate")
    vs = np.asarray(speeds, dtype=float)
    logt = np.array([math.log(t) for t in ts])
    ys = np.asarray(scaled, dtype=float)
    if len(ts) == 2:
        cols = np.stack([logt / vs, np.ones(len(ts))], axis=1)
        slope, limit = np.linalg.lstsq(cols, ys, rcond=None)[0]
        offset = 0.0
    else:
        cols = np.stack([logt / vs, 1.0 / vs, np.ones(len(ts))], axis=1)
        slope, offset, limit = np.linalg.lstsq(cols, ys, rcond=None)[0]
    return ExtrapolatedLimit(limit=float(limit), slope=float(slope),
                             offset=float(offset),
                             points=tuple(zip(ts, map(float, ys))))


@dataclass(frozen=True)
class RateEstimate:
    """Scaled log-probabilities per time with their extrapolated limit."""

    points: tuple[tuple[float, float], ...]
    extrapolated: float
    target: float


def mdp_rate_estimate(n, beta: float, x: float, t_grid: Sequence[float],
                      cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> RateEstimate:
    """Moderate-scale rate estimate for the event t^{beta-1}(D - (n-1)t) >= x.

    Computes (1 / t^{1-2 beta}) log P at each grid time and extrapolates in
    (log t) / t^{1-2 beta}; the limiting value is -x^2/4.
    """
    n = check_dimension(n)
    if not 0.0 < beta < 0.5:
        raise ValueError(f"beta must lie in (0, 1/2), got {beta}")
    if x == 0.0:
        raise ValueError("x must be nonzero")
    ts = [float(t) for t in t_grid]
    if len(ts) < 3 or sorted(ts) != ts:
        raise ValueError("t_grid must be increasing with at least 3 points")
    side = "above" if x > 0.0 else "below"
    pts = []
    speeds = []
    for t in ts:
        threshold = (n - 1) * t + x * t ** (1.0 - beta)
        if threshold <= 0.0:
            raise ValueError(f"threshold nonpositive at t={t}; increase t or x")
        v_t = t ** (1.0 - 2.0 * beta)
        lp = log_tail_probability(n, t, threshold, side, cfg)
        pts.append((t, lp / v_t))
        speeds.append(v_t)
    fit = extrapolate_scaled_log(ts, [p[1] for p in pts], speeds)
    return RateEstimate(points=tuple(pts), extrapolated=fit.limit,
                        target=-x * x / 4.0)


@dataclass(frozen=True)
class EmpiricalRate:
    """Monte Carlo rate estimate with binomial confidence bands."""

    points: tuple[tuple[float, float, float, float], ...]  # (t, scaled, lo, hi)
    extrapolated: float
    flagged: tuple[float, ...]
    dropped: tuple[float, ...]


def empirical_rate_from_mc(radii_by_t: Mapping[float, np.ndarray],
                           threshold_ratio: float,
                           speed_exponent: float = 1.0,
                           min_hits: int = 10) -> EmpiricalRate:
    """Estimate the decay rate of P(D(t)/t >= x) from terminal-radius samples.

    Each grid time contributes (1/v_t) log(hit fraction) with v_t =
    t^{speed_exponent}; the extrapolation is least squares in 1/t.  Times with
    zero hits are dropped, times with fewer than ``min_hits`` flagged.
    """
    pts = []
    flagged = []
    dropped = []
    for t in sorted(radii_by_t):
        radii = np.asarray(radii_by_t[t], dtype=float)
        hits = int(np.count_nonzero(radii >= threshold_ratio * t))
        if hits == 0:
            dropped.append(float(t))
            continue
        if hits < min_hits:
            flagged.append(float(t))
        size = radii.size
        frac = hits / size
        se = math.sqrt(frac * (1.0 - frac) / size)
        v_t = float(t) ** speed_exponent
        lo = math.log(max(frac - _Z_95 * se, 1.0 / (10.0 * size))) / v_t
        hi = math.log(min(frac + _Z_95 * se, 1.0)) / v_t
        pts.append((float(t), math.log(frac) / v_t, lo, hi))
    if len(pts) < 2:
        raise ValueError("need at least two usable grid times")
    xs = np.array([1.0 / p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    _, limit = np.polyfit(xs, ys, 1)
    return EmpiricalRate(points=tuple(pts), extrapolated=float(limit),
                         flagged=tuple(flagged), dropped=tuple(dropped))
