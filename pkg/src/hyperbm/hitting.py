"""Hitting probabilities of hyperbolic balls and their exponential decay.

For a process started at radius eta > eta_1 the probability of ever entering
the ball of radius eta_1 is a ratio N(eta) / N(eta_1), where N is, per
dimension,

    n = 2          log tanh(eta/2)
    n = 3          1 - coth(eta)
    n even >= 4    sum_k (-1)^k c(n,k) cosh(eta)/sinh^{n-2k-2}(eta)
                       + (-1)^{n/2} ((n-3)!!/(n-4)!!) log tanh(eta/2)
    n odd  >= 5    sum_k (-1)^k c(n,k) cosh(eta)/sinh^{n-2k-2}(eta)
                       + (-1)^{(n-5)/2} ((n-3)!!/(n-4)!!) (1 - coth(eta))

(equivalently ratios of the scale-function integrals of sinh^{1-n}).  The
individual terms are O(e^{-eta}) but cancel down to O(e^{-(n-1) eta}), so the
direct formula loses roughly (n - 3) * eta * log10(e) digits and is useless
at large radii.  The stable path expands everything as a power series in
q = e^{-eta} with exact rational coefficients: the cancellation happens in
integer arithmetic and the leading surviving term q^{n-1} is computed to full
precision at any radius.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import NumericalWarning
from .geometry import check_dimension

__all__ = [
    "ETA_SWITCH",
    "DecayRateResult",
    "HittingQuery",
    "SeriesBudget",
    "c_coeff",
    "decay_rate",
    "double_factorial_ratio",
    "euclidean_hitting",
    "hitting_probability",
    "leading_coefficient",
    "log_numerator",
    "log_tanh_half",
    "log_tanh_half_with_error",
    "naive_numerator",
    "naive_slope",
    "refined_series_bracket",
    "series_bracket",
]

# Above this radius the direct cosh/sinh evaluation has lost ~10 digits for
# n=4 (worse for higher n) and the q-series path takes over.
ETA_SWITCH = 12.0

# Relative disagreement between the two paths that trips NumericalWarning.
_DETECTOR_TOL = 1e-6


@dataclass(frozen=True)
class SeriesBudget:
    """Truncation control for the exponential series evaluations."""

    terms: int = 64
    tail_tol: float = 1e-16

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError("terms must be >= 1")
        if not self.tail_tol > 0.0:
            raise ValueError("tail_tol must be > 0")


DEFAULT_BUDGET = SeriesBudget()


@dataclass(frozen=True)
class HittingQuery:
    """Start radius eta and target ball radius eta_1 with eta > eta_1 > 0."""

    n: int
    eta1: float
    eta: float

    def __post_init__(self):
        check_dimension(self.n)
        if not (self.eta > self.eta1 > 0.0):
            raise ValueError(
                f"need eta > eta1 > 0, got eta={self.eta}, eta1={self.eta1}")


def _dfact(k: int) -> int:
    """Double factorial with (-1)!! = 0!! = 1."""
    r = 1
    while k > 1:
        r *= k
        k -= 2
    return r


def double_factorial_ratio(n: int) -> Fraction:
    """(n-3)!! / (n-4)!! as an exact rational."""
    return Fraction(_dfact(n - 3), _dfact(n - 4))


def c_coeff(n, k: int) -> Fraction:
    """Coefficient (n-3)(n-5)...(n-2k-1) / ((n-4)(n-6)...(n-2k-2)), c(n,0) = 1."""
    n = check_dimension(n)
    if n < 4:
        raise ValueError(f"coefficients are defined for n >= 4, got n={n}")
    kmax = (n - 4) // 2 if n % 2 == 0 else (n - 5) // 2
    if not 0 <= k <= kmax:
        raise ValueError(f"k must lie in [0, {kmax}] for n={n}, got {k}")
    num, den = 1, 1
    for j in range(1, k + 1):
        num *= n - 2 * j - 1
        den *= n - 2 * j - 2
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# log tanh(eta/2) series
# ---------------------------------------------------------------------------

def log_tanh_half_with_error(eta: float,
                             budget: SeriesBudget = DEFAULT_BUDGET) -> tuple[float, float]:
    """(log tanh(eta/2), error bound) via -2 sum_k e^{-(2k-1) eta}/(2k-1).

    The series is truncated once the next term drops below tail_tol of the
    running sum; the reported error bound is the geometric majorant of the
    dropped tail, 2 q^{2K+1} / ((2K+1)(1 - q^2)).  Below eta = 1 the direct
    evaluation is used (no cancellation there) and the bound is a few ulps;
    the two branches agree on the overlap to machine precision.
    """
    if not eta > 0.0:
        raise ValueError(f"radius must be > 0, got {eta}")
    if eta < 1.0:
        value = math.log(math.tanh(0.5 * eta))
        return value, 4.0 * abs(value) * 2.0 ** -53
    q = math.exp(-eta)
    q2 = q * q
    total = 0.0
    term = q
    k = 1
    while True:
        total += term / (2 * k - 1)
        term *= q2
        if term < budget.tail_tol * total or k >= budget.terms:
            break
        k += 1
    tail_bound = 2.0 * term / ((2 * k + 1) * (1.0 - q2))
    return -2.0 * total, tail_bound


def log_tanh_half(eta: float, budget: SeriesBudget = DEFAULT_BUDGET) -> float:
    """log tanh(eta/2); see ``log_tanh_half_with_error`` for the tail bound."""
    return log_tanh_half_with_error(eta, budget)[0]


def series_bracket(eta: float) -> tuple[float, float]:
    """Coarse bracket e^{-eta} <= sum <= e^{-eta}/(1 - e^{-2 eta})."""
    if not eta > 0.0:
        raise ValueError(f"radius must be > 0, got {eta}")
    q = math.exp(-eta)
    return q, q / (1.0 - q * q)


def refined_series_bracket(eta: float) -> tuple[float, float]:
    """Three-term refinement of ``series_bracket`` with O(e^{-5 eta}) width."""
    if not eta > 0.0:
        raise ValueError(f"radius must be > 0, got {eta}")
    q = math.exp(-eta)
    low = q + q ** 3 / 3.0
    return low, low + q ** 5 / (1.0 - q * q)


# ---------------------------------------------------------------------------
# exact q-series of the numerator
# ---------------------------------------------------------------------------

_coeff_cache: dict[int, list[Fraction]] = {}


def _extend_coeffs(n: int, dmax: int) -> list[Fraction]:
    """Exact coefficients a_d with N(eta) = sum_d a_d e^{-d eta}, d <= dmax."""
    cached = _coeff_cache.get(n)
    if cached is not None and len(cached) > dmax:
        return cached
    a = [Fraction(0)] * (dmax + 1)
    if n == 2:
        # log tanh(eta/2)
        for d in range(1, dmax + 1, 2):
            a[d] = Fraction(-2, d)
    elif n == 3:
        # 1 - coth = -2 q^2 / (1 - q^2)
        for d in range(2, dmax + 1, 2):
            a[d] = Fraction(-2)
    else:
        kmax = (n - 4) // 2 if n % 2 == 0 else (n - 5) // 2
        for k in range(kmax + 1):
            m = n - 2 * k - 2
            # cosh/sinh^m = 2^{m-1} q^{m-1} (1+q^2) sum_j C(m-1+j, j) q^{2j}
            lead = c_coeff(n, k) * (-1) ** k * 2 ** (m - 1)
            binom = Fraction(1)
            j = 0
            while m - 1 + 2 * j <= dmax:
                d = m - 1 + 2 * j
                a[d] += lead * binom
                if d + 2 <= dmax:
                    a[d + 2] += lead * binom
                j += 1
                binom = binom * (m - 1 + j) / j
        F = double_factorial_ratio(n)
        if n % 2 == 0:
            sgn = (-1) ** (n // 2)
            for d in range(1, dmax + 1, 2):
                a[d] += sgn * F * Fraction(-2, d)
        else:
            # 1 - coth = -2 sum_{j>=1} q^{2j}
            sgn = (-1) ** ((n - 5) // 2)
            for d in range(2, dmax + 1, 2):
                a[d] += sgn * F * (-2)
    _coeff_cache[n] = a
    return a


def leading_coefficient(n) -> Fraction:
    """First nonvanishing series coefficient; its degree is the decay rate n-1."""
    n = check_dimension(n)
    a = _extend_coeffs(n, n + 1)
    for d, c in enumerate(a):
        if c != 0:
            return c
    raise AssertionError("numerator series vanished identically")


def _degree_budget(n: int, eta: float, budget: SeriesBudget) -> int:
    # after the leading degree, each extra degree shrinks terms by e^{-eta};
    # stop once the tail is below tail_tol relative to the leading term
    extra = max(4, int(math.ceil(-math.log(budget.tail_tol) / eta)) + 2,
                2 * budget.terms if eta < 1.0 else 0)
    return min((n - 1) + extra, 6000)


def log_numerator(n, eta: float,
                  budget: SeriesBudget = DEFAULT_BUDGET) -> tuple[float, float]:
    """(log |N(eta)|, sign) via the exact q-series, valid at any eta > 0.

    Terms are accumulated from the highest degree down (ascending magnitude)
    so the exactly-cancelled low degrees never touch floating point.
    """
    n = check_dimension(n)
    if not eta > 0.0:
        raise ValueError(f"radius must be > 0, got {eta}")
    dmax = _degree_budget(n, eta, budget)
    a = _extend_coeffs(n, dmax)
    d_lead = next(d for d, c in enumerate(a) if c != 0)
    q = math.exp(-eta)
    # polynomial in q factored at the leading degree
    acc = 0.0
    for d in range(dmax, d_lead - 1, -1):
        if a[d] != 0:
            acc += float(a[d]) * q ** (d - d_lead)
    sign = 1.0 if acc > 0 else -1.0
    return -d_lead * eta + math.log(abs(acc)), sign


def naive_numerator(n, eta: float) -> float:
    """Direct cosh/sinh evaluation in doubles; loses all digits at large eta."""
    n = check_dimension(n)
    if n == 2:
        return math.log(math.tanh(0.5 * eta))
    if n == 3:
        return 1.0 - 1.0 / math.tanh(eta)
    total = 0.0
    kmax = (n - 4) // 2 if n % 2 == 0 else (n - 5) // 2
    ch = math.cosh(eta)
    sh = math.sinh(eta)
    for k in range(kmax + 1):
        total += (-1) ** k * float(c_coeff(n, k)) * ch / sh ** (n - 2 * k - 2)
    F = float(double_factorial_ratio(n))
    if n % 2 == 0:
        total += (-1) ** (n // 2) * F * math.log(math.tanh(0.5 * eta))
    else:
        total += (-1) ** ((n - 5) // 2) * F * (1.0 - ch / sh)
    return total


def _log_numerator_auto(n, eta, budget, method):
    if method == "stable":
        return log_numerator(n, eta, budget)
    if method == "naive":
        v = naive_numerator(n, eta)
        if v == 0.0:
            return -math.inf, 1.0
        return math.log(abs(v)), math.copysign(1.0, v)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if eta >= ETA_SWITCH:
        return log_numerator(n, eta, budget)
    naive = naive_numerator(n, eta)
    stable_log, stable_sign = log_numerator(n, eta, budget)
    stable = stable_sign * math.exp(stable_log)
    if abs(naive - stable) > _DETECTOR_TOL * abs(stable):
        warnings.warn(
            f"direct and series paths disagree by "
            f"{abs(naive - stable) / abs(stable):.2e} at n={n}, eta={eta}; "
            "keeping the series value", NumericalWarning, stacklevel=3)
        return stable_log, stable_sign
    return math.log(abs(naive)), math.copysign(1.0, naive)


def hitting_probability(query: HittingQuery,
                        budget: SeriesBudget = DEFAULT_BUDGET,
                        method: str = "auto") -> float:
    """P(ever reach the ball of radius eta1 | start at radius eta), in (0, 1].

    ``method`` selects the numerator evaluation: "auto" uses the direct
    formula below ETA_SWITCH (cross-checked against the series, with a
    NumericalWarning on disagreement) and the series above it.
    """
    log_num, sgn_num = _log_numerator_auto(query.n, query.eta, budget, method)
    log_den, sgn_den = _log_numerator_auto(query.n, query.eta1, budget, method)
    if sgn_num != sgn_den:
        raise ArithmeticError(
            f"numerator sign flip between eta={query.eta} and eta1={query.eta1}")
    return min(1.0, math.exp(log_num - log_den))


@dataclass(frozen=True)
class DecayRateResult:
    """Per-radius decay slopes (1/eta) log P and the value at the largest radius."""

    points: tuple[tuple[float, float], ...]
    value_at_max: float
    target: float


def decay_rate(n, eta_grid, eta1: float,
               budget: SeriesBudget = DEFAULT_BUDGET) -> DecayRateResult:
    """Decay slope (1/eta) log P_eta along an increasing radius grid.

    Always evaluates through the series path; the grid must reach at least
    radius 20 for the slope to be anywhere near its limit -(n-1).
    """
    n = check_dimension(n)
    etas = [float(e) for e in eta_grid]
    if sorted(etas) != etas:
        raise ValueError("eta_grid must be increasing")
    if max(etas) < 20.0:
        raise ValueError("eta_grid must extend to at least 20")
    if min(etas) <= eta1:
        raise ValueError("all grid radii must exceed eta1")
    log_den, _ = log_numerator(n, eta1, budget)
    points = []
    for eta in etas:
        log_num, _ = log_numerator(n, eta, budget)
        points.append((eta, (log_num - log_den) / eta))
    return DecayRateResult(points=tuple(points),
                           value_at_max=points[-1][1],
                           target=-(n - 1.0))


def naive_slope(n, eta: float, eta1: float) -> float:
    """Decay slope computed with the direct double-precision formula.

    Returns NaN when cancellation produces a nonpositive numerator; at large
    radii the value it returns for n >= 4 is dominated by roundoff noise.
    """
    num = naive_numerator(n, eta)
    den = naive_numerator(n, eta1)
    if num == 0.0 or den == 0.0 or (num > 0) != (den > 0):
        return math.nan
    return (math.log(abs(num)) - math.log(abs(den))) / eta


def euclidean_hitting(n, r1: float, r: float) -> float:
    """Euclidean analogue: 1 in the plane, (r/r1)^{2-n} for n >= 3."""
    n = check_dimension(n)
    if not r > r1 > 0.0:
        raise ValueError(f"need r > r1 > 0, got r={r}, r1={r1}")
    if n == 2:
        return 1.0
    return (r / r1) ** (2.0 - n)
