"""Reproducible Monte Carlo for the radial process and the ambient diffusion.

The process matches the kernel normalization of ``hyperbm.kernels``: its
radial part solves

    dD = (n - 1) coth(D) dt + sqrt(2) dW,

i.e. twice the drift of ``geometry.radial_drift`` paired with quadratic
variation 2 dt.  (The generator written with a 1/2 would produce the same
paths on a clock running twice as slow; the normalization here is the one
under which the radial law at time t integrates the kernels at time t.)

In ambient coordinates the same clock gives an exactly log-normal height,

    Y_t = y_0 exp(sqrt(2) B_t - (n - 1) t),    dX_i = sqrt(2) Y dB_i,

which the half-space sampler exploits: Y is advanced exactly over every
substep and only X is Euler.

Hot loops exist twice: Numba kernels (default) and vectorized NumPy
fallbacks, selected by the environment flag HYPERBM_DISABLE_NUMBA=1.  All
randomness is counter-based (see ``hyperbm.rng``): draw k of path p is a pure
function of (master_seed, p, k), so results are bit-identical within a
backend no matter the worker count, and partial results merge in stream
order by construction.
"""
from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from scipy.special import erf

from . import rng
from .geometry import HalfSpacePoint, check_dimension

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    HAVE_NUMBA = False

__all__ = [
    "HAVE_NUMBA",
    "PathSample",
    "SimulationPlan",
    "SimulationResult",
    "active_backend",
    "first_passage",
    "read_radii",
    "sample_radial_exact_3d",
    "set_worker_count",
    "simulate_halfspace",
    "simulate_radial",
    "write_radii",
]

_DISABLE_ENV = "HYPERBM_DISABLE_NUMBA"

RADII_MAGIC = b"HBMRAD01"

# coth(d) rounds to exactly 1.0 beyond here, so the shortcut changes nothing
_COTH_ONE_CUTOFF = 22.0
_COTH_SERIES_CUTOFF = 1e-4


def active_backend() -> str:
    """Name of the backend hot loops will run on right now."""
    if HAVE_NUMBA and os.environ.get(_DISABLE_ENV, "") not in ("1", "true", "yes"):
        return "numba"
    return "numpy"


def set_worker_count(k: int) -> int:
    """Set the worker pool size; results never depend on it.

    With the Numba backend this maps to the thread count of the parallel
    kernels (clamped to the launch-time maximum); the NumPy backend is
    vectorized and ignores it.  Returns the effective count.
    """
    if k < 1:
        raise ValueError("worker count must be >= 1")
    if HAVE_NUMBA:
        try:
            limit = numba.config.NUMBA_NUM_THREADS
            effective = max(1, min(int(k), limit))
            numba.set_num_threads(effective)
            return effective
        except Exception:
            return 1
    return 1


# ---------------------------------------------------------------------------
# plans and results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimulationPlan:
    """Everything that determines a simulation, including its randomness."""

    n: int
    horizon: float
    dt: float
    paths: int
    master_seed: int
    start: Optional[HalfSpacePoint] = None
    start_radius: Optional[float] = None
    reflection_floor: float = 1e-6

    def __post_init__(self):
        check_dimension(self.n)
        if self.horizon < 0.0:
            raise ValueError("horizon must be >= 0")
        if not self.dt > 0.0:
            raise ValueError("dt must be > 0")
        if self.horizon > 0.0 and self.dt >= self.horizon / 2.0:
            raise ValueError("dt must be < horizon/2 (step too coarse)")
        if self.paths < 1:
            raise ValueError("paths must be >= 1")
        if not self.reflection_floor > 0.0:
            raise ValueError("reflection_floor must be > 0")
        if self.start is None and self.start_radius is None:
            raise ValueError("either start or start_radius is required")
        if self.start is not None and self.start.n != self.n:
            raise ValueError(f"start point has dimension {self.start.n}, plan says {self.n}")
        if self.start_radius is not None:
            if not self.start_radius > 0.0:
                raise ValueError("start_radius must be > 0")
            if self.reflection_floor >= self.start_radius:
                raise ValueError("reflection_floor must be below start_radius")

    @property
    def steps(self) -> int:
        return int(round(self.horizon / self.dt)) if self.horizon > 0.0 else 0


@dataclass(frozen=True)
class PathSample:
    """Terminal state of one path."""

    terminal_radius: float
    hit_time: Optional[float]
    censored: bool
    stream_index: int


@dataclass(frozen=True)
class SimulationResult:
    """Sequence of PathSample plus the raw arrays and run counters."""

    terminal_radii: np.ndarray
    censored: np.ndarray
    hit_times: np.ndarray  # NaN where absent
    reflections: int
    plan: SimulationPlan
    terminal_x: Optional[np.ndarray] = None     # ambient runs: (paths, n-1)
    terminal_logy: Optional[np.ndarray] = None  # ambient runs: (paths,)

    def __len__(self) -> int:
        return self.terminal_radii.size

    def __getitem__(self, i: int) -> PathSample:
        ht = float(self.hit_times[i])
        return PathSample(terminal_radius=float(self.terminal_radii[i]),
                          hit_time=None if math.isnan(ht) else ht,
                          censored=bool(self.censored[i]),
                          stream_index=int(i))

    def __iter__(self) -> Iterator[PathSample]:
        return (self[i] for i in range(len(self)))

    @property
    def hit_fraction(self) -> float:
        return float(np.count_nonzero(~self.censored & ~np.isnan(self.hit_times))
                     / max(1, len(self)))


def _result(plan, radii, censored=None, hit_times=None, reflections=0):
    size = radii.size
    if censored is None:
        censored = np.zeros(size, dtype=bool)
    if hit_times is None:
        hit_times = np.full(size, np.nan)
    return SimulationResult(terminal_radii=radii, censored=censored,
                            hit_times=hit_times, reflections=int(reflections),
                            plan=plan)


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    _GAMMA = np.uint64(0x9E3779B97F4A7C15)
    _U1 = np.uint64(1)
    _TWO_NEG53 = 2.0 ** -53

    @njit(inline="always", cache=True)
    def _nb_mix64(z):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))

    @njit(inline="always", cache=True)
    def _nb_uniform(key, ctr):
        x = _nb_mix64(key + ctr * _GAMMA)
        return (np.float64(x >> np.uint64(11)) + 0.5) * _TWO_NEG53

    @njit(inline="always", cache=True)
    def _nb_poly(c0, c1, c2, c3, c4, c5, c6, c7, x):
        return ((((((c7 * x + c6) * x + c5) * x + c4) * x + c3) * x + c2) * x + c1) * x + c0

    @njit(inline="always", cache=True)
    def _nb_norminv(p):
        q = p - 0.5
        if abs(q) <= 0.425:
            r = 0.180625 - q * q
            num = _nb_poly(3.3871328727963666080e0, 1.3314166789178437745e2,
                           1.9715909503065514427e3, 1.3731693765509461125e4,
                           4.5921953931549871457e4, 6.7265770927008700853e4,
                           3.3430575583588128105e4, 2.5090809287301226727e3, r)
            den = _nb_poly(1.0, 4.2313330701600911252e1, 6.8718700749205790830e2,
                           5.3941960214247511077e3, 2.1213794301586595867e4,
                           3.9307895800092710610e4, 2.8729085735721942674e4,
                           5.2264952788528545610e3, r)
            return q * num / den
        r = p if q < 0.0 else 1.0 - p
        r = math.sqrt(-math.log(r))
        if r <= 5.0:
            r = r - 1.6
            num = _nb_poly(1.42343711074968357734e0, 4.63033784615654529590e0,
                           5.76949722146069140550e0, 3.64784832476320460504e0,
                           1.27045825245236838258e0, 2.41780725177450611770e-1,
                           2.27238449892691845833e-2, 7.74545014278341407640e-4, r)
            den = _nb_poly(1.0, 2.05319162663775882187e0, 1.67638483018380384940e0,
                           6.89767334985100004550e-1, 1.48103976427480074590e-1,
                           1.51986665636164571966e-2, 5.47593808499534494600e-4,
                           1.05075007164441684324e-9, r)
        else:
            r = r - 5.0
            num = _nb_poly(6.65790464350110377720e0, 5.46378491116411436990e0,
                           1.78482653991729133580e0, 2.96560571828504891230e-1,
                           2.65321895265761230930e-2, 1.24266094738807843860e-3,
                           2.71155556874348757815e-5, 2.01033439929228813265e-7, r)
            den = _nb_poly(1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
                           1.48753612908506148525e-2, 7.86869131145613259100e-4,
                           1.84631831751005468180e-5, 1.42151175831644588870e-7,
                           2.04426310338993978564e-15, r)
        v = num / den
        return -v if q < 0.0 else v

    @njit(inline="always", cache=True)
    def _nb_normal(key, ctr):
        return _nb_norminv(_nb_uniform(key, ctr))

    @njit(inline="always", cache=True)
    def _nb_coth(d):
        if d > _COTH_ONE_CUTOFF:
            return 1.0
        if d < _COTH_SERIES_CUTOFF:
            return 1.0 / d + d / 3.0
        return 1.0 / math.tanh(d)

    @njit(parallel=True, cache=True)
    def _nb_radial(keys, eta0, drift_coeff, steps, dt, floor, out, refl_out):
        s2dt = math.sqrt(2.0 * dt)
        for p in prange(keys.size):
            key = keys[p]
            d = eta0
            refl = 0
            for i in range(steps):
                z = _nb_normal(key, np.uint64(i))
                d = d + drift_coeff * _nb_coth(d) * dt + s2dt * z
                if d < floor:
                    d = 2.0 * floor - d
                    if d < 0.5 * floor:
                        d = 0.5 * floor
                    refl += 1
            out[p] = d
            refl_out[p] = refl

    @njit(parallel=True, cache=True)
    def _nb_first_passage(keys, eta0, drift_coeff, steps, dt, floor, barrier,
                          stop_level, out_r, out_ht, out_cens, refl_out):
        s2dt = math.sqrt(2.0 * dt)
        for p in prange(keys.size):
            key = keys[p]
            d = eta0
            refl = 0
            hit_time = np.nan
            censored = True
            for i in range(steps):
                z = _nb_normal(key, np.uint64(i))
                dn = d + drift_coeff * _nb_coth(d) * dt + s2dt * z
                if dn < floor:
                    dn = 2.0 * floor - dn
                    if dn < 0.5 * floor:
                        dn = 0.5 * floor
                    refl += 1
                if dn <= barrier:
                    frac = (d - barrier) / (d - dn)
                    if frac < 0.0:
                        frac = 0.0
                    elif frac > 1.0:
                        frac = 1.0
                    hit_time = (i + frac) * dt
                    censored = False
                    d = dn
                    break
                d = dn
                if stop_level > 0.0 and d >= stop_level:
                    break
            out_r[p] = d
            out_ht[p] = hit_time
            out_cens[p] = censored
            refl_out[p] = refl

    @njit(parallel=True, cache=True)
    def _nb_halfspace(keys, start_x, start_y, ref_x, ref_y, n, steps, dt,
                      out, out_x, out_logy):
        dim = n - 1
        stride = np.uint64(dim + 1)
        s2dt = math.sqrt(2.0 * dt)
        dlog = -(n - 1.0) * dt
        for p in prange(keys.size):
            key = keys[p]
            x = np.empty(dim)
            for j in range(dim):
                x[j] = start_x[j]
            logy = math.log(start_y)
            for i in range(steps):
                y = math.exp(logy)
                base = np.uint64(i) * stride
                for j in range(dim):
                    x[j] += s2dt * y * _nb_normal(key, base + np.uint64(j))
                logy += dlog + s2dt * _nb_normal(key, base + np.uint64(dim))
            y = math.exp(logy)
            dx2 = 0.0
            for j in range(dim):
                dd = x[j] - ref_x[j]
                dx2 += dd * dd
                out_x[p, j] = x[j]
            out_logy[p] = logy
            v = (dx2 + (y - ref_y) * (y - ref_y)) / (2.0 * y * ref_y)
            out[p] = math.log1p(v + math.sqrt(v * (v + 2.0)))


# ---------------------------------------------------------------------------
# numpy fallbacks (same counters, same arithmetic)
# ---------------------------------------------------------------------------

def _np_coth(d):
    out = np.where(d > _COTH_ONE_CUTOFF, 1.0,
                   np.where(d < _COTH_SERIES_CUTOFF,
                            1.0 / d + d / 3.0,
                            1.0 / np.tanh(d)))
    return out


def _np_radial(keys, eta0, drift_coeff, steps, dt, floor):
    s2dt = math.sqrt(2.0 * dt)
    d = np.full(keys.size, eta0)
    refl = 0
    for i in range(steps):
        z = rng.normal_inverse_cdf(rng.uniform(keys, np.uint64(i)))
        d = d + drift_coeff * _np_coth(d) * dt + s2dt * z
        low = d < floor
        if low.any():
            refl += int(np.count_nonzero(low))
            d[low] = np.maximum(2.0 * floor - d[low], 0.5 * floor)
    return d, refl


def _np_first_passage(keys, eta0, drift_coeff, steps, dt, floor, barrier, stop_level):
    s2dt = math.sqrt(2.0 * dt)
    size = keys.size
    d = np.full(size, eta0)
    out_r = np.full(size, eta0)
    out_ht = np.full(size, np.nan)
    censored = np.ones(size, dtype=bool)
    active = np.arange(size)
    refl = 0
    for i in range(steps):
        if active.size == 0:
            break
        da = d[active]
        z = rng.normal_inverse_cdf(rng.uniform(keys[active], np.uint64(i)))
        dn = da + drift_coeff * _np_coth(da) * dt + s2dt * z
        low = dn < floor
        if low.any():
            refl += int(np.count_nonzero(low))
            dn[low] = np.maximum(2.0 * floor - dn[low], 0.5 * floor)
        hit = dn <= barrier
        if hit.any():
            idx = active[hit]
            frac = np.clip((da[hit] - barrier) / (da[hit] - dn[hit]), 0.0, 1.0)
            out_ht[idx] = (i + frac) * dt
            out_r[idx] = dn[hit]
            censored[idx] = False
        escaped = (dn >= stop_level) if stop_level > 0.0 else np.zeros_like(hit)
        done = hit | escaped
        if done.any():
            out_r[active[escaped & ~hit]] = dn[escaped & ~hit]
            d[active] = dn
            active = active[~done]
        else:
            d[active] = dn
    out_r[active] = d[active]
    return out_r, out_ht, censored, refl


def _np_halfspace(keys, start_x, start_y, ref_x, ref_y, n, steps, dt):
    dim = n - 1
    stride = np.uint64(dim + 1)
    s2dt = math.sqrt(2.0 * dt)
    size = keys.size
    x = np.tile(np.asarray(start_x, dtype=float), (size, 1))
    logy = np.full(size, math.log(start_y))
    dlog = -(n - 1.0) * dt
    for i in range(steps):
        y = np.exp(logy)
        base = np.uint64(i) * stride
        for j in range(dim):
            z = rng.normal_inverse_cdf(rng.uniform(keys, base + np.uint64(j)))
            x[:, j] += s2dt * y * z
        zy = rng.normal_inverse_cdf(rng.uniform(keys, base + np.uint64(dim)))
        logy += dlog + s2dt * zy
    y = np.exp(logy)
    dx2 = np.sum((x - np.asarray(ref_x, dtype=float)) ** 2, axis=1)
    v = (dx2 + (y - ref_y) ** 2) / (2.0 * y * ref_y)
    return np.log1p(v + np.sqrt(v * (v + 2.0))), x, logy


# ---------------------------------------------------------------------------
# public sampling operations
# ---------------------------------------------------------------------------

def _keys(plan: SimulationPlan) -> np.ndarray:
    return rng.derive_keys(plan.master_seed, np.arange(plan.paths, dtype=np.uint64))


def simulate_radial(plan: SimulationPlan, zero_noise: bool = False) -> SimulationResult:
    """Euler paths of the radial process from ``plan.start_radius``.

    Steps landing below the reflection floor are reflected back above it and
    counted.  With ``zero_noise`` the noise term is dropped entirely (a debug
    mode: each step is the deterministic drift increment).
    """
    if plan.start_radius is None:
        raise ValueError("simulate_radial needs a plan with start_radius")
    drift_coeff = float(plan.n - 1)  # = 2 * radial_drift(eta, n) / coth(eta)
    steps = plan.steps
    if zero_noise:
        d = np.full(plan.paths, plan.start_radius)
        for i in range(steps):
            d = d + drift_coeff * _np_coth(d) * plan.dt
        return _result(plan, d)
    keys = _keys(plan)
    if active_backend() == "numba":
        out = np.empty(plan.paths)
        refl = np.zeros(plan.paths, dtype=np.int64)
        _nb_radial(keys, plan.start_radius, drift_coeff, steps, plan.dt,
                   plan.reflection_floor, out, refl)
        return _result(plan, out, reflections=int(refl.sum()))
    out, refl = _np_radial(keys, plan.start_radius, drift_coeff, steps,
                           plan.dt, plan.reflection_floor)
    return _result(plan, out, reflections=refl)


def simulate_halfspace(plan: SimulationPlan,
                       reference: Optional[HalfSpacePoint] = None) -> SimulationResult:
    """Ambient-coordinate paths; terminal radius measured from the start.

    The height coordinate is advanced exactly (log-normal over each substep);
    the horizontal coordinates are Euler with the substep-initial height.
    ``reference`` overrides the point radii are measured from (defaults to
    the start itself, whose radii are then distributed as p_n).
    """
    if plan.start is None:
        raise ValueError("simulate_halfspace needs a plan with a start point")
    ref = reference if reference is not None else plan.start
    if ref.n != plan.n:
        raise ValueError("reference point dimension mismatch")
    steps = plan.steps
    start_x = np.asarray(plan.start.x, dtype=float)
    ref_x = np.asarray(ref.x, dtype=float)
    if steps == 0:
        dx2 = float(np.sum((start_x - ref_x) ** 2))
        v = (dx2 + (plan.start.y - ref.y) ** 2) / (2.0 * plan.start.y * ref.y)
        d = math.log1p(v + math.sqrt(v * (v + 2.0)))
        res = _result(plan, np.full(plan.paths, d))
        return SimulationResult(
            terminal_radii=res.terminal_radii, censored=res.censored,
            hit_times=res.hit_times, reflections=0, plan=plan,
            terminal_x=np.tile(start_x, (plan.paths, 1)),
            terminal_logy=np.full(plan.paths, math.log(plan.start.y)))
    keys = _keys(plan)
    if active_backend() == "numba":
        out = np.empty(plan.paths)
        out_x = np.empty((plan.paths, plan.n - 1))
        out_logy = np.empty(plan.paths)
        _nb_halfspace(keys, start_x, plan.start.y, ref_x, ref.y,
                      plan.n, steps, plan.dt, out, out_x, out_logy)
    else:
        out, out_x, out_logy = _np_halfspace(keys, start_x, plan.start.y,
                                             ref_x, ref.y, plan.n, steps, plan.dt)
    base = _result(plan, out)
    return SimulationResult(
        terminal_radii=base.terminal_radii, censored=base.censored,
        hit_times=base.hit_times, reflections=0, plan=plan,
        terminal_x=out_x, terminal_logy=out_logy)


def first_passage(plan: SimulationPlan, eta1: float,
                  stop_level: float = 0.0) -> SimulationResult:
    """First crossing of the inner barrier eta1 < start_radius.

    Crossing times are linearly interpolated inside the offending step; paths
    that never cross within the horizon are censored, so the hit fraction is
    a lower bound on the infinite-horizon hitting probability.  A positive
    ``stop_level`` terminates (censors) paths once they drift that far out,
    where the conditional return probability is negligible; 0 disables it.
    """
    if plan.start_radius is None:
        raise ValueError("first_passage needs a plan with start_radius")
    if not 0.0 < eta1 < plan.start_radius:
        raise ValueError(f"barrier must satisfy 0 < eta1 < start_radius, got {eta1}")
    if stop_level and stop_level <= plan.start_radius:
        raise ValueError("stop_level must exceed start_radius (or be 0)")
    drift_coeff = float(plan.n - 1)
    keys = _keys(plan)
    if active_backend() == "numba":
        out_r = np.empty(plan.paths)
        out_ht = np.empty(plan.paths)
        out_cens = np.empty(plan.paths, dtype=np.bool_)
        refl = np.zeros(plan.paths, dtype=np.int64)
        _nb_first_passage(keys, plan.start_radius, drift_coeff, plan.steps,
                          plan.dt, plan.reflection_floor, eta1, stop_level,
                          out_r, out_ht, out_cens, refl)
        return _result(plan, out_r, censored=out_cens, hit_times=out_ht,
                       reflections=int(refl.sum()))
    out_r, out_ht, cens, refl = _np_first_passage(
        keys, plan.start_radius, drift_coeff, plan.steps, plan.dt,
        plan.reflection_floor, eta1, stop_level)
    return _result(plan, out_r, censored=cens, hit_times=out_ht, reflections=refl)


# ---------------------------------------------------------------------------
# exact sampler for the n=3 radial law
# ---------------------------------------------------------------------------

def _size_biased_gaussian_cdf_parts(t: float):
    """Antiderivative pieces of eta * exp(-(eta-2t)^2 / 4t) on eta > 0."""
    c = 2.0 * t
    s = 2.0 * math.sqrt(t)

    def G(eta):
        return (-2.0 * t * np.exp(-(eta - c) ** 2 / (4.0 * t))
                + c * math.sqrt(math.pi * t) * erf((eta - c) / s))

    g0 = G(np.asarray(0.0))
    z = c * math.sqrt(math.pi * t) - g0
    return G, float(g0), float(z)


def sample_radial_exact_3d(t: float, count: int, master_seed: int) -> np.ndarray:
    """Exact samples of the n=3 radial law by two-stage rejection.

    The target eta sinh(eta) e^{-eta^2/4t} is the size-biased Gaussian
    proposal eta e^{-(eta-2t)^2/4t} (restricted to eta > 0) thinned with
    probability (1 - e^{-2 eta}).  The proposal itself is drawn by inverting
    its closed-form CDF with fixed-depth bisection, so the whole pipeline is
    deterministic in (master_seed, sample index).
    """
    if not t > 0.0:
        raise ValueError("time must be positive")
    if count < 1:
        raise ValueError("count must be >= 1")
    G, g0, z = _size_biased_gaussian_cdf_parts(t)
    hi = 2.0 * t + 10.0 * math.sqrt(2.0 * t) + 10.0
    keys = rng.derive_keys(master_seed, np.arange(count, dtype=np.uint64))
    out = np.empty(count)
    pending = np.arange(count)
    max_rounds = 4096
    for rnd in range(max_rounds):
        if pending.size == 0:
            break
        kp = keys[pending]
        u_prop = rng.uniform(kp, np.uint64(2 * rnd))
        u_acc = rng.uniform(kp, np.uint64(2 * rnd + 1))
        target = g0 + u_prop * z
        lo_b = np.zeros(pending.size)
        hi_b = np.full(pending.size, hi)
        for _ in range(80):
            mid = 0.5 * (lo_b + hi_b)
            below = G(mid) < target
            lo_b = np.where(below, mid, lo_b)
            hi_b = np.where(below, hi_b, mid)
        eta = 0.5 * (lo_b + hi_b)
        accept = u_acc < -np.expm1(-2.0 * eta)
        out[pending[accept]] = eta[accept]
        pending = pending[~accept]
    if pending.size:
        raise RuntimeError(f"rejection sampler starved after {max_rounds} rounds")
    return out


# ---------------------------------------------------------------------------
# binary radii dumps
# ---------------------------------------------------------------------------

def write_radii(path, radii) -> None:
    """Dump terminal radii: 8-byte magic, u64-LE count, f64-LE values."""
    radii = np.asarray(radii, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(RADII_MAGIC)
        fh.write(struct.pack("<Q", radii.size))
        fh.write(radii.tobytes())


def read_radii(path) -> np.ndarray:
    """Read a radii dump written by ``write_radii``."""
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != RADII_MAGIC:
            raise ValueError(f"bad magic {magic!r}, expected {RADII_MAGIC!r}")
        (count,) = struct.unpack("<Q", fh.read(8))
        data = np.frombuffer(fh.read(8 * count), dtype="<f8")
        if data.size != count:
            raise ValueError(f"truncated dump: header says {count}, found {data.size}")
        return data.astype(float)
