"""Counter-based splittable random numbers.

Every variate is a pure function of (master_seed, stream_index, counter), so
simulations are reproducible bit-for-bit no matter how paths are distributed
over workers.  The construction is the SplitMix64 sequence: draw i of a
stream is mix64(key + i * GAMMA) where the per-stream key is itself derived
by mixing the master seed with the stream index.

Normals come from the uniform via Wichura's AS241 rational approximation of
the standard normal quantile (absolute error below 1e-15), which needs no
trigonometry and exactly one uniform per normal.

The functions here are the NumPy (vectorized) half of the twin backends; the
Numba kernels in ``hyperbm.sampling`` inline the same arithmetic on scalars.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "GAMMA",
    "derive_key",
    "derive_keys",
    "normal",
    "normal_inverse_cdf",
    "uniform",
    "u64",
]

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SEED_TWEAK = np.uint64(0xA0761D6478BD642F)

_U64_1 = np.uint64(1)
_SH30 = np.uint64(30)
_SH27 = np.uint64(27)
_SH31 = np.uint64(31)
_SH11 = np.uint64(11)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO_NEG53 = 2.0 ** -53

# AS241 coefficient sets: central rational in q^2, then two tail regimes in
# r = sqrt(-log(min(p, 1-p))).
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _mix64(z):
    # uint64 arithmetic wraps by design; silence the scalar overflow warning
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _SH30)) * _M1
        z = (z ^ (z >> _SH27)) * _M2
        return z ^ (z >> _SH31)


def derive_key(master_seed: int, stream_index: int) -> np.uint64:
    """Per-stream key from the master seed and a stream index."""
    s = np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF)
    k1 = _mix64(s ^ _SEED_TWEAK)
    with np.errstate(over="ignore"):
        return _mix64(k1 + (np.uint64(stream_index) + _U64_1) * GAMMA)


def derive_keys(master_seed: int, stream_indices) -> np.ndarray:
    """Vectorized ``derive_key`` for an array of stream indices."""
    s = np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF)
    k1 = _mix64(s ^ _SEED_TWEAK)
    idx = np.asarray(stream_indices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix64(k1 + (idx + _U64_1) * GAMMA)


def u64(key, counter):
    """Raw 64-bit draw at a counter position; key/counter may be arrays."""
    with np.errstate(over="ignore"):
        return _mix64(np.uint64(key) + np.asarray(counter, dtype=np.uint64) * GAMMA)


def uniform(key, counter):
    """Uniform draw in the open interval (0, 1)."""
    x = u64(key, counter)
    return ((x >> _SH11).astype(np.float64) + 0.5) * _TWO_NEG53


def _polyval(coeffs, x):
    r = np.full_like(x, coeffs[7])
    for i in range(6, -1, -1):
        r = r * x + coeffs[i]
    return r


def normal_inverse_cdf(p):
    """Standard normal quantile, AS241 (vectorized)."""
    p = np.asarray(p, dtype=np.float64)
    scalar = p.ndim == 0
    p = np.atleast_1d(p)
    q = p - 0.5
    out = np.empty_like(p)

    central = np.abs(q) <= 0.425
    if np.any(central):
        r = 0.180625 - q[central] * q[central]
        out[central] = q[central] * _polyval(_A, r) / _polyval(_B, r)

    tails = ~central
    if np.any(tails):
        pt = np.where(q[tails] < 0.0, p[tails], 1.0 - p[tails])
        r = np.sqrt(-np.log(pt))
        near = r <= 5.0
        v = np.empty_like(r)
        if np.any(near):
            rn = r[near] - 1.6
            v[near] = _polyval(_C, rn) / _polyval(_D, rn)
        far = ~near
        if np.any(far):
            rf = r[far] - 5.0
            v[far] = _polyval(_E, rf) / _polyval(_F, rf)
        out[tails] = np.where(q[tails] < 0.0, -v, v)

    return out[0] if scalar else out


def normal(key, counter):
    """Standard normal draw(s) at counter position(s)."""
    return normal_inverse_cdf(uniform(key, counter))
