import numpy as np
import pytest
from scipy import stats

from hyperbm import rng


class TestKeys:
    def test_scalar_matches_vectorized(self):
        ks = rng.derive_keys(987654321, np.arange(32))
        for i in (0, 1, 7, 31):
            assert rng.derive_key(987654321, i) == ks[i]

    def test_streams_distinct(self):
        ks = rng.derive_keys(5, np.arange(10000))
        assert np.unique(ks).size == 10000

    def test_seeds_distinct(self):
        a = rng.derive_key(1, 0)
        b = rng.derive_key(2, 0)
        assert a != b

    def test_negative_seed_wraps(self):
        assert rng.derive_key(-1, 0) == rng.derive_key(0xFFFFFFFFFFFFFFFF, 0)


class TestDraws:
    def test_deterministic(self):
        k = rng.derive_key(42, 3)
        assert rng.u64(k, 11) == rng.u64(k, 11)
        assert rng.uniform(k, 11) == rng.uniform(k, 11)

    def test_counter_sensitivity(self):
        k = rng.derive_key(42, 3)
        draws = rng.u64(k, np.arange(1000))
        assert np.unique(draws).size == 1000

    def test_uniform_open_interval(self):
        k = rng.derive_key(0, 0)
        u = rng.uniform(k, np.arange(100000))
        assert np.all(u > 0.0) and np.all(u < 1.0)

    def test_uniform_distribution(self):
        k = rng.derive_key(314159, 0)
        u = rng.uniform(k, np.arange(100000))
        d, p = stats.kstest(u, "uniform")
        assert p > 0.01


class TestNormal:
    def test_inverse_cdf_matches_scipy(self):
        p = np.concatenate([np.linspace(1e-12, 1 - 1e-12, 20001),
                            [1e-15, 1 - 1e-15, 0.5, 0.425 + 0.5, 0.5 - 0.425]])
        ours = rng.normal_inverse_cdf(p)
        ref = stats.norm.ppf(p)
        rel = np.abs(ours - ref) / np.maximum(np.abs(ref), 1e-12)
        assert rel.max() < 5e-15

    def test_scalar_form(self):
        assert rng.normal_inverse_cdf(0.5) == 0.0
        assert rng.normal_inverse_cdf(0.975) == pytest.approx(1.959963984540054)

    def test_moments(self):
        k = rng.derive_key(777, 0)
        z = rng.normal(k, np.arange(200000))
        assert abs(z.mean()) < 4.0 / np.sqrt(z.size)
        assert abs(z.var() - 1.0) < 6.0 / np.sqrt(z.size)

    def test_normality(self):
        k = rng.derive_key(2024, 5)
        z = rng.normal(k, np.arange(50000))
        d, p = stats.kstest(z, "norm")
        assert p > 0.01
