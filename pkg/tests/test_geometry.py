import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperbm.errors import DimensionMismatchError
from hyperbm.geometry import (
    HalfSpacePoint,
    RadiusTime,
    check_dimension,
    hyperbolic_distance,
    origin,
    radial_drift,
    surface_area_coeff,
)

coord = st.floats(-50.0, 50.0, allow_nan=False)
height = st.floats(1e-3, 1e3, allow_nan=False)


def pt2(x, y):
    return HalfSpacePoint(x=(x,), y=y)


class TestHalfSpacePoint:
    def test_rejects_nonpositive_height(self):
        for bad in (0.0, -1.0, -1e-12):
            with pytest.raises(ValueError):
                HalfSpacePoint(x=(0.0,), y=bad)

    def test_dimension_from_layout(self):
        assert pt2(0.0, 1.0).n == 2
        assert HalfSpacePoint(x=(0.0, 0.0), y=1.0).n == 3
        assert origin(5).n == 5 and origin(5).y == 1.0

    def test_check_dimension(self):
        assert check_dimension(2) == 2
        for bad in (1, 0, -3, 2.5, True):
            with pytest.raises(ValueError):
                check_dimension(bad)


class TestDistance:
    def test_identical_points_zero(self):
        assert hyperbolic_distance(pt2(0.0, 1.0), pt2(0.0, 1.0), 2) == 0.0

    def test_vertical_distance_is_log_ratio(self):
        # cosh d = (1 + e^2)/(2 e) = cosh(1), so d = 1 exactly
        d = hyperbolic_distance(pt2(0.0, 1.0), pt2(0.0, math.e), 2)
        assert d == pytest.approx(1.0, abs=1e-14)

    def test_unit_horizontal_offset(self):
        # cosh d = (1 + 1 + 1)/2 = 3/2
        d = hyperbolic_distance(pt2(1.0, 1.0), pt2(0.0, 1.0), 2)
        assert d == pytest.approx(math.acosh(1.5), abs=1e-14)
        assert d == pytest.approx(0.9624236501192069, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            hyperbolic_distance(pt2(0.0, 1.0), HalfSpacePoint(x=(0.0, 0.0), y=1.0))
        with pytest.raises(DimensionMismatchError):
            hyperbolic_distance(pt2(0.0, 1.0), pt2(0.0, 1.0), 3)

    @given(x1=coord, y1=height, x2=coord, y2=height)
    def test_symmetry(self, x1, y1, x2, y2):
        a, b = pt2(x1, y1), pt2(x2, y2)
        assert hyperbolic_distance(a, b) == pytest.approx(
            hyperbolic_distance(b, a), rel=1e-14, abs=1e-14)

    @given(x1=coord, y1=height, x2=coord, y2=height, x3=coord, y3=height)
    @settings(max_examples=200)
    def test_triangle_inequality(self, x1, y1, x2, y2, x3, y3):
        a, b, c = pt2(x1, y1), pt2(x2, y2), pt2(x3, y3)
        ab = hyperbolic_distance(a, b)
        bc = hyperbolic_distance(b, c)
        ac = hyperbolic_distance(a, c)
        assert ac <= ab + bc + 1e-12

    @given(x1=coord, y1=height, x2=coord, y2=height,
           lam=st.floats(1e-3, 1e3), shift=coord)
    @settings(max_examples=200)
    def test_isometries(self, x1, y1, x2, y2, lam, shift):
        a, b = pt2(x1, y1), pt2(x2, y2)
        d = hyperbolic_distance(a, b)
        scaled = hyperbolic_distance(pt2(lam * x1, lam * y1), pt2(lam * x2, lam * y2))
        translated = hyperbolic_distance(pt2(x1 + shift, y1), pt2(x2 + shift, y2))
        assert scaled == pytest.approx(d, rel=1e-11, abs=1e-12)
        assert translated == pytest.approx(d, rel=1e-11, abs=1e-12)

    def test_positive_unless_equal(self):
        assert hyperbolic_distance(pt2(1e-9, 1.0), pt2(0.0, 1.0)) > 0.0


class TestSurfaceAreaCoeff:
    def test_small_dimensions(self):
        # direct Gamma evaluations: Gamma(1)=1, Gamma(3/2)=sqrt(pi)/2, Gamma(2)=1
        assert surface_area_coeff(2) == pytest.approx(2.0 * math.pi, rel=1e-14)
        assert surface_area_coeff(3) == pytest.approx(4.0 * math.pi, rel=1e-14)
        assert surface_area_coeff(4) == pytest.approx(2.0 * math.pi ** 2, rel=1e-14)

    def test_matches_gamma_for_larger_n(self):
        for n in range(2, 20):
            direct = 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)
            assert surface_area_coeff(n) == pytest.approx(direct, rel=1e-13)


class TestRadialDrift:
    def test_large_radius_limit(self):
        assert radial_drift(50.0, 3) == pytest.approx(1.0, abs=1e-12)
        assert radial_drift(800.0, 7) == pytest.approx(3.0, abs=1e-12)

    def test_half_coth(self):
        expected = 0.5 * math.cosh(1.0) / math.sinh(1.0)
        assert radial_drift(1.0, 2) == pytest.approx(expected, rel=1e-14)
        assert radial_drift(1.0, 2) == pytest.approx(0.65652, abs=1e-5)

    def test_small_radius_series(self):
        # coth(eta) ~ 1/eta + eta/3 near zero
        assert radial_drift(0.01, 3) == pytest.approx(100.00333333, abs=1e-6)
        assert radial_drift(1e-5, 3) == pytest.approx(1e5 + 1e-5 / 3.0, rel=1e-12)

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(ValueError):
            radial_drift(0.0, 3)
        with pytest.raises(ValueError):
            radial_drift(-1.0, 3)

    @given(eta=st.floats(1e-6, 60.0), n=st.integers(2, 9))
    @settings(max_examples=300)
    def test_drift_tanh_identity(self, eta, n):
        # both evaluation branches satisfy drift * (2/(n-1)) * tanh(eta) = 1
        value = radial_drift(eta, n) * (2.0 / (n - 1)) * math.tanh(eta)
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_strictly_decreasing(self):
        etas = [0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0]
        vals = [radial_drift(e, 4) for e in etas]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestRadiusTime:
    def test_validation(self):
        RadiusTime(eta=0.0, t=1.0)
        with pytest.raises(ValueError):
            RadiusTime(eta=-1e-9, t=1.0)
        with pytest.raises(ValueError):
            RadiusTime(eta=1.0, t=0.0)
