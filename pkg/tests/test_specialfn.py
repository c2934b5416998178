import math

import numpy as np
import pytest

from qmctheta.specialfn import (
    SeriesConvergenceError,
    SeriesDomainError,
    expected_inner_product,
    overlap_series,
    rounding_coefficient,
)

# Reference values frozen from an independent high-precision evaluation of
# t * 2F1(1/2, 1/2; r/2 + 1; t^2) (30 decimal digits, then rounded to float).
_REFERENCE = {
    (3, -0.5): -0.5136399422792096,
    (2, -0.5): -0.5173158092226834,
    (1, -0.5): -0.5235987755982989,  # = -pi/6 = arcsin(-1/2)
    (3, 0.8): 0.8667687434067791,
    (2, 0.25): 0.25200045104703767,
}


def test_reference_values():
    for (r, t), want in _REFERENCE.items():
        got = overlap_series(r, t, tol=1e-12).value
        assert abs(got - want) < 2e-12, (r, t)


def test_r1_is_arcsin():
    for t in np.linspace(-0.999, 0.999, 201):
        ev = overlap_series(1, float(t), tol=1e-11)
        assert abs(ev.value - math.asin(float(t))) <= 1e-10


def test_oddness_exact():
    for r in (1, 2, 3):
        for t in (0.1, 0.5, 0.77, 0.999):
            assert overlap_series(r, -t, 1e-9).value == -overlap_series(r, t, 1e-9).value


def test_value_at_zero_and_tiny():
    ev = overlap_series(3, 0.0, 1e-12)
    assert ev.value == 0.0
    assert ev.truncation_bound == 0.0
    # leading behavior: series ~ t for small t
    assert abs(overlap_series(3, 1e-8, 1e-12).value - 1e-8) < 1e-20


def test_truncation_bound_below_tol():
    for r in (0, 1, 2, 3):
        for t in (-0.95, -0.3, 0.5, 0.9):
            ev = overlap_series(r, t, tol=1e-8)
            assert ev.truncation_bound <= 1e-8
            assert ev.terms >= 1


def test_truncation_bound_honest():
    # loose tolerance: the distance to the reference stays below the bound
    for (r, t), want in _REFERENCE.items():
        ev = overlap_series(r, t, tol=1e-4)
        assert abs(ev.value - want) <= ev.truncation_bound + 1e-15


def test_endpoint_identity():
    # c(r) * series(r, 1) = 1: the projection of identical vectors is exact
    for r in (1, 2, 3):
        ev = overlap_series(r, 1.0, tol=1e-3)
        assert abs(rounding_coefficient(r) * ev.value - 1.0) < 2e-3


def test_below_t_on_negative_axis():
    # series(r, t) <= t for t in [-1, 0]: rounding can only lose correlation
    for r in (1, 2, 3):
        for t in np.linspace(-1.0, 0.0, 200):
            v = overlap_series(r, float(t), tol=1e-3).value
            assert v <= t + 1e-12


def test_monotone_in_r():
    # higher target dimension keeps more correlation (values closer to t)
    for t in (-0.9, -0.5, -0.2):
        vals = [overlap_series(r, t, 1e-10).value for r in (1, 2, 3, 4)]
        assert all(vals[i] < vals[i + 1] for i in range(3))


def test_domain_errors():
    with pytest.raises(SeriesDomainError):
        overlap_series(1, 1.5)
    with pytest.raises(SeriesDomainError):
        overlap_series(-1, 0.5)
    with pytest.raises(SeriesDomainError):
        overlap_series(1.0, 0.5)  # non-integer order
    with pytest.raises(ValueError):
        overlap_series(1, 0.5, tol=0.0)


def test_r0_endpoint_diverges():
    # r = 0 at |t| = 1 is the divergent harmonic-like series: must refuse
    with pytest.raises(SeriesConvergenceError):
        overlap_series(0, 1.0, tol=1e-3)
    with pytest.raises(SeriesConvergenceError):
        overlap_series(0, -1.0, tol=1e-3)
    # but converges strictly inside
    assert overlap_series(0, -0.99, tol=1e-8).truncation_bound <= 1e-8


def test_rounding_coefficients_closed_form():
    assert abs(rounding_coefficient(1) - 2.0 / math.pi) < 1e-12
    assert abs(rounding_coefficient(2) - math.pi / 4.0) < 1e-12
    assert abs(rounding_coefficient(3) - 8.0 / (3.0 * math.pi)) < 1e-12
    # r = 4: (2/4) * (Gamma(5/2)/Gamma(2))^2 = (1/2) * (3 sqrt(pi)/4)^2 = 9 pi/32
    assert abs(rounding_coefficient(4) - 9.0 * math.pi / 32.0) < 1e-12
    with pytest.raises(SeriesDomainError):
        rounding_coefficient(0)


def test_coefficient_increases_to_one():
    # c(r) -> 1 as r grows; strictly increasing
    vals = [rounding_coefficient(r) for r in range(1, 12)]
    assert all(vals[i] < vals[i + 1] for i in range(len(vals) - 1))
    assert vals[-1] < 1.0


def test_expected_inner_product_known_points():
    # (2/pi) arcsin(-1/2) = -1/3
    assert abs(expected_inner_product(1, -0.5, tol=1e-12) + 1.0 / 3.0) < 1e-12
    assert expected_inner_product(2, 0.0) == 0.0
    got = expected_inner_product(3, -0.5, tol=1e-12)
    want = rounding_coefficient(3) * _REFERENCE[(3, -0.5)]
    assert abs(got - want) < 1e-12
