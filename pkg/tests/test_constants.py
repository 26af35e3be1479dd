from fractions import Fraction

import pytest

from qcylab import constants as K
from qcylab.scalar import ExactScalar


@pytest.mark.parametrize("n", [1, 2, 5])
def test_routes_agree(n):
    assert K.integral_route(n) == K.closed_route(n)


def test_c_of_one():
    assert K.series_c(1) == Fraction(5, 6912)


@pytest.mark.parametrize("n", [1, 4, 9, 200])
def test_fast_series_matches_closed(n):
    assert K.series_c_fast(n) == K.c_closed(n)


def test_lambda_needs_the_right_numerator():
    s1, _, _, ts1, _ = K.integral_route(1)
    assert K.lambda_consistency(1)
    assert not K.lambda_consistency(1, s1=2 * s1)


def test_expansion_series_shape():
    series = K.assemble_expansion(1, Fraction(1))
    assert series.coeffs[1].is_zero() and series.coeffs[2].is_zero() and series.coeffs[3].is_zero()
    assert series.coeffs[4] / series.coeffs[0] == ExactScalar.rational(-Fraction(5, 6912))


def test_binomial_truncation_error_scales_like_eps8():
    e1, e2 = K.binomial_step_errors(1)
    assert e1 / e2 == pytest.approx(1e8, rel=1e-3)


def test_rational_guard():
    with pytest.raises(K.PiResidue):
        K._rational(ExactScalar.pi(1))
