import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcylab.integrals import (DivergentIntegral, jl_coefficient, radial_model_integral, sphere_area,
                              sphere_monomial, sphere_monomial_gamma, sphere_moments_mc)
from qcylab.scalar import ExactScalar


def test_area_of_three_sphere():
    assert sphere_area(1) == 2 * ExactScalar.pi(2)


def test_known_monomials():
    assert sphere_monomial(1, (2, 0, 0, 0)) == ExactScalar.rational(Fraction(1, 2)) * ExactScalar.pi(2)
    assert sphere_monomial(1, (2, 2, 0, 0)) == ExactScalar.rational(Fraction(1, 12)) * ExactScalar.pi(2)
    assert sphere_monomial(1, (1, 1, 0, 0)).is_zero()


@given(st.integers(min_value=1, max_value=2).flatmap(
    lambda n: st.lists(st.sampled_from([0, 2, 4, 6]), min_size=4 * n, max_size=4 * n)))
def test_factorial_and_gamma_forms_agree(exps):
    n = len(exps) // 4
    assert sphere_monomial(n, exps) == sphere_monomial_gamma(n, exps)


def test_radial_coefficient_known_value():
    coef, power = jl_coefficient(1, 4)
    # int_0^inf b (1 + b^2)^(-2) db = 1/2
    assert coef == ExactScalar.rational(Fraction(1, 2))
    assert power == -2


def test_divergence_detected():
    with pytest.raises(DivergentIntegral):
        jl_coefficient(3, 4)


def test_model_integral_rejects_missing_jacobian():
    with pytest.raises(ValueError):
        radial_model_integral(1, (1, 5))


def test_model_integral_odd_t_power_vanishes():
    assert radial_model_integral(1, (3, 5, 1)).is_zero()


def test_mc_small_sample_guard():
    with pytest.raises(ValueError):
        sphere_moments_mc(1, [(0, 0, 0, 0)], 10, 0)


@settings(max_examples=5, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31))
def test_mc_area_within_four_se(seed):
    ((est, se),) = sphere_moments_mc(1, [(2, 0, 0, 0)], 20_000, seed)
    exact = sphere_monomial(1, (2, 0, 0, 0)).to_float()
    assert abs(est - exact) <= 4 * se + 1e-12
