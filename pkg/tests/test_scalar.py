from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qcylab.scalar import ExactScalar, GammaProduct, ScalarError, UnsupportedArgument, gamma_exact, parse, render

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
nonzero = rationals.filter(lambda q: q != 0)


@given(rationals, rationals)
def test_rational_arithmetic_matches_fraction(a, b):
    assert ExactScalar.rational(a) + ExactScalar.rational(b) == ExactScalar.rational(a + b)
    assert ExactScalar.rational(a) * ExactScalar.rational(b) == ExactScalar.rational(a * b)


@given(nonzero, st.integers(min_value=-6, max_value=6))
def test_pi_powers_multiply(q, e):
    x = ExactScalar.rational(q) * ExactScalar.pi(e)
    assert x / ExactScalar.pi(e) == ExactScalar.rational(q)


def test_rational_powers_canonicalize():
    assert ExactScalar.power(4, Fraction(1, 2)) == ExactScalar.rational(2)
    assert ExactScalar.power(2, Fraction(1, 3)) ** 3 == ExactScalar.rational(2)
    assert ExactScalar.power(12, Fraction(1, 2)) == 2 * ExactScalar.power(3, Fraction(1, 2))


def test_gamma_half_integers():
    assert gamma_exact(Fraction(1, 2)) == ExactScalar.pi(Fraction(1, 2))
    assert gamma_exact(Fraction(5, 2)) == ExactScalar.rational(Fraction(3, 4)) * ExactScalar.pi(Fraction(1, 2))
    assert gamma_exact(5) == ExactScalar.rational(24)
    with pytest.raises(UnsupportedArgument):
        gamma_exact(Fraction(1, 3))


def test_bad_base_rejected():
    with pytest.raises(ScalarError):
        ExactScalar.power(-2, Fraction(1, 2))


@given(nonzero, st.integers(min_value=-4, max_value=4))
def test_render_parse_round_trip(q, e):
    x = ExactScalar.rational(q) * ExactScalar.pi(e)
    assert parse(render(x)) == x


@given(st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=40))
def test_gamma_product_collapse_matches_exact(a, b):
    g = GammaProduct.of_gamma(a) / GammaProduct.of_gamma(b)
    assert g.collapse().to_exact() == gamma_exact(a) / gamma_exact(b)


def test_gamma_product_half_integer_ratio():
    g = GammaProduct.of_gamma(Fraction(9, 2)) / GammaProduct.of_gamma(Fraction(5, 2))
    assert g.collapse().q == Fraction(7, 2) * Fraction(5, 2)
    assert g.collapse().gammas == ()
