import math
from fractions import Fraction

import numpy as np
import pytest

from qcylab.heisenberg import (ExtremalProfile, QuadratureConfig, QuadratureNonConvergent, contact_forms, dilate,
                               extremal_radial, frame_fields, grad_fd, polar_mc_check, radial_integral,
                               yamabe_functional)
from qcylab.quaternion import build_structure


def test_frame_annihilated_by_contact_forms():
    Q = build_structure(1)
    pt = np.array([Fraction(k, 3) for k in range(-3, 4)], dtype=object)
    X, T = frame_fields(Q, pt)
    theta = contact_forms(Q, pt)
    assert not np.any(theta.dot(X.T) != 0)
    assert (theta.dot(T.T) == np.eye(3, dtype=object)).all()


def test_closed_gradient_matches_finite_differences():
    Q = build_structure(1)
    prof = ExtremalProfile(1, 0.7)
    pt = np.array([0.3, -0.2, 0.5, 0.1, 0.4, -0.3, 0.2])
    XF, TF = prof.gradient(Q, pt)
    fx, ft = grad_fd(Q, prof.value, pt, 1e-5)
    np.testing.assert_allclose(XF, fx, rtol=1e-6, atol=1e-10)
    np.testing.assert_allclose(TF, ft, rtol=1e-6, atol=1e-10)


def test_dilation_rejects_nonpositive():
    with pytest.raises(ValueError):
        dilate(0, np.zeros(7), 1)


@pytest.mark.parametrize("eps", [0.5, 2.0])
def test_yamabe_functional_dilation_invariant(eps):
    assert yamabe_functional(extremal_radial(1, eps)) == pytest.approx(yamabe_functional(extremal_radial(1)),
                                                                        rel=1e-8)


def test_nonconvergent_quadrature_is_reported():
    with pytest.raises(QuadratureNonConvergent):
        radial_integral(1, lambda r, s: 1.0 / (1e-300 + r ** 4), cfg=QuadratureConfig(limit=3))


def test_polar_reduction_against_full_mc():
    n = 1

    def g_point(x, t):
        return np.exp(-np.sum(x * x, axis=1) - np.sum(t * t, axis=1))

    est, se, quad = polar_mc_check(n, g_point, lambda r, s: math.exp(-r * r - s * s), 200_000, 3)
    assert abs(est - quad) <= 4 * se
