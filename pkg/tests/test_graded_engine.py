from fractions import Fraction

import pytest

from qcylab.graded import checks as G
from qcylab.graded.recursion import frame_coefficients, recurse_coframe


@pytest.fixture(scope="module")
def engine(curvature_n1):
    R = curvature_n1[0]
    cf = recurse_coframe(R, 6)
    return R, cf, frame_coefficients(cf, 4)


def test_closed_forms_at_points(engine):
    R, cf, fc = engine
    pts = G.random_rational_points(1, 10, 5)
    assert all(r.mismatches == 0 for r in G.normal_coordinate_check(R, pts, cf, fc))


def test_parts_have_the_labelled_weight(engine):
    _, cf, fc = engine
    assert G.homogeneity_residual(cf) == 0


def test_frame_is_dual_to_coframe(engine):
    _, cf, fc = engine
    assert G.duality_residual(cf, fc) == 0


def test_only_even_eta_parts(engine):
    _, cf, _ = engine
    assert all(f.is_zero() for f in cf.eta[3]) and all(f.is_zero() for f in cf.eta[5])


def test_flat_curvature_gives_model_volume():
    from qcylab.curvature import CurvatureTensor
    cf = recurse_coframe(CurvatureTensor.zero(1), 6)
    vol = G.volume_expansion(cf)
    assert all(vol.parts[m].is_zero() for m in range(11, 15))


def test_split_accounts_for_chi_discrepancy(engine):
    R, cf, _ = engine
    split = G.chi_quadratic_split(R, cf)
    chi = G.chi_two_ways(R, cf)
    assert chi.wedge == split["sixth"] + split["fourth_squared"]
    assert chi.closed == split["sixth"] + split["fourth_raw"]


def test_eps2_term_integrates_to_zero(engine):
    _, cf, fc = engine
    assert G.eps2_sphere_integral(cf, fc) == {}


def test_wedge_identities_small():
    r = G.wedge_identity_check(1, trials=5, seed=3)
    assert r.trace_failures == 0 and r.quadratic_failures == 0
