import pytest

from qcylab.sphere_curvature import CASES, brute_force_lhs, closed_form_rhs, moment_table


def test_moment_table_is_symmetric():
    W, D = moment_table(1, 4)
    assert W[0, 0, 1, 1] == W[1, 0, 1, 0] == W[1, 1, 0, 0]
    assert W[0, 0, 0, 1] == 0
    assert D > 0


@pytest.mark.parametrize("case_id", sorted(CASES))
def test_identity_holds_on_samples(case_id, curvature_n1, structure_n1):
    indices = (0, 1, 2) if case_id == 7 else (0,)
    for R in curvature_n1:
        for i in indices:
            assert brute_force_lhs(case_id, R, structure_n1, i) == closed_form_rhs(case_id, R)


def test_zero_curvature_gives_zero(structure_n1):
    from qcylab.curvature import CurvatureTensor
    R = CurvatureTensor.zero(1)
    assert brute_force_lhs(1, R, structure_n1).is_zero()
