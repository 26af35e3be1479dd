from fractions import Fraction

import numpy as np
import pytest

from qcylab.curvature import (CurvatureTensor, TorsionState, admissible_basis, combine, conformal_change,
                              ricci_contractions, symmetry_residuals, torsion_violations)
from qcylab.quaternion import build_structure, casimir_projectors


def test_structures_satisfy_quaternion_relations():
    Q = build_structure(2)
    I = Q.I
    eye = np.eye(Q.dim, dtype=np.int64)
    for i in range(3):
        assert (I[i].dot(I[i]) == -eye).all()
        assert (I[i].T == -I[i]).all()
    assert (I[0].dot(I[1]) == I[2]).all() or (I[0].dot(I[1]) == -I[2]).all()


def test_casimir_projectors_are_complementary_idempotents():
    Q = build_structure(1)
    P = casimir_projectors(Q)
    ident = np.eye(P.P_minus.shape[0], dtype=object)
    assert ((P.P_minus + P.P_three) == ident).all()
    assert (P.P_minus.dot(P.P_minus) == P.P_minus).all()


@pytest.mark.parametrize("n,dim", [(1, 5), (2, 35)])
def test_admissible_dimension(n, dim):
    assert len(admissible_basis(build_structure(n))) == dim


def test_basis_elements_satisfy_all_identities(curvature_n1, structure_n1):
    for R in curvature_n1:
        assert all(v == 0 for v in symmetry_residuals(R, structure_n1).values())
        for name, T in ricci_contractions(R, structure_n1).items():
            assert not np.any(T != 0), name


def test_csv_round_trip(curvature_n1):
    R = curvature_n1[0]
    assert CurvatureTensor.from_csv(1, R.to_csv()) == R


def test_combine_is_linear(structure_n1):
    basis = admissible_basis(structure_n1)
    a = combine(basis, [1, 0, 2, 0, -1])
    b = combine(basis, [0, 3, 0, 1, 1])
    assert combine(basis, [1, 3, 2, 1, 0]) == a + b


def test_constant_conformal_factor_scales_scalar_curvature():
    Q = build_structure(1)
    zero = np.zeros((4, 4), dtype=object) + Fraction(0)
    state = TorsionState(zero, zero.copy(), Fraction(7))
    new = conformal_change(state, np.zeros(4, dtype=object), zero, exp_2u=Fraction(9), Q=Q)
    assert new.S == Fraction(7, 9)
    assert not torsion_violations(new, Q)
