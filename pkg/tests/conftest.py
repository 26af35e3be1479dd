import pytest

from qcylab.curvature import admissible_basis, sample_admissible
from qcylab.quaternion import build_structure


@pytest.fixture(scope="session")
def structure_n1():
    return build_structure(1)


@pytest.fixture(scope="session")
def curvature_n1(structure_n1):
    basis = admissible_basis(structure_n1)
    return [sample_admissible(basis, seed) for seed in range(3)]
