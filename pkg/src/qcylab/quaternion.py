"""The three almost complex structures on R^{4n}, the Levi-Civita symbol and
the Casimir operator on 2-tensors.

Index convention: ``I[i][a, b]`` is the lowered component I^i_{ab}. With the
identity metric all index placements coincide numerically, and ``I[i]`` is
also the matrix of the endomorphism (column vectors), so ``I[i] @ e_1`` is
``e_{i+2}`` in 1-based labels within every quaternionic block.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

# left multiplication by i, j, k on the basis (1, i, j, k), column convention
_LEFT_MULT = {
    0: ((1, 0, 1), (0, 1, -1), (3, 2, 1), (2, 3, -1)),
    1: ((2, 0, 1), (3, 1, -1), (0, 2, -1), (1, 3, 1)),
    2: ((3, 0, 1), (2, 1, 1), (1, 2, -1), (0, 3, -1)),
}


def levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3), dtype=np.int64)
    for (i, j, k), s in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                         (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
        eps[i, j, k] = s
    return eps


@dataclass(frozen=True)
class QuaternionStructure:
    n: int
    I: np.ndarray  # shape (3, 4n, 4n), int64
    eps: np.ndarray  # shape (3, 3, 3), int64

    @property
    def dim(self) -> int:
        return 4 * self.n


@lru_cache(maxsize=None)
def build_structure(n: int) -> QuaternionStructure:
    if n < 1:
        raise ValueError("n must be a positive integer")
    dim = 4 * n
    I = np.zeros((3, dim, dim), dtype=np.int64)
    for i, entries in _LEFT_MULT.items():
        for block in range(n):
            off = 4 * block
            for row, col, s in entries:
                I[i, off + row, off + col] = s
    I.setflags(write=False)
    eps = levi_civita()
    eps.setflags(write=False)
    return QuaternionStructure(n=n, I=I, eps=eps)


def casimir_matrix(Q: QuaternionStructure) -> np.ndarray:
    """C = sum_i I_i (x) I_i acting on row-major flattened 2-tensors.

    (C T)_{ac} = sum_i I_i[a, b] I_i[c, d] T[b, d], i.e. sum_i I_i T I_i^T.
    """
    return sum(np.kron(Q.I[i], Q.I[i]) for i in range(3))


@dataclass(frozen=True)
class CasimirProjector:
    C: np.ndarray  # integer
    P_minus: np.ndarray  # object array of Fraction
    P_three: np.ndarray

    def apply(self, P: np.ndarray, tensor: np.ndarray) -> np.ndarray:
        dim = tensor.shape[0]
        flat = np.asarray(tensor, dtype=object).reshape(dim * dim)
        return P.dot(flat).reshape(dim, dim)

    def minus(self, tensor: np.ndarray) -> np.ndarray:
        return self.apply(self.P_minus, tensor)

    def three(self, tensor: np.ndarray) -> np.ndarray:
        return self.apply(self.P_three, tensor)


@lru_cache(maxsize=None)
def _projectors(n: int) -> CasimirProjector:
    Q = build_structure(n)
    C = casimir_matrix(Q)
    ident = np.eye(C.shape[0], dtype=np.int64)
    quarter = np.vectorize(lambda v: Fraction(int(v), 4), otypes=[object])
    P_minus = quarter(3 * ident - C)
    P_three = quarter(ident + C)
    for arr in (C, P_minus, P_three):
        arr.setflags(write=False)
    return CasimirProjector(C=C, P_minus=P_minus, P_three=P_three)


def casimir_projectors(Q: QuaternionStructure) -> CasimirProjector:
    return _projectors(Q.n)
