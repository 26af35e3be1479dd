"""Closed-form homogeneous parts evaluated at a point, as exact arrays.

Each evaluator takes the point x in R^{4n} (Fractions) and returns the
coefficient array: for 1-forms indexed by the dx slot, for frame
coefficients indexed by the source index alpha.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from ..curvature import CurvatureTensor
from ..quaternion import QuaternionStructure


def _vec(x) -> np.ndarray:
    return np.array([Fraction(v) for v in x], dtype=object)


def theta3(R: CurvatureTensor, Q: QuaternionStructure, x, a: int) -> np.ndarray:
    """theta^a_(3) = (1/6) R[g,d,b,a] x^b x^g dx^d."""
    x = _vec(x)
    return np.einsum("gdb,b,g->d", R.entries[:, :, :, a], x, x) * Fraction(1, 6)


def eta4(R: CurvatureTensor, Q: QuaternionStructure, x, i: int) -> np.ndarray:
    """eta^i_(4) = -(1/12) I^i[a,b] R[d,z,g,b] x^a x^g x^d dx^z."""
    x = _vec(x)
    Ix = np.einsum("ab,a->b", Q.I[i].astype(object), x)
    return np.einsum("dzgb,b,g,d->z", R.entries, Ix, x, x) * Fraction(-1, 12)


def eta6(R: CurvatureTensor, Q: QuaternionStructure, x, i: int) -> np.ndarray:
    """eta^i_(6) = -(1/360) I^i[a,b] R[d,t,g,b] R[h,o,z,t] x^a x^g x^d x^z x^h dx^o."""
    x = _vec(x)
    Ix = np.einsum("ab,a->b", Q.I[i].astype(object), x)
    left = np.einsum("dtgb,b,g,d->t", R.entries, Ix, x, x)
    return np.einsum("hozt,t,z,h->o", R.entries, left, x, x) * Fraction(-1, 360)


def s_beta2(R, Q, x) -> np.ndarray:
    """[a, b] -> s_{a(2)}^b = -(1/6) R[d,a,g,b] x^g x^d."""
    x = _vec(x)
    return np.einsum("dagb,g,d->ab", R.entries, x, x) * Fraction(-1, 6)


def s_beta4(R, Q, x) -> np.ndarray:
    """[a, b] -> s_{a(4)}^b = (7/360) R[d,a,t,g] R[h,g,z,b] x^d x^z x^h x^t."""
    x = _vec(x)
    left = np.einsum("datg,d,t->ag", R.entries, x, x)
    right = np.einsum("hgzb,z,h->gb", R.entries, x, x)
    return left.dot(right) * Fraction(7, 360)


def s_t3(R, Q, x, i: int) -> np.ndarray:
    """[a] -> s_{a(3)}^{t_i} = (1/12) I^i[b,g] R[t,a,d,g] x^b x^d x^t."""
    x = _vec(x)
    Ix = np.einsum("bg,b->g", Q.I[i].astype(object), x)
    return np.einsum("tadg,g,d,t->a", R.entries, Ix, x, x) * Fraction(1, 12)


def s_t5(R, Q, x, i: int) -> np.ndarray:
    """[a] -> s_{a(5)}^{t_i} = -(1/90) I^i[t,z] R[d,a,g,b] R[x,b,h,z] x^g x^d x^h x^t x^x."""
    x = _vec(x)
    Ix = np.einsum("tz,t->z", Q.I[i].astype(object), x)
    right = np.einsum("xbhz,z,h,x->b", R.entries, Ix, x, x)
    return np.einsum("dagb,b,g,d->a", R.entries, right, x, x) * Fraction(-1, 90)


def zero_target(R, Q, x, *_):
    return np.zeros(4 * R.n, dtype=object) + Fraction(0)


# name -> (kind, weight, evaluator); kind selects the computed object
TARGETS: dict[str, tuple[str, int, Callable]] = {
    "theta_3": ("theta", 3, theta3),
    "eta_4": ("eta", 4, eta4),
    "eta_6": ("eta", 6, eta6),
    "s_beta_1": ("s_beta", 1, lambda R, Q, x: np.zeros((4 * R.n,) * 2, dtype=object) + Fraction(0)),
    "s_beta_2": ("s_beta", 2, s_beta2),
    "s_beta_3": ("s_beta", 3, lambda R, Q, x: np.zeros((4 * R.n,) * 2, dtype=object) + Fraction(0)),
    "s_beta_4": ("s_beta", 4, s_beta4),
    "s_t_2": ("s_t", 2, zero_target),
    "s_t_3": ("s_t", 3, s_t3),
    "s_t_4": ("s_t", 4, zero_target),
    "s_t_5": ("s_t", 5, s_t5),
}
