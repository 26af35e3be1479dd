"""Integrals over S^{4n-1} of quadratic curvature expressions against
monomials in the unit vector, brute force versus closed form.

Every case is an index recipe: factors drawn from I^i and R with named
index slots, plus the list of slots carried by the sphere monomial. The
brute force sums over all index values, replacing each sphere monomial by
its exact integral.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .curvature import CurvatureTensor
from .integrals import sphere_monomial_rational
from .quaternion import QuaternionStructure, build_structure
from .scalar import ExactScalar


@dataclass(frozen=True)
class CurvatureIntegralCase:
    case_id: int
    factors: tuple[tuple[str, str], ...]  # ("I" or "R", index letters)
    sphere: str  # letters carried by the monomial
    coefficient: Fraction  # multiplies pi^{2n}/(2n+shift)! * ||W||^2
    shift: int

    def closed_form_coefficient(self, n: int) -> ExactScalar:
        return ExactScalar.rational(self.coefficient / math.factorial(2 * n + self.shift)) \
            * ExactScalar.pi(2 * n)


# index letters: a=alpha b=beta g=gamma d=delta h=eta x=xi/zeta t=theta
# o=iota k=kappa l=lambda
CASES: dict[int, CurvatureIntegralCase] = {
    1: CurvatureIntegralCase(1, (("R", "dagb"), ("R", "hbxa")), "gdxh", Fraction(3, 4), 1),
    2: CurvatureIntegralCase(2, (("I", "at"), ("I", "xo"), ("R", "dtgb"), ("R", "hbao")),
                             "gdxh", Fraction(3, 4), 1),
    3: CurvatureIntegralCase(3, (("I", "at"), ("I", "ho"), ("R", "dtgb"), ("R", "abxo")),
                             "gdxh", Fraction(1, 2), 1),
    4: CurvatureIntegralCase(4, (("I", "ak"), ("I", "lt"), ("I", "gb"), ("I", "xo"),
                                 ("R", "dtab"), ("R", "hklo")), "gdxh", Fraction(3, 4), 1),
    5: CurvatureIntegralCase(5, (("I", "ak"), ("I", "lt"), ("I", "db"), ("I", "ho"),
                                 ("R", "atgb"), ("R", "lkxo")), "gdxh", Fraction(1), 1),
    6: CurvatureIntegralCase(6, (("I", "ak"), ("I", "lt"), ("I", "gb"), ("I", "ho"),
                                 ("R", "dtab"), ("R", "lkxo")), "gdxh", Fraction(1, 2), 1),
    7: CurvatureIntegralCase(7, (("I", "ba"), ("I", "kt"), ("R", "daog"), ("R", "hgxt")),
                             "bdxhok", Fraction(1), 2),
}


@lru_cache(maxsize=None)
def moment_table(n: int, degree: int) -> tuple[np.ndarray, int]:
    """Integer table W[i1..ik] = D * int zeta^{i1}...zeta^{ik} / pi^{2n}, and D."""
    dim = 4 * n
    memo: dict[tuple[int, ...], Fraction] = {}
    values = {}
    for idx in itertools.product(range(dim), repeat=degree):
        counts = [0] * dim
        for i in idx:
            counts[i] += 1
        key = tuple(sorted(counts))
        q = memo.get(key)
        if q is None:
            q = sphere_monomial_rational(n, tuple(counts))
            memo[key] = q
        values[idx] = q
    D = math.lcm(*(q.denominator for q in memo.values()))
    table = np.zeros((dim,) * degree, dtype=np.int64)
    for idx, q in values.items():
        table[idx] = int(q * D)
    table.setflags(write=False)
    return table, D


def _recipe(case: CurvatureIntegralCase, R_num, Q: QuaternionStructure, i: int, with_moments: bool):
    letters = sorted({c for _, idx in case.factors for c in idx} | set(case.sphere))
    pos = {c: k for k, c in enumerate(letters)}
    arrays, slots = [], []
    for kind, idx in case.factors:
        arrays.append(Q.I[i] if kind == "I" else R_num)
        slots.append([pos[c] for c in idx])
    D = 1
    if with_moments:
        table, D = moment_table(Q.n, len(case.sphere))
        arrays.append(table)
        slots.append([pos[c] for c in case.sphere])
    return arrays, slots, len(letters), D


def brute_force_lhs(case: CurvatureIntegralCase | int, R: CurvatureTensor,
                    Q: QuaternionStructure | None = None, i: int = 0) -> ExactScalar:
    """Exact sphere integral of the case integrand by summing every index tuple.

    ``i`` selects the structure I^{i+1} (cases 1-6 use I^1 as stated).
    """
    case = CASES[case] if isinstance(case, int) else case
    Q = Q or build_structure(R.n)
    R_num, den = R.integer_form()
    arrays, slots, nvars, D = _recipe(case, R_num, Q, i, with_moments=True)
    total = kernels.contract(arrays, slots, nvars)
    return ExactScalar.rational(Fraction(total, D * den * den)) * ExactScalar.pi(2 * R.n)


def integrand_tensor(case: CurvatureIntegralCase | int, R: CurvatureTensor,
                     Q: QuaternionStructure | None = None, i: int = 0) -> np.ndarray:
    """Coefficient tensor K with integrand = sum K[s1..sk] x^{s1}...x^{sk}."""
    case = CASES[case] if isinstance(case, int) else case
    Q = Q or build_structure(R.n)
    ops, specs = [], []
    for kind, idx in case.factors:
        ops.append(Q.I[i].astype(object) if kind == "I" else R.entries)
        specs.append(idx)
    return np.einsum(",".join(specs) + "->" + case.sphere, *ops, optimize="greedy")


def closed_form_rhs(case: CurvatureIntegralCase | int, R: CurvatureTensor, n: int | None = None) -> ExactScalar:
    case = CASES[case] if isinstance(case, int) else case
    n = R.n if n is None else n
    return case.closed_form_coefficient(n) * R.norm_sq()
