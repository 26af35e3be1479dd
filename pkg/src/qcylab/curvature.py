"""Curvature tensors at the normalized point.

The admissible space is the exact null space of the stacked linear system
made of the algebraic symmetries, the first Bianchi identity, commutation
with the three structures in the second pair, and vanishing of all nine
Ricci-type traces.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .quaternion import QuaternionStructure, build_structure, casimir_projectors


class EmptySpace(RuntimeError):
    pass


def fraction_array(values, shape=None) -> np.ndarray:
    arr = np.empty(np.shape(values) if shape is None else shape, dtype=object)
    flat = np.asarray(values, dtype=object).reshape(-1)
    out = arr.reshape(-1)
    for k, v in enumerate(flat):
        out[k] = Fraction(v)
    return arr


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """R_{abcd} at q with exact rational entries (identity metric)."""

    n: int
    entries: np.ndarray  # object array of Fraction, shape (4n,)*4

    @classmethod
    def zero(cls, n: int) -> "CurvatureTensor":
        dim = 4 * n
        return cls(n, fraction_array(np.zeros((dim,) * 4, dtype=np.int64)))

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        return CurvatureTensor(self.n, self.entries + other.entries)

    def scale(self, k) -> "CurvatureTensor":
        return CurvatureTensor(self.n, self.entries * Fraction(k))

    def __eq__(self, other):
        return isinstance(other, CurvatureTensor) and self.n == other.n and bool(
            (self.entries == other.entries).all())

    def norm_sq(self) -> Fraction:
        """||W||^2 = R_abcd R_abcd."""
        return sum((v * v for v in self.entries.flat), Fraction(0))

    def crossed_norm_sq(self) -> Fraction:
        """2 R_abcd R_acbd, the second expression for ||W||^2."""
        return 2 * np.einsum("abcd,acbd->", self.entries, self.entries)

    def integer_form(self) -> tuple[np.ndarray, int]:
        """(numerators as Python-int object array, common denominator)."""
        den = math.lcm(*(v.denominator for v in self.entries.flat)) if self.entries.size else 1
        num = np.empty(self.entries.shape, dtype=object)
        for idx, v in np.ndenumerate(self.entries):
            num[idx] = v.numerator * (den // v.denominator)
        return num, den

    # csv dump / load ------------------------------------------------------
    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["a", "b", "c", "d", "value"])
        for idx, v in np.ndenumerate(self.entries):
            if v != 0:
                writer.writerow([*idx, str(v)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, n: int, text: str) -> "CurvatureTensor":
        R = cls.zero(n).entries.copy()
        reader = csv.reader(io.StringIO(text))
        next(reader)
        for row in reader:
            a, b, c, d = map(int, row[:4])
            R[a, b, c, d] = Fraction(row[4])
        return cls(n, R)


# ---------------------------------------------------------------------------
# constraint system

def _constraint_rows(Q: QuaternionStructure) -> Iterable[dict[int, int]]:
    N = Q.dim
    I = Q.I

    def var(a, b, c, d):
        return ((a * N + b) * N + c) * N + d

    def row(pairs):
        out: dict[int, int] = {}
        for v, c in pairs:
            if c:
                out[v] = out.get(v, 0) + int(c)
        return {v: c for v, c in out.items() if c}

    rng = range(N)
    # two-term relations first: they collapse most variables cheaply
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    yield row([(var(a, b, c, d), 1), (var(b, a, c, d), 1)])
                    yield row([(var(a, b, c, d), 1), (var(a, b, d, c), 1)])
                    yield row([(var(a, b, c, d), 1), (var(c, d, a, b), -1)])
    # R_{ab c d} I^{d e} = R_{ab e d} I^{d c}
    nz = [[[(d, int(I[i, d, e])) for d in rng if I[i, d, e]] for e in rng] for i in range(3)]
    for i in range(3):
        for a in rng:
            for b in rng:
                for c in rng:
                    for e in rng:
                        lhs = [(var(a, b, c, d), s) for d, s in nz[i][e]]
                        rhs = [(var(a, b, e, d), -s) for d, s in nz[i][c]]
                        yield row(lhs + rhs)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    yield row([(var(a, b, c, d), 1), (var(b, c, a, d), 1), (var(c, a, b, d), 1)])
    # traces
    for a in rng:
        for b in rng:
            yield row([(var(c, a, b, c), 1) for c in rng])
    yield row([(var(c, a, a, c), 1) for a in rng for c in rng])
    for i in range(3):
        for a in rng:
            for b in rng:
                yield row([(var(a, b, al, be), I[i, be, al]) for al in rng for be in rng])
                yield row([(var(al, a, b, be), I[i, be, al]) for al in rng for be in rng])
                yield row([(var(al, be, a, b), I[i, be, al]) for al in rng for be in rng])


def _reduce(row: dict[int, Fraction], pivots: dict[int, dict[int, Fraction]]) -> dict[int, Fraction]:
    row = {v: Fraction(c) for v, c in row.items()}
    while row:
        top = max(row)
        piv = pivots.get(top)
        if piv is None:
            return row
        k = row[top]
        for v, c in piv.items():
            nv = row.get(v, 0) - k * c
            if nv:
                row[v] = nv
            else:
                row.pop(v, None)
    return row


def exact_null_space(rows: Iterable[dict[int, int]], nvars: int) -> list[dict[int, Fraction]]:
    """Exact rational null space via sparse echelon elimination.

    Each stored pivot row has its largest variable as pivot with coefficient
    1, so substitution only introduces smaller variables and terminates.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        if not raw:
            continue
        red = _reduce(raw, pivots)
        if not red:
            continue
        top = max(red)
        lead = red[top]
        pivots[top] = {v: c / lead for v, c in red.items()}
    free = [v for v in range(nvars) if v not in pivots]
    # back substitution in increasing variable order
    solution: dict[int, dict[int, Fraction]] = {f: {f: Fraction(1)} for f in free}
    for p in sorted(pivots):
        acc: dict[int, Fraction] = {}
        for v, c in pivots[p].items():
            if v == p:
                continue
            for f, x in solution.get(v, {}).items():
                acc[f] = acc.get(f, 0) - c * x
        solution[p] = {f: x for f, x in acc.items() if x}
    basis = []
    for f in free:
        vec = {v: comb[f] for v, comb in solution.items() if f in comb}
        basis.append(vec)
    return basis


@lru_cache(maxsize=None)
def _admissible_basis(n: int) -> tuple[CurvatureTensor, ...]:
    Q = build_structure(n)
    N = Q.dim
    raw = exact_null_space(_constraint_rows(Q), N ** 4)
    basis = []
    for vec in raw:
        den = math.lcm(*(c.denominator for c in vec.values()))
        num = [c * den for c in vec.values()]
        g = math.gcd(*(int(x) for x in num))
        arr = np.zeros(N ** 4, dtype=object)
        arr[:] = Fraction(0)
        for v, c in vec.items():
            arr[v] = c * den / g
        basis.append(CurvatureTensor(n, arr.reshape((N,) * 4)))
    if not basis:
        raise EmptySpace(f"admissible space is zero-dimensional at n={n}")
    return tuple(basis)


def admissible_basis(Q: QuaternionStructure) -> list[CurvatureTensor]:
    if Q.n not in (1, 2):
        raise ValueError("admissible_basis supports n in {1, 2}")
    return list(_admissible_basis(Q.n))


def sample_admissible(basis: Sequence[CurvatureTensor], rng_seed: int,
                      coeff_range: int = 3) -> CurvatureTensor:
    """Seeded small-integer combination of basis elements."""
    rng = np.random.default_rng(rng_seed)
    coeffs = rng.integers(-coeff_range, coeff_range + 1, size=len(basis))
    return combine(basis, coeffs)


def combine(basis: Sequence[CurvatureTensor], coeffs: Sequence[int]) -> CurvatureTensor:
    n = basis[0].n
    acc = CurvatureTensor.zero(n).entries
    for b, c in zip(basis, coeffs):
        if c:
            acc = acc + b.entries * Fraction(int(c))
    return CurvatureTensor(n, acc)


# ---------------------------------------------------------------------------
# checks on raw tensors

def symmetry_residuals(R: CurvatureTensor, Q: QuaternionStructure) -> dict[str, int]:
    """Count of entries violating each admissibility identity (0 means holds)."""
    E = R.entries
    I = Q.I.astype(object)
    out = {
        "antisym_first": int(np.count_nonzero(E + E.transpose(1, 0, 2, 3))),
        "antisym_second": int(np.count_nonzero(E + E.transpose(0, 1, 3, 2))),
        "pair": int(np.count_nonzero(E - E.transpose(2, 3, 0, 1))),
        "bianchi": int(np.count_nonzero(E + E.transpose(1, 2, 0, 3) + E.transpose(2, 0, 1, 3))),
    }
    comm = 0
    for i in range(3):
        lhs = np.einsum("abcd,de->abce", E, I[i])
        rhs = np.einsum("abed,dc->abce", E, I[i])
        comm += int(np.count_nonzero(lhs - rhs))
    out["commutation"] = comm
    return out


def ricci_contractions(R: CurvatureTensor, Q: QuaternionStructure | None = None) -> dict[str, np.ndarray]:
    Q = Q or build_structure(R.n)
    E = R.entries
    I = Q.I.astype(object)
    k = Fraction(1, 4 * R.n)
    ric = np.einsum("cabc->ab", E)
    return {
        "Ric": ric,
        "S": np.einsum("aa->", ric),
        "rho": np.stack([k * np.einsum("abxy,yx->ab", E, I[i]) for i in range(3)]),
        "zeta": np.stack([k * np.einsum("xaby,yx->ab", E, I[i]) for i in range(3)]),
        "sigma": np.stack([k * np.einsum("xyab,yx->ab", E, I[i]) for i in range(3)]),
    }


def ricci_from_torsion(tau: np.ndarray, mu: np.ndarray, S, n: int) -> np.ndarray:
    """Ric = (2n+2) tau + 2(2n+5) mu + (S/4n) g."""
    g = np.eye(4 * n, dtype=np.int64).astype(object)
    return (2 * n + 2) * tau + 2 * (2 * n + 5) * mu + Fraction(S) / (4 * n) * g


# ---------------------------------------------------------------------------
# torsion, L and W

@dataclass(frozen=True, eq=False)
class TorsionState:
    tau: np.ndarray
    mu: np.ndarray
    S: object

    @property
    def n(self) -> int:
        return self.tau.shape[0] // 4


def torsion_violations(state: TorsionState, Q: QuaternionStructure | None = None) -> list[str]:
    Q = Q or build_structure(state.n)
    proj = casimir_projectors(Q)
    bad = []
    for name, T, P in (("tau", state.tau, proj.P_minus), ("mu", state.mu, proj.P_three)):
        if (T != T.T).any():
            bad.append(f"{name} not symmetric")
        if np.trace(T) != 0:
            bad.append(f"{name} not traceless")
        if (proj.apply(P, T) != T).any():
            bad.append(f"{name} outside its Casimir eigenspace")
    return bad


def tensor_L(tau: np.ndarray, mu: np.ndarray, S) -> np.ndarray:
    n = tau.shape[0] // 4
    g = np.eye(4 * n, dtype=np.int64).astype(object)
    return tau * Fraction(1, 2) + mu + g * (Fraction(S) / (32 * n * (n + 2)))


def wqc(R: CurvatureTensor, L: np.ndarray, Q: QuaternionStructure | None = None) -> np.ndarray:
    Q = Q or build_structure(R.n)
    n = R.n
    L = np.asarray(L, dtype=object)
    g = np.eye(4 * n, dtype=np.int64).astype(object)
    I = Q.I.astype(object)
    eps = Q.eps
    ein = np.einsum
    W = R.entries.copy()
    W = W + ein("ac,bd->abcd", g, L) - ein("ad,bc->abcd", g, L) \
        + ein("bd,ac->abcd", g, L) - ein("bc,ad->abcd", g, L)
    trL = np.trace(L)
    for i in range(3):
        Ii = I[i]
        LI = L.dot(Ii)          # L_{b r} I^r_d
        ItL = Ii.T.dot(L)       # L_{r d} I^r_c  -> [c, d]
        W = W + ein("ac,bd->abcd", Ii, LI) - ein("ad,bc->abcd", Ii, LI) \
            + ein("bd,ac->abcd", Ii, LI) - ein("bc,ad->abcd", Ii, LI)
        cross = np.zeros_like(L)
        for j in range(3):
            for k in range(3):
                if eps[i, j, k]:
                    cross = cross + int(eps[i, j, k]) * I[j].T.dot(L).dot(I[k])
        half = ein("ab,cd->abcd", Ii, LI) - ein("ab,cd->abcd", Ii, ItL) + ein("ab,cd->abcd", Ii, cross)
        W = W + half * Fraction(1, 2)
        W = W + ein("cd,ab->abcd", Ii, LI) - ein("cd,ab->abcd", Ii, ItL)
        W = W + ein("ab,cd->abcd", Ii, Ii) * (trL * Fraction(1, 2 * n))
    return W


def conformal_change(state: TorsionState, du: np.ndarray, d2u: np.ndarray,
                     u=0.0, exp_2u=None, Q: QuaternionStructure | None = None) -> TorsionState:
    """Transform (tau, mu, S) under eta -> e^{2u} eta.

    ``du[a] = X_a u`` and ``d2u[a, b] = X_b X_a u``; only the symmetric part
    of ``d2u`` enters the projections. ``exp_2u`` may be given exactly,
    otherwise it is computed from ``u``.
    """
    n = state.n
    Q = Q or build_structure(n)
    proj = casimir_projectors(Q)
    du = np.asarray(du, dtype=object)
    d2u = np.asarray(d2u, dtype=object)
    hess = (d2u + d2u.T) * Fraction(1, 2)
    outer = np.multiply.outer(du, du)
    tau = state.tau + proj.minus(4 * outer - 2 * hess)
    # g lies in the 3-eigenspace; its share is carried by S, so keep mu trace free
    shift = proj.three(-2 * outer - hess)
    shift = shift - np.eye(Q.dim, dtype=object) * (np.trace(shift) / Fraction(Q.dim))
    mu = state.mu + shift
    grad_sq = sum(du * du)
    lap = np.trace(d2u)
    weight = exp_2u if exp_2u is not None else math.exp(2 * u)
    S = (state.S - 16 * (n + 1) * (n + 2) * grad_sq - 8 * (n + 2) * lap) / weight
    return TorsionState(tau, mu, S)
