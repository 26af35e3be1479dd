"""Exact checks built on the graded engine.

All comparisons are between independently computed objects: the
recursion output against closed forms, wedge products against the
trace formulas, and the squared horizontal gradient assembled from the
frame coefficients against its closed ε-expansion.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..constants import CHI_TERMS, GRADIENT_CORRECTION
from ..curvature import CurvatureTensor
from ..integrals import sphere_monomial_rational
from ..quaternion import QuaternionStructure, build_structure
from ..sphere_curvature import integrand_tensor
from .algebra import GradedForm, GradedPoly, Layout, layout, power
from .closed_forms import TARGETS
from .recursion import Coframe, FrameCoefficients, contact_form, frame_coefficients, frame_field, recurse_coframe


def random_rational_points(n: int, count: int, seed: int, span: int = 5) -> list[list[Fraction]]:
    """Points (x, t) with small rational coordinates."""
    rng = np.random.default_rng(seed)
    size = 4 * n + 3
    nums = rng.integers(-span, span + 1, size=(count, size))
    dens = rng.integers(1, 4, size=(count, size))
    return [[Fraction(int(a), int(b)) for a, b in zip(row_n, row_d)] for row_n, row_d in zip(nums, dens)]


def tensor_poly(lay: Layout, K: np.ndarray) -> GradedPoly:
    """sum K[i1..ik] x^{i1}...x^{ik} as a polynomial."""
    terms: dict[tuple[int, ...], Fraction] = {}
    for idx in itertools.product(range(K.shape[0]), repeat=K.ndim):
        v = K[idx]
        if v:
            e = [0] * lay.size
            for i in idx:
                e[i] += 1
            key = tuple(e)
            terms[key] = terms.get(key, 0) + Fraction(v)
    return GradedPoly(lay, terms)


def sphere_integral(poly: GradedPoly, n: int) -> Fraction:
    """q with int_{S^{4n-1}} poly = q pi^{2n}; poly must not depend on t."""
    if poly.depends_on_t():
        raise ValueError("sphere integration needs an x-only polynomial")
    nx = 4 * n
    return sum((c * sphere_monomial_rational(n, e[:nx]) for e, c in poly.terms.items()), Fraction(0))


# ---------------------------------------------------------------------------
# normal coordinates

@dataclass
class TargetResult:
    name: str
    points: int
    mismatches: int


def _computed(cf: Coframe, fc: FrameCoefficients, kind: str, w: int, index: int, pt) -> np.ndarray:
    lay = cf.lay
    N = lay.nx
    if kind in ("theta", "eta"):
        form = cf.theta[w][index] if kind == "theta" else cf.eta[w][index]
        if any(len(b) != 1 or b[0] >= N for b in form.comps):
            return None  # dt component present: cannot match an x-only closed form
        out = np.empty(N, dtype=object)
        for d in range(N):
            p = form.comps.get((d,))
            out[d] = p.evaluate(pt) if p else Fraction(0)
        return out
    if kind == "s_beta":
        return np.array([[fc.part(a, b, w).evaluate(pt) for b in range(N)] for a in range(N)], dtype=object)
    return np.array([fc.part(a, N + index, w).evaluate(pt) for a in range(N)], dtype=object)


def normal_coordinate_check(R: CurvatureTensor, points: Sequence, cf: Coframe | None = None,
                            fc: FrameCoefficients | None = None) -> list[TargetResult]:
    """Compare every recursion output with its closed form at each point."""
    cf = cf or recurse_coframe(R, 6)
    fc = fc or frame_coefficients(cf, 4)
    Q = cf.Q
    N = cf.lay.nx
    results = []
    for name, (kind, w, fn) in TARGETS.items():
        indices = range(N) if kind == "theta" else range(3) if kind in ("eta", "s_t") else [None]
        bad = 0
        for pt in points:
            x = pt[:N]
            for idx in indices:
                want = fn(R, Q, x) if idx is None else fn(R, Q, x, idx)
                got = _computed(cf, fc, kind, w, idx, pt)
                if got is None or not bool(np.all(got == want)):
                    bad += 1
                    break
        results.append(TargetResult(name, len(points), bad))
    return results


def homogeneity_residual(cf: Coframe) -> int:
    """Count of homogeneous parts violating L_P form = weight * form.

    L_P is evaluated with the Cartan formula, independently of the grading
    used to label the parts.
    """
    bad = 0
    for label, parts in (("theta", cf.theta), ("eta", cf.eta)):
        for m, forms in parts.items():
            for f in forms:
                if f.lie_euler() != f.scale(m):
                    bad += 1
    return bad


def duality_residual(cf: Coframe, fc: FrameCoefficients, max_order: int = 4) -> int:
    """Count of (a, b, k) with sum_c s_a^c theta^b(X_c) != delta at order k <= max_order."""
    lay = cf.lay
    size = lay.size
    fields = [frame_field(cf.Q, lay, c) for c in range(size)]
    o = [1 if c < lay.nx else 2 for c in range(size)]
    bad = 0
    for a in range(size):
        for b in range(size):
            for k in range(0, max_order + 1):
                w = k + o[b] - o[a]
                if w < 0:
                    continue
                acc = GradedPoly(lay)
                for c in range(size):
                    for wp, s in fc.s[a][c].items():
                        m_part = w - wp + o[c]  # weight of the theta^b part paired with X_c
                        if m_part < o[b]:
                            continue
                        acc = acc + s.mul(cf.component(b, m_part).on(fields[c]))
                acc = acc.homogeneous_part(w)
                want = GradedPoly.const(lay, 1) if (a == b and k == 0) else GradedPoly(lay)
                if acc != want:
                    bad += 1
    return bad


# ---------------------------------------------------------------------------
# volume expansion and chi

@dataclass
class VolumeExpansion:
    n: int
    top: Fraction  # constant coefficient of Theta^123 (dTheta^1)^{2n}
    parts: dict[int, GradedPoly]  # weight -> top coefficient of that homogeneous part

    def relative(self, weight: int) -> GradedPoly:
        return self.parts[weight].scale(1 / self.top)


def volume_expansion(cf: Coframe) -> VolumeExpansion:
    """Homogeneous parts of eta^1 eta^2 eta^3 (d eta^1)^{2n} up to weight 4n+10."""
    n = cf.n
    lay = cf.lay
    cap = 4 * n + 10
    etas = [cf.full_eta(i).truncate(cap) for i in range(3)]
    vol = etas[0].wedge(etas[1], cap).wedge(etas[2], cap)
    vol = vol.wedge(power(etas[0].d(), 2 * n, cap), cap)
    parts = {m: vol.homogeneous_part(m).top_coefficient() for m in range(4 * n + 6, cap + 1)}
    top = parts[4 * n + 6].evaluate([0] * lay.size)
    if parts[4 * n + 6] != GradedPoly.const(lay, top):
        raise AssertionError("lowest part is not a constant multiple of the model volume")
    return VolumeExpansion(n, top, parts)


def chi_closed(R: CurvatureTensor, Q: QuaternionStructure | None = None) -> GradedPoly:
    """chi(x) assembled from the six quartic curvature contractions."""
    Q = Q or build_structure(R.n)
    K = sum(integrand_tensor(k, R, Q) * c for c, k in CHI_TERMS)
    return tensor_poly(layout(R.n), K)


def chi_tilde(R: CurvatureTensor, Q: QuaternionStructure | None = None) -> GradedPoly:
    """sum_i (sextic contraction with I^i) (t^i)^2."""
    Q = Q or build_structure(R.n)
    lay = layout(R.n)
    out = GradedPoly(lay)
    for i in range(3):
        sextic = tensor_poly(lay, integrand_tensor(7, R, Q, i))
        out = out + sextic.mul(GradedPoly.var(lay, lay.t(i)).mul(GradedPoly.var(lay, lay.t(i))))
    return out


@dataclass
class ChiComparison:
    closed: GradedPoly
    wedge: GradedPoly
    closed_sphere: Fraction  # over pi^{2n}
    wedge_sphere: Fraction

    @property
    def equal(self) -> bool:
        return self.closed == self.wedge

    def mismatch_at(self, points) -> int:
        return sum(1 for p in points if self.closed.evaluate(p) != self.wedge.evaluate(p))


def chi_two_ways(R: CurvatureTensor, cf: Coframe | None = None,
                 vol: VolumeExpansion | None = None) -> ChiComparison:
    cf = cf or recurse_coframe(R, 6)
    vol = vol or volume_expansion(cf)
    n = R.n
    closed = chi_closed(R, cf.Q)
    wedge = vol.relative(4 * n + 10)
    return ChiComparison(closed, wedge, sphere_integral(closed, n), sphere_integral(wedge, n))


def chi_quadratic_split(R: CurvatureTensor, cf: Coframe | None = None) -> dict[str, GradedPoly]:
    """The weight 4n+10 part split by source, relative to the model volume.

    "sixth": 2n Theta^123 (d eta^1_(6)) (dTheta^1)^{2n-1}
    "fourth_squared": n(2n-1) Theta^123 (d eta^1_(4))^2 (dTheta^1)^{2n-2}
    "fourth_raw": the quadratic trace formula fed with the unsymmetrized
    coefficient of d eta^1_(4) (so it is not a valid wedge evaluation).
    """
    cf = cf or recurse_coframe(R, 6)
    n = R.n
    lay = cf.lay
    theta = [contact_form(cf.Q, lay, i) for i in range(3)]
    t123 = theta[0].wedge(theta[1]).wedge(theta[2])
    dtheta = theta[0].d()
    top = t123.wedge(power(dtheta, 2 * n)).top_coefficient().evaluate([0] * lay.size)
    d4 = cf.eta[4][0].d()
    d6 = cf.eta[6][0].d()
    sixth = t123.wedge(d6).wedge(power(dtheta, 2 * n - 1)).scale(2 * n).top_coefficient()
    fourth = t123.wedge(power(d4, 2)).wedge(power(dtheta, 2 * n - 2)).scale(n * (2 * n - 1)).top_coefficient()
    raw = _raw_fourth_coefficient(R, cf.Q, lay)
    I = cf.Q.I[0]
    N = lay.nx
    quad = GradedPoly(lay)
    for a, b, g, d in itertools.product(range(N), repeat=4):
        k = int(I[a, b]) * int(I[g, d]) + 2 * int(I[a, d]) * int(I[b, g])
        if k:
            quad = quad + raw[a][b].mul(raw[g][d]).scale(k)
    return {
        "sixth": sixth.scale(1 / top),
        "fourth_squared": fourth.scale(1 / top),
        "fourth_raw": quad.scale(Fraction(1, 8)),
    }


def _raw_fourth_coefficient(R: CurvatureTensor, Q: QuaternionStructure, lay: Layout):
    """c[a][z] with d eta^1_(4) = c[a][z] dx^a dx^z summed over all a, z, taken
    as the three-term sum produced by differentiating each x factor."""
    N = lay.nx
    E = R.entries
    I = Q.I[0]
    x = [GradedPoly.var(lay, k) for k in range(N)]
    c = [[GradedPoly(lay) for _ in range(N)] for _ in range(N)]
    for a, z, g, d, b in itertools.product(range(N), repeat=5):
        terms = (I[a, b] * E[d, z, g, b], I[g, b] * E[d, z, a, b], I[d, b] * E[a, z, g, b])
        v = sum(Fraction(int(t.numerator), int(t.denominator)) if isinstance(t, Fraction) else Fraction(t)
                for t in terms)
        if v:
            c[a][z] = c[a][z] + x[g].mul(x[d]).scale(v * Fraction(-1, 12))
    return c


# ---------------------------------------------------------------------------
# wedge identities on random 2-forms

@dataclass
class WedgeIdentityResult:
    n: int
    trials: int
    trace_failures: int
    quadratic_failures: int


def wedge_identity_check(n: int, trials: int = 20, seed: int = 0, span: int = 4) -> WedgeIdentityResult:
    """Random skew rational omega; compares full wedge products with the
    trace and quadratic trace formulas."""
    Q = build_structure(n)
    lay = layout(n)
    N = lay.nx
    theta = [contact_form(Q, lay, i) for i in range(3)]
    t123 = theta[0].wedge(theta[1]).wedge(theta[2])
    dtheta = theta[0].d()
    p1 = power(dtheta, 2 * n - 1)
    p2 = power(dtheta, 2 * n - 2)
    origin = [0] * lay.size
    top = t123.wedge(p1.wedge(dtheta)).top_coefficient().evaluate(origin)
    I = Q.I[0].astype(object)
    rng = np.random.default_rng(seed)
    bad_a = bad_b = 0
    for _ in range(trials):
        nums = rng.integers(-span, span + 1, size=(N, N))
        dens = rng.integers(1, 4, size=(N, N))
        raw = np.array([[Fraction(int(a), int(b)) for a, b in zip(r1, r2)] for r1, r2 in zip(nums, dens)],
                       dtype=object)
        w = raw - raw.T
        # omega = sum_{a,b} w[a,b] dx^a dx^b = sum_{a<b} 2 w[a,b] dx^a dx^b
        omega = GradedForm(lay, {(a, b): GradedPoly.const(lay, 2 * w[a, b])
                                 for a in range(N) for b in range(a + 1, N)})
        lhs_a = t123.wedge(omega).wedge(p1).scale(2 * n).top_coefficient().evaluate(origin) / top
        rhs_a = Fraction(-1, 2) * np.einsum("ab,ab->", I, w)
        lhs_b = t123.wedge(omega.wedge(omega)).wedge(p2).scale(8 * n * (2 * n - 1)) \
            .top_coefficient().evaluate(origin) / top
        rhs_b = np.einsum("ab,gd,ab,gd->", I, I, w, w) + 2 * np.einsum("ad,bg,ab,gd->", I, I, w, w)
        bad_a += lhs_a != rhs_a
        bad_b += lhs_b != rhs_b
    return WedgeIdentityResult(n, trials, int(bad_a), int(bad_b))


# ---------------------------------------------------------------------------
# squared horizontal gradient under parabolic dilation

@dataclass
class GradientExpansion:
    """Coefficients of eps^k in sum_a Phi_a(eps)^2 at one point, kept even in each t^i."""

    point: list
    coeffs: dict[int, Fraction]
    eps0_expected: Fraction
    eps4_expected: Fraction

    @property
    def eps0_deviation(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0)) - self.eps0_expected

    @property
    def eps4_deviation(self) -> Fraction:
        return self.coeffs.get(4, Fraction(0)) - self.eps4_expected

    @property
    def eps2_residual(self) -> Fraction:
        return self.coeffs.get(2, Fraction(0))


def _base_poly(lay: Layout) -> GradedPoly:
    """A = (1+|p|^2)^2 + |w|^2."""
    p2 = GradedPoly(lay)
    for k in range(lay.nx):
        p2 = p2 + GradedPoly.var(lay, k).mul(GradedPoly.var(lay, k))
    one = GradedPoly.const(lay, 1)
    w2 = GradedPoly(lay)
    for i in range(3):
        w2 = w2 + GradedPoly.var(lay, lay.t(i)).mul(GradedPoly.var(lay, lay.t(i)))
    return (one + p2).mul(one + p2) + w2


def _frame_derivative(field: list[GradedPoly], poly: GradedPoly) -> GradedPoly:
    out = GradedPoly(poly.lay)
    for k, c in enumerate(field):
        if not c.is_zero():
            out = out + c.mul(poly.derivative(k))
    return out


def _parity_sign_sum(poly_by_eps: dict[int, GradedPoly]) -> dict[int, GradedPoly]:
    return {k: p.t_even_part() for k, p in poly_by_eps.items()}


def gradient_polynomials(cf: Coframe, fc: FrameCoefficients) -> dict[int, GradedPoly]:
    """eps^k coefficients (k <= 4) of sum_a Phi_a^2 as polynomials in (x, t).

    Phi_a(eps) = sum_k eps^k s_{a(k)}^b (X_b A)/4 + sum_k eps^{k-1} s_{a(k)}^{t_i} (T_i A)/4,
    the normalized dilated horizontal derivative of the extremal profile.
    """
    lay = cf.lay
    N = lay.nx
    A = _base_poly(lay)
    d_frame = [_frame_derivative(frame_field(cf.Q, lay, c), A).scale(Fraction(1, 4))
               for c in range(lay.size)]
    total: dict[int, GradedPoly] = {}
    for a in range(N):
        phi: dict[int, GradedPoly] = {}
        for c in range(lay.size):
            shift = 0 if c < N else -1
            for w, s in fc.s[a][c].items():
                k = w + shift
                if k > 4:
                    continue
                phi[k] = phi.get(k, GradedPoly(lay)) + s.mul(d_frame[c])
        for k1, p1 in phi.items():
            for k2, p2 in phi.items():
                if k1 + k2 <= 4:
                    total[k1 + k2] = total.get(k1 + k2, GradedPoly(lay)) + p1.mul(p2)
    return _parity_sign_sum(total)


def gradient_expansion_check(R: CurvatureTensor, points: Sequence, cf: Coframe | None = None,
                             fc: FrameCoefficients | None = None) -> list[GradientExpansion]:
    cf = cf or recurse_coframe(R, 6)
    fc = fc or frame_coefficients(cf, 4)
    lay = cf.lay
    polys = gradient_polynomials(cf, fc)
    A = _base_poly(lay)
    p2 = GradedPoly(lay)
    for k in range(lay.nx):
        p2 = p2 + GradedPoly.var(lay, k).mul(GradedPoly.var(lay, k))
    eps0 = A.mul(p2)
    eps4 = chi_tilde(R, cf.Q).scale(GRADIENT_CORRECTION)
    out = []
    for pt in points:
        coeffs = {k: p.evaluate(pt) for k, p in polys.items()}
        out.append(GradientExpansion(list(pt), coeffs, eps0.evaluate(pt), eps4.evaluate(pt)))
    return out


def eps2_sphere_integral(cf: Coframe, fc: FrameCoefficients) -> dict[tuple[int, ...], Fraction]:
    """Sphere integral (over pi^{2n}) of the eps^2 coefficient, per t-monomial."""
    polys = gradient_polynomials(cf, fc)
    p = polys.get(2, GradedPoly(cf.lay))
    nx = cf.lay.nx
    grouped: dict[tuple[int, ...], Fraction] = {}
    for e, c in p.terms.items():
        key = e[nx:]
        grouped[key] = grouped.get(key, Fraction(0)) + c * sphere_monomial_rational(cf.n, e[:nx])
    return {k: v for k, v in grouped.items() if v}
