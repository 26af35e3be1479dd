"""Homogeneous expansion of the adapted coframe and its dual frame in
exponential-type coordinates, modulo curvature derivatives.

theta^a_(1) = dx^a, eta^i_(2) = Theta^i; higher parts follow from
    omega_a(m)^b  = (1/m) R[g,d,a,b] x^g theta^d_(m-1)
    theta^a_(m)   = (1/m) x^b omega_b(m-1)^a
    eta^i_(m)     = -(2/m) I^i[a,b] x^a theta^b_(m-1)        (m >= 4)
The dual frame E_a = sum_b s_a^b X_b (X_{t_i} = T_i) is solved order by
order from theta^b(E_a) = delta_a^b.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..curvature import CurvatureTensor
from ..quaternion import QuaternionStructure, build_structure
from .algebra import GradedForm, GradedPoly, Layout, layout


def contact_form(Q: QuaternionStructure, lay: Layout, i: int) -> GradedForm:
    """Theta^i = (1/2) dt^i - I^i[a,b] x^a dx^b."""
    comps = {(lay.t(i),): GradedPoly.const(lay, Fraction(1, 2))}
    for b in range(lay.nx):
        col = [-Q.I[i][a, b] for a in range(lay.nx)]
        if any(col):
            comps[(b,)] = GradedPoly.linear(lay, col)
    return GradedForm(lay, comps)


def frame_field(Q: QuaternionStructure, lay: Layout, c: int) -> list[GradedPoly]:
    """Coefficients of X_c (c < 4n) or T_{c-4n} on the coordinate fields."""
    zero = GradedPoly(lay)
    out = [zero] * lay.size
    if c >= lay.nx:
        out[c] = GradedPoly.const(lay, 2)
        return out
    out[c] = GradedPoly.const(lay, 1)
    for i in range(3):
        out[lay.t(i)] = GradedPoly.linear(lay, [2 * Q.I[i][b, c] for b in range(lay.nx)])
    return out


def order(lay: Layout, c: int) -> int:
    return 1 if c < lay.nx else 2


@dataclass
class Coframe:
    """Homogeneous parts keyed by weight: theta[m][a], omega[m][a][b], eta[m][i]."""

    n: int
    R: CurvatureTensor
    Q: QuaternionStructure
    lay: Layout
    w_max: int
    theta: dict[int, list[GradedForm]] = field(default_factory=dict)
    omega: dict[int, list[list[GradedForm]]] = field(default_factory=dict)
    eta: dict[int, list[GradedForm]] = field(default_factory=dict)

    def component(self, c: int, m: int) -> GradedForm:
        """Weight-m part of theta^c (c < 4n) or eta^{c-4n}."""
        if c < self.lay.nx:
            parts = self.theta.get(m)
            return parts[c] if parts else GradedForm(self.lay)
        parts = self.eta.get(m)
        return parts[c - self.lay.nx] if parts else GradedForm(self.lay)

    def full_eta(self, i: int) -> GradedForm:
        out = GradedForm(self.lay)
        for m in sorted(self.eta):
            out = out + self.eta[m][i]
        return out


def _x_times(lay: Layout, coeffs, forms: list[GradedForm], scale: Fraction) -> GradedForm:
    """scale * sum_{g,d} coeffs[g,d] x^g forms[d]."""
    out = GradedForm(lay)
    for g in range(lay.nx):
        row = coeffs[g]
        acc = GradedForm(lay)
        for d in range(lay.nx):
            if row[d] and not forms[d].is_zero():
                acc = acc + forms[d].scale(row[d])
        if not acc.is_zero():
            out = out + acc.times(GradedPoly.var(lay, g))
    return out.scale(scale)


def _contract_position(lay: Layout, forms: list[GradedForm], scale: Fraction) -> GradedForm:
    """scale * sum_b x^b forms[b]."""
    out = GradedForm(lay)
    for b, f in enumerate(forms):
        if not f.is_zero():
            out = out + f.times(GradedPoly.var(lay, b))
    return out.scale(scale)


def recurse_coframe(R: CurvatureTensor, w_max: int = 6, Q: QuaternionStructure | None = None) -> Coframe:
    n = R.n
    Q = Q or build_structure(n)
    lay = layout(n)
    N = lay.nx
    E = R.entries
    cf = Coframe(n, R, Q, lay, w_max)
    one = GradedPoly.const(lay, 1)
    empty = [GradedForm(lay) for _ in range(N)]
    cf.theta[1] = [GradedForm.basis(lay, a, one) for a in range(N)]
    cf.theta[2] = list(empty)
    cf.omega[1] = [list(empty) for _ in range(N)]
    cf.eta[2] = [contact_form(Q, lay, i) for i in range(3)]
    cf.eta[3] = [GradedForm(lay) for _ in range(3)]
    for m in range(2, w_max):
        cf.omega[m] = [[_x_times(lay, E[:, :, a, b], cf.theta[m - 1], Fraction(1, m))
                        for b in range(N)] for a in range(N)]
        if m + 1 not in cf.theta:
            cf.theta[m + 1] = [_contract_position(lay, [cf.omega[m][b][a] for b in range(N)],
                                                  Fraction(1, m + 1)) for a in range(N)]
    for m in range(4, w_max + 1):
        prev = cf.theta.get(m - 1, empty)
        cf.eta[m] = [_x_times(lay, Q.I[i], prev, Fraction(-2, m)) for i in range(3)]
    return cf


@dataclass
class FrameCoefficients:
    """s[a][b][w]: weight-w polynomial part of s_a^b."""

    lay: Layout
    s: list[list[dict[int, GradedPoly]]]

    def part(self, a: int, b: int, w: int) -> GradedPoly:
        return self.s[a][b].get(w, GradedPoly(self.lay))


def frame_coefficients(cf: Coframe, max_order: int = 4) -> FrameCoefficients:
    """Solve sum_c s_a^c theta^b(X_c) = delta_a^b for s up to order
    k = w - o(b) + o(a) <= max_order."""
    lay = cf.lay
    size = lay.size
    fields = [frame_field(cf.Q, lay, c) for c in range(size)]
    pairing: dict[tuple[int, int, int], GradedPoly] = {}

    def pair(b: int, extra: int, c: int) -> GradedPoly:
        key = (b, extra, c)
        if key not in pairing:
            pairing[key] = cf.component(b, order(lay, b) + extra).on(fields[c])
        return pairing[key]

    s = [[dict() for _ in range(size)] for _ in range(size)]
    for a in range(size):
        s[a][a][0] = GradedPoly.const(lay, 1)
    for k in range(1, max_order + 1):
        for a in range(size):
            for b in range(size):
                w = k + order(lay, b) - order(lay, a)
                if w < 1:
                    continue
                acc = GradedPoly(lay)
                for c in range(size):
                    for extra in range(2, w + order(lay, c) - order(lay, b) + 1):
                        wp = w - order(lay, b) + order(lay, c) - extra
                        prev = s[a][c].get(wp)
                        if prev is None or prev.is_zero():
                            continue
                        p = pair(b, extra, c)
                        if not p.is_zero():
                            acc = acc - prev.mul(p)
                if not acc.is_zero():
                    s[a][b][w] = acc
    return FrameCoefficients(lay, s)
