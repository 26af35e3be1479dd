"""Verification registry: every check returns VerificationReport rows.

Exact checks report error "exact" when they hold; otherwise the error is
the absolute difference as a float. Float checks report the relative error
(or the z-score for Monte Carlo rows) against their declared tolerance.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import constants as K
from .curvature import (CurvatureTensor, TorsionState, admissible_basis, conformal_change,
                        sample_admissible)
from .graded import checks as G
from .graded.recursion import frame_coefficients, recurse_coframe
from .heisenberg import (QuadratureConfig, extremal_radial, log_profile_derivatives, yamabe_functional,
                         yamabe_parts)
from .integrals import sphere_moments_mc, sphere_monomial
from .quaternion import build_structure
from .scalar import ExactScalar
from .sphere_curvature import CASES, brute_force_lhs, closed_form_rhs

FIELDS = ("check_id", "n", "seed", "status", "expected", "actual", "error", "runtime_ms")


@dataclass
class VerificationReport:
    check_id: str
    n: int
    seed: int
    status: str
    expected: str
    actual: str
    error: object  # float or "exact"
    runtime_ms: int

    def as_dict(self) -> dict:
        out = asdict(self)
        if isinstance(self.error, float) and not math.isfinite(self.error):
            out["error"] = "inf"  # keep the stream valid JSON
        return out


@dataclass(frozen=True)
class CheckOptions:
    n: int = 1
    seed: int = 0
    samples: int = 100_000
    tol: float | None = None
    wmax: int = 6


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round((time.perf_counter() - self.start) * 1000))


def _abs_diff(expected, actual):
    try:
        if isinstance(expected, ExactScalar) or isinstance(actual, ExactScalar):
            return abs(ExactScalar.coerce(expected).to_float() - ExactScalar.coerce(actual).to_float())
        return float(abs(Fraction(expected) - Fraction(actual)))
    except (TypeError, ValueError, OverflowError):
        return math.inf


def exact_row(check_id: str, opts: CheckOptions, n: int, expected, actual, ms: int) -> VerificationReport:
    ok = expected == actual
    return VerificationReport(check_id, n, opts.seed, "pass" if ok else "fail", str(expected), str(actual),
                              "exact" if ok else _abs_diff(expected, actual), ms)


def float_row(check_id: str, opts: CheckOptions, n: int, expected: float, actual: float, tol: float,
              ms: int, relative: bool = True) -> VerificationReport:
    err = abs(actual - expected) / abs(expected) if relative and expected else abs(actual - expected)
    return VerificationReport(check_id, n, opts.seed, "pass" if err <= tol else "fail", repr(float(expected)),
                              repr(float(actual)), float(err), ms)


# ---------------------------------------------------------------------------
# constants

def check_constants(opts: CheckOptions) -> list[VerificationReport]:
    n = opts.n
    rows = []
    with _Timer() as t:
        s1, s2, s3, ts1, ts2 = K.integral_route(n)
        lam = K.lambda_from(s1, ts1, n)
    rows.append(exact_row("lambda", opts, n, K.lambda_closed(n), lam, t.ms))
    with _Timer() as t:
        closed = K.closed_route(n)
    for name, a, b in zip(("S1", "S2", "S3", "S1_tilde", "S2_tilde"), (s1, s2, s3, ts1, ts2), closed):
        rows.append(exact_row(f"{name}_integrals_vs_closed", opts, n, b, a, t.ms))
    with _Timer() as t:
        c_series = K.series_c(n)
    rows.append(exact_row("c_closed_vs_series", opts, n, K.c_closed(n), c_series, t.ms))
    with _Timer() as t:
        quartic = s2 + s3
    rows.append(exact_row("numerator_quartic", opts, n, K.numerator_quartic_closed(n), quartic, t.ms))
    with _Timer() as t:
        shift = K.denominator_shift(n, ts1, ts2)
    rows.append(exact_row("denominator_shift", opts, n, Fraction(11, 2880 * (2 * n + 1) * (2 * n + 3)), shift,
                          t.ms))
    with _Timer() as t:
        series = K.assemble_expansion(n, Fraction(1))
        lead, quart = series.coeffs[0], series.coeffs[4]
    rows.append(exact_row("expansion_eps4_over_lead", opts, n, ExactScalar.rational(-K.c_closed(n)),
                          quart / lead, t.ms))
    rows.extend(check_c_positive(opts))
    return rows


def check_c_positive(opts: CheckOptions, upto: int = 10_000) -> list[VerificationReport]:
    with _Timer() as t:
        first_bad = next((m for m in range(1, upto + 1) if K.series_c_fast(m) <= 0), None)
    return [exact_row(f"c_positive_upto_{upto}", opts, opts.n, "none", "none" if first_bad is None else first_bad,
                      t.ms)]


# ---------------------------------------------------------------------------
# sphere integrals

def random_even_exponents(n: int, count: int, seed: int, max_part: int = 4, max_degree: int = 8):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        e = 2 * rng.integers(0, max_part // 2 + 1, size=4 * n)
        if e.sum() <= max_degree:
            out.append(tuple(int(v) for v in e))
    return out


def check_sphere(opts: CheckOptions, vectors: int = 50) -> list[VerificationReport]:
    n = opts.n
    tol = opts.tol if opts.tol is not None else 4.0
    rows = []
    if n == 1:
        with _Timer() as t:
            area = sphere_monomial(1, (0, 0, 0, 0))
        rows.append(exact_row("sphere_area", opts, n, ExactScalar.rational(2) * ExactScalar.pi(2), area, t.ms))
    exps = random_even_exponents(n, vectors, opts.seed)
    with _Timer() as t:
        mc = sphere_moments_mc(n, exps, opts.samples, opts.seed)
    for e, (est, se) in zip(exps, mc):
        exact = sphere_monomial(n, e).to_float()
        z = abs(est - exact) / se if se > 0 else (0.0 if math.isclose(est, exact, rel_tol=1e-12) else math.inf)
        rows.append(VerificationReport(f"sphere_mc[{''.join(map(str, e))}]", n, opts.seed,
                                       "pass" if z <= tol else "fail", repr(exact), repr(est), float(z),
                                       t.ms // len(exps)))
    return rows


# ---------------------------------------------------------------------------
# curvature integrals

def curvature_samples(n: int, count: int, seed: int) -> list[CurvatureTensor]:
    basis = admissible_basis(build_structure(n))
    return [sample_admissible(basis, seed + k) for k in range(count)]


def check_curvature_integrals(opts: CheckOptions, count: int | None = None) -> list[VerificationReport]:
    n = opts.n
    count = count or (20 if n == 1 else 5)
    Q = build_structure(n)
    rows = []
    for k, R in enumerate(curvature_samples(n, count, opts.seed)):
        for case_id in CASES:
            indices = (0, 1, 2) if case_id == 7 else (0,)
            for i in indices:
                with _Timer() as t:
                    lhs = brute_force_lhs(case_id, R, Q, i)
                    rhs = closed_form_rhs(case_id, R)
                rows.append(exact_row(f"curv_case{case_id}_I{i + 1}_sample{k}", opts, n, rhs, lhs, t.ms))
    return rows


# ---------------------------------------------------------------------------
# graded engine

def check_normal_coords(opts: CheckOptions, samples: int = 3, points: int = 100) -> list[VerificationReport]:
    n = opts.n
    rows = []
    pts = G.random_rational_points(n, points, opts.seed)
    for k, R in enumerate(curvature_samples(n, samples, opts.seed)):
        with _Timer() as t:
            cf = recurse_coframe(R, opts.wmax)
            fc = frame_coefficients(cf, 4)
        build_ms = t.ms
        with _Timer() as t:
            results = G.normal_coordinate_check(R, pts, cf, fc)
        for r in results:
            rows.append(exact_row(f"closed_form_{r.name}_sample{k}", opts, n, 0, r.mismatches,
                                  build_ms + t.ms // len(results)))
        with _Timer() as t:
            homog = G.homogeneity_residual(cf)
            dual = G.duality_residual(cf, fc)
        rows.append(exact_row(f"homogeneity_sample{k}", opts, n, 0, homog, t.ms))
        rows.append(exact_row(f"duality_sample{k}", opts, n, 0, dual, t.ms))
        with _Timer() as t:
            vol = G.volume_expansion(cf)
        zero = G.GradedPoly(cf.lay)
        for m in (4 * n + 7, 4 * n + 8, 4 * n + 9):
            rows.append(exact_row(f"volume_part_{m}_sample{k}", opts, n, "0",
                                  "0" if vol.parts[m] == zero else f"{len(vol.parts[m].terms)} terms", t.ms))
        with _Timer() as t:
            chi = G.chi_two_ways(R, cf, vol)
        rows.append(exact_row(f"chi_two_ways_sample{k}", opts, n, "equal",
                              "equal" if chi.equal else f"differ at {chi.mismatch_at(pts)}/{points} points",
                              t.ms))
        rows.append(exact_row(f"chi_sphere_integral_sample{k}", opts, n, chi.closed_sphere, chi.wedge_sphere,
                              t.ms))
    return rows


def check_gradient(opts: CheckOptions, samples: int = 3, points: int = 100) -> list[VerificationReport]:
    n = opts.n
    rows = []
    pts = G.random_rational_points(n, points, opts.seed)
    for k, R in enumerate(curvature_samples(n, samples, opts.seed)):
        with _Timer() as t:
            cf = recurse_coframe(R, opts.wmax)
            fc = frame_coefficients(cf, 4)
            res = G.gradient_expansion_check(R, pts, cf, fc)
        dev0 = sum(1 for r in res if r.eps0_deviation != 0)
        dev4 = sum(1 for r in res if r.eps4_deviation != 0)
        rows.append(exact_row(f"gradient_eps0_sample{k}", opts, n, 0, dev0, t.ms))
        rows.append(exact_row(f"gradient_eps4_sample{k}", opts, n, 0, dev4, t.ms))
        with _Timer() as t:
            eps2 = G.eps2_sphere_integral(cf, fc)
        rows.append(exact_row(f"gradient_eps2_sphere_sample{k}", opts, n, "{}", str(eps2), t.ms))
    return rows


def check_wedge(opts: CheckOptions, trials: int = 20) -> list[VerificationReport]:
    with _Timer() as t:
        r = G.wedge_identity_check(opts.n, trials, opts.seed)
    return [exact_row("wedge_trace", opts, opts.n, 0, r.trace_failures, t.ms),
            exact_row("wedge_quadratic", opts, opts.n, 0, r.quadratic_failures, t.ms)]


# ---------------------------------------------------------------------------
# quadrature and conformal change

def check_quadrature(opts: CheckOptions) -> list[VerificationReport]:
    n = opts.n
    cfg = QuadratureConfig()
    rows = []
    s1, _, _, ts1, _ = K.closed_route(n)
    with _Timer() as t:
        num, den = yamabe_parts(extremal_radial(n), cfg)
    tol_s = opts.tol if opts.tol is not None else 1e-8
    rows.append(float_row("quad_S1", opts, n, s1.to_float(), num, tol_s, t.ms))
    rows.append(float_row("quad_S1_tilde", opts, n, ts1.to_float(), den, tol_s, t.ms))
    lam = K.lambda_closed(n).to_float()
    tol_y = opts.tol if opts.tol is not None else 1e-6
    values = []
    for eps in (0.25, 0.5, 1.0, 2.0, 4.0):
        with _Timer() as t:
            v = yamabe_functional(extremal_radial(n, eps), cfg)
        values.append(v)
        rows.append(float_row(f"yamabe_eps_{eps}", opts, n, lam, v, tol_y, t.ms))
    spread = (max(values) - min(values)) / abs(lam)
    rows.append(VerificationReport("dilation_sweep_spread", n, opts.seed, "pass" if spread < tol_y else "fail",
                                   "0.0", repr(spread), float(spread), 0))
    return rows


def check_conformal(opts: CheckOptions, points: int = 100) -> list[VerificationReport]:
    n = opts.n
    Q = build_structure(n)
    dim = Q.dim
    zero = np.zeros((dim, dim), dtype=object) + Fraction(0)
    flat = TorsionState(zero, zero.copy(), Fraction(0))
    rows = []
    with _Timer() as t:
        values, nonzero_torsion = [], 0
        for pt in G.random_rational_points(n, points, opts.seed):
            pt = np.array(pt, dtype=object)
            du, d2u, exp_2u = log_profile_derivatives(Q, pt)
            new = conformal_change(flat, du, d2u, exp_2u=exp_2u, Q=Q)
            values.append(new.S)
            nonzero_torsion += int(np.any(new.tau != 0) or np.any(new.mu != 0))
    expected = Fraction(64 * n * (n + 2))
    spread = max(abs(v - expected) for v in values) / expected
    tol = opts.tol if opts.tol is not None else 1e-8
    rows.append(VerificationReport("conformal_extremal_scalar", n, opts.seed,
                                   "pass" if spread <= tol and min(values) > 0 else "fail", str(expected),
                                   str(values[0]), float(spread), t.ms))
    rows.append(exact_row("conformal_extremal_torsion_free", opts, n, 0, nonzero_torsion, t.ms))
    with _Timer() as t:
        state = TorsionState(zero, zero.copy(), Fraction(5))
        new = conformal_change(state, np.zeros(dim, dtype=object), zero, exp_2u=Fraction(4), Q=Q)
    rows.append(exact_row("conformal_constant_u", opts, n, Fraction(5, 4), new.S, t.ms))
    return rows


REGISTRY: dict[str, Callable[[CheckOptions], list[VerificationReport]]] = {
    "constants": check_constants,
    "sphere": check_sphere,
    "curvature-integrals": check_curvature_integrals,
    "normal-coords": check_normal_coords,
    "gradient": check_gradient,
    "wedge": check_wedge,
    "quadrature": check_quadrature,
    "conformal": check_conformal,
}


def run_check(name: str, opts: CheckOptions) -> list[VerificationReport]:
    return REGISTRY[name](opts)
