"""Closed-form integrals: the radial Beta-type integral, monomials over
S^{4n-1}, and the chained reduction of the model integrals over R^{4n} x R^3.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .scalar import ExactScalar, Rational, gamma_exact
from . import kernels


class DivergentIntegral(ValueError):
    pass


def jl_coefficient(gamma: Rational, alpha: Rational, gamma_fn=gamma_exact) -> tuple[ExactScalar, Fraction]:
    """int_0^inf b^gamma (a^2+b^2)^(-alpha/2) db = coef * a^power; returns (coef, power)."""
    if not (alpha - gamma - 1 > 0 and gamma + 1 > 0):
        raise DivergentIntegral(f"integral diverges for gamma={gamma}, alpha={alpha}")
    if isinstance(gamma, int) and isinstance(alpha, int):
        # integer chain: skip Fraction arithmetic, it dominates large-n sweeps
        power = gamma - alpha + 1
        half_beta = getattr(gamma_fn, "half_beta", None)
        if half_beta is not None:
            return half_beta(gamma + 1, alpha - gamma - 1), power
        args = (Fraction(gamma + 1, 2), Fraction(alpha - gamma - 1, 2), Fraction(alpha, 2))
    else:
        gamma, alpha = Fraction(gamma), Fraction(alpha)
        args = ((gamma + 1) / 2, (alpha - gamma - 1) / 2, alpha / 2)
        power = gamma - alpha + 1
    coef = gamma_fn(args[0]) * gamma_fn(args[1]) / (2 * gamma_fn(args[2]))
    return coef, power


def jl_integral(a, gamma: Rational, alpha: Rational) -> ExactScalar:
    coef, power = jl_coefficient(gamma, alpha)
    return coef * ExactScalar.coerce(a).pow_rational(power)


def radial_model_integral(n: int, powers: Sequence[int], gamma_fn=gamma_exact) -> ExactScalar:
    """int_0^inf int_{R^3} r^A (t1)^C [(1+r^2)^2 + |w|^2]^(-B) dt dr.

    ``powers`` is (A, B) or (A, B, C) with C even. ``A`` must already
    include the polar Jacobian r^(4n-1). The t-integrals run over the whole
    line, so each contributes twice the half-line value. ``gamma_fn`` picks
    the number type (``gamma_symbolic`` keeps Gamma symbolic).
    """
    A, B = powers[0], powers[1]
    C = powers[2] if len(powers) > 2 else 0
    if A < 4 * n - 1:
        raise ValueError("the r power must include the polar Jacobian r^(4n-1)")
    if C % 2:
        return gamma_fn(1) * 0  # zero in the caller's number type
    total, alpha = _t_chain(B, C, gamma_fn)
    # left with (1+r^2)^(-alpha) = (1^2 + r^2)^(-2 alpha / 2)
    coef, _ = jl_coefficient(A, 2 * alpha, gamma_fn)
    return total * coef


@lru_cache(maxsize=4096)
def _t_chain(B: int, C: int, gamma_fn):
    """t^1, t^2, t^3 stages; returns (coefficient, remaining power of 1+r^2)."""
    total = gamma_fn(1)
    alpha = 2 * B
    for gamma in (C, 0, 0):
        coef, power = jl_coefficient(gamma, alpha, gamma_fn)
        total = total * 2 * coef
        alpha = -power
    return total, alpha


# ---------------------------------------------------------------------------
# sphere monomials

def _check_exponents(n: int, alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != 4 * n or any(a < 0 for a in alpha):
        raise ValueError(f"need {4 * n} non-negative exponents")
    return alpha


@lru_cache(maxsize=65536)
def sphere_monomial_rational(n: int, alpha: tuple[int, ...]) -> Fraction:
    """The rational q with int_{S^{4n-1}} zeta^alpha = q * pi^{2n}."""
    if any(a % 2 for a in alpha):
        return Fraction(0)
    total = sum(alpha)
    num = math.prod(math.factorial(a) for a in alpha)
    den = 2 ** total * math.prod(math.factorial(a // 2) for a in alpha) \
        * math.factorial((total + 4 * n - 2) // 2)
    return Fraction(2 * num, den)


def sphere_monomial(n: int, alpha: Sequence[int]) -> ExactScalar:
    alpha = _check_exponents(n, alpha)
    return sphere_monomial_rational(n, alpha) * ExactScalar.pi(2 * n)


def sphere_monomial_gamma(n: int, alpha: Sequence[int]) -> ExactScalar:
    """Same integral as 2 prod Gamma(beta_s) / Gamma(sum beta_s)."""
    alpha = _check_exponents(n, alpha)
    if any(a % 2 for a in alpha):
        return ExactScalar()
    betas = [Fraction(a + 1, 2) for a in alpha]
    num = ExactScalar.rational(2)
    for b in betas:
        num = num * gamma_exact(b)
    return num / gamma_exact(sum(betas))


def sphere_area(n: int) -> ExactScalar:
    return sphere_monomial(n, (0,) * (4 * n))


def sample_sphere(n: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((samples, 4 * n))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return pts


def sphere_moments_mc(n: int, alphas: Sequence[Sequence[int]], samples: int,
                      seed: int, batch: int = 200_000) -> list[tuple[float, float]]:
    """Monte Carlo (estimate, standard error) for several exponent vectors
    sharing one stream of uniform points on S^{4n-1}."""
    if samples < 1000:
        raise ValueError("samples must be at least 1000")
    exps = np.array([_check_exponents(n, a) for a in alphas], dtype=np.int64).reshape(len(alphas), 4 * n)
    sums = np.zeros(len(alphas))
    sq = np.zeros(len(alphas))
    ss = np.random.SeedSequence(seed)
    done = 0
    for child in ss.spawn((samples + batch - 1) // batch):
        m = min(batch, samples - done)
        pts = sample_sphere(n, m, child)
        s, q = kernels.monomial_moments(pts, exps)
        sums += s
        sq += q
        done += m
    area = sphere_area(n).to_float()
    mean = sums / samples
    var = np.maximum(sq / samples - mean ** 2, 0.0)
    se = np.sqrt(var / (samples - 1))
    return [(area * m, area * e) for m, e in zip(mean, se)]


def sphere_monomial_mc(n: int, alpha: Sequence[int], samples: int, seed: int) -> tuple[float, float]:
    return sphere_moments_mc(n, [alpha], samples, seed)[0]
