"""The flat model G(H) = H^n x Im(H): contact forms, left-invariant frame,
parabolic dilations, the gauge, the extremal profile F^eps with its
derivatives, and numeric evaluation of the Yamabe functional by reduced
quadrature in (r, s) = (|p|, |w|).

Coordinates are (x^1..x^{4n}, t^1..t^3). Vector fields and 1-forms are
coefficient arrays of length 4n+3 in that order.
"""
from __future__ import annotations

import math
import warnings
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .integrals import sphere_area
from .quaternion import QuaternionStructure, build_structure


class QuadratureNonConvergent(RuntimeError):
    pass


def _split(pt, n: int):
    pt = np.asarray(pt)
    return pt[: 4 * n], pt[4 * n:]


def frame_fields(Q: QuaternionStructure, pt) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of X_a = d_a + 2 I^i_{ba} x^b d_{t_i} and T_i = 2 d_{t_i}.

    Returns arrays of shape (4n, 4n+3) and (3, 4n+3); object dtype input is
    kept exact.
    """
    x, _ = _split(pt, Q.n)
    dim = Q.dim
    dtype = object if np.asarray(pt).dtype == object else float
    X = np.zeros((dim, dim + 3), dtype=dtype)
    for a in range(dim):
        X[a, a] = 1
        for i in range(3):
            X[a, dim + i] = 2 * sum(Q.I[i][b, a] * x[b] for b in range(dim))
    T = np.zeros((3, dim + 3), dtype=dtype)
    for i in range(3):
        T[i, dim + i] = 2
    return X, T


def contact_forms(Q: QuaternionStructure, pt) -> np.ndarray:
    """Theta^i = (1/2) dt^i - I^i_{ab} x^a dx^b as (3, 4n+3) coefficients."""
    x, _ = _split(pt, Q.n)
    dim = Q.dim
    dtype = object if np.asarray(pt).dtype == object else float
    theta = np.zeros((3, dim + 3), dtype=dtype)
    for i in range(3):
        for b in range(dim):
            theta[i, b] = -sum(Q.I[i][a, b] * x[a] for a in range(dim))
        theta[i, dim + i] = Fraction(1, 2) if dtype is object else 0.5
    return theta


def dilate(s, pt, n: int):
    if s <= 0:
        raise ValueError("dilation factor must be positive")
    x, t = _split(pt, n)
    return np.concatenate([s * x, s * s * t])


def norms(pt, n: int):
    """(|p|^2, |w|^2)."""
    x, t = _split(pt, n)
    return sum(x * x), sum(t * t)


def gauge_fourth(pt, n: int):
    """rho^4 = |p|^4 + |w|^2, exact for exact input."""
    p2, w2 = norms(pt, n)
    return p2 * p2 + w2


def gauge(pt, n: int) -> float:
    return float(gauge_fourth(pt, n)) ** 0.25


# ---------------------------------------------------------------------------
# extremal profile


@dataclass(frozen=True)
class ExtremalProfile:
    n: int
    eps: float = 1.0

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    def base(self, pt):
        """A = (eps^2 + |p|^2)^2 + |w|^2."""
        p2, w2 = norms(pt, self.n)
        e2 = self.eps * self.eps
        return (e2 + p2) ** 2 + w2

    def value(self, pt):
        n = self.n
        return self.eps ** (2 * (n + 1)) * self.base(pt) ** (-(n + 1))

    def base_derivatives(self, Q: QuaternionStructure, pt):
        """(X_a A, T_i A)."""
        x, t = _split(pt, self.n)
        p2 = sum(x * x)
        lead = self.eps * self.eps + p2
        XA = np.array([4 * (lead * x[a] + sum(t[i] * sum(Q.I[i][b, a] * x[b] for b in range(Q.dim))
                                              for i in range(3))) for a in range(Q.dim)])
        TA = np.array([4 * t[i] for i in range(3)])
        return XA, TA

    def gradient(self, Q: QuaternionStructure, pt):
        """Closed-form (X_a F^eps, T_i F^eps)."""
        n = self.n
        A = self.base(pt)
        XA, TA = self.base_derivatives(Q, pt)
        factor = -(n + 1) * self.eps ** (2 * n + 2) * A ** (-(n + 2))
        return factor * XA, factor * TA

    def grad_sq_closed(self, pt):
        """16(n+1)^2 eps^{4n+4} A^{-2n-3} |p|^2."""
        n = self.n
        p2, _ = norms(pt, n)
        return 16 * (n + 1) ** 2 * self.eps ** (4 * n + 4) * self.base(pt) ** (-(2 * n + 3)) * p2


def grad_F_eps(Q: QuaternionStructure, eps: float, pt):
    return ExtremalProfile(Q.n, eps).gradient(Q, np.asarray(pt, dtype=float))


def directional_fd(func: Callable, pt, direction, step: float = 1e-5) -> float:
    """Central difference of func along a constant-coefficient direction."""
    pt = np.asarray(pt, dtype=float)
    direction = np.asarray(direction, dtype=float)
    return (func(pt + step * direction) - func(pt - step * direction)) / (2 * step)


def grad_fd(Q: QuaternionStructure, func: Callable, pt, step: float = 1e-5):
    """Finite-difference X_a f and T_i f, freezing the frame at pt."""
    X, T = frame_fields(Q, np.asarray(pt, dtype=float))
    return (np.array([directional_fd(func, pt, X[a], step) for a in range(Q.dim)]),
            np.array([directional_fd(func, pt, T[i], step) for i in range(3)]))


def log_profile_derivatives(Q: QuaternionStructure, pt):
    """u = -(1/2) ln A for the unit extremal, with du[a] = X_a u and
    d2u[a, b] = X_b X_a u. Works exactly on Fraction input (u itself is
    returned as exp(2u) = 1/A to stay exact)."""
    n = Q.n
    x, t = _split(pt, n)
    prof = ExtremalProfile(n, 1)
    A = prof.base(pt)
    XA, _ = prof.base_derivatives(Q, pt)
    lead = 1 + sum(x * x)
    Itx = [[sum(Q.I[i][b, a] * x[b] for b in range(Q.dim)) for a in range(Q.dim)] for i in range(3)]
    dim = Q.dim
    XXA = np.empty((dim, dim), dtype=object)
    for a in range(dim):
        for b in range(dim):
            val = 2 * x[a] * x[b] + (lead if a == b else 0)
            val += sum(t[i] * Q.I[i][b, a] for i in range(3))
            val += 2 * sum(Itx[j][b] * Itx[j][a] for j in range(3))
            XXA[a, b] = 4 * val
    du = np.array([-XA[a] / (2 * A) for a in range(dim)], dtype=object)
    d2u = np.empty((dim, dim), dtype=object)
    for a in range(dim):
        for b in range(dim):
            d2u[a, b] = -XXA[a, b] / (2 * A) + XA[a] * XA[b] / (2 * A * A)
    return du, d2u, 1 / A


# ---------------------------------------------------------------------------
# radial reduction and the Yamabe functional


@dataclass(frozen=True)
class RadialProfile:
    """f(r, s) with r = |p|, s = |w|, plus its partial derivatives."""
    n: int
    f: Callable[[float, float], float]
    f_r: Callable[[float, float], float]
    f_s: Callable[[float, float], float]
    scales: tuple[float, float] = (1.0, 1.0)  # natural breakpoints in r and s

    def grad_sq(self, r: float, s: float) -> float:
        # |X f|^2 = f_r^2 + 4 r^2 f_s^2 for f depending on (|p|, |w|) only
        return self.f_r(r, s) ** 2 + 4 * r * r * self.f_s(r, s) ** 2


def extremal_radial(n: int, eps: float = 1.0) -> RadialProfile:
    e2 = eps * eps
    c = eps ** (2 * n + 2)

    def A(r, s):
        return (e2 + r * r) ** 2 + s * s

    return RadialProfile(
        n,
        f=lambda r, s: c * A(r, s) ** (-(n + 1)),
        f_r=lambda r, s: -(n + 1) * c * A(r, s) ** (-(n + 2)) * 4 * r * (e2 + r * r),
        f_s=lambda r, s: -(n + 1) * c * A(r, s) ** (-(n + 2)) * 2 * s,
        scales=(eps, e2),
    )


def volume_factor(n: int) -> float:
    """Vol_Theta = ((2n)!/8) dt dx; times |S^{4n-1}| and 4 pi from polar reduction."""
    return math.factorial(2 * n) / 8 * sphere_area(n).to_float() * 4 * math.pi


@dataclass(frozen=True)
class QuadratureConfig:
    epsabs: float = 0.0
    epsrel: float = 1e-10
    limit: int = 400


def _quad(func, a, b, cfg: QuadratureConfig):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(func, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel, limit=cfg.limit)
        except integrate.IntegrationWarning as exc:
            raise QuadratureNonConvergent(str(exc)) from exc
    return val, err


def _half_line(func, scale: float, cfg: QuadratureConfig) -> float:
    # split at the profile's natural scale; [scale, inf) is mapped by quad
    v1, _ = _quad(func, 0.0, scale, cfg)
    v2, _ = _quad(func, scale, np.inf, cfg)
    return v1 + v2


def radial_integral(n: int, g: Callable[[float, float], float], scales=(1.0, 1.0),
                    cfg: QuadratureConfig | None = None) -> float:
    """int over G(H) of g(|p|, |w|) against Vol_Theta."""
    cfg = cfg or QuadratureConfig()
    rs, ss = scales

    def inner(r):
        # s scales like rho^2 ~ r^2 away from the origin: integrate in s = c sigma
        c = ss + r * r
        return _half_line(lambda sig: g(r, c * sig) * sig * sig, 1.0, cfg) * c ** 3 * r ** (4 * n - 1)

    return volume_factor(n) * _half_line(inner, rs, cfg)


def critical_exponent(n: int) -> float:
    """2* = 2Q/(Q-2) with Q = 4n+6."""
    return (2 * n + 3) / (n + 1)


def yamabe_parts(profile: RadialProfile, cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """(numerator, int f^{2*}) with numerator = 4(n+2)/(n+1) int |grad f|^2."""
    n = profile.n
    p = critical_exponent(n)
    num = 4 * (n + 2) / (n + 1) * radial_integral(n, profile.grad_sq, profile.scales, cfg)
    den = radial_integral(n, lambda r, s: profile.f(r, s) ** p, profile.scales, cfg)
    return num, den


def yamabe_functional(profile: RadialProfile, cfg: QuadratureConfig | None = None) -> float:
    num, den = yamabe_parts(profile, cfg)
    return num / den ** (2 / critical_exponent(profile.n))


def polar_mc_check(n: int, g_point: Callable[[np.ndarray, np.ndarray], np.ndarray],
                   g_radial: Callable[[float, float], float], samples: int, seed: int,
                   sigma: float = 1.0) -> tuple[float, float, float]:
    """Full (4n+3)-dimensional Monte Carlo of int g Vol_Theta by Gaussian
    importance sampling against the reduced (r, s) quadrature.

    Returns (mc estimate, standard error, reduced quadrature value).
    """
    rng = np.random.default_rng(seed)
    dim = 4 * n + 3
    pts = rng.standard_normal((samples, dim)) * sigma
    x, t = pts[:, : 4 * n], pts[:, 4 * n:]
    log_pdf = -0.5 * np.sum(pts * pts, axis=1) / sigma ** 2 - dim * math.log(sigma * math.sqrt(2 * math.pi))
    w = g_point(x, t) / np.exp(log_pdf) * (math.factorial(2 * n) / 8)
    est = float(w.mean())
    se = float(w.std(ddof=1) / math.sqrt(samples))
    return est, se, radial_integral(n, g_radial)


def decay_ratio(n: int, pts: np.ndarray) -> np.ndarray:
    """F(pt) (1 + rho(pt))^{4(n+1)} for rows of pts."""
    x, t = pts[:, : 4 * n], pts[:, 4 * n:]
    p2 = np.sum(x * x, axis=1)
    w2 = np.sum(t * t, axis=1)
    F = ((1 + p2) ** 2 + w2) ** (-(n + 1))
    rho = (p2 * p2 + w2) ** 0.25
    return F * (1 + rho) ** (4 * (n + 1))

