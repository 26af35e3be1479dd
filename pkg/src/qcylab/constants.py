"""Exact constants of the fourth-order expansion of the Yamabe functional at
the rescaled extremal: S1, S2, S3 (numerator), S1~, S2~ (denominator),
Lambda(n) and c(n), and the truncated series assembly.

S2, S3 and S2~ are stored as coefficients of ||W||^2. Two routes:
  integrals   assembled from the sphere-curvature identities, the chi and
              17/720 correction coefficients, and the chained radial integral
  closed      the final closed forms, transcribed
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .integrals import radial_model_integral
from .scalar import ExactScalar, GammaProduct, ScalarError, gamma_exact, gamma_symbolic
from .sphere_curvature import CASES


class PiResidue(ScalarError):
    pass


# chi(x) = sum coef * (case integrand with zeta -> x), I = I^1
CHI_TERMS: tuple[tuple[Fraction, int], ...] = (
    (Fraction(-1, 2880), 1),
    (Fraction(-1, 480), 2),
    (Fraction(-1, 480), 3),
    (Fraction(-1, 576), 4),
    (Fraction(-1, 576), 5),
    (Fraction(-1, 288), 6),
)
# weight of chi~ = sum_i (case-7 integrand with I^i) (t^i)^2 in the gradient density
GRADIENT_CORRECTION = Fraction(17, 720)


def _chi_numerators() -> dict[int, Fraction]:
    """Numerators over (2n+shift)! of int chi / (pi^{2n} ||W||^2), keyed by shift."""
    out: dict[int, Fraction] = {}
    for c, k in CHI_TERMS:
        out[CASES[k].shift] = out.get(CASES[k].shift, Fraction(0)) + c * CASES[k].coefficient
    return out


def chi_sphere_rational(n: int) -> Fraction:
    """q with int_{S^{4n-1}} chi = q pi^{2n} ||W||^2."""
    return sum((v / math.factorial(2 * n + shift) for shift, v in _chi_numerators().items()),
               Fraction(0))


def chi_tilde_sphere_rational(n: int) -> Fraction:
    """q with int_{S^{4n-1}} (case-7 integrand) = q pi^{2n} ||W||^2, any I^i."""
    return CASES[7].coefficient / math.factorial(2 * n + CASES[7].shift)


def critical_ratio(n: int) -> Fraction:
    """2/2* = (2n+2)/(2n+3)."""
    return Fraction(2 * n + 2, 2 * n + 3)


@dataclass(frozen=True)
class ExpansionBundle:
    n: int
    s1: ExactScalar
    s2: ExactScalar
    s3: ExactScalar
    ts1: ExactScalar
    ts2: ExactScalar
    lam: ExactScalar
    c: Fraction

    def rows(self) -> list[tuple[str, ExactScalar]]:
        return [("S1", self.s1), ("S2", self.s2), ("S3", self.s3), ("S1~", self.ts1),
                ("S2~", self.ts2), ("Lambda", self.lam), ("c", ExactScalar.rational(self.c))]


def _integral_route(n: int, gamma_fn, rational, pi):
    # factorials enter as Gamma values so the symbolic number type can cancel them
    def fact(k):
        return gamma_fn(k + 1)

    area = 2 * pi(2 * n) / fact(2 * n - 1)
    num = rational(8 * (n + 1) * (n + 2)) * fact(2 * n)
    den = fact(2 * n) / 8
    (shift, chi_num), = _chi_numerators().items()
    chi = rational(chi_num) * pi(2 * n) / fact(2 * n + shift)
    chi_t = rational(CASES[7].coefficient) * pi(2 * n) / fact(2 * n + CASES[7].shift)

    def J(*powers):
        return radial_model_integral(n, powers, gamma_fn)

    s1 = num * area * J(4 * n + 1, 2 * n + 3)
    s2 = num * chi * J(4 * n + 5, 2 * n + 3)
    # sum_i (t^i)^2 integrates like 3 (t^1)^2
    s3 = num * rational(GRADIENT_CORRECTION) * chi_t * 3 * J(4 * n + 5, 2 * n + 4, 2)
    ts1 = den * area * J(4 * n - 1, 2 * n + 3)
    ts2 = den * chi * J(4 * n + 3, 2 * n + 3)
    return s1, s2, s3, ts1, ts2


def integral_route(n: int):
    return _integral_route(n, gamma_exact, ExactScalar.rational, ExactScalar.pi)


def closed_route(n: int):
    pi = ExactScalar.pi(2 * n + 2)
    q = ExactScalar.rational
    s1 = q(Fraction(2 * n * (n + 2), 4 ** (2 * n) * (2 * n + 1))) * pi
    s2 = q(Fraction(-11 * (n + 1) * (n + 2), 45 * 4 ** (2 * n + 3) * n * (2 * n + 1) ** 2)) * pi
    s3 = q(Fraction(17 * (n + 2), 30 * 4 ** (2 * n + 3) * n * (2 * n + 1) ** 2 * (2 * n + 3))) * pi
    ts1 = q(Fraction(1, 2 * 4 ** (2 * n + 2) * (2 * n + 1))) * pi
    ts2 = q(Fraction(-11, 90 * 4 ** (2 * n + 5) * (2 * n + 1) ** 2 * (2 * n + 2))) * pi
    return s1, s2, s3, ts1, ts2


def numerator_quartic_closed(n: int) -> ExactScalar:
    """(n+2)(-44n^2-110n-15) pi^{2n+2} / (90 4^{2n+3} n (2n+1)^2 (2n+3))."""
    return ExactScalar.rational(Fraction((n + 2) * (-44 * n * n - 110 * n - 15),
                                         90 * 4 ** (2 * n + 3) * n * (2 * n + 1) ** 2 * (2 * n + 3))) \
        * ExactScalar.pi(2 * n + 2)


def lambda_closed(n: int) -> ExactScalar:
    """16n(n+2) 2^{1/(2n+3)} (2n+1)^{-1/(2n+3)} pi^{(2n+2)/(2n+3)}."""
    k = Fraction(1, 2 * n + 3)
    return 16 * n * (n + 2) * ExactScalar.power(2, k) * ExactScalar.power(2 * n + 1, -k) \
        * ExactScalar.pi((2 * n + 2) * k)


def c_closed(n: int) -> Fraction:
    return Fraction(22 * n + 3, 2304 * n * n * (2 * n + 1) * (2 * n + 3))


def lambda_from(s1: ExactScalar, ts1: ExactScalar, n: int) -> ExactScalar:
    return s1 * ts1.pow_rational(-critical_ratio(n))


def lambda_consistency(n: int, s1: ExactScalar | None = None, ts1: ExactScalar | None = None) -> bool:
    if s1 is None or ts1 is None:
        d1, _, _, dt1, _ = integral_route(n)
        s1 = d1 if s1 is None else s1
        ts1 = dt1 if ts1 is None else ts1
    return lambda_from(s1, ts1, n) == lambda_closed(n)


def denominator_shift(n: int, ts1, ts2) -> Fraction:
    """-(2/2*) S2~/S1~, which must be rational."""
    return _rational(-critical_ratio(n) * (ts2 / ts1))


def _rational(x) -> Fraction:
    if isinstance(x, GammaProduct):
        x = x.collapse()
        if x.q != 0 and (x.e != 0 or x.gammas):
            raise PiResidue(f"pi or Gamma factors left in a ratio that must be rational: {x}")
        return x.q
    if not x.is_rational():
        raise PiResidue(f"{x} is not rational")
    return x.as_fraction()


def series_c(n: int, route: str = "integrals") -> Fraction:
    """c = -[(S2+S3)/S1 - (2/2*) S2~/S1~]."""
    s1, s2, s3, ts1, ts2 = integral_route(n) if route == "integrals" else closed_route(n)
    return -(_rational((s2 + s3) / s1) + denominator_shift(n, ts1, ts2))


def series_c_fast(n: int) -> Fraction:
    """series_c over the integral route with Gamma factors kept symbolic."""
    s1, s2, s3, ts1, ts2 = _integral_route(n, gamma_symbolic, GammaProduct.rational,
                                           GammaProduct.pi)
    return -(_rational(s2 / s1) + _rational(s3 / s1) + denominator_shift(n, ts1, ts2))


def derive_constants(n: int, route: str = "integrals") -> ExpansionBundle:
    if n < 1:
        raise ValueError("n must be positive")
    s1, s2, s3, ts1, ts2 = integral_route(n) if route == "integrals" else closed_route(n)
    lam = lambda_from(s1, ts1, n)
    c = -(_rational((s2 + s3) / s1) + denominator_shift(n, ts1, ts2))
    return ExpansionBundle(n, s1, s2, s3, ts1, ts2, lam, c)


# ---------------------------------------------------------------------------
# truncated series in eps


@dataclass(frozen=True)
class TruncatedSeries:
    """sum_k coeffs[k] eps^k + O(eps^{order+1})."""
    coeffs: tuple[ExactScalar, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = min(self.order, other.order)
        out = [ExactScalar() for _ in range(m + 1)]
        for i in range(m + 1):
            for j in range(m + 1 - i):
                out[i + j] = out[i + j] + self.coeffs[i] * other.coeffs[j]
        return TruncatedSeries(tuple(out))

    def power(self, p: Fraction) -> "TruncatedSeries":
        """(a0 (1 + u))^p = a0^p sum_k binom(p, k) u^k, truncated."""
        a0 = self.coeffs[0]
        u = TruncatedSeries((ExactScalar(),) + tuple(c / a0 for c in self.coeffs[1:]))
        term = TruncatedSeries((ExactScalar.rational(1),) + (ExactScalar(),) * self.order)
        total = term
        binom = Fraction(1)
        for k in range(1, self.order + 1):
            binom = binom * (p - k + 1) / k
            term = term * u
            total = TruncatedSeries(tuple(a + binom * b for a, b in zip(total.coeffs, term.coeffs)))
        head = a0.pow_rational(p)
        return TruncatedSeries(tuple(head * c for c in total.coeffs))


def assemble_expansion(n: int, wqc_norm_sq, bundle: ExpansionBundle | None = None) -> TruncatedSeries:
    """Upsilon = N * D^{-2/2*} through eps^4 with N = S1 + (S2+S3)|W|^2 eps^4,
    D = S1~ + S2~ |W|^2 eps^4."""
    b = bundle or derive_constants(n)
    w = ExactScalar.coerce(wqc_norm_sq)
    zero = ExactScalar()
    N = TruncatedSeries((b.s1, zero, zero, zero, (b.s2 + b.s3) * w))
    D = TruncatedSeries((b.ts1, zero, zero, zero, b.ts2 * w))
    return N * D.power(-critical_ratio(n))


def binomial_step_errors(n: int, eps_values=(Fraction(1, 100), Fraction(1, 1000)),
                         wqc_norm_sq: Fraction = Fraction(1), dps: int = 60) -> list[float]:
    """|[S1~ + S2~ eps^4]^{-p} - S1~^{-p}(1 - p (S2~/S1~) eps^4)| at each eps.

    The error is O(eps^8), below double precision at these eps, so the
    evaluation runs in mpmath at ``dps`` digits.
    """
    _, _, _, ts1, ts2 = integral_route(n)
    p = critical_ratio(n)
    with mpmath.workdps(dps):
        a = _to_mp(ts1)
        b = _to_mp(ts2) * mpmath.mpf(wqc_norm_sq.numerator) / wqc_norm_sq.denominator
        pm = mpmath.mpf(p.numerator) / p.denominator
        out = []
        for e in eps_values:
            e4 = (mpmath.mpf(e.numerator) / e.denominator) ** 4
            exact = (a + b * e4) ** (-pm)
            trunc = a ** (-pm) * (1 - pm * (b / a) * e4)
            out.append(float(abs(exact - trunc)))
    return out


def _to_mp(x: ExactScalar):
    total = mpmath.mpf(0)
    for sign, exps in x.terms:
        v = mpmath.mpf(sign)
        for base, e in exps:
            b = mpmath.pi if base == "pi" else mpmath.mpf(base)
            v *= b ** (mpmath.mpf(e.numerator) / e.denominator)
        total += v
    return total
