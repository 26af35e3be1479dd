"""Exact numbers of the form sum of +-prod p^e * pi^q with rational exponents.

A value is a finite sum of monomials. Each monomial carries a sign and an
exponent map from bases (prime integers or the symbol ``"pi"``) to rational
exponents, so rational coefficients live inside the prime-power exponents.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from sympy import factorint

PI = "pi"

Rational = Union[int, Fraction]


class ScalarError(ValueError):
    pass


class MultiTermPower(ScalarError):
    """Raised when a rational power of a sum or of a negative value is requested."""


class UnsupportedArgument(ScalarError):
    pass


class ParseError(ScalarError):
    pass


@lru_cache(maxsize=4096)
def _factor(k: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(k).items()))


def _base_key(base) -> tuple[int, int]:
    # pi sorts first, then primes ascending
    return (0, 0) if base == PI else (1, base)


def _split(exps: Mapping) -> tuple[Fraction, tuple]:
    """Split a monomial into (rational coefficient, key of its irrational part).

    The irrational part keeps the whole pi exponent and the fractional
    parts (in [0, 1)) of the prime exponents. Two monomials are rational
    multiples of each other iff their keys agree.
    """
    coef = Fraction(1)
    irr = []
    for base, e in exps.items():
        if base == PI:
            irr.append((PI, e))
            continue
        whole = math.floor(e)
        frac = e - whole
        if whole:
            coef *= Fraction(base) ** whole
        if frac:
            irr.append((base, frac))
    irr.sort(key=lambda item: _base_key(item[0]))
    return coef, tuple(irr)


def _monomial_from(coef: Fraction, irr: Iterable) -> tuple[int, tuple]:
    sign = 1 if coef > 0 else -1
    exps: dict = {}
    for base, e in irr:
        exps[base] = exps.get(base, Fraction(0)) + e
    for p, k in _factor(abs(coef.numerator)):
        exps[p] = exps.get(p, Fraction(0)) + k
    for p, k in _factor(coef.denominator):
        exps[p] = exps.get(p, Fraction(0)) - k
    items = tuple(sorted(((b, Fraction(e)) for b, e in exps.items() if e != 0),
                         key=lambda item: _base_key(item[0])))
    return sign, items


class ExactScalar:
    """Immutable exact value in canonical form.

    ``terms`` is a tuple of ``(sign, ((base, exponent), ...))`` with bases
    sorted (pi first) and monomials sorted by their irrational key.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple[int, Iterable]] = ()):
        merged: dict[tuple, Fraction] = {}
        for sign, exps in terms:
            coef, key = _split(dict(exps))
            merged[key] = merged.get(key, Fraction(0)) + sign * coef
        canon = [_monomial_from(c, key) for key, c in merged.items() if c != 0]
        canon.sort(key=lambda m: _sort_key(m))
        object.__setattr__(self, "terms", tuple(canon))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def rational(cls, q: Rational) -> "ExactScalar":
        q = Fraction(q)
        if q == 0:
            return cls()
        return cls([(1, ())]) * _rational_monomial(q)

    @classmethod
    def pi(cls, e: Rational = 1) -> "ExactScalar":
        return cls([(1, ((PI, Fraction(e)),))])

    @classmethod
    def power(cls, base: int, e: Rational) -> "ExactScalar":
        """``base**e`` for a positive integer base."""
        if base <= 0:
            raise ScalarError("bases must be positive integers")
        return cls.rational(base).pow_rational(Fraction(e))

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"cannot convert {type(value).__name__} to ExactScalar")

    # structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_rational(self) -> bool:
        return all(not _split(dict(exps))[1] for _, exps in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is not rational")
        total = Fraction(0)
        for sign, exps in self.terms:
            total += sign * _split(dict(exps))[0]
        return total

    def pi_exponents(self) -> set[Fraction]:
        return {dict(exps).get(PI, Fraction(0)) for _, exps in self.terms}

    def coefficient_and_key(self) -> tuple[Fraction, tuple]:
        """For a monomial: its rational coefficient and irrational part."""
        if not self.is_monomial():
            raise ScalarError("not a single monomial")
        sign, exps = self.terms[0]
        coef, key = _split(dict(exps))
        return sign * coef, key

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar((-s, e) for s, e in self.terms)

    def __sub__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = []
        for s1, e1 in self.terms:
            for s2, e2 in other.terms:
                exps = dict(e1)
                for b, e in e2:
                    exps[b] = exps.get(b, Fraction(0)) + e
                out.append((s1 * s2, tuple(exps.items())))
        return ExactScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by exact zero")
        if not other.is_monomial():
            raise MultiTermPower("division by a multi-term value")
        sign, exps = other.terms[0]
        inverse = ExactScalar([(sign, tuple((b, -e) for b, e in exps))])
        return self * inverse

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) / self

    def pow_rational(self, e: Rational) -> "ExactScalar":
        e = Fraction(e)
        if len(self.terms) != 1:
            raise MultiTermPower(f"cannot raise {self} to a rational power")
        sign, exps = self.terms[0]
        if sign < 0:
            raise MultiTermPower(f"cannot raise negative {self} to a rational power")
        return ExactScalar([(1, tuple((b, x * e) for b, x in exps))])

    def __pow__(self, e):
        if isinstance(e, int) and e >= 0:
            out = ExactScalar.rational(1)
            for _ in range(e):
                out = out * self
            return out
        return self.pow_rational(e)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash(self.terms)
            object.__setattr__(self, "_hash", h)
        return h

    # float projection ---------------------------------------------------
    def to_float(self) -> float:
        total = 0.0
        for sign, exps in self.terms:
            coef, irr = _split(dict(exps))
            value = float(coef)
            for base, e in irr:
                value *= (math.pi if base == PI else float(base)) ** float(e)
            total += sign * value
        return total

    def __float__(self):
        return self.to_float()

    # text ---------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"ExactScalar({render(self)!r})"


def _sort_key(monomial):
    _, exps = monomial
    coef, key = _split(dict(exps))
    return tuple((_base_key(b), e) for b, e in key)


def _rational_monomial(q: Fraction) -> ExactScalar:
    sign = 1 if q > 0 else -1
    exps: dict = {}
    for p, k in _factor(abs(q.numerator)):
        exps[p] = Fraction(k)
    for p, k in _factor(q.denominator):
        exps[p] = Fraction(-k)
    return ExactScalar([(sign, tuple(exps.items()))])


def gamma_exact(t: Rational) -> ExactScalar:
    """Gamma at a positive integer or a non-negative integer plus one half."""
    t = Fraction(t)
    if t.denominator == 1 and t >= 1:
        return ExactScalar.rational(math.factorial(int(t) - 1))
    if t.denominator == 2 and t > 0:
        m = int(t - Fraction(1, 2))
        double_fact = math.prod(range(2 * m - 1, 0, -2))
        return ExactScalar.rational(Fraction(double_fact, 2 ** m)) * ExactScalar.pi(Fraction(1, 2))
    raise UnsupportedArgument(f"gamma_exact needs an integer or half-integer > 0, got {t}")


class GammaProduct:
    """num/den * pi^(pi2/2) * prod Gamma(a/2)^m with Gamma left unevaluated.

    Ratios of large factorials collapse to small rationals in ``collapse``
    without ever forming the factorials, which keeps sweeps to large n cheap.
    Plain ints throughout; arguments and the pi exponent are stored doubled.
    Supports products, quotients and integer/rational scaling only.
    """
    __slots__ = ("num", "den", "pi2", "gam")

    def __init__(self, num: int = 1, den: int = 1, pi2: int = 0, gam: dict | None = None):
        self.num, self.den, self.pi2, self.gam = num, den, pi2, gam or {}

    @classmethod
    def of_gamma(cls, t: Rational) -> "GammaProduct":
        if not isinstance(t, Fraction):
            t = Fraction(t)
        if t.numerator <= 0 or t.denominator not in (1, 2):
            raise UnsupportedArgument(f"gamma needs an integer or half-integer > 0, got {t}")
        return cls(gam={t.numerator * (2 // t.denominator): 1})

    @classmethod
    def of_doubled(cls, t2: int) -> "GammaProduct":
        """Gamma(t2 / 2) for a positive int t2."""
        if t2 <= 0:
            raise UnsupportedArgument(f"gamma needs a positive argument, got {t2}/2")
        return cls(gam={t2: 1})

    @classmethod
    def rational(cls, q: Rational) -> "GammaProduct":
        q = Fraction(q)
        return cls(q.numerator, q.denominator)

    @classmethod
    def pi(cls, e: Rational) -> "GammaProduct":
        e2 = 2 * Fraction(e)
        if e2.denominator != 1:
            raise UnsupportedArgument("pi exponents must be multiples of 1/2")
        return cls(pi2=int(e2))

    @staticmethod
    def _lift(other):
        if isinstance(other, GammaProduct):
            return other
        if isinstance(other, int):
            return GammaProduct(other)
        if isinstance(other, Fraction):
            return GammaProduct(other.numerator, other.denominator)
        return None

    def _combine(self, o: "GammaProduct", sign: int) -> "GammaProduct":
        if o.gam:
            g = dict(self.gam)
            for t2, m in o.gam.items():
                g[t2] = g.get(t2, 0) + sign * m
        else:
            g = self.gam  # never mutated in place, so sharing is safe
        if sign > 0:
            return GammaProduct(self.num * o.num, self.den * o.den, self.pi2 + o.pi2, g)
        if o.num == 0:
            raise ZeroDivisionError("division by zero")
        return GammaProduct(self.num * o.den, self.den * o.num, self.pi2 - o.pi2, g)

    def __mul__(self, other):
        if type(other) is int:
            return GammaProduct(self.num * other, self.den, self.pi2, self.gam)
        o = self._lift(other)
        return NotImplemented if o is None else self._combine(o, 1)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self._combine(o, -1)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    @property
    def q(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def e(self) -> Fraction:
        return Fraction(self.pi2, 2)

    def collapse(self) -> "GammaProduct":
        """Rewrite each Gamma(a) as Gamma(base) * base (base+1) ... (a-1) with
        base the smallest argument of its integer class."""
        num, den = self.num, self.den
        left: dict[int, int] = {}
        for parity in (0, 1):
            members = [(t2, m) for t2, m in self.gam.items() if m and t2 % 2 == parity]
            if not members:
                continue
            base = min(t2 for t2, _ in members)
            total = 0
            for t2, m in members:
                # Gamma(t)/Gamma(b) = prod_{k=b}^{t-1} k, in doubled units
                step_num = math.prod(range(base, t2, 2))
                step_den = 2 ** ((t2 - base) // 2)
                if m > 0:
                    num *= step_num ** m
                    den *= step_den ** m
                else:
                    num *= step_den ** -m
                    den *= step_num ** -m
                total += m
            if total:
                left[base] = total
        return GammaProduct(num, den, self.pi2, left)

    @property
    def gammas(self) -> tuple[tuple[Fraction, int], ...]:
        return tuple(sorted((Fraction(t2, 2), m) for t2, m in self.gam.items() if m))

    def to_exact(self) -> "ExactScalar":
        out = ExactScalar.rational(self.q) * ExactScalar.pi(self.e)
        for t, m in self.gammas:
            g = gamma_exact(t)
            out = out * (g ** m if m > 0 else 1 / g ** (-m))
        return out

    def __repr__(self):
        return f"GammaProduct({self.q} * pi^{self.e} * {self.gammas})"


def gamma_symbolic(t: Rational) -> GammaProduct:
    """Gamma(t) kept unevaluated."""
    return GammaProduct.of_gamma(t)


def _beta_half(p2: int, q2: int) -> GammaProduct:
    """Gamma(p2/2) Gamma(q2/2) / (2 Gamma((p2+q2)/2)) in one allocation."""
    if p2 <= 0 or q2 <= 0:
        raise UnsupportedArgument(f"gamma needs positive arguments, got {p2}/2, {q2}/2")
    gam = {p2: 1}
    gam[q2] = gam.get(q2, 0) + 1
    gam[p2 + q2] = -1
    return GammaProduct(1, 2, 0, gam)


# integer-argument callers pass 2t directly and skip Fraction construction
gamma_symbolic.doubled = GammaProduct.of_doubled
gamma_symbolic.half_beta = _beta_half


# rendering / parsing ------------------------------------------------------

def _fmt_exp(e: Fraction) -> str:
    if e.denominator == 1 and e > 0:
        return str(e.numerator)
    return f"({e.numerator})" if e.denominator == 1 else f"({e.numerator}/{e.denominator})"


def _render_monomial(sign: int, exps) -> str:
    coef, irr = _split(dict(exps))
    factors = [] if coef == 1 and irr else [str(coef)]
    for base, e in irr:
        name = "pi" if base == PI else str(base)
        factors.append(name if e == 1 else f"{name}^{_fmt_exp(e)}")
    text = " * ".join(factors)
    return text if sign > 0 else "-" + text


def render(x: ExactScalar) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for i, (sign, exps) in enumerate(x.terms):
        text = _render_monomial(sign, exps)
        if i == 0:
            parts.append(text)
        elif text.startswith("-"):
            parts.append(" - " + text[1:])
        else:
            parts.append(" + " + text)
    return "".join(parts)


_FACTOR = re.compile(
    r"""^(?:
        (?P<num>\d+)(?:/(?P<den>\d+))?
      | (?P<base>pi|\d+)\^(?:(?P<int>\d+)|\((?P<enum>-?\d+)(?:/(?P<eden>\d+))?\))
      | (?P<bare>pi)
    )$""",
    re.VERBOSE,
)


def _parse_monomial(text: str) -> ExactScalar:
    text = text.strip()
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:].strip()
    elif text.startswith("+"):
        text = text[1:].strip()
    value = ExactScalar.rational(sign)
    for raw in text.split("*"):
        m = _FACTOR.match(raw.strip())
        if m is None:
            raise ParseError(f"bad factor {raw!r}")
        if m.group("num") is not None:
            value = value * Fraction(int(m.group("num")), int(m.group("den") or 1))
        elif m.group("bare"):
            value = value * ExactScalar.pi()
        else:
            if m.group("int") is not None:
                e = Fraction(int(m.group("int")))
            else:
                e = Fraction(int(m.group("enum")), int(m.group("eden") or 1))
            base = m.group("base")
            value = value * (ExactScalar.pi(e) if base == "pi" else ExactScalar.power(int(base), e))
    return value


def parse(text: str) -> ExactScalar:
    text = text.strip()
    if text == "0":
        return ExactScalar()
    # split on binary +/- that sit outside parentheses
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0 and text[i - 1] == " " and text[i + 1:i + 2] == " ":
            pieces.append(text[start:i])
            start = i
    pieces.append(text[start:])
    total = ExactScalar()
    for piece in pieces:
        piece = piece.strip()
        if piece.startswith("+"):
            piece = piece[1:]
        elif piece.startswith("-"):
            piece = "-" + piece[1:].strip()
        total = total + _parse_monomial(piece)
    return total


def as_scalar(value) -> ExactScalar:
    return ExactScalar.coerce(value)
