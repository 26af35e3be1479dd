"""Weighted polynomials and differential forms on (x^1..x^{4n}, t^1..t^3).

Weights: x -> 1, t -> 2, dx -> 1, dt -> 2. Coefficients are exact
Fractions; curvature enters by numeric substitution of a fixed exact R.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

Exps = tuple[int, ...]
Blade = tuple[int, ...]


@dataclass(frozen=True)
class Layout:
    n: int

    @property
    def nx(self) -> int:
        return 4 * self.n

    @property
    def size(self) -> int:
        return 4 * self.n + 3

    def t(self, i: int) -> int:
        """Coordinate index of t^{i+1}."""
        return 4 * self.n + i

    @property
    def weights(self) -> tuple[int, ...]:
        return (1,) * (4 * self.n) + (2, 2, 2)


@lru_cache(maxsize=None)
def layout(n: int) -> Layout:
    return Layout(n)


def _mono_weight(exps: Exps, nx: int) -> int:
    return sum(exps[:nx]) + 2 * sum(exps[nx:])


class GradedPoly:
    """Sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("lay", "terms")

    def __init__(self, lay: Layout, terms: Mapping[Exps, Fraction] | None = None):
        self.lay = lay
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    # constructors
    @classmethod
    def zero(cls, lay: Layout) -> "GradedPoly":
        return cls(lay)

    @classmethod
    def const(cls, lay: Layout, c) -> "GradedPoly":
        return cls(lay, {(0,) * lay.size: Fraction(c)})

    @classmethod
    def var(cls, lay: Layout, k: int, c=1) -> "GradedPoly":
        e = [0] * lay.size
        e[k] = 1
        return cls(lay, {tuple(e): Fraction(c)})

    @classmethod
    def linear(cls, lay: Layout, coeffs: Iterable, offset: int = 0) -> "GradedPoly":
        """sum_k coeffs[k] * (variable offset+k)."""
        out = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * lay.size
                e[offset + k] = 1
                out[tuple(e)] = Fraction(c)
        return cls(lay, out)

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def weight_of(self, exps: Exps) -> int:
        return _mono_weight(exps, self.lay.nx)

    def weights(self) -> set[int]:
        return {self.weight_of(e) for e in self.terms}

    def homogeneous_part(self, m: int) -> "GradedPoly":
        return GradedPoly(self.lay, {e: c for e, c in self.terms.items() if self.weight_of(e) == m})

    def truncate(self, max_weight: int) -> "GradedPoly":
        return GradedPoly(self.lay, {e: c for e, c in self.terms.items() if self.weight_of(e) <= max_weight})

    def t_even_part(self) -> "GradedPoly":
        """Terms in which every t^i appears to an even power."""
        nx = self.lay.nx
        return GradedPoly(self.lay, {e: c for e, c in self.terms.items()
                                     if all(k % 2 == 0 for k in e[nx:])})

    def depends_on_t(self) -> bool:
        nx = self.lay.nx
        return any(any(e[nx:]) for e in self.terms)

    # arithmetic
    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return GradedPoly(self.lay, out)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly(self.lay, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def scale(self, k) -> "GradedPoly":
        k = Fraction(k)
        if k == 0:
            return GradedPoly(self.lay)
        return GradedPoly(self.lay, {e: c * k for e, c in self.terms.items()})

    def mul(self, other: "GradedPoly", max_weight: int | None = None) -> "GradedPoly":
        out: dict[Exps, Fraction] = {}
        nx = self.lay.nx
        b_items = [(e, c, _mono_weight(e, nx)) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            w1 = _mono_weight(e1, nx)
            for e2, c2, w2 in b_items:
                if max_weight is not None and w1 + w2 > max_weight:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return GradedPoly(self.lay, out)

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def derivative(self, k: int) -> "GradedPoly":
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                f = list(e)
                f[k] -= 1
                out[tuple(f)] = c * e[k]
        return GradedPoly(self.lay, out)

    def euler(self) -> "GradedPoly":
        """P f with P = x^a d_a + 2 t^i d_i, built from derivatives."""
        out = GradedPoly(self.lay)
        for k, w in enumerate(self.lay.weights):
            out = out + GradedPoly.var(self.lay, k, w).mul(self.derivative(k))
        return out

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for k, p in enumerate(e):
                if p:
                    v *= point[k] ** p
            total += v
        return total

    def __eq__(self, other):
        return isinstance(other, GradedPoly) and self.terms == other.terms

    def __repr__(self):
        return f"GradedPoly({len(self.terms)} terms, weights {sorted(self.weights())})"


def _merge_sign(a: Blade, b: Blade) -> tuple[int, Blade] | None:
    if set(a) & set(b):
        return None
    inversions = sum(1 for i in a for j in b if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


class GradedForm:
    """Differential form: sorted coordinate blade -> GradedPoly coefficient."""

    __slots__ = ("lay", "comps")

    def __init__(self, lay: Layout, comps: Mapping[Blade, GradedPoly] | None = None):
        self.lay = lay
        self.comps = {b: p for b, p in (comps or {}).items() if not p.is_zero()}

    @classmethod
    def zero(cls, lay: Layout) -> "GradedForm":
        return cls(lay)

    @classmethod
    def function(cls, poly: GradedPoly) -> "GradedForm":
        return cls(poly.lay, {(): poly})

    @classmethod
    def basis(cls, lay: Layout, k: int, coef=None) -> "GradedForm":
        """coef * d(coordinate k)."""
        coef = coef if coef is not None else GradedPoly.const(lay, 1)
        return cls(lay, {(k,): coef})

    def is_zero(self) -> bool:
        return not self.comps

    def degree_set(self) -> set[int]:
        return {len(b) for b in self.comps}

    def blade_weight(self, blade: Blade) -> int:
        w = self.lay.weights
        return sum(w[k] for k in blade)

    def weights(self) -> set[int]:
        return {self.blade_weight(b) + pw for b, p in self.comps.items() for pw in p.weights()}

    def homogeneous_part(self, m: int) -> "GradedForm":
        return GradedForm(self.lay, {b: p.homogeneous_part(m - self.blade_weight(b))
                                     for b, p in self.comps.items()})

    def truncate(self, max_weight: int) -> "GradedForm":
        return GradedForm(self.lay, {b: p.truncate(max_weight - self.blade_weight(b))
                                     for b, p in self.comps.items()})

    def __add__(self, other: "GradedForm") -> "GradedForm":
        out = dict(self.comps)
        for b, p in other.comps.items():
            out[b] = out[b] + p if b in out else p
        return GradedForm(self.lay, out)

    def __neg__(self) -> "GradedForm":
        return GradedForm(self.lay, {b: -p for b, p in self.comps.items()})

    def __sub__(self, other: "GradedForm") -> "GradedForm":
        return self + (-other)

    def scale(self, k) -> "GradedForm":
        return GradedForm(self.lay, {b: p.scale(k) for b, p in self.comps.items()})

    def times(self, poly: GradedPoly, max_weight: int | None = None) -> "GradedForm":
        out = {}
        for b, p in self.comps.items():
            mw = None if max_weight is None else max_weight - self.blade_weight(b)
            out[b] = poly.mul(p, mw)
        return GradedForm(self.lay, out)

    def wedge(self, other: "GradedForm", max_weight: int | None = None) -> "GradedForm":
        out: dict[Blade, GradedPoly] = {}
        for b1, p1 in self.comps.items():
            for b2, p2 in other.comps.items():
                merged = _merge_sign(b1, b2)
                if merged is None:
                    continue
                sign, b = merged
                mw = None if max_weight is None else max_weight - self.blade_weight(b)
                if mw is not None and mw < 0:
                    continue
                prod = p1.mul(p2, mw)
                if sign < 0:
                    prod = -prod
                out[b] = out[b] + prod if b in out else prod
        return GradedForm(self.lay, out)

    def d(self) -> "GradedForm":
        out: dict[Blade, GradedPoly] = {}
        for b, p in self.comps.items():
            for k in range(self.lay.size):
                dp = p.derivative(k)
                if dp.is_zero():
                    continue
                merged = _merge_sign((k,), b)
                if merged is None:
                    continue
                sign, nb = merged
                term = dp if sign > 0 else -dp
                out[nb] = out[nb] + term if nb in out else term
        return GradedForm(self.lay, out)

    def interior(self, field: list[GradedPoly]) -> "GradedForm":
        """i_V with V = sum_k field[k] d/d(coordinate k)."""
        out: dict[Blade, GradedPoly] = {}
        for b, p in self.comps.items():
            for pos, k in enumerate(b):
                if field[k].is_zero():
                    continue
                nb = b[:pos] + b[pos + 1:]
                term = field[k].mul(p)
                if pos % 2:
                    term = -term
                out[nb] = out[nb] + term if nb in out else term
        return GradedForm(self.lay, out)

    def euler_field(self) -> list[GradedPoly]:
        return [GradedPoly.var(self.lay, k, w) for k, w in enumerate(self.lay.weights)]

    def lie_euler(self) -> "GradedForm":
        """L_P by the Cartan formula i_P d + d i_P."""
        P = self.euler_field()
        return self.d().interior(P) + self.interior(P).d()

    def on(self, field: list[GradedPoly]) -> GradedPoly:
        """Value of a 1-form on a vector field."""
        total = GradedPoly(self.lay)
        for b, p in self.comps.items():
            if len(b) != 1:
                raise ValueError("evaluation on a field needs a 1-form")
            total = total + field[b[0]].mul(p)
        return total

    def top_coefficient(self) -> GradedPoly:
        """Coefficient of dx^1..dx^{4n} dt^1 dt^2 dt^3 in a top-degree form."""
        top = tuple(range(self.lay.size))
        extra = [b for b in self.comps if b != top]
        if extra:
            raise ValueError("not a top-degree form")
        return self.comps.get(top, GradedPoly(self.lay))

    def __eq__(self, other):
        return isinstance(other, GradedForm) and self.comps == other.comps

    def __repr__(self):
        return f"GradedForm({len(self.comps)} blades, weights {sorted(self.weights())})"


def power(form: GradedForm, k: int, max_weight: int | None = None) -> GradedForm:
    out = GradedForm.function(GradedPoly.const(form.lay, 1))
    for _ in range(k):
        out = out.wedge(form, max_weight)
    return out
