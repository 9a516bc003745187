"""Truncated formal power series with exact rational coefficients.

A :class:`PowerSeries` of order ``N`` stores the coefficients of
``var**0 .. var**N``; equality is always understood modulo ``var**(N+1)``.
Coefficients are Python ints where integral and ``Fraction`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import RationalLike, format_rational, normalize, parse_rational


class SeriesError(ValueError):
    pass


def _norm_list(xs: Iterable) -> tuple:
    return tuple(normalize(x) if isinstance(x, Fraction) else x for x in xs)


def _mul_trunc(a: Sequence, b: Sequence, n: int) -> list:
    """Coefficients 0..n of the product a*b."""
    out = [0] * (n + 1)
    nz_b = [(j, y) for j, y in enumerate(b[: n + 1]) if y]
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        lim = n - i
        for j, y in nz_b:
            if j > lim:
                break
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class PowerSeries:
    var: str
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise SeriesError("a series needs at least one coefficient")
        object.__setattr__(self, "coeffs", _norm_list(self.coeffs))

    # -- construction -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike], var: str = "p", order: int | None = None) -> "PowerSeries":
        cs = list(coeffs)
        if order is not None:
            cs = (cs + [0] * (order + 1))[: order + 1]
        return cls(var, tuple(cs))

    @classmethod
    def const(cls, c: RationalLike, order: int, var: str = "p") -> "PowerSeries":
        return cls(var, tuple([c] + [0] * order))

    @classmethod
    def monomial(cls, k: int, order: int, var: str = "p", c: RationalLike = 1) -> "PowerSeries":
        cs = [0] * (order + 1)
        if k <= order:
            cs[k] = c
        return cls(var, tuple(cs))

    @classmethod
    def polynomial(cls, poly: Sequence[RationalLike], order: int, var: str = "p") -> "PowerSeries":
        return cls.from_coeffs(poly, var, order)

    # -- basic queries ----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, n: int) -> "PowerSeries":
        if n > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {n}")
        return PowerSeries(self.var, self.coeffs[: n + 1])

    def head(self, k: int) -> tuple:
        return self.coeffs[:k]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*{self.var}^{i}")
        return f"PowerSeries({' + '.join(terms) or '0'} + O({self.var}^{self.order + 1}))"

    # -- ring operations --------------------------------------------------
    def _check(self, other: "PowerSeries") -> int:
        if other.var != self.var:
            raise SeriesError(f"variable mismatch: {self.var!r} vs {other.var!r}")
        return min(self.order, other.order)

    def _lift(self, other):
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.const(other, self.order, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = self._check(other)
        return PowerSeries(self.var, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(self.var, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RationalLike) -> "PowerSeries":
        return PowerSeries(self.var, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = self._check(other)
        return PowerSeries(self.var, tuple(_mul_trunc(self.coeffs, other.coeffs, n)))

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        a = self.coeffs
        if not a[0]:
            raise SeriesError("inverse of a series with zero constant term")
        n = self.order
        inv0 = Fraction(1, 1) / a[0]
        out = [normalize(inv0)]
        nz = [(k, c) for k, c in enumerate(a) if c and k > 0]
        for m in range(1, n + 1):
            s = 0
            for k, c in nz:
                if k > m:
                    break
                s += c * out[m - k]
            out.append(normalize(-s * inv0))
        return PowerSeries(self.var, tuple(out))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("series divided by zero scalar")
            return self.scale(Fraction(1) / other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        if not other.coeffs[0]:
            raise SeriesError("division by a series with zero constant term")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = PowerSeries.const(1, self.order, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if self.var != other.var:
            return False
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash((self.var, self.coeffs))

    # -- calculus and substitution ---------------------------------------
    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            return PowerSeries(self.var, (0,))
        return PowerSeries(self.var, tuple(n * c for n, c in enumerate(self.coeffs) if n > 0))

    def theta(self) -> "PowerSeries":
        """``var * d/dvar``; keeps the order."""
        return PowerSeries(self.var, tuple(n * c for n, c in enumerate(self.coeffs)))

    def shift_down(self, k: int) -> "PowerSeries":
        """Divide by ``var**k``; the first k coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise SeriesError(f"series is not divisible by {self.var}^{k}")
        if k > self.order:
            raise SeriesError("shift exceeds truncation order")
        return PowerSeries(self.var, self.coeffs[k:])

    def rename(self, var: str) -> "PowerSeries":
        return PowerSeries(var, self.coeffs)

    def to_json(self) -> dict:
        return {"var": self.var, "order": self.order, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "PowerSeries":
        cs = [parse_rational(c) for c in obj["coeffs"]]
        if len(cs) != int(obj["order"]) + 1:
            raise SeriesError("coefficient count does not match order")
        return cls(obj["var"], tuple(cs))


def ps_arith(a: PowerSeries, b: PowerSeries, op: str) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def ps_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """``outer(inner)``; the result lives in ``inner``'s variable.

    The order is ``inner.order``, reduced when ``outer`` is too short to pin
    every coefficient (inner vanishing to order v needs outer up to N // v).
    """
    if inner.coeffs[0]:
        raise SeriesError("inner series must vanish at 0")
    v = inner.valuation()
    n = inner.order
    if v is None:
        return PowerSeries.const(outer.coeffs[0], n, inner.var)
    n = min(n, (outer.order + 1) * v - 1)
    b = list(inner.coeffs[: n + 1])
    acc = [0] * (n + 1)
    acc[0] = outer.coeffs[0]
    power = [0] * (n + 1)
    power[0] = 1
    k = 1
    while k * v <= n and k <= outer.order:
        power = _mul_trunc(power, b, n)
        c = outer.coeffs[k]
        if c:
            for i in range(k * v, n + 1):
                if power[i]:
                    acc[i] += c * power[i]
        k += 1
    return PowerSeries(inner.var, tuple(acc))


_ALLOWED_DENOMINATORS = (1, 2, 4)


def ps_pow_rational(a: PowerSeries, e: RationalLike) -> PowerSeries:
    """``a**e`` by the J.C.P. Miller recurrence; requires a(0) = 1."""
    e = Fraction(e)
    if e.denominator not in _ALLOWED_DENOMINATORS:
        raise SeriesError(f"exponent denominator {e.denominator} not supported")
    if a.coeffs[0] != 1:
        raise SeriesError("rational power needs constant term 1")
    if e.denominator == 1 and e >= 0:
        return a ** int(e)
    n = a.order
    ac = a.coeffs
    nz = [(k, c) for k, c in enumerate(ac) if c and k > 0]
    out = [1]
    for m in range(1, n + 1):
        s = 0
        for k, c in nz:
            if k > m:
                break
            s += ((e + 1) * k - m) * c * out[m - k]
        out.append(normalize(Fraction(s) / m))
    return PowerSeries(a.var, tuple(out))


def ps_derivative(a: PowerSeries) -> PowerSeries:
    return a.derivative()


def ps_reversion(b: PowerSeries) -> PowerSeries:
    """Compositional inverse of ``b`` (needs b(0)=0, b'(0)!=0)."""
    if b.coeffs[0] or not b.coeffs[1]:
        raise SeriesError("reversion needs b(0)=0 and b'(0)!=0")
    n = b.order
    b1 = Fraction(b.coeffs[1])
    c = [0, normalize(1 / b1)] + [0] * (n - 1)
    for m in range(2, n + 1):
        trial = ps_compose(b, PowerSeries(b.var, tuple(c)))
        c[m] = normalize(-Fraction(trial.coeffs[m]) / b1)
    return PowerSeries(b.var, tuple(c))


def clausen_branch(big_x: PowerSeries) -> PowerSeries:
    """Branch of ``4x(1-x) = X`` with x(0) = 0: ``x = (1 - sqrt(1-X))/2``."""
    if big_x.coeffs[0]:
        raise SeriesError("X must vanish at 0")
    root = ps_pow_rational(1 - big_x, Fraction(1, 2))
    return (1 - root).scale(Fraction(1, 2))


def divide_laurent(num: PowerSeries, den: PowerSeries) -> PowerSeries:
    """``num/den`` when den may vanish at 0, provided the quotient is a power series.

    Strips the common power of the variable first, so the result order drops by
    den's valuation.
    """
    v = den.valuation()
    if v is None:
        raise SeriesError("division by the zero series")
    n = min(num.order, den.order)
    if any(num.coeffs[:v]):
        raise SeriesError("quotient has a pole at 0")
    return num.truncate(n).shift_down(v) / den.truncate(n).shift_down(v)
