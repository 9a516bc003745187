"""Exact scalars: rationals, elements of Q(sqrt d1, sqrt d2), and midpoint-radius balls.

Rationals are plain :class:`fractions.Fraction` values. Balls carry dyadic
midpoints and radii; every operation rounds the midpoint to ``prec`` bits and
folds the rounding error into the radius, so the exact image of any inputs
drawn from the operand balls is always contained in the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, Fraction]

DEFAULT_PREC = 128
_RAD_BITS = 32


class FieldMismatchError(ValueError):
    """Raised when field elements with different tags are combined."""


class DomainError(ValueError):
    """Raised when a ball operation is undefined on part of its input."""


# ---------------------------------------------------------------------------
# rationals


def rat_arith(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def format_rational(x: RationalLike) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: Union[str, int]) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s.strip())


def normalize(x: RationalLike) -> RationalLike:
    """Collapse integral fractions to ``int`` (cheaper arithmetic downstream)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# multiquadratic field Q(sqrt d1, sqrt d2)


@dataclass(frozen=True)
class QuadFieldElem:
    """``c0 + c1*sqrt(d1) + c2*sqrt(d2) + c3*sqrt(m)`` with ``m`` the squarefree part of d1*d2.

    ``d2 == 1`` encodes the single quadratic field Q(sqrt d1); then c2 = c3 = 0.
    """

    d1: int
    d2: int
    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if not _is_squarefree(self.d1):
            raise ValueError(f"d1={self.d1} must be squarefree and > 1")
        if self.d2 != 1 and (not _is_squarefree(self.d2) or self.d2 == self.d1):
            raise ValueError(f"d2={self.d2} must be 1 or a squarefree integer > 1 distinct from d1")
        c = tuple(Fraction(x) for x in self.coords)
        if len(c) != 4:
            raise ValueError("need four coordinates")
        if self.d2 == 1:
            c = (c[0] + c[2], c[1] + c[3], Fraction(0), Fraction(0))
        object.__setattr__(self, "coords", c)

    # -- construction -----------------------------------------------------
    @classmethod
    def of(cls, d1: int, d2: int, c0=0, c1=0, c2=0, c3=0) -> "QuadFieldElem":
        return cls(d1, d2, (c0, c1, c2, c3))

    @classmethod
    def rational(cls, d1: int, d2: int, q: RationalLike) -> "QuadFieldElem":
        return cls(d1, d2, (q, 0, 0, 0))

    @property
    def _g(self) -> int:
        return math.gcd(self.d1, self.d2)

    @property
    def m(self) -> int:
        """Squarefree radicand of the fourth basis element."""
        g = self._g
        return self.d1 * self.d2 // (g * g)

    @property
    def tags(self) -> tuple[int, int]:
        return (self.d1, self.d2)

    def is_rational(self) -> bool:
        return self.coords[1] == self.coords[2] == self.coords[3] == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coords[0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "QuadFieldElem":
        if isinstance(other, QuadFieldElem):
            if other.tags != self.tags:
                raise FieldMismatchError(f"field tags {self.tags} vs {other.tags}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadFieldElem(self.d1, self.d2, (other, 0, 0, 0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadFieldElem(self.d1, self.d2, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return QuadFieldElem(self.d1, self.d2, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d1, d2, g, m = self.d1, self.d2, self._g, self.m
        a0, a1, a2, a3 = self.coords
        b0, b1, b2, b3 = o.coords
        # basis 1, u=sqrt d1, v=sqrt d2, w=sqrt m with uv = g w, uw = (d1/g) v, vw = (d2/g) u
        c0 = a0 * b0 + d1 * a1 * b1 + d2 * a2 * b2 + m * a3 * b3
        c1 = a0 * b1 + a1 * b0 + Fraction(d2, g) * (a2 * b3 + a3 * b2)
        c2 = a0 * b2 + a2 * b0 + Fraction(d1, g) * (a1 * b3 + a3 * b1)
        c3 = a0 * b3 + a3 * b0 + g * (a1 * b2 + a2 * b1)
        return QuadFieldElem(d1, d2, (c0, c1, c2, c3))

    __rmul__ = __mul__

    def conjugate(self, flip_d1: bool, flip_d2: bool) -> "QuadFieldElem":
        c0, c1, c2, c3 = self.coords
        s1 = -1 if flip_d1 else 1
        s2 = -1 if flip_d2 else 1
        return QuadFieldElem(self.d1, self.d2, (c0, s1 * c1, s2 * c2, s1 * s2 * c3))

    def norm(self) -> Fraction:
        """Product of the four conjugates (a rational number)."""
        if self.d2 == 1:
            return (self * self.conjugate(True, False)).rational_value()
        p = self * self.conjugate(True, False) * self.conjugate(False, True) * self.conjugate(True, True)
        return p.rational_value()

    def inverse(self) -> "QuadFieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.d2 == 1:
            conj = self.conjugate(True, False)
        else:
            conj = self.conjugate(True, False) * self.conjugate(False, True) * self.conjugate(True, True)
        n = (self * conj).rational_value()
        return conj * (Fraction(1) / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadFieldElem.rational(self.d1, self.d2, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, QuadFieldElem):
            return self.tags == other.tags and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.d1, self.d2, self.coords))

    def __repr__(self):
        names = ["1", f"√{self.d1}", f"√{self.d2}", f"√{self.m}"]
        parts = [f"({c})·{n}" if n != "1" else f"({c})" for c, n in zip(self.coords, names) if c != 0]
        return "QF[" + (" + ".join(parts) if parts else "0") + "]"

    def to_json(self) -> dict:
        return {"d1": self.d1, "d2": self.d2, "coords": [format_rational(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadFieldElem":
        return cls(int(obj["d1"]), int(obj["d2"]), tuple(parse_rational(c) for c in obj["coords"]))


def qf_arith(a: QuadFieldElem, b: QuadFieldElem, op: str) -> QuadFieldElem:
    if a.tags != b.tags:
        raise FieldMismatchError(f"field tags {a.tags} vs {b.tags}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# balls


def _log2_floor(x: Fraction) -> int:
    """floor(log2 |x|) for x != 0, exact."""
    x = abs(x)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    # 2^e is within a factor 2 of x; fix up
    if Fraction(2) ** e > x:
        e -= 1
    elif Fraction(2) ** (e + 1) <= x:
        e += 1
    return e


def _round_nearest(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Round ``x`` to a dyadic with about ``prec`` significant bits; return (value, |error|)."""
    if x == 0:
        return Fraction(0), Fraction(0)
    if x.denominator & (x.denominator - 1) == 0 and x.numerator.bit_length() <= prec:
        return x, Fraction(0)
    k = prec - _log2_floor(x)
    scaled = x * (Fraction(2) ** k) if k >= 0 else x / (Fraction(2) ** (-k))
    m = round(scaled)
    val = Fraction(m) * (Fraction(2) ** (-k)) if k >= 0 else Fraction(m * 2 ** (-k))
    return val, abs(x - val)


def _round_up(r: Fraction) -> Fraction:
    """Smallest dyadic with ``_RAD_BITS`` bits that is >= r (r >= 0)."""
    if r <= 0:
        return Fraction(0)
    if r.denominator & (r.denominator - 1) == 0 and r.numerator.bit_length() <= _RAD_BITS:
        return r
    k = _RAD_BITS - _log2_floor(r)
    scale = Fraction(2) ** k
    m = math.ceil(r * scale)
    return Fraction(m) / scale


def _dyadic_parts(x: Fraction) -> tuple[int, int]:
    """Return (man, exp) with x = man * 2**exp."""
    if x == 0:
        return 0, 0
    den = x.denominator
    if den & (den - 1):
        raise ValueError(f"{x} is not dyadic")
    man, exp = x.numerator, -(den.bit_length() - 1)
    while man % 2 == 0:
        man //= 2
        exp += 1
    return man, exp


@dataclass(frozen=True)
class Ball:
    """Closed real interval ``[mid - rad, mid + rad]`` with dyadic endpoints data."""

    mid: Fraction
    rad: Fraction = Fraction(0)

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("negative radius")

    # -- construction -----------------------------------------------------
    @classmethod
    def exact(cls, q: RationalLike, prec: int = DEFAULT_PREC) -> "Ball":
        q = Fraction(q)
        mid, err = _round_nearest(q, prec)
        return cls(mid, _round_up(err))

    @classmethod
    def _make(cls, value: Fraction, rad: Fraction, prec: int) -> "Ball":
        mid, err = _round_nearest(value, prec)
        return cls(mid, _round_up(rad + err))

    # -- queries ----------------------------------------------------------
    @property
    def lower(self) -> Fraction:
        return self.mid - self.rad

    @property
    def upper(self) -> Fraction:
        return self.mid + self.rad

    @property
    def width(self) -> Fraction:
        return 2 * self.rad

    def contains(self, x) -> bool:
        if isinstance(x, Ball):
            return self.lower <= x.lower and x.upper <= self.upper
        return abs(Fraction(x) - self.mid) <= self.rad

    def overlaps(self, other: "Ball") -> bool:
        return abs(self.mid - other.mid) <= self.rad + other.rad

    def is_positive(self) -> bool:
        return self.lower > 0

    def is_negative(self) -> bool:
        return self.upper < 0

    def excludes_zero(self) -> bool:
        return self.is_positive() or self.is_negative()

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"Ball({float(self.mid):.17g} ± {float(self.rad):.3g})"

    def to_decimal(self, digits: int) -> str:
        """Midpoint rendered with ``digits`` decimals (display only)."""
        scaled = round(self.mid * 10**digits)
        sign = "-" if scaled < 0 else ""
        s = str(abs(scaled)).rjust(digits + 1, "0")
        return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else sign + s

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other, prec: int) -> "Ball":
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Fraction)):
            return Ball.exact(other, prec)
        return NotImplemented

    def add(self, other, prec: int = DEFAULT_PREC) -> "Ball":
        o = self._lift(other, prec)
        return Ball._make(self.mid + o.mid, self.rad + o.rad, prec)

    def sub(self, other, prec: int = DEFAULT_PREC) -> "Ball":
        o = self._lift(other, prec)
        return Ball._make(self.mid - o.mid, self.rad + o.rad, prec)

    def mul(self, other, prec: int = DEFAULT_PREC) -> "Ball":
        o = self._lift(other, prec)
        rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
        return Ball._make(self.mid * o.mid, rad, prec)

    def div(self, other, prec: int = DEFAULT_PREC) -> "Ball":
        o = self._lift(other, prec)
        if not o.excludes_zero():
            raise DomainError(f"division by a ball that may contain zero: {o}")
        bm = abs(o.mid)
        rad = (abs(self.mid) * o.rad + bm * self.rad) / (bm * (bm - o.rad))
        return Ball._make(self.mid / o.mid, rad, prec)

    def sqrt(self, prec: int = DEFAULT_PREC) -> "Ball":
        if not self.is_positive():
            raise DomainError(f"sqrt of a ball not strictly positive: {self}")
        k = max(prec - _log2_floor(self.mid) // 2, 8)
        while True:
            scale = 4**k if k >= 0 else Fraction(1, 4 ** (-k))
            s0 = math.isqrt(math.floor(self.mid * scale))
            lo = math.isqrt(math.floor(self.lower * scale))
            if lo > 0:
                break
            k += 8
        denom = Fraction(2) ** k
        value = Fraction(2 * s0 + 1) / (2 * denom)
        err = Fraction(1) / (2 * denom)
        prop = self.rad / (2 * Fraction(lo) / denom) if self.rad else Fraction(0)
        return Ball._make(value, err + prop, prec)

    def pow_int(self, k: int, prec: int = DEFAULT_PREC) -> "Ball":
        if k < 0:
            return Ball.exact(1, prec).div(self.pow_int(-k, prec), prec)
        out = Ball.exact(1, prec)
        base = self
        while k:
            if k & 1:
                out = out.mul(base, prec)
            base = base.mul(base, prec)
            k >>= 1
        return out

    def pow_halfint(self, e: RationalLike, prec: int = DEFAULT_PREC) -> "Ball":
        e = Fraction(e)
        if e.denominator == 1:
            return self.pow_int(e.numerator, prec)
        if e.denominator != 2:
            raise ValueError(f"exponent {e} is not a half-integer")
        if not self.is_positive():
            raise DomainError(f"half-integer power of a ball not strictly positive: {self}")
        return self.sqrt(prec + 8).pow_int(e.numerator, prec)

    def __add__(self, other):
        return self.add(other)

    __radd__ = __add__

    def __sub__(self, other):
        return self.sub(other)

    def __rsub__(self, other):
        return self._lift(other, DEFAULT_PREC).sub(self)

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.div(other)

    def __rtruediv__(self, other):
        return self._lift(other, DEFAULT_PREC).div(self)

    def __neg__(self):
        return Ball(-self.mid, self.rad)

    def __abs__(self):
        if self.mid >= 0:
            return self
        return -self

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        mm, me = _dyadic_parts(self.mid)
        rm, re = _dyadic_parts(self.rad)
        return {"mid_man": str(mm), "mid_exp": str(me), "rad_man": str(rm), "rad_exp": str(re)}

    @classmethod
    def from_json(cls, obj: dict) -> "Ball":
        def val(m, e):
            m, e = int(m), int(e)
            return Fraction(m) * (Fraction(2) ** e)

        return cls(val(obj["mid_man"], obj["mid_exp"]), val(obj["rad_man"], obj["rad_exp"]))


def ball_arith(a: Ball, b: Union[Ball, RationalLike, None], op: str, prec_bits: int = DEFAULT_PREC) -> Ball:
    """Dispatch helper; ``b`` is the exponent for ``pow_halfint`` and ignored for ``sqrt``."""
    if op == "add":
        return a.add(b, prec_bits)
    if op == "sub":
        return a.sub(b, prec_bits)
    if op == "mul":
        return a.mul(b, prec_bits)
    if op == "div":
        return a.div(b, prec_bits)
    if op == "sqrt":
        return a.sqrt(prec_bits)
    if op == "pow_halfint":
        return a.pow_halfint(b, prec_bits)
    raise ValueError(f"unknown op {op!r}")


def qf_to_ball(a: QuadFieldElem, prec_bits: int = DEFAULT_PREC) -> Ball:
    """Enclose a field element; width <= 2**(3 - prec_bits) * max(1, |value|)."""
    if a.is_rational():
        return Ball.exact(a.coords[0], prec_bits)
    target_scale = Fraction(2) ** (3 - prec_bits)
    work = prec_bits + 16
    while True:
        radicands = [1, a.d1, a.d2 if a.d2 != 1 else 1, a.m if a.d2 != 1 else 1]
        total = Ball(Fraction(0))
        for c, d in zip(a.coords, radicands):
            if c == 0:
                continue
            root = Ball.exact(1, work) if d == 1 else Ball.exact(d, work).sqrt(work)
            total = total.add(root.mul(c, work), work)
        bound = target_scale * max(Fraction(1), abs(total.mid) - total.rad)
        if total.width <= bound:
            return total
        work += 32


def ball_sum(items: Iterable[Ball], prec: int = DEFAULT_PREC) -> Ball:
    out = Ball(Fraction(0))
    for b in items:
        out = out.add(b, prec)
    return out
