"""Guess linear ODEs with polynomial coefficients from truncated series, and turn them into recurrences.

The search scans operator order r first and coefficient degree d second. A cheap
rank test modulo a large prime discards (r, d) pairs without solutions; rank
mod p never exceeds the rational rank, so full rank mod p is a proof. The
surviving system is then solved exactly by fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .series import PowerSeries

SURPLUS_EQUATIONS = 5
_PRIME = (1 << 61) - 1


class FitError(ValueError):
    pass


def _trim(poly: Sequence) -> tuple:
    out = list(poly)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _content(values: Sequence[int]) -> int:
    return reduce(gcd, (abs(v) for v in values), 0)


@dataclass(frozen=True)
class LinearODE:
    """sum_i polys[i](p) * y^(i)(p) = 0, polys in ascending powers of p."""

    polys: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.polys or all(not any(p) for p in self.polys):
            raise FitError("operator must have a nonzero coefficient")
        object.__setattr__(self, "polys", tuple(_trim(tuple(p)) for p in self.polys))

    @property
    def order(self) -> int:
        return len(self.polys) - 1

    @property
    def degree(self) -> int:
        return max(len(p) - 1 for p in self.polys)

    def normalized(self) -> "LinearODE":
        """Primitive integer content; lowest nonzero coefficient of the top polynomial positive."""
        flat = [Fraction(c) for p in self.polys for c in p]
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in flat), 1)
        ints = [[int(Fraction(c) * den) for c in p] for p in self.polys]
        g = _content([c for p in ints for c in p])
        top = next(p for p in reversed(ints) if any(p))
        sign = 1 if next(c for c in top if c) > 0 else -1
        polys = [tuple(sign * c // g for c in p) for p in ints]
        while len(polys) > 1 and not any(polys[-1]):
            polys.pop()
        return LinearODE(tuple(polys))

    def to_json(self) -> dict:
        return {"order": self.order, "polys": [list(p) for p in self.polys]}

    @classmethod
    def from_json(cls, obj: dict) -> "LinearODE":
        ode = cls(tuple(tuple(int(c) for c in p) for p in obj["polys"]))
        if ode.order != int(obj["order"]):
            raise FitError("order field does not match the polynomial list")
        return ode


@dataclass(frozen=True)
class Recurrence:
    """sum_k polys[k](n) * t(n + 1 - k) = 0 for n >= start; polys ascending in n."""

    polys: tuple[tuple[Fraction, ...], ...]
    start: int = 0

    @property
    def span(self) -> int:
        return len(self.polys) - 1

    def coefficient(self, k: int, n: int) -> Fraction:
        """Value of the polynomial multiplying t(n + 1 - k)."""
        acc = Fraction(0)
        for c in reversed(self.polys[k]):
            acc = acc * n + c
        return acc

    def residual(self, values: Sequence, n: int) -> Fraction:
        total = Fraction(0)
        for k in range(len(self.polys)):
            idx = n + 1 - k
            if 0 <= idx < len(values):
                total += self.coefficient(k, n) * values[idx]
        return total

    def generate(self, initial: Sequence, count: int) -> list:
        """Extend ``initial`` to ``count`` terms using the recurrence."""
        vals = [Fraction(v) for v in initial]
        while len(vals) < count:
            n = len(vals) - 1
            lead = self.coefficient(0, n)
            if lead == 0:
                raise FitError(f"leading coefficient vanishes at n={n}; supply more initial values")
            rest = sum(
                (self.coefficient(k, n) * vals[n + 1 - k] for k in range(1, len(self.polys)) if n + 1 - k >= 0),
                Fraction(0),
            )
            vals.append(-rest / lead)
        return [v.numerator if v.denominator == 1 else v for v in vals]

    def to_json(self) -> dict:
        fmt = lambda c: str(c) if Fraction(c).denominator == 1 else f"{Fraction(c).numerator}/{Fraction(c).denominator}"  # noqa: E731
        return {"span": self.span, "start": self.start, "n-polys": [[fmt(c) for c in p] for p in self.polys]}

    @classmethod
    def from_json(cls, obj: dict) -> "Recurrence":
        polys = tuple(tuple(Fraction(c) for c in p) for p in obj["n-polys"])
        return cls(polys, int(obj.get("start", 0)))


# ---------------------------------------------------------------------------
# linear algebra


def _rank_mod_p(rows: list[list[int]], ncols: int) -> int:
    m = [[v % _PRIME for v in r] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], _PRIME - 2, _PRIME)
        prow = [v * inv % _PRIME for v in m[rank]]
        m[rank] = prow
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % _PRIME for a, b in zip(m[i], prow)]
        rank += 1
        if rank == len(m):
            break
    return rank


def _primitive(row: list[int]) -> list[int]:
    g = _content(row)
    return [v // g for v in row] if g > 1 else row


def integer_nullspace(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the rational nullspace, as primitive integer vectors, by fraction-free elimination."""
    m = [_primitive(list(r)) for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        a = prow[col]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                b = m[i][col]
                m[i] = _primitive([a * x - b * y for x, y in zip(m[i], prow)])
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        lcm = reduce(lambda x, y: x * y // gcd(x, y), (abs(m[i][pc]) for i, pc in enumerate(pivots)), 1)
        vec = [0] * ncols
        vec[f] = lcm
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][f] * lcm // m[i][pc]
        basis.append(_primitive(vec))
    return basis


# ---------------------------------------------------------------------------
# fitting


def _integer_coeffs(series: PowerSeries) -> list[int]:
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in series.coeffs), 1)
    return [int(Fraction(c) * den) for c in series.coeffs]


def _system(coeffs: list[int], r: int, d: int) -> list[list[int]]:
    """Rows: coefficient of p^n in sum_{i,j} c_ij p^j y^(i), for n = 0 .. N - r."""
    big_n = len(coeffs) - 1
    rows = []
    for n in range(big_n - r + 1):
        row = []
        for i in range(r + 1):
            for j in range(d + 1):
                m = n - j
                if m < 0:
                    row.append(0)
                    continue
                fall = 1
                for t in range(1, i + 1):
                    fall *= m + t
                row.append(fall * coeffs[m + i])
        rows.append(row)
    return rows


def required_length(r: int, d: int) -> int:
    return (r + 1) * (d + 1) + r + SURPLUS_EQUATIONS


def fit_linear_ode(series: PowerSeries, max_order: int, max_degree: int) -> LinearODE | None:
    """Minimal operator (lowest order, then lowest degree) annihilating the series."""
    if series.order < required_length(0, 0):
        raise FitError(f"series too short: order {series.order}")
    coeffs = _integer_coeffs(series)
    for r in range(max_order + 1):
        for d in range(max_degree + 1):
            if series.order < required_length(r, d):
                break
            rows = _system(coeffs, r, d)
            ncols = (r + 1) * (d + 1)
            if _rank_mod_p(rows, ncols) == ncols:
                continue
            basis = integer_nullspace(rows, ncols)
            if not basis:
                continue
            candidates = []
            for vec in basis:
                polys = tuple(tuple(vec[i * (d + 1): (i + 1) * (d + 1)]) for i in range(r + 1))
                if not any(polys[-1]):
                    continue
                candidates.append(LinearODE(polys).normalized())
            if not candidates:
                continue
            return min(candidates, key=lambda o: [c for p in o.polys for c in p])
    return None


def ode_residual(ode: LinearODE, series: PowerSeries, order: int | None = None) -> PowerSeries:
    """sum_i polys[i] * series^(i), kept to order N - r."""
    n = series.order if order is None else min(order, series.order)
    r = ode.order
    keep = n - r
    if keep < 0:
        raise FitError("series shorter than the operator order")
    total = [Fraction(0)] * (keep + 1)
    deriv = series.truncate(n)
    for i, poly in enumerate(ode.polys):
        if i:
            deriv = deriv.derivative()
        for j, c in enumerate(poly):
            if not c:
                continue
            for k in range(keep + 1 - j):
                total[j + k] += c * deriv.coeffs[k]
    return PowerSeries(series.var, tuple(total))


def ode_to_recurrence(ode: LinearODE) -> Recurrence:
    """Coefficient extraction: p^j y^(i) contributes (m+1)...(m+i) t(m+i) at p^(m+j)."""
    shifts: dict[int, list[Fraction]] = {}
    for i, poly in enumerate(ode.polys):
        for j, c in enumerate(poly):
            if not c:
                continue
            # coefficient of p^n: c * (n-j+1)...(n-j+i) * t(n - j + i)
            factor = [Fraction(c)]
            for t in range(1, i + 1):
                factor = _poly_mul(factor, [Fraction(t - j), Fraction(1)])
            shifts.setdefault(i - j, [Fraction(0)])
            shifts[i - j] = _poly_add(shifts[i - j], factor)
    top = max(s for s, p in shifts.items() if any(p))
    low = min(s for s, p in shifts.items() if any(p))
    # re-index n -> n - (top - 1) so the highest term is t(n+1)
    delta = top - 1
    polys = []
    for s in range(top, low - 1, -1):
        p = shifts.get(s, [Fraction(0)])
        polys.append(_poly_shift(p, -delta))
    common = reduce(_poly_gcd, (p for p in polys if any(p)))
    if len(common) > 1:
        polys = [_poly_divexact(p, common) if any(p) else [Fraction(0)] for p in polys]
    lead = polys[0]
    lc = next(c for c in reversed(lead) if c)
    polys = [tuple(_trim(tuple(c / lc for c in p))) for p in polys]
    return Recurrence(tuple(polys), start=max(0, delta))


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(_trim(tuple(a)))
    b = list(_trim(tuple(b)))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        f = Fraction(a[-1]) / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a = list(_trim(tuple(a)))
        if len(a) == 1:
            break
    return q, a


def _poly_gcd(a, b) -> list:
    a, b = list(_trim(tuple(a))), list(_trim(tuple(b)))
    while any(b):
        _, rem = _poly_divmod(a, b)
        a, b = b, rem
    lc = a[-1]
    return [Fraction(c) / lc for c in a]


def _poly_divexact(a, b) -> list:
    q, rem = _poly_divmod(a, b)
    if any(rem):
        raise FitError("inexact polynomial division")
    return q


def _poly_shift(p: list, h: int) -> list:
    """p(n + h)."""
    out = [Fraction(0)] * len(p)
    for k, c in enumerate(p):
        # expand c * (n + h)^k
        term = [Fraction(1)]
        for _ in range(k):
            term = _poly_mul(term, [Fraction(h), Fraction(1)])
        for i, t in enumerate(term):
            out[i] += c * t
    return out


def zagier_ode(alpha: int, beta: int, gamma: int) -> LinearODE:
    """x(1-ax-gx^2) z'' + (1-2ax-3gx^2) z' - (b+gx) z = 0."""
    return LinearODE(((-beta, -gamma), (1, -2 * alpha, -3 * gamma), (0, 1, -alpha, -gamma))).normalized()


@dataclass
class OdeCertificate:
    group: str
    ode: LinearODE | None
    order: int
    status: str
    entries_checked: int
    failures: list[str]

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "ode": self.ode.to_json() if self.ode else None,
            "order": self.order,
            "status": self.status,
            "entries_checked": self.entries_checked,
            "failures": self.failures,
        }


def common_ode_certificate(group, max_order: int, max_degree: int, order: int | None = None, jobs: int = 1):
    """Fit on the group's common series, then check the residual on every entry's expansion."""
    from .verifier import default_order, expand_many

    order = default_order(group.id) if order is None else order
    expansions = expand_many(group.entries, order, group.variable, jobs)
    ode = fit_linear_ode(expansions[0], max_order, max_degree)
    if ode is None:
        return ode, OdeCertificate(group.id, None, order, "failed", 0, ["no operator within bounds"])
    failures = []
    for entry, s in zip(group.entries, expansions):
        if not ode_residual(ode, s).is_zero():
            failures.append(entry.id)
    status = "certified" if not failures else "failed"
    return ode, OdeCertificate(group.id, ode, order, status, len(expansions), failures)
