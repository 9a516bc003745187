"""Coefficient rules for every base series: f_l, F_l, the Apery-like t(n), T(n), and H."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import binomial
from .series import PowerSeries

# normalisation constants C_s for s = 1/6, 1/4, 1/3, 1/2
LEVEL_S = {1: Fraction(1, 6), 2: Fraction(1, 4), 3: Fraction(1, 3), 4: Fraction(1, 2)}
LEVEL_C = {1: 432, 2: 64, 3: 27, 4: 16}


class UnknownSeriesError(KeyError):
    pass


@dataclass(frozen=True)
class ZagierParams:
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if (self.alpha, self.beta, self.gamma) not in _SUPPORTED:
            raise ValueError(f"unsupported parameter triple {(self.alpha, self.beta, self.gamma)}")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.gamma)


_SUPPORTED = {(11, 3, 1), (-17, -6, -72), (10, 3, -9), (7, 2, 8)}

# family suffix -> parameter triple
FAMILY_PARAMS = {
    "5": (11, 3, 1),
    "6a": (-17, -6, -72),
    "6b": (10, 3, -9),
    "6c": (7, 2, 8),
}
ZS_CASES = {"a": "6a", "b": "6b", "c": "6c", "5": "5"}

SERIES_IDS = (
    "f1", "f2", "f3", "f4", "F1", "F2", "F3", "F4",
    "f5", "F5", "G5", "f6a", "F6a", "G6a", "f6b", "F6b", "G6b", "f6c", "F6c", "G6c", "H",
)


def params_for(family: str) -> ZagierParams:
    return ZagierParams(*FAMILY_PARAMS[family])


# ---------------------------------------------------------------------------
# hypergeometric families


def pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


@lru_cache(maxsize=None)
def hyper_coeff(level: int, kind: str, n: int) -> int:
    """n-th coefficient of f_l (kind "f") or F_l (kind "F"); always an integer."""
    s = LEVEL_S[level]
    c = LEVEL_C[level]
    if kind == "f":
        val = pochhammer(s, n) * pochhammer(1 - s, n) / pochhammer(Fraction(1), n) ** 2 * c**n
    elif kind == "F":
        val = (
            pochhammer(Fraction(1, 2), n) * pochhammer(s, n) * pochhammer(1 - s, n)
            / pochhammer(Fraction(1), n) ** 3 * (4 * c) ** n
        )
    else:
        raise ValueError(f"kind must be 'f' or 'F', got {kind!r}")
    if val.denominator != 1:
        raise AssertionError(f"non-integral coefficient {val} for level {level} kind {kind} n={n}")
    return val.numerator


def F_closed_form(level: int, n: int) -> int:
    """Binomial-product form of the F_l coefficients."""
    if level == 1:
        return binomial(6 * n, 3 * n) * binomial(3 * n, n) * binomial(2 * n, n)
    if level == 2:
        return binomial(4 * n, 2 * n) * binomial(2 * n, n) ** 2
    if level == 3:
        return binomial(3 * n, n) * binomial(2 * n, n) ** 2
    if level == 4:
        return binomial(2 * n, n) ** 3
    raise ValueError(level)


# ---------------------------------------------------------------------------
# Apery-like sequences


class _RecurrenceMemo:
    """Prefix lists of t(n) / T(n) per parameter triple, extended under a lock."""

    def __init__(self):
        self._lock = threading.Lock()
        self._t: dict[tuple, list[int]] = {}
        self._T: dict[tuple, list[int]] = {}

    def t(self, p: ZagierParams, n: int) -> int:
        with self._lock:
            seq = self._t.setdefault(p.triple, [1])
            a, b, g = p.triple
            while len(seq) <= n:
                m = len(seq) - 1
                prev = seq[m - 1] if m >= 1 else 0
                num = (a * m * m + a * m + b) * seq[m] + g * m * m * prev
                q, r = divmod(num, (m + 1) ** 2)
                if r:
                    raise AssertionError(f"t({m + 1}) not integral for {p.triple}")
                seq.append(q)
            return seq[n]

    def T(self, p: ZagierParams, n: int) -> int:
        with self._lock:
            seq = self._T.setdefault(p.triple, [1])
            a, b, g = p.triple
            while len(seq) <= n:
                m = len(seq) - 1
                prev = seq[m - 1] if m >= 1 else 0
                num = -(2 * m + 1) * (a * m * m + a * m + a - 2 * b) * seq[m] - (a * a + 4 * g) * m**3 * prev
                q, r = divmod(num, (m + 1) ** 3)
                if r:
                    raise AssertionError(f"T({m + 1}) not integral for {p.triple}")
                seq.append(q)
            return seq[n]


_memo = _RecurrenceMemo()


def zagier_t(params: ZagierParams, n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return _memo.t(params, n)


def zagier_T(params: ZagierParams, n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return _memo.T(params, n)


def gen_binomial(m: int, k: int) -> Fraction:
    """C(m, k) for any integer m and k >= 0 (falling factorial / k!)."""
    if k < 0:
        return Fraction(0)
    num = 1
    for i in range(k):
        num *= m - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return Fraction(num, den)


def table1_oracle(case: tuple[int, int, int], which: str, n: int) -> int:
    """Binomial-sum formulas for t(n) and T(n), independent of the recurrences."""
    C = binomial
    case = tuple(case)
    if case == (11, 3, 1):
        if which == "t":
            return sum(C(n, j) ** 2 * C(n + j, j) for j in range(n + 1))
        # 4n-5j can go negative; the sum needs the generalised binomial there
        total = sum((-1) ** (j + n) * C(n, j) ** 3 * gen_binomial(4 * n - 5 * j, 3 * n) for j in range(n + 1))
        return int(total)
    if case == (-17, -6, -72):
        if which == "t":
            return sum(
                (-8) ** (n - j) * C(n, j) * C(j, l) ** 3 for j in range(n + 1) for l in range(j + 1)
            )
        return sum(C(n, j) ** 2 * C(n + j, j) ** 2 for j in range(n + 1))
    if case == (10, 3, -9):
        if which == "t":
            return sum(C(n, j) ** 2 * C(2 * j, j) for j in range(n + 1))
        return (-1) ** n * sum(C(n, j) ** 2 * C(2 * j, j) * C(2 * n - 2 * j, n - j) for j in range(n + 1))
    if case == (7, 2, 8):
        if which == "t":
            return sum(C(n, j) ** 3 for j in range(n + 1))
        return sum(
            (-3) ** (n - 3 * j) * C(n + j, j) * C(n, j) * C(n - j, j) * C(n - 2 * j, j)
            for j in range(n // 3 + 1)
        )
    raise ValueError(f"unsupported case {case}")


def trinomial_square_sum(n: int) -> int:
    """sum over j+k+l=n of (n!/(j!k!l!))^2; a second closed form of t(n) for (10,3,-9)."""
    from math import factorial

    total = 0
    for j in range(n + 1):
        for k in range(n - j + 1):
            l = n - j - k
            total += (factorial(n) // (factorial(j) * factorial(k) * factorial(l))) ** 2
    return total


def quartic_sum_H(n: int) -> int:
    return sum(binomial(n, j) ** 4 for j in range(n + 1))


# ---------------------------------------------------------------------------
# assembled series


@lru_cache(maxsize=None)
def series_coeff(sid: str, n: int) -> int:
    if sid == "H":
        return quartic_sum_H(n)
    kind, rest = sid[0], sid[1:]
    if rest in ("1", "2", "3", "4"):
        return hyper_coeff(int(rest), kind, n)
    if rest in FAMILY_PARAMS:
        p = params_for(rest)
        if kind == "f":
            return zagier_t(p, n)
        if kind == "F":
            return binomial(2 * n, n) * zagier_t(p, n)
        if kind == "G":
            return zagier_T(p, n)
    raise UnknownSeriesError(sid)


def base_series(sid: str, order: int, var: str = "x") -> PowerSeries:
    if sid not in SERIES_IDS:
        raise UnknownSeriesError(sid)
    return PowerSeries(var, tuple(series_coeff(sid, n) for n in range(order + 1)))


def convergence_radius(sid: str) -> Fraction:
    """Radius of convergence of the base series (used to screen evaluation points)."""
    kind, rest = sid[0], sid[1:]
    if sid == "H":
        return Fraction(1, 16)
    if rest in ("1", "2", "3", "4"):
        c = LEVEL_C[int(rest)]
        return Fraction(1, c) if kind == "f" else Fraction(1, 4 * c)
    raise UnknownSeriesError(f"no radius recorded for {sid}")


def coefficient_ratio_bound(sid: str) -> int:
    """Upper bound for a(n+1)/a(n) over all n >= 0 (hypergeometric F and f families)."""
    kind, rest = sid[0], sid[1:]
    if rest in ("1", "2", "3", "4"):
        c = LEVEL_C[int(rest)]
        # each factor (n+a)/(n+1) with a <= 1 is at most 1
        return 4 * c if kind == "F" else c
    raise UnknownSeriesError(f"no ratio bound for {sid}")

