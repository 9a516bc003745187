"""Rigorous evaluation of Ramanujan-type 1/pi series and replay of the equivalence cases.

Partial sums are exact (Fraction or QuadFieldElem); only the tail bound and the
final comparison use ball arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .catalog import Catalog, EquivalenceCase, IdentityEntry, PointSpec, default_catalog, poly_eval
from .exact import Ball, QuadFieldElem, format_rational, qf_to_ball
from .sequences import coefficient_ratio_bound, convergence_radius, series_coeff

Exact = Union[int, Fraction, QuadFieldElem]

_LOG2_10 = math.log2(10)


class PiLabError(ValueError):
    pass


def bits_for(digits: int) -> int:
    return int(math.ceil(digits * _LOG2_10)) + 40


def enclose(v, prec: int) -> Ball:
    if isinstance(v, Ball):
        return v
    if isinstance(v, QuadFieldElem):
        return qf_to_ball(v, prec)
    return Ball.exact(Fraction(v), prec)


def _widen(b: Ball, err: Fraction, prec: int) -> Ball:
    return b.add(Ball(Fraction(0), Fraction(err)), prec)


def _tolerance(digits: int) -> Fraction:
    return Fraction(1, 10**digits)


# ---------------------------------------------------------------------------
# pi reference


def _arctan_inv(m: int, bits: int) -> Ball:
    """arctan(1/m) in fixed point; each floor loses < 1 ulp, the alternating tail < 1 ulp."""
    one = 1 << bits
    m2 = m * m
    power = one // m
    total, k = 0, 0
    while power:
        t = power // (2 * k + 1)
        total += -t if k % 2 else t
        power //= m2
        k += 1
    scale = Fraction(1, one)
    return Ball(Fraction(total) * scale, Fraction(k + 1) * scale)


def _combine(terms: list[tuple[int, int]], bits: int) -> Ball:
    out = Ball(Fraction(0))
    for coef, m in terms:
        out = out.add(_arctan_inv(m, bits).mul(coef, bits + 8), bits + 8)
    return out


MACHIN = [(16, 5), (-4, 239)]
HUTTON = [(8, 3), (4, 7)]


def pi_reference(digits: int, formula: str = "machin") -> Ball:
    """Ball of width < 10**-digits around pi from an arctangent decomposition."""
    if digits < 1:
        raise PiLabError("digits must be >= 1")
    formulas = {"machin": MACHIN, "hutton": HUTTON}
    if formula not in formulas:
        raise PiLabError(f"unknown arctangent formula {formula!r}")
    terms = formulas[formula]
    bits = bits_for(digits)
    while True:
        b = _combine(terms, bits)
        if b.width < _tolerance(digits):
            return b
        bits += 32


# ---------------------------------------------------------------------------
# series summation


@dataclass(frozen=True)
class PiSeriesCase:
    id: str
    base: str
    point: Exact
    lam: Exact
    rhs: Exact  # sum equals rhs / pi
    boundary: bool = False
    digits: int = 50
    printed: dict = field(default_factory=dict)


def _sqrt5(c0, c1) -> QuadFieldElem:
    return QuadFieldElem.of(5, 1, c0, c1)


def _sqrt3(c0, c1) -> QuadFieldElem:
    return QuadFieldElem.of(3, 1, c0, c1)


def _pi_cases() -> dict[str, PiSeriesCase]:
    s5 = _sqrt5(0, 1)
    return {
        "EQ1.1": PiSeriesCase("EQ1.1", "F4", Fraction(1, 4096), Fraction(5, 42), Fraction(8, 21),
                              printed={"x0 = (1/2)^6 / 64": Fraction(1, 2) ** 6 / 64}),
        "EQ9.1": PiSeriesCase("EQ9.1", "F1", Fraction(1, 8000), Fraction(3, 28), _sqrt5(0, Fraction(5, 28)),
                              printed={"x0 = (1/20)^3": Fraction(1, 20) ** 3}),
        "EQ9.2": PiSeriesCase("EQ9.2", "F2", Fraction(1, 614656), Fraction(3, 40), _sqrt3(0, Fraction(49, 360)),
                              printed={"x0 = (1/28)^4": Fraction(1, 28) ** 4}),
        "EQ9.3": PiSeriesCase("EQ9.3", "F4", Fraction(-1, 64), Fraction(1, 4), Fraction(1, 2), boundary=True, digits=20),
        "EQ9.5": PiSeriesCase("EQ9.5", "F4", _sqrt5(Fraction(47, 8192), Fraction(-21, 8192)),
                              31 / (270 + 48 * s5), 16 / (15 + 21 * s5), digits=40,
                              printed={"x0 = (sqrt5-1)^8/2^20": (s5 - 1) ** 8 / 2**20,
                                       "lambda = 3/22 - 4 sqrt5/165": _sqrt5(Fraction(3, 22), Fraction(-4, 165))}),
        "EQ9.6": PiSeriesCase("EQ9.6", "F3", Fraction(1, 3375), Fraction(4, 33), _sqrt3(0, Fraction(5, 22)),
                              printed={"x0 = 1/15^3": Fraction(1, 15) ** 3}),
    }


PI_CASES = _pi_cases()


def _abs_upper(v: Exact, prec: int) -> Fraction:
    b = enclose(v, prec)
    return max(abs(b.lower), abs(b.upper))


def sum_interior(base: str, x0: Exact, lam: Exact, digits: int, max_terms: int = 5000) -> tuple[Ball, int]:
    """sum a(n)(n+lam) x0^n with a geometric tail bound; returns (ball, terms used)."""
    prec = bits_for(digits)
    ratio = coefficient_ratio_bound(base)
    x_abs = _abs_upper(x0, prec)
    lam_ball = enclose(lam, prec)
    if lam_ball.lower <= 0:
        raise PiLabError("tail bound needs lambda > 0")
    target = _tolerance(digits) / 4
    total = 0 * x0
    power = 0 * x0 + 1
    for n in range(max_terms + 1):
        term = series_coeff(base, n) * (n + lam) * power
        q = x_abs * ratio * (1 + 1 / (n + lam_ball.lower))
        if q < 1 and n > 0:
            est = abs(float(enclose(term, 64).mid)) / (1 - float(q))
            if est < float(target) / 2:
                tail = _abs_upper(term, prec) / (1 - q)
                if tail < target:
                    return _widen(enclose(total, prec + 8), tail, prec), n
        total = total + term
        power = power * x0
    raise PiLabError(f"precision target not reached within {max_terms} terms")


def chebyshev_3(n: int) -> int:
    """T_n(3) = ((3+sqrt8)^n + (3-sqrt8)^n)/2."""
    a, b = 1, 3
    for _ in range(n):
        a, b = b, 6 * b - a
    return a


def crvz_sum(moments, n: int) -> Fraction:
    """Cohen-Rodriguez Villegas-Zagier: approximates sum (-1)^k a_k from a_0..a_{n-1}."""
    d = chebyshev_3(n)
    b, c, s = Fraction(-1), Fraction(-d), Fraction(0)
    for k in range(n):
        c = b - c
        s += c * moments[k]
        b = b * (k + n) * (k - n) / ((k + Fraction(1, 2)) * (k + 1))
    return s / d


def boundary_variation(base: str, lam: Fraction) -> Fraction:
    """Total variation of a measure with moments a(k)(k+lam)/R^k, R the radius.

    Only F4 is supported: with c_k = binom(2k,k)/4^k the moments split as
    (1/2)*[(2k+1) c_k^2]*c_k + (lam - 1/2)*c_k^3. Both brackets are moment
    sequences of positive measures of mass 1, since (2k+1) c_k^2 integrates
    x^k against a point mass at 1 plus the density coming from the decreasing
    function K(sqrt(1-s^2)).
    """
    if base != "F4":
        raise PiLabError(f"no moment representation recorded for {base} on its radius")
    return Fraction(1, 2) + abs(Fraction(lam) - Fraction(1, 2))


def sum_boundary(base: str, lam: Fraction, digits: int) -> tuple[Ball, int]:
    """Alternating sum at x0 = -radius by CRVZ acceleration; error <= TV / T_n(3)."""
    lam = Fraction(lam)
    tv = boundary_variation(base, lam)
    radius = convergence_radius(base)
    target = _tolerance(digits) / 4
    n = 1
    while tv / chebyshev_3(n) >= target:
        n += 1
    moments = [series_coeff(base, k) * (k + lam) * radius**k for k in range(n)]
    approx = crvz_sum(moments, n)
    prec = bits_for(digits)
    return _widen(Ball.exact(approx, prec), tv / chebyshev_3(n), prec), n


def sum_at(base: str, x0: Exact, lam: Exact, digits: int) -> tuple[Ball, int, str]:
    radius = convergence_radius(base)
    if isinstance(x0, (int, Fraction)) and x0 == -radius:
        ball, n = sum_boundary(base, lam, digits)
        return ball, n, "crvz"
    if _abs_upper(x0, 64) >= radius:
        raise PiLabError(f"point outside the disc of convergence of {base}")
    ball, n = sum_interior(base, x0, lam, digits)
    return ball, n, "direct"


def sum_series_at(case: PiSeriesCase, digits: int | None = None) -> Ball:
    return sum_at(case.base, case.point, case.lam, case.digits if digits is None else digits)[0]


# ---------------------------------------------------------------------------
# reports


@dataclass
class PiReport:
    case: str
    digits: int
    exact_checks: list = field(default_factory=list)
    ball_checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return all(c["status"] == "certified" for c in self.exact_checks + self.ball_checks)

    @property
    def status(self) -> str:
        return "certified" if self.certified else "failed"

    def exact(self, name: str, ok: bool) -> None:
        self.exact_checks.append({"name": name, "status": "certified" if ok else "failed"})

    def ball(self, name: str, width, ok: bool) -> None:
        self.ball_checks.append({"name": name, "width": f"{float(width):.3e}", "status": "certified" if ok else "failed"})

    def to_json(self) -> dict:
        out = {"case": self.case, "digits": self.digits, "status": self.status,
               "exact_checks": self.exact_checks, "ball_checks": self.ball_checks}
        if self.notes:
            out["notes"] = self.notes
        return out


def _agree(a: Ball, b: Ball, digits: int) -> bool:
    tol = _tolerance(digits)
    return a.width < tol and b.width < tol and abs(a.mid - b.mid) <= a.rad + b.rad


def verify_pi_formula(case: PiSeriesCase | str, digits: int | None = None) -> PiReport:
    if isinstance(case, str):
        if case not in PI_CASES:
            raise KeyError(f"unknown series case {case!r}")
        case = PI_CASES[case]
    digits = case.digits if digits is None else digits
    rep = PiReport(case.id, digits)
    for name, value in case.printed.items():
        stored = case.lam if name.startswith("lambda") else case.point
        rep.exact(name, value == stored)
    rep.exact("n = 0 term equals lambda", series_coeff(case.base, 0) * case.lam == case.lam)
    ratio = coefficient_ratio_bound(case.base)
    if case.boundary:
        rep.exact("point on the boundary", abs(Fraction(case.point)) * ratio == 1 and Fraction(case.point) < 0)
    else:
        rep.exact("ratio bound below 1", _abs_upper(case.point, 64) * ratio < 1)
    lhs, n, method = sum_at(case.base, case.point, case.lam, digits)
    prec = bits_for(digits + 5)
    rhs = enclose(case.rhs, prec).div(pi_reference(digits + 5), prec)
    rep.ball(f"series ({method}, {n} terms) = constant/pi", lhs.width + rhs.width, _agree(lhs, rhs, digits))
    rep.notes.append(f"sum ~ {lhs.to_decimal(min(digits, 30))}")
    return rep


# ---------------------------------------------------------------------------
# evaluation points


def _w_value(poly, p: Fraction) -> Fraction:
    w = 2 * p + 1 / (2 * p)
    return sum(Fraction(c) * w**i for i, c in enumerate(poly))


def refine_root(poly, lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bisect a sign change of poly(2p + 1/(2p)) on [lo, hi] (p > 0) to width 2**-bits."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo <= 0:
        raise PiLabError("root intervals must be positive")
    flo, fhi = _w_value(poly, lo), _w_value(poly, hi)
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if (flo > 0) == (fhi > 0):
        raise PiLabError("no sign change on the isolating interval")
    eps = Fraction(1, 2**bits)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        fm = _w_value(poly, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


def point_ball(point: PointSpec, prec: int = 128) -> Ball:
    if point.kind == "field":
        return qf_to_ball(point.field_value, prec)
    lo, hi = refine_root(point.w_poly, point.interval[0], point.interval[1], prec + 8)
    return Ball.exact((lo + hi) / 2, prec).add(Ball(Fraction(0), (hi - lo) / 2), prec)


def matches_decimal(b: Ball, decimal: str) -> bool:
    """True when every printed digit is correct (the ball lies within half a unit of the last)."""
    k = len(decimal.split(".")[1]) if "." in decimal else 0
    d = Fraction(decimal)
    half = Fraction(1, 2 * 10**k)
    return d - half <= b.lower and b.upper <= d + half


def prefactor_ball(entry: IdentityEntry, x: Ball, prec: int) -> Ball:
    out = Ball.exact(1, prec)
    for poly, e in entry.prefactor.factors:
        v = poly_eval(poly, x, prec)
        e = Fraction(e)
        if e.denominator == 4:
            v = v.sqrt(prec).pow_halfint(e * 2, prec)
        else:
            v = v.pow_halfint(e, prec)
        out = out.mul(v, prec)
    return out


# ---------------------------------------------------------------------------
# equivalence cases


@dataclass
class PairData:
    x: Exact
    y: Exact
    r_sq: Exact
    dydx: Exact
    drdx_sq: Exact
    multiplier_sq: Exact
    lambda_b: Exact
    k1: Exact  # (x/y) dy/dx


def translation_values(a: IdentityEntry, b: IdentityEntry, p, lam) -> PairData:
    """Exact values of the quantities in the translation identity at a field point."""
    x = a.argument.value_at(p)
    y = b.argument.value_at(p)
    xp = x * a.argument.log_derivative_at(p)
    yp = y * b.argument.log_derivative_at(p)
    r_sq = b.prefactor.squared_value_at(p) / a.prefactor.squared_value_at(p)
    log_r = b.prefactor.log_derivative_at(p) - a.prefactor.log_derivative_at(p)
    dydx = yp / xp
    drdx_sq = r_sq * (log_r / xp) ** 2
    k1 = x / y * dydx
    # x dr/dx + lam r = r (x log_r / x' + lam); dividing by r k1 leaves the shifted lambda
    lambda_b = (x * log_r / xp + lam) / k1
    return PairData(x, y, r_sq, dydx, drdx_sq, k1 * k1 * r_sq, lambda_b, k1)


def _same(a, b) -> bool:
    if isinstance(a, QuadFieldElem) or isinstance(b, QuadFieldElem):
        a = a if isinstance(a, QuadFieldElem) else None if b is None else QuadFieldElem.rational(b.d1, b.d2, a)
        return a == b
    return Fraction(a) == Fraction(b)


def _as_exact(v, like) -> Exact:
    """Collapse a rational field element to Fraction so series sums stay in Q."""
    if isinstance(v, QuadFieldElem) and v.is_rational():
        return v.rational_value()
    return v


def verify_equivalence_case(case: EquivalenceCase | str, digits: int = 30, catalog: Catalog | None = None) -> PiReport:
    cat = catalog or default_catalog()
    if isinstance(case, str):
        case = cat.case(case)
    rep = PiReport(case.id, digits)
    prec = bits_for(digits + 5)
    pb = point_ball(case.point, prec)
    rep.ball("point is positive and real", pb.width, pb.is_positive())
    if case.point.kind == "root":
        _root_checks(case, pb, rep)
    if case.point.closed_form:
        rep.notes.append(f"p = {case.point.closed_form} ~ {pb.to_decimal(12)}")
    for eid in case.entries:
        e = cat.entry(eid)
        if case.point.kind == "field":
            exact_arg = e.argument.value_at(case.point.field_value)
            rep.notes.append(f"{eid} argument = {_fmt(exact_arg)}")
            if isinstance(exact_arg, QuadFieldElem) and exact_arg.is_rational():
                rep.exact(f"{eid} argument is rational", True)
        val = e.argument.value_at(pb, prec)
        radius = convergence_radius(e.base)
        inside = abs(val).upper < radius
        on_edge = not inside and abs(val).lower <= radius
        rep.ball(f"{eid} argument within radius of {e.base}" + (" (boundary)" if on_edge else ""),
                 val.width, inside or on_edge)
    for pair in case.pairs:
        _pair_checks(cat, case, pair, rep, digits)
    return rep


def _fmt(v) -> str:
    if isinstance(v, QuadFieldElem):
        if v.is_rational():
            return format_rational(v.rational_value())
        return repr(v)
    return format_rational(v)


def _root_checks(case: EquivalenceCase, pb: Ball, rep: PiReport) -> None:
    pt = case.point
    w = pb.mul(2).add(Ball.exact(1).div(pb.mul(2)))
    val = Ball(Fraction(0))
    for i, c in enumerate(pt.w_poly):
        val = val.add(w.pow_int(i).mul(c))
    rep.ball("defining polynomial in 2p + 1/(2p) vanishes", val.width, val.lower <= 0 <= val.upper)
    if pt.decimal:
        rep.ball(f"root matches printed decimal {pt.decimal}", pb.width, matches_decimal(pb, pt.decimal))
    lo, hi = refine_root(pt.w_poly, pt.interval[0], pt.interval[1], 64)
    rep.exact("smallest positive root (Sturm count)", _is_smallest_positive_root(pt.w_poly, lo, hi))
    if case.id == "THM9.5":
        w_exact = _sqrt3(7, 3)
        q = sum((w_exact**i * c for i, c in enumerate(pt.w_poly)), _sqrt3(0, 0))
        rep.exact("w = 7 + 3 sqrt3 satisfies the quadratic", q.is_zero())
        rep.exact("w^2 - 4 = 72 + 42 sqrt3", w_exact**2 - 4 == _sqrt3(72, 42))
        prec = bits_for(rep.digits + 5)
        wb = qf_to_ball(w_exact, prec)
        closed = wb.sub(qf_to_ball(w_exact**2 - 4, prec).sqrt(prec), prec).div(4, prec)
        rep.ball("closed form (7+3sqrt3-sqrt(72+42sqrt3))/4 equals the root", closed.width + pb.width,
                 closed.overlaps(pb))


def _poly_rem(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b) and any(a):
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def sturm_count_above(poly, t: Fraction) -> int:
    """Number of distinct real roots of poly in (t, +inf), by a Sturm sequence."""
    p0 = [Fraction(c) for c in poly]
    while p0 and p0[-1] == 0:
        p0.pop()
    seq = [p0, [i * c for i, c in enumerate(p0)][1:]]
    while len(seq[-1]) > 1:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def changes(values):
        signs = [v > 0 for v in values if v != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_t = [sum(c * t**i for i, c in enumerate(q)) for q in seq]
    at_inf = [q[-1] for q in seq]
    return changes(at_t) - changes(at_inf)


def _is_smallest_positive_root(poly, lo: Fraction, hi: Fraction) -> bool:
    """w = 2p + 1/(2p) decreases on (0, 1/2), so smaller p means larger w: exactly one root above w(hi)."""
    if hi >= Fraction(1, 2):
        return False
    return sturm_count_above(poly, 2 * hi + 1 / (2 * hi)) == 1


def _pair_checks(cat: Catalog, case: EquivalenceCase, pair, rep: PiReport, digits: int) -> None:
    if case.point.kind != "field":
        rep.notes.append(f"{pair.a}->{pair.b}: exact replay needs a field point")
        return
    p = case.point.field_value
    a, b = cat.entry(pair.a), cat.entry(pair.b)
    lam = pair.lam
    data = translation_values(a, b, p, lam)
    computed = {
        "x": data.x, "y": data.y, "r_sq": data.r_sq, "dydx_sq": data.dydx * data.dydx,
        "drdx_sq": data.drdx_sq, "multiplier_sq": data.multiplier_sq, "lambda_B": data.lambda_b,
    }
    tag = f"{pair.a}->{pair.b}"
    for name, claim in pair.claims.items():
        rep.exact(f"{tag} {name} = {_fmt(claim)}", _same(computed[name], claim))
    prec = bits_for(digits + 5)
    # signs: r > 0 from the prefactor balls, then M = r * k1
    pball = qf_to_ball(p, prec)
    r_ball = prefactor_ball(b, pball, prec).div(prefactor_ball(a, pball, prec), prec)
    r_sq_ball = enclose(data.r_sq, prec)
    rep.ball(f"{tag} r > 0 and r^2 matches", r_ball.width, r_ball.is_positive() and r_ball.mul(r_ball, prec).overlaps(r_sq_ball))
    k1_ball = enclose(data.k1, prec)
    m_ball = r_ball.mul(k1_ball, prec)
    m_from_sq = enclose(data.multiplier_sq, prec).sqrt(prec)
    if m_ball.is_negative():
        m_from_sq = -m_from_sq
    rep.ball(f"{tag} multiplier sign fixed", m_ball.width, m_ball.excludes_zero() and m_ball.overlaps(m_from_sq))
    # numeric translation identity at the point
    x0, y0 = _as_exact(data.x, p), _as_exact(data.y, p)
    lam_b = _as_exact(data.lambda_b, p)
    lam_a = _as_exact(lam, p) if isinstance(lam, QuadFieldElem) else lam
    try:
        lhs, na, ma = sum_at(a.base, x0, lam_a, digits)
        rhs_sum, nb, mb = sum_at(b.base, y0, lam_b, digits + 2)
    except PiLabError as exc:
        rep.notes.append(f"{tag}: numeric check skipped ({exc})")
        return
    rhs = m_from_sq.mul(rhs_sum, prec)
    rep.ball(f"{tag} sum_A(n+lam) x^n = M sum_B(n+lam_B) y^n ({ma}/{mb})", lhs.width + rhs.width, _agree(lhs, rhs, digits))


PI_CASE_IDS = tuple(PI_CASES)
