"""Expand catalog entries and certify equalities coefficient by coefficient."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Sequence

from .catalog import Catalog, IdentityEntry, TheoremGroup, default_catalog
from .exact import format_rational
from .sequences import LEVEL_C, ZagierParams, base_series, series_coeff
from .series import PowerSeries, divide_laurent, ps_compose, ps_pow_rational

DEFAULT_ORDERS = {"T1": 60, "T2": 120, "T3": 80}
EXAMPLE_ORDER = 40


def default_order(gid: str) -> int:
    return DEFAULT_ORDERS.get(gid, EXAMPLE_ORDER)


def prefactor_series(entry: IdentityEntry, order: int, var: str = "p") -> PowerSeries:
    out = PowerSeries.const(1, order, var)
    for poly, e in entry.prefactor.factors:
        out = out * ps_pow_rational(PowerSeries.polynomial(poly, order, var), e)
    return out


def argument_series(entry: IdentityEntry, order: int, var: str = "p") -> PowerSeries:
    arg = entry.argument
    shift = arg.monomial_power
    unit = PowerSeries.const(arg.sign * arg.scale, order, var)
    for poly, k in zip(arg.factors, arg.powers):
        v = next(i for i, c in enumerate(poly) if c)
        stripped = PowerSeries.polynomial(poly[v:], order, var)
        unit = unit * stripped**k
    if shift > order:
        return PowerSeries.const(0, order, var)
    return PowerSeries(var, (0,) * shift + unit.coeffs[: order + 1 - shift])


def expand_entry(entry: IdentityEntry, order: int, var: str = "p") -> PowerSeries:
    """prefactor * base(argument), truncated at ``var**order``."""
    inner = argument_series(entry, order, var)
    outer = base_series(entry.base, order // max(1, entry.argument.monomial_power) + 1, "t")
    composed = ps_compose(outer, inner)
    if composed.order < order:
        raise AssertionError("composition lost precision")
    return prefactor_series(entry, order, var) * composed.truncate(order)


def _expand_job(args):
    entry, order, var = args
    return expand_entry(entry, order, var)


def expand_many(entries: Sequence[IdentityEntry], order: int, var: str, jobs: int = 1) -> list[PowerSeries]:
    work = [(e, order, var) for e in entries]
    if jobs <= 1 or len(work) <= 1:
        return [_expand_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as pool:
        return list(pool.map(_expand_job, work))


@dataclass
class Mismatch:
    entry_a: str
    entry_b: str
    power: int
    coeff_a: Any
    coeff_b: Any

    def to_json(self) -> dict:
        return {
            "entryA": self.entry_a,
            "entryB": self.entry_b,
            "power": self.power,
            "coeffA": format_rational(self.coeff_a),
            "coeffB": format_rational(self.coeff_b),
        }


@dataclass
class GroupReport:
    group: str
    order: int
    status: str
    pairwise_count: int
    first_mismatch: Mismatch | None = None
    head: tuple = ()
    expected_head_ok: bool | None = None
    common: PowerSeries | None = field(default=None, repr=False)

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        out = {
            "group": self.group,
            "order": self.order,
            "status": self.status,
            "pairwise_count": self.pairwise_count,
            "first_mismatch": self.first_mismatch.to_json() if self.first_mismatch else None,
            "head": [format_rational(c) for c in self.head],
        }
        if self.expected_head_ok is not None:
            out["expected_head_ok"] = self.expected_head_ok
        return out


def _first_difference(a: PowerSeries, b: PowerSeries) -> int | None:
    for i, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return i
    return None


def compare_chain(ids: Sequence[str], series: Sequence[PowerSeries]) -> Mismatch | None:
    """Compare every series with the first; return the lowest-power disagreement."""
    worst = None
    for eid, s in zip(ids[1:], series[1:]):
        k = _first_difference(series[0], s)
        if k is not None and (worst is None or k < worst.power):
            worst = Mismatch(ids[0], eid, k, series[0].coeffs[k], s.coeffs[k])
    return worst


def verify_group(group: TheoremGroup, order: int | None = None, jobs: int = 1) -> GroupReport:
    order = default_order(group.id) if order is None else order
    if order < 0:
        raise ValueError("order must be non-negative")
    expansions = expand_many(group.entries, order, group.variable, jobs)
    by_id = dict(zip((e.id for e in group.entries), expansions))
    mismatch = None
    for chain in group.chain_list():
        m = compare_chain(chain, [by_id[i] for i in chain])
        if m is not None and (mismatch is None or m.power < mismatch.power):
            mismatch = m
    common = expansions[0] if expansions else None
    head = common.coeffs[: max(3, len(group.expected_head or ()))] if common else ()
    head_ok = None
    if group.expected_head is not None and common is not None and not group.chains:
        k = min(len(group.expected_head), order + 1)
        head_ok = tuple(Fraction(c) for c in common.coeffs[:k]) == tuple(group.expected_head[:k])
    ok = mismatch is None and head_ok is not False
    return GroupReport(
        group=group.id,
        order=order,
        status="certified" if ok else "failed",
        pairwise_count=group.pairwise_count,
        first_mismatch=mismatch,
        head=tuple(head),
        expected_head_ok=head_ok,
        common=common,
    )


# ---------------------------------------------------------------------------
# meta-identities


@dataclass
class IdentityReport:
    name: str
    order: int
    status: str
    sides: dict
    first_mismatch: dict | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "status": self.status,
            "first_mismatch": self.first_mismatch,
            "head": {k: [format_rational(c) for c in v.coeffs[:6]] for k, v in self.sides.items()},
        }


def _compare_sides(name: str, order: int, sides: dict[str, PowerSeries]) -> IdentityReport:
    names = list(sides)
    ref = sides[names[0]]
    for other in names[1:]:
        k = _first_difference(ref, sides[other])
        if k is not None:
            return IdentityReport(name, order, "failed", sides, {
                "sides": [names[0], other], "power": k,
                "values": [format_rational(ref.coeffs[k]), format_rational(sides[other].coeffs[k])],
            })
    return IdentityReport(name, order, "certified", sides)


def verify_clausen(level: int, order: int) -> IdentityReport:
    """f_l(x)^2 = F_l(x(1 - C x))."""
    c = LEVEL_C[level]
    f = base_series(f"f{level}", order, "x")
    inner = PowerSeries.from_coeffs([0, 1, -c], "x", order)
    rhs = ps_compose(base_series(f"F{level}", order, "t"), inner)
    return _compare_sides(f"clausen-{level}", order, {"f^2": f * f, "F(x(1-Cx))": rhs})


def verify_zs(params: ZagierParams, order: int) -> IdentityReport:
    """f^2 against the F- and G-forms of the same triple."""
    from .sequences import FAMILY_PARAMS

    family = next(k for k, v in FAMILY_PARAMS.items() if v == params.triple)
    a, _, g = params.triple
    f = base_series(f"f{family}", order, "x")
    quad = PowerSeries.from_coeffs([1, -a, -g], "x", order)
    lift = PowerSeries.from_coeffs([1, 0, g], "x", order)
    x = PowerSeries.monomial(1, order, "x")
    big_f = ps_compose(base_series(f"F{family}", order, "t"), x * quad / lift**2) / lift
    big_g = ps_compose(base_series(f"G{family}", order, "t"), x / quad) / quad
    return _compare_sides(f"zs-{family}", order, {"f^2": f * f, "F-form": big_f, "G-form": big_g})


def verify_substitution_case(case_id: str, order: int = EXAMPLE_ORDER, catalog: Catalog | None = None) -> GroupReport:
    cat = catalog or default_catalog()
    if not case_id.startswith("EX"):
        raise KeyError(f"{case_id} is not an example group")
    return verify_group(cat.group(case_id), order)


# ---------------------------------------------------------------------------
# the translation identity as a formal power series statement


def weighted_base(entry: IdentityEntry, order: int, lam) -> PowerSeries:
    """sum a(n) (n + lam) t^n for the entry's base series."""
    return PowerSeries("t", tuple(series_coeff(entry.base, n) * (n + lam) for n in range(order + 1)))


def translation_data(entry_a: IdentityEntry, entry_b: IdentityEntry, order: int, var: str = "p"):
    """Series r, K1 = (x/y) dy/dx and x dr/dx / r to the requested order."""
    pad = order + entry_a.argument.monomial_power + entry_b.argument.monomial_power + 2
    x = argument_series(entry_a, pad, var)
    y = argument_series(entry_b, pad, var)
    r = prefactor_series(entry_b, pad, var) / prefactor_series(entry_a, pad, var)
    xd, yd, rd = x.derivative(), y.derivative(), r.derivative()
    x, y, r = x.truncate(pad - 1), y.truncate(pad - 1), r.truncate(pad - 1)
    k1 = divide_laurent(x * yd, xd * y).truncate(order)
    k2 = divide_laurent(x * rd, xd * r).truncate(order)
    return r.truncate(order), k1, k2


def verify_translate_formal(entry_a: IdentityEntry, entry_b: IdentityEntry, lam, order: int, var: str = "p") -> IdentityReport:
    """sum a(n)(n+lam) x^n = r*K1*sum n b(n) y^n + r*(K2+lam)*sum b(n) y^n."""
    lam = Fraction(lam)
    r, k1, k2 = translation_data(entry_a, entry_b, order, var)
    x = argument_series(entry_a, order, var)
    y = argument_series(entry_b, order, var)
    lhs = ps_compose(weighted_base(entry_a, order, lam), x)
    b_theta = ps_compose(weighted_base(entry_b, order, 0), y)
    b_plain = ps_compose(base_series(entry_b.base, order, "t"), y)
    rhs = r * k1 * b_theta + r * (k2 + lam) * b_plain
    name = f"translate-{entry_a.id}-{entry_b.id}"
    return _compare_sides(name, order, {"lhs": lhs.truncate(order), "rhs": rhs.truncate(order)})


def pairwise_total(reports: Sequence[GroupReport]) -> int:
    return sum(r.pairwise_count for r in reports)


def binomial_pairs(k: int) -> int:
    return comb(k, 2)
