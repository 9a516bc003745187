"""Machine encoding of the transformation catalogue and the 1/pi equivalence cases.

Every expression has the shape ``prefactor(p) * base(argument(p))`` where the
prefactor is a product of polynomials raised to rational powers (denominator
at most 4) and the argument is ``sign * scale * prod poly_i**k_i`` with integer
powers.  Polynomials are ascending coefficient lists.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import comb
from pathlib import Path
from typing import Any, Iterable, Sequence

from .exact import Ball, QuadFieldElem, format_rational, parse_rational
from .sequences import SERIES_IDS, convergence_radius

Poly = tuple  # ascending coefficients (int or Fraction)

MAIN_GROUP_SIZES = {"T1": 42, "T2": 23, "T3": 13}
CATALOG_ENV = "HYPERMOD_CATALOG"


class CatalogError(ValueError):
    pass


def _poly(obj: Sequence) -> Poly:
    out = []
    for c in obj:
        v = parse_rational(c) if isinstance(c, str) else Fraction(c)
        out.append(v.numerator if v.denominator == 1 else v)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_json(poly: Poly) -> list:
    return [c if isinstance(c, int) else format_rational(c) for c in poly]


def _exp_json(e: Fraction):
    return str(e.numerator) if e.denominator == 1 else format_rational(e)


def poly_eval(poly: Poly, x, prec: int | None = None):
    """Horner evaluation at a Fraction, QuadFieldElem, or Ball."""
    if isinstance(x, Ball):
        prec = prec or 128
        acc = Ball.exact(poly[-1], prec)
        for c in reversed(poly[:-1]):
            acc = acc.mul(x, prec).add(c, prec)
        return acc
    acc = 0 * x + poly[-1]
    for c in reversed(poly[:-1]):
        acc = acc * x + c
    return acc


def poly_derivative(poly: Poly) -> Poly:
    if len(poly) == 1:
        return (0,)
    return tuple(i * c for i, c in enumerate(poly) if i > 0)


def poly_valuation(poly: Poly) -> int:
    for i, c in enumerate(poly):
        if c:
            return i
    raise CatalogError("zero polynomial")


@dataclass(frozen=True)
class AlgebraicProduct:
    factors: tuple[tuple[Poly, Fraction], ...] = ()

    def value_at_zero(self) -> Fraction:
        out = Fraction(1)
        for poly, e in self.factors:
            c = Fraction(poly[0])
            if e.denominator != 1:
                if c != 1:
                    raise CatalogError("fractional power of a factor with constant term != 1")
                continue
            out *= c ** int(e)
        return out

    def to_json(self) -> list:
        return [[_poly_json(p), _exp_json(e)] for p, e in self.factors]

    @classmethod
    def from_json(cls, obj) -> "AlgebraicProduct":
        factors = []
        for item in obj or []:
            poly, e = item
            e = parse_rational(str(e))
            if e.denominator not in (1, 2, 4):
                raise CatalogError(f"exponent {e} has denominator > 4")
            factors.append((_poly(poly), e))
        return cls(tuple(factors))

    def log_derivative_at(self, x, prec: int | None = None):
        """``d/dp log(prefactor)`` evaluated at x (exact types or Ball)."""
        total = None
        for poly, e in self.factors:
            num = poly_eval(poly_derivative(poly), x, prec)
            den = poly_eval(poly, x, prec)
            term = num.mul(e, prec).div(den, prec) if isinstance(x, Ball) else num * e / den
            total = term if total is None else (total.add(term, prec) if isinstance(x, Ball) else total + term)
        if total is None:
            return Ball.exact(0, prec or 128) if isinstance(x, Ball) else 0 * x
        return total

    def squared_value_at(self, x):
        """prefactor(x)**2 for half-integer exponents (exact)."""
        out = 0 * x + 1
        for poly, e in self.factors:
            k = 2 * e
            if k.denominator != 1:
                raise CatalogError("squared value needs half-integer exponents")
            out = out * poly_eval(poly, x) ** int(k)
        return out


@dataclass(frozen=True)
class RationalArgument:
    sign: int
    scale: Fraction
    factors: tuple[Poly, ...]
    powers: tuple[int, ...]

    @property
    def monomial_power(self) -> int:
        return sum(k * poly_valuation(poly) for poly, k in zip(self.factors, self.powers))

    def to_json(self) -> dict:
        out: dict[str, Any] = {"sign": self.sign}
        if self.scale != 1:
            out["scale"] = format_rational(self.scale)
        out["factors"] = [_poly_json(p) for p in self.factors]
        out["powers"] = list(self.powers)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RationalArgument":
        sign = int(obj.get("sign", 1))
        if sign not in (1, -1):
            raise CatalogError("argument sign must be +1 or -1")
        scale = parse_rational(str(obj.get("scale", "1")))
        factors = tuple(_poly(f) for f in obj["factors"])
        powers = tuple(int(k) for k in obj["powers"])
        if len(factors) != len(powers):
            raise CatalogError("argument factors/powers length mismatch")
        return cls(sign, scale, factors, powers)

    def value_at(self, x, prec: int | None = None):
        coef = self.sign * self.scale
        if isinstance(x, Ball):
            prec = prec or 128
            out = Ball.exact(coef, prec)
            for poly, k in zip(self.factors, self.powers):
                out = out.mul(poly_eval(poly, x, prec).pow_int(k, prec), prec)
            return out
        out = 0 * x + coef
        for poly, k in zip(self.factors, self.powers):
            out = out * poly_eval(poly, x) ** k
        return out

    def log_derivative_at(self, x, prec: int | None = None):
        """``d/dp log(argument)`` at x."""
        total = None
        for poly, k in zip(self.factors, self.powers):
            num = poly_eval(poly_derivative(poly), x, prec)
            den = poly_eval(poly, x, prec)
            term = num.mul(k, prec).div(den, prec) if isinstance(x, Ball) else num * k / den
            total = term if total is None else (total.add(term, prec) if isinstance(x, Ball) else total + term)
        return total


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    base: str
    prefactor: AlgebraicProduct
    argument: RationalArgument
    level_label: str = ""
    label: str = ""

    def to_json(self) -> dict:
        out = {"id": self.id, "base": self.base, "prefactor": self.prefactor.to_json(), "argument": self.argument.to_json()}
        if self.level_label:
            out["level"] = self.level_label
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "IdentityEntry":
        base = obj["base"]
        if base not in SERIES_IDS:
            raise CatalogError(f"entry {obj.get('id')}: unknown SeriesId {base!r}")
        return cls(
            id=obj["id"],
            base=base,
            prefactor=AlgebraicProduct.from_json(obj.get("prefactor", [])),
            argument=RationalArgument.from_json(obj["argument"]),
            level_label=obj.get("level", ""),
            label=obj.get("label", ""),
        )


@dataclass(frozen=True)
class TheoremGroup:
    id: str
    variable: str
    entries: tuple[IdentityEntry, ...]
    chains: tuple[tuple[str, ...], ...] = ()
    expected_head: tuple | None = None
    default_order: int = 40
    title: str = ""

    def entry(self, eid: str) -> IdentityEntry:
        for e in self.entries:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def chain_list(self) -> tuple[tuple[str, ...], ...]:
        """Sets of entries asserted equal; one chain holding everything by default."""
        return self.chains or (tuple(e.id for e in self.entries),)

    @property
    def pairwise_count(self) -> int:
        return sum(comb(len(c), 2) for c in self.chain_list())

    def to_json(self) -> dict:
        out: dict[str, Any] = {"id": self.id, "variable": self.variable, "default_order": self.default_order}
        if self.title:
            out["title"] = self.title
        if self.expected_head is not None:
            out["expected_head"] = [format_rational(c) for c in self.expected_head]
        if self.chains:
            out["chains"] = [list(c) for c in self.chains]
        out["entries"] = [e.to_json() for e in self.entries]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "TheoremGroup":
        head = obj.get("expected_head")
        return cls(
            id=obj["id"],
            variable=obj.get("variable", "p"),
            entries=tuple(IdentityEntry.from_json(e) for e in obj.get("entries", [])),
            chains=tuple(tuple(c) for c in obj.get("chains", [])),
            expected_head=tuple(parse_rational(str(c)) for c in head) if head is not None else None,
            default_order=int(obj.get("default_order", 40)),
            title=obj.get("title", ""),
        )


@dataclass(frozen=True)
class PointSpec:
    """An evaluation point: an exact field element or a root of a polynomial in w = 2p + 1/(2p)."""

    kind: str  # "field" or "root"
    field_value: QuadFieldElem | None = None
    w_poly: tuple = ()
    interval: tuple[Fraction, Fraction] | None = None
    decimal: str = ""
    closed_form: str = ""

    def to_json(self) -> dict:
        if self.kind == "field":
            out = {"kind": "field", "value": self.field_value.to_json()}
        else:
            out = {
                "kind": "root",
                "w_poly": _poly_json(self.w_poly),
                "interval": [format_rational(self.interval[0]), format_rational(self.interval[1])],
            }
        if self.decimal:
            out["decimal"] = self.decimal
        if self.closed_form:
            out["closed_form"] = self.closed_form
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PointSpec":
        if obj["kind"] == "field":
            return cls("field", field_value=QuadFieldElem.from_json(obj["value"]),
                       decimal=obj.get("decimal", ""), closed_form=obj.get("closed_form", ""))
        if obj["kind"] == "root":
            lo, hi = obj["interval"]
            return cls("root", w_poly=_poly(obj["w_poly"]), interval=(parse_rational(lo), parse_rational(hi)),
                       decimal=obj.get("decimal", ""), closed_form=obj.get("closed_form", ""))
        raise CatalogError(f"unknown point kind {obj['kind']!r}")


@dataclass(frozen=True)
class EquivalencePair:
    a: str
    b: str
    lam: Fraction | QuadFieldElem | None
    claims: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"A": self.a, "B": self.b}
        if self.lam is None:
            out["lambda"] = "unused"
        elif isinstance(self.lam, QuadFieldElem):
            out["lambda"] = self.lam.to_json()
        else:
            out["lambda"] = format_rational(self.lam)
        if self.claims:
            out["claims"] = {k: _value_json(v) for k, v in self.claims.items()}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "EquivalencePair":
        lam = obj.get("lambda", "unused")
        if lam == "unused":
            lam_v = None
        elif isinstance(lam, dict):
            lam_v = QuadFieldElem.from_json(lam)
        else:
            lam_v = parse_rational(str(lam))
        claims = {k: _value_from_json(v) for k, v in obj.get("claims", {}).items()}
        return cls(obj["A"], obj["B"], lam_v, claims)


def _value_json(v):
    if isinstance(v, QuadFieldElem):
        return v.to_json()
    return format_rational(v)


def _value_from_json(v):
    if isinstance(v, dict):
        return QuadFieldElem.from_json(v)
    return parse_rational(str(v))


@dataclass(frozen=True)
class EquivalenceCase:
    id: str
    group: str
    point: PointSpec
    pairs: tuple[EquivalencePair, ...]
    entries: tuple[str, ...]
    metadata: tuple[tuple[int, int, str], ...]
    notes: str = ""

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "group": self.group,
            "point": self.point.to_json(),
            "entries": list(self.entries),
            "pairs": [p.to_json() for p in self.pairs],
            "metadata": [list(m) for m in self.metadata],
        }
        if self.notes:
            out["notes"] = self.notes
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "EquivalenceCase":
        return cls(
            id=obj["id"],
            group=obj.get("group", "T1"),
            point=PointSpec.from_json(obj["point"]),
            pairs=tuple(EquivalencePair.from_json(p) for p in obj.get("pairs", [])),
            entries=tuple(obj.get("entries", [])),
            metadata=tuple((int(m[0]), int(m[1]), str(m[2])) for m in obj.get("metadata", [])),
            notes=obj.get("notes", ""),
        )


@dataclass(frozen=True)
class Catalog:
    groups: tuple[TheoremGroup, ...]
    cases: tuple[EquivalenceCase, ...] = ()
    annotations: dict = field(default_factory=dict)

    def group(self, gid: str) -> TheoremGroup:
        for g in self.groups:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def case(self, cid: str) -> EquivalenceCase:
        for c in self.cases:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def entry(self, eid: str) -> IdentityEntry:
        for g in self.groups:
            for e in g.entries:
                if e.id == eid:
                    return e
        raise KeyError(eid)

    def group_of(self, eid: str) -> TheoremGroup:
        for g in self.groups:
            if any(e.id == eid for e in g.entries):
                return g
        raise KeyError(eid)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"groups": [g.to_json() for g in self.groups], "cases": [c.to_json() for c in self.cases]}
        if self.annotations:
            out["annotations"] = self.annotations
        return out


def _resolve(cat: Catalog) -> None:
    ids = [e.id for g in cat.groups for e in g.entries]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise CatalogError(f"duplicate entry ids: {sorted(dup)}")
    known = set(ids)
    for g in cat.groups:
        own = {e.id for e in g.entries}
        for chain in g.chains:
            missing = [c for c in chain if c not in own]
            if missing:
                raise CatalogError(f"group {g.id}: dangling chain reference {missing}")
    for c in cat.cases:
        refs = list(c.entries) + [x for p in c.pairs for x in (p.a, p.b)]
        missing = [r for r in refs if r not in known]
        if missing:
            raise CatalogError(f"case {c.id}: dangling entry reference {missing}")


def load_catalog(source) -> Catalog:
    """Parse a catalog from bytes, text, or a binary stream."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        obj = json.loads(source)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    cat = Catalog(
        groups=tuple(TheoremGroup.from_json(g) for g in obj.get("groups", [])),
        cases=tuple(EquivalenceCase.from_json(c) for c in obj.get("cases", [])),
        annotations=obj.get("annotations", {}),
    )
    _resolve(cat)
    return cat


def default_catalog_path() -> Path:
    override = os.environ.get(CATALOG_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("hypermod") / "data" / "catalog.json"))


_DEFAULT: dict[str, Catalog] = {}


def default_catalog() -> Catalog:
    path = default_catalog_path()
    key = str(path)
    if key not in _DEFAULT:
        with open(path, "rb") as fh:
            _DEFAULT[key] = load_catalog(fh)
    return _DEFAULT[key]


def dump_catalog(cat: Catalog) -> str:
    """JSON text with one entry or case per line."""
    obj = cat.to_json()
    lines = ["{", ' "groups": [']
    for gi, g in enumerate(obj["groups"]):
        entries = g.pop("entries")
        head = json.dumps(g, ensure_ascii=False)[:-1]
        lines.append(f"  {head}, \"entries\": [")
        for ei, e in enumerate(entries):
            sep = "," if ei < len(entries) - 1 else ""
            lines.append("   " + json.dumps(e, ensure_ascii=False) + sep)
        lines.append("  ]}" + ("," if gi < len(obj["groups"]) - 1 else ""))
    lines.append(" ],")
    lines.append(' "cases": [')
    for ci, c in enumerate(obj["cases"]):
        sep = "," if ci < len(obj["cases"]) - 1 else ""
        lines.append("  " + json.dumps(c, ensure_ascii=False) + sep)
    lines.append(" ],")
    lines.append(' "annotations": ' + json.dumps(obj.get("annotations", {}), ensure_ascii=False))
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    failures: list[str]
    group_sizes: dict[str, int]
    pairwise_total: int
    point_checks: list[dict]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failures": self.failures,
            "group_sizes": self.group_sizes,
            "pairwise_total": self.pairwise_total,
            "point_checks": self.point_checks,
        }


def _check_entry(e: IdentityEntry) -> list[str]:
    bad = []
    try:
        if e.prefactor.value_at_zero() != 1:
            bad.append(f"{e.id}: prefactor(0) != 1")
    except CatalogError as exc:
        bad.append(f"{e.id}: {exc}")
    try:
        if e.argument.monomial_power < 1:
            bad.append(f"{e.id}: argument does not vanish at 0")
    except CatalogError as exc:
        bad.append(f"{e.id}: {exc}")
    for poly, k in zip(e.argument.factors, e.argument.powers):
        if k < 0 and poly[0] == 0:
            bad.append(f"{e.id}: argument has a pole at 0")
    return bad


def validate_catalog(cat: Catalog, point_prec: int = 96) -> ValidationReport:
    from .pi_lab import point_ball  # local: pi_lab imports the catalog

    failures: list[str] = []
    for g in cat.groups:
        for e in g.entries:
            failures.extend(_check_entry(e))
    sizes = {g.id: len(g.entries) for g in cat.groups}
    for gid, n in MAIN_GROUP_SIZES.items():
        if gid not in sizes:
            failures.append(f"group {gid} missing")
        elif sizes[gid] != n:
            failures.append(f"group {gid} has {sizes[gid]} entries, expected {n}")
    total = sum(comb(sizes.get(g, 0), 2) for g in MAIN_GROUP_SIZES)
    point_checks = []
    for c in cat.cases:
        try:
            pb = point_ball(c.point, point_prec)
        except Exception as exc:  # reported, the catalog stays loadable
            failures.append(f"case {c.id}: point evaluation failed: {exc}")
            continue
        for eid in c.entries:
            e = cat.entry(eid)
            try:
                val = e.argument.value_at(pb, point_prec)
                radius = convergence_radius(e.base)
                inside = abs(val).upper < radius
                boundary = False
                if not inside and c.point.kind == "field":
                    exact = e.argument.value_at(c.point.field_value)
                    boundary = exact.is_rational() and abs(exact.rational_value()) == radius
            except Exception as exc:
                failures.append(f"case {c.id}: entry {eid} evaluation failed: {exc}")
                continue
            point_checks.append({"case": c.id, "entry": eid, "argument": float(val.mid), "inside": inside,
                                 "boundary": boundary})
            if not (inside or boundary):
                failures.append(f"case {c.id}: entry {eid} argument outside convergence radius")
    return ValidationReport(not failures, failures, sizes, total, point_checks)


def all_entries(cat: Catalog) -> Iterable[IdentityEntry]:
    for g in cat.groups:
        yield from g.entries
