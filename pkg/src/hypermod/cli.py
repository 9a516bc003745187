"""Command-line front end: ``hypermod <command> [options]``.

Exit codes: 0 all certified, 1 some verification failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

from . import catalog as catalog_mod
from .catalog import CatalogError
from .sequences import ZS_CASES, params_for

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: logical cores)")
    p.add_argument("--catalog", default=None, help="catalog JSON path (overrides HYPERMOD_CATALOG)")
    p.add_argument("-o", "--output", default=None, help="also write the JSON report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypermod", description="Certify hypergeometric transformation identities.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("verify", help="expand every entry of a group and compare")
    p.add_argument("--group", required=True)
    p.add_argument("--terms", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("clausen", help="f_l^2 = F_l(x(1-Cx))")
    p.add_argument("--level", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--terms", type=int, default=60)
    _add_common(p)

    p = sub.add_parser("zs", help="f^2 against the F- and G-forms of a recurrence triple")
    p.add_argument("--case", required=True, choices=sorted(ZS_CASES))
    p.add_argument("--terms", type=int, default=60)
    _add_common(p)

    p = sub.add_parser("fit-ode", help="guess a linear ODE from an entry's expansion")
    p.add_argument("--entry", required=True)
    p.add_argument("--terms", type=int, default=50, help="number of coefficients used")
    p.add_argument("--max-order", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=5)
    _add_common(p)

    p = sub.add_parser("qcheck", help="certify a q-series identity")
    p.add_argument("--id", required=True, help="identity id or 'all'")
    p.add_argument("--terms", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("pi", help="evaluate a 1/pi series against an independent pi")
    p.add_argument("--case", required=True, help="series id or 'all'")
    p.add_argument("--digits", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("equiv", help="replay an equivalence case")
    p.add_argument("--case", required=True, help="case id or 'all'")
    p.add_argument("--digits", type=int, default=30)
    _add_common(p)

    p = sub.add_parser("list", help="list groups, entries and cases")
    _add_common(p)

    p = sub.add_parser("all", help="run the acceptance suite")
    _add_common(p)
    return parser


# ---------------------------------------------------------------------------
# commands: each returns (ok, json payload, table rows)


def _cmd_verify(args, cat, jobs):
    from .verifier import verify_group

    try:
        group = cat.group(args.group)
    except KeyError:
        raise UsageError(f"unknown group {args.group!r}; known: {', '.join(g.id for g in cat.groups)}")
    if args.terms is not None and args.terms < 0:
        raise UsageError("--terms must be non-negative")
    rep = verify_group(group, args.terms, jobs)
    row = [rep.group, rep.status, f"order {rep.order}", f"pairs {rep.pairwise_count}",
           "head " + ",".join(str(c) for c in rep.head)]
    if rep.first_mismatch:
        m = rep.first_mismatch
        row.append(f"first mismatch {m.entry_a}/{m.entry_b} at p^{m.power}")
    return rep.certified, rep.to_json(), [row]


def _cmd_clausen(args, cat, jobs):
    from .verifier import verify_clausen

    rep = verify_clausen(args.level, args.terms)
    return rep.certified, rep.to_json(), [[rep.name, rep.status, f"order {rep.order}"]]


def _cmd_zs(args, cat, jobs):
    from .verifier import verify_zs

    rep = verify_zs(params_for(ZS_CASES[args.case]), args.terms)
    return rep.certified, rep.to_json(), [[rep.name, rep.status, f"order {rep.order}"]]


def _cmd_fit_ode(args, cat, jobs):
    from .odefit import FitError, fit_linear_ode, ode_to_recurrence, required_length
    from .verifier import expand_entry

    try:
        entry = cat.entry(args.entry)
    except KeyError:
        raise UsageError(f"unknown entry {args.entry!r}")
    if args.terms < 1 or args.max_order < 1 or args.max_degree < 0:
        raise UsageError("--terms, --max-order must be positive and --max-degree non-negative")
    series = expand_entry(entry, args.terms - 1)
    try:
        ode = fit_linear_ode(series, args.max_order, args.max_degree)
    except FitError as exc:
        raise UsageError(str(exc))
    if ode is None:
        payload = {"entry": entry.id, "terms": args.terms, "status": "not found",
                   "required_terms": required_length(args.max_order, args.max_degree)}
        return False, payload, [[entry.id, "no operator within bounds"]]
    rec = ode_to_recurrence(ode)
    payload = {"entry": entry.id, "terms": args.terms, "status": "found", "ode": ode.to_json(), "recurrence": rec.to_json()}
    rows = [[entry.id, f"order {ode.order}", f"degree {ode.degree}"]]
    rows += [[f"  y^({k})", " ".join(str(c) for c in p)] for k, p in enumerate(ode.polys)]
    rows += [[f"  t(n+1-{k})", " ".join(str(c) for c in p)] for k, p in enumerate(rec.polys)]
    return True, payload, rows


def _cmd_qcheck(args, cat, jobs):
    from .qmodular import Q_IDENTITIES, verify_q_identity

    ids = list(Q_IDENTITIES) if args.id == "all" else [args.id]
    for q in ids:
        if q not in Q_IDENTITIES:
            raise UsageError(f"unknown q-identity {q!r}; known: {', '.join(Q_IDENTITIES)}")
    reports = [verify_q_identity(q, args.terms) for q in ids]
    rows = [[r.id, r.status, f"order {r.order}"] + (["; ".join(r.notes)] if r.notes else []) for r in reports]
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    return all(r.certified for r in reports), payload, rows


def _pi_rows(reports):
    rows = []
    for r in reports:
        rows.append([r.case, r.status, f"{r.digits} digits"])
        for c in r.exact_checks:
            rows.append(["  exact", c["status"], c["name"]])
        for c in r.ball_checks:
            rows.append(["  ball", c["status"], c["name"], f"width {c['width']}"])
    return rows


def _cmd_pi(args, cat, jobs):
    from .pi_lab import PI_CASES, verify_pi_formula

    ids = list(PI_CASES) if args.case == "all" else [args.case]
    for c in ids:
        if c not in PI_CASES:
            raise UsageError(f"unknown series case {c!r}; known: {', '.join(PI_CASES)}")
    if args.digits is not None and args.digits < 1:
        raise UsageError("--digits must be >= 1")
    reports = [verify_pi_formula(c, args.digits) for c in ids]
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    return all(r.certified for r in reports), payload, _pi_rows(reports)


def _cmd_equiv(args, cat, jobs):
    from .pi_lab import verify_equivalence_case

    ids = [c.id for c in cat.cases] if args.case == "all" else [args.case]
    known = {c.id for c in cat.cases}
    for c in ids:
        if c not in known:
            raise UsageError(f"unknown case {c!r}; known: {', '.join(sorted(known))}")
    if args.digits < 1:
        raise UsageError("--digits must be >= 1")
    reports = [verify_equivalence_case(c, args.digits, cat) for c in ids]
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    return all(r.certified for r in reports), payload, _pi_rows(reports)


def _cmd_list(args, cat, jobs):
    from .pi_lab import PI_CASES
    from .qmodular import Q_IDENTITIES

    groups = [{"id": g.id, "variable": g.variable, "entries": [e.id for e in g.entries],
               "pairwise_count": g.pairwise_count} for g in cat.groups]
    payload = {"groups": groups, "cases": [c.id for c in cat.cases], "pi_series": list(PI_CASES),
               "q_identities": list(Q_IDENTITIES)}
    rows = [[g["id"], f"{len(g['entries'])} entries", f"{g['pairwise_count']} pairs",
             f"{g['entries'][0]}..{g['entries'][-1]}"] for g in groups]
    rows.append(["cases", " ".join(payload["cases"])])
    rows.append(["pi", " ".join(payload["pi_series"])])
    rows.append(["q", " ".join(payload["q_identities"])])
    return True, payload, rows


def _cmd_all(args, cat, jobs):
    from .suite import run_all

    results = run_all(jobs)
    rows = [[r.line()] for r in results]
    return all(r.ok for r in results), {"criteria": [r.to_json() for r in results]}, rows


COMMANDS: dict[str, Callable] = {
    "verify": _cmd_verify, "clausen": _cmd_clausen, "zs": _cmd_zs, "fit-ode": _cmd_fit_ode,
    "qcheck": _cmd_qcheck, "pi": _cmd_pi, "equiv": _cmd_equiv, "list": _cmd_list, "all": _cmd_all,
}


def _table(rows) -> str:
    if not rows:
        return ""
    width = max(len(r) for r in rows)
    cols = [max((len(str(r[i])) for r in rows if i < len(r) - 1), default=0) for i in range(width)]
    out = []
    for r in rows:
        cells = [str(c).ljust(cols[i]) if i < len(r) - 1 else str(c) for i, c in enumerate(r)]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out)


def _load():
    path = catalog_mod.default_catalog_path()
    try:
        return catalog_mod.default_catalog()
    except OSError as exc:
        raise UsageError(f"cannot read catalog {path}: {exc.strerror}")
    except CatalogError as exc:
        raise UsageError(f"invalid catalog {path}: {exc}")


def run(argv: Sequence[str] | None = None) -> int:
    saved = os.environ.get(catalog_mod.CATALOG_ENV)
    try:
        args = build_parser().parse_args(argv)
        jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
        if jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if args.catalog:
            # every module reads the catalog through the environment override
            os.environ[catalog_mod.CATALOG_ENV] = args.catalog
        cat = _load()
        ok, payload, rows = COMMANDS[args.command](args, cat, jobs)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop(catalog_mod.CATALOG_ENV, None)
        else:
            os.environ[catalog_mod.CATALOG_ENV] = saved
    text = json.dumps(payload, indent=1)
    print(text if args.json else _table(rows))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
