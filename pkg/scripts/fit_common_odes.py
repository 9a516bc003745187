"""Fit the common linear ODE of each main group and store it with its recurrence.

Run: python3 scripts/fit_common_odes.py [--jobs N]
Writes src/hypermod/data/common_odes.json.
"""

import argparse
import json
import time
from pathlib import Path

from hypermod.catalog import default_catalog
from hypermod.odefit import common_ode_certificate, ode_to_recurrence

BOUNDS = {"T1": (3, 12), "T2": (2, 5), "T3": (3, 16)}
OUT = Path(__file__).resolve().parents[1] / "src" / "hypermod" / "data" / "common_odes.json"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    cat = default_catalog()
    out = {}
    ok = True
    for gid, (r, d) in BOUNDS.items():
        t0 = time.time()
        ode, cert = common_ode_certificate(cat.group(gid), r, d, jobs=args.jobs)
        print(f"{gid}: {cert.status} order={ode.order if ode else '-'} degree={ode.degree if ode else '-'} "
              f"entries={cert.entries_checked} ({time.time() - t0:.1f}s)")
        ok &= cert.certified
        if ode is not None:
            out[gid] = {
                "bounds": {"max_order": r, "max_degree": d},
                "series_order": cert.order,
                "ode": ode.to_json(),
                "recurrence": ode_to_recurrence(ode).to_json(),
            }
    OUT.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {OUT}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
