#!/usr/bin/env python3
"""Solve the built-in catalog (or a subset) and print one row per entry.

    python scripts/run_catalog.py                 # entries up to 10^4 boards
    python scripts/run_catalog.py --max-total 0   # everything (C28 takes minutes)
    python scripts/run_catalog.py --only C1 C34 --json out.json
"""

from __future__ import annotations

import argparse
import json
import logging
from dataclasses import asdict

from fixgame.catalog import builtin_manifest, catalog_ok, load_manifest, run_catalog


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--manifest", default=None)
    p.add_argument("--only", nargs="+")
    p.add_argument("--max-total", type=int, default=10**4, help="skip larger entries; 0 runs everything")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", help="also write the results here")
    p.add_argument("-v", "--verbose", action="store_true")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    entries, base = load_manifest(args.manifest or builtin_manifest())
    results = run_catalog(entries, base, workers=args.workers, only=args.only,
                          max_total=args.max_total or None)
    for r in results:
        print(f"{r.row()}  {r.seconds:7.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([asdict(r) for r in results], fh, indent=1)
    return 0 if catalog_ok(results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
