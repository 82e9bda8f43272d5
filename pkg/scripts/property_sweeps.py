#!/usr/bin/env python3
"""Randomized and exhaustive checks of the structural properties at adjustable sizes.

    python scripts/property_sweeps.py --random 100000 --multitrees 10000 --ktv 1000

Reuses the sweep helpers in tests/sweeps.py.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import sweeps  # noqa: E402


def timed(label, fn, *args):
    t = time.perf_counter()
    out = fn(*args)
    print(f"{label}: {out[:-1]} counterexamples={len(out[-1])} ({time.perf_counter() - t:.1f}s)")
    return not out[-1]


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--random", type=int, default=10**4, help="instances for fixable => superabundant")
    p.add_argument("--multitrees", type=int, default=10**3)
    p.add_argument("--ktv", type=int, default=10**3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--skip-exhaustive", action="store_true", help="skip the multistar and oracle sweeps")
    args = p.parse_args()
    # sweeps deliberately include lists shorter than the degree
    logging.getLogger("fixgame.boards").setLevel(logging.ERROR)

    ok = timed("fixable => superabundant (checked, solves)", sweeps.fixable_but_not_superabundant,
               args.random, args.seed)
    ok &= timed("eta condition => colorable (found, draws)", sweeps.eta_condition_sweep, args.multitrees, args.seed)
    ok &= timed("KTV => superabundant (valid, skipped)", sweeps.ktv_sweep, args.ktv, args.seed)
    if not args.skip_exhaustive:
        ok &= timed("multistar characterization (boards)", sweeps.multistar_sweep)
        ok &= timed("oracle equivalence (configs, boards)", sweeps.oracle_sweep)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
