#!/usr/bin/env python3
"""Degree-fixability of small cycles and multigraphs.

For each graph, every exact-size board (|L(v)| = d(v)) on at most POT_CAP colors
is played with its own pot, and the superabundant ones that lose are listed.

    python scripts/degree_experiment.py --pot-cap 8
"""

from __future__ import annotations

import argparse
import logging

from fixgame.degree import degree_fixable_experiment
from fixgame.multigraph import Multigraph


def cycle(n: int) -> Multigraph:
    vs = [f"v{i}" for i in range(n)]
    return Multigraph.from_pairs(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


GRAPHS = {
    "C3": cycle(3),
    "C4": cycle(4),
    "C5": cycle(5),
    "double edge": Multigraph.from_pairs("uv", [("u", "v")] * 2),
    "fat triangle": Multigraph.from_pairs("abc", [("a", "b"), ("a", "b"), ("b", "c"), ("a", "c")]),
}


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--pot-cap", type=int, default=6)
    p.add_argument("--graphs", nargs="+", choices=sorted(GRAPHS), default=["C3", "C4", "double edge"])
    p.add_argument("--show", type=int, default=5, help="losing boards printed per graph")
    p.add_argument("-v", "--verbose", action="store_true")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    for name in args.graphs:
        exp = degree_fixable_experiment(GRAPHS[name], args.pot_cap)
        print(f"{name}: {exp.summary()}")
        for e in exp.failures[: args.show]:
            print(f"    {e.board}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
