"""Degree-fixability: every superabundant board with |L(v)| = d(v) is fixable.

The pot is unbounded in principle, so boards are enumerated with at most
``pot_cap`` colors. Up to color renaming, a board on lists of total size
``sum d(v) = 2|E|`` never needs more than ``2|E|`` colors, so a cap of at
least ``2|E|`` covers every exact-size board. Each board is played with the
pot equal to the union of its lists, the hardest pot: extra colors only add
options for the player.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from .abundance import is_superabundant
from .boards import Board, BoardError, CanonicalBoard, canonical_from_cols, enumerate_canonical_cols
from .engine import is_list_fixable, solve_cols, universe_cap, UniverseTooLarge
from .multigraph import Multigraph

log = logging.getLogger(__name__)

MAX_VERTICES = 12


@dataclass(frozen=True)
class DegreeEntry:
    board: CanonicalBoard
    superabundant: bool
    depth: int | None  # None when not fixable

    @property
    def fixable(self) -> bool:
        return self.depth is not None


@dataclass(frozen=True)
class DegreeExperiment:
    pot_cap: int
    exhaustive: bool  # cap covers every exact-size board up to renaming
    entries: tuple[DegreeEntry, ...]
    extra: tuple[DegreeEntry, ...] = ()

    @property
    def superabundant(self) -> list[DegreeEntry]:
        return [e for e in self.entries + self.extra if e.superabundant]

    @property
    def failures(self) -> list[DegreeEntry]:
        return [e for e in self.superabundant if not e.fixable]

    @property
    def verdict(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        sup = self.superabundant
        note = "covers all exact-size boards" if self.exhaustive else "does not cover every board"
        return (f"pot cap {self.pot_cap} ({note}); {len(self.entries) + len(self.extra)} boards, "
                f"{len(sup)} superabundant, {len(self.failures)} not fixable")


def degree_fixable_experiment(g: Multigraph, pot_cap: int, extra_boards: Iterable[Board] = (),
                              *, cap: int | None = None, workers: int = 1) -> DegreeExperiment:
    deg = g.degrees()
    if g.order > MAX_VERTICES:
        raise BoardError(f"{g.order} vertices is too many (limit {MAX_VERTICES})")
    if any(d == 0 for d in deg):
        raise BoardError("isolated vertices would need empty lists")
    if pot_cap < max(deg, default=0):
        raise BoardError(f"pot cap {pot_cap} is below the largest list size {max(deg)}")
    n, pairs = g.order, g.index_pairs()
    limit = universe_cap(cap)
    entries = []
    for p in range(1, pot_cap + 1):
        # the game with a pot of p colors runs over every board on p colors
        # (a swap can empty a color), but only boards using all p are recorded
        universe = list(enumerate_canonical_cols([[d] for d in deg], p))
        if len(universe) > limit:
            raise UniverseTooLarge(len(universe), limit)
        if not any(c[-1] for c in universe):
            continue
        depth, _ = solve_cols(n, pairs, universe, workers=workers, label=f"[pot {p}] ")
        for cols, d in zip(universe, depth):
            if not cols[-1]:
                continue
            cb = canonical_from_cols(cols, n)
            sup = is_superabundant(g, cb.board).superabundant
            entries.append(DegreeEntry(cb, sup, d if d >= 0 else None))
        log.info("pot %d: %d boards", p, len(universe))
    extra = []
    for b in extra_boards:
        cb = canonical_from_cols(b.columns(), n)
        sup = is_superabundant(g, b).superabundant
        extra.append(DegreeEntry(cb, sup, is_list_fixable(g, b, cap=cap)))
    return DegreeExperiment(pot_cap, pot_cap >= sum(deg), tuple(entries), tuple(extra))
